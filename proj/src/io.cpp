#include "shockcop/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "shockcop/error.hpp"

namespace shockcop {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw ConfigError(where + ": " + what);
}

double get_number(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) bad(where, std::string("missing field '") + key + "'");
  const json& v = j.at(key);
  if (!v.is_number()) bad(where + "." + key, "expected a number");
  return v.get<double>();
}

double get_number_or(const json& j, const char* key, double fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  return get_number(j, key, where);
}

Segment parse_segment(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    bad(where, "segment needs a string 'kind'");
  }
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "constant") return Segment::constant(get_number(j, "value", where));
  if (kind == "affine") {
    return Segment::affine(get_number(j, "offset", where), get_number(j, "slope", where),
                           get_number_or(j, "origin", 0.0, where));
  }
  if (kind == "exponential") {
    return Segment::exponential(get_number(j, "offset", where), get_number(j, "coef", where),
                                get_number(j, "rate", where), get_number_or(j, "origin", 0.0, where));
  }
  bad(where + ".kind", "unknown segment kind '" + kind + "'");
}

std::vector<double> number_list(const json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array of numbers");
  std::vector<double> out;
  for (const json& v : j) {
    if (!v.is_number()) bad(where, "expected an array of numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

ParamSpec parse_param_spec_at(const json& j, const std::string& where) {
  if (!j.is_object()) bad(where, "distribution must be an object");
  if (!j.contains("type") || !j.at("type").is_string()) bad(where, "missing string field 'type'");
  const std::string type = j.at("type").get<std::string>();
  if (type == "pointmass") return PointMassSpec{get_number(j, "at", where)};
  if (type == "exponential") {
    return ExponentialSpec{get_number(j, "rate", where), get_number_or(j, "shift", 0.0, where)};
  }
  if (type == "discrete") {
    if (!j.contains("atoms") || !j.at("atoms").is_array()) bad(where, "missing array field 'atoms'");
    DiscreteSpec d;
    std::size_t k = 0;
    for (const json& a : j.at("atoms")) {
      const std::string w = where + ".atoms[" + std::to_string(k++) + "]";
      const std::vector<double> pair = number_list(a, w);
      if (pair.size() != 2) bad(w, "atom must be [location, mass]");
      d.atoms.push_back({pair[0], pair[1]});
    }
    return d;
  }
  if (type == "piecewise") {
    PiecewiseSpec p;
    if (j.contains("breakpoints")) p.breakpoints = number_list(j.at("breakpoints"), where + ".breakpoints");
    if (j.contains("limits")) {
      std::size_t k = 0;
      for (const json& l : j.at("limits")) {
        const std::string w = where + ".limits[" + std::to_string(k++) + "]";
        const std::vector<double> t = number_list(l, w);
        if (t.size() != 3) bad(w, "limits must be [left, value, right]");
        p.limits.push_back({t[0], t[1], t[2]});
      }
    }
    if (j.contains("segments")) {
      std::size_t k = 0;
      for (const json& s : j.at("segments")) {
        p.segments.push_back(parse_segment(s, where + ".segments[" + std::to_string(k++) + "]"));
      }
    }
    p.top = get_number_or(j, "top", 1.0, where);
    return p;
  }
  bad(where + ".type", "unknown distribution type '" + type + "'");
}

DistFn build(const json& j, const std::string& where) {
  try {
    return from_spec(parse_param_spec_at(j, where));
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    bad(where, e.what());
  }
}

PBox parse_pbox_at(const json& j, const std::string& where) {
  if (j.is_object() && j.contains("type")) return precise(build(j, where));
  if (!j.is_object() || !j.contains("lower") || !j.contains("upper")) {
    bad(where, "p-box needs 'lower' and 'upper' (or a single distribution)");
  }
  try {
    return make_pbox(build(j.at("lower"), where + ".lower"), build(j.at("upper"), where + ".upper"));
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    bad(where, e.what());
  }
}

std::size_t get_size(const json& j, const char* key, std::size_t fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_integer() || v.get<long long>() < 2) {
    bad(std::string("scenario.") + key, "expected an integer >= 2");
  }
  return static_cast<std::size_t>(v.get<long long>());
}

}  // namespace

ParamSpec parse_param_spec(const json& j) { return parse_param_spec_at(j, "distribution"); }

PBox parse_pbox(const json& j) { return parse_pbox_at(j, "pbox"); }

CopulaFamily parse_model(const json& j) {
  if (!j.is_string()) bad("scenario.model", "expected \"marshall\" or \"maxmin\"");
  const std::string m = j.get<std::string>();
  if (m == "marshall") return CopulaFamily::Marshall;
  if (m == "maxmin") return CopulaFamily::Maxmin;
  bad("scenario.model", "expected \"marshall\" or \"maxmin\", got \"" + m + "\"");
}

Scenario parse_scenario(const json& j) {
  if (!j.is_object()) bad("scenario", "expected an object");
  for (const char* key : {"model", "x", "y", "z"}) {
    if (!j.contains(key)) bad("scenario", std::string("missing field '") + key + "'");
  }
  Scenario s;
  s.model = parse_model(j.at("model"));
  s.x = parse_pbox_at(j.at("x"), "scenario.x");
  s.y = parse_pbox_at(j.at("y"), "scenario.y");
  s.z = build(j.at("z"), "scenario.z");
  if (!s.z.is_proper()) bad("scenario.z", "Z must be a proper distribution");
  s.grid = get_size(j, "grid", s.grid);
  s.xy_grid = get_size(j, "xy_grid", s.xy_grid);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("malformed JSON in " + path.string() + ": " + e.what());
  }
  return parse_scenario(j);
}

// ------------------------------------------------------------ output

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

json number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

json to_json(const Generator& g) {
  json knots = json::array();
  for (const Knot& k : g.knots()) knots.push_back({number(k.u), number(k.g)});
  return {{"kind", to_string(g.kind())}, {"knots", knots}};
}

json to_json(const ViolationWitness& w) {
  return {{"condition", to_string(w.condition)},
          {"u1", number(w.rect.u1)},
          {"u2", number(w.rect.u2)},
          {"v1", number(w.rect.v1)},
          {"v2", number(w.rect.v2)},
          {"value", number(w.value)}};
}

json to_json(const ConditionResult& r) {
  json worst = to_json(r.worst);
  worst.erase("condition");
  return {{"condition", to_string(r.condition)}, {"pass", r.pass}, {"worst", worst}};
}

json to_json(const ScenarioResult& r) {
  json checks = json::array();
  for (const Check& c : r.checks) {
    checks.push_back({{"id", c.id}, {"what", c.what}, {"pass", c.pass}, {"value", number(c.value)}});
  }
  const bool mm = r.model == CopulaFamily::Maxmin;
  json gens = {{"phi_low", to_json(r.generators.phi_low)},
               {"phi_up", to_json(r.generators.phi_up)},
               {mm ? "chi_low" : "psi_low", to_json(r.generators.second_low)},
               {mm ? "chi_up" : "psi_up", to_json(r.generators.second_up)}};
  json out = {{"model", to_string(r.model)},
              {"pass", r.pass()},
              {"discretized", r.discretized},
              {"discretization_bound", number(r.discretization_bound)},
              {"tol", number(r.tol)},
              {"checks", checks},
              {"generators", gens}};
  json probes = json::object();
  for (const auto& [name, p] : r.extension_probes) {
    const auto gaps = [](const std::vector<ExtensionGap>& v) {
      json a = json::array();
      for (const ExtensionGap& g : v) {
        a.push_back({{"u", number(g.u)}, {"canonical", number(g.canonical)}, {"found", number(g.found)}});
      }
      return a;
    };
    probes[name] = {{"gaps", p.gaps}, {"trials", p.trials}, {"below", gaps(p.below)}, {"above", gaps(p.above)}};
  }
  out["extension_probes"] = probes;
  if (mm) {
    json ws = json::array();
    for (const ViolationWitness& w : r.same_corner_witnesses) ws.push_back(to_json(w));
    out["same_corner_pair"] = {{"note", "exploratory; not an imprecise copula in general"},
                               {"witnesses", ws}};
    out["outer_gap"] = number(r.outer_gap);
  }
  return out;
}

std::string to_csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
  std::string s;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) s += ',';
    s += header[i];
  }
  s += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) s += ',';
      s += format_double(row[i]);
    }
    s += '\n';
  }
  return s;
}

void write_atomically(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + tmp.string());
    out << content;
    if (!out) throw ConfigError("failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw ConfigError("cannot move output into place at " + path.string());
  }
}

}  // namespace shockcop
