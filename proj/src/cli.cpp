#include "shockcop/cli.hpp"

#include <algorithm>
#include <iostream>
#include <set>

#include <CLI11.hpp>

#include "shockcop/error.hpp"
#include "shockcop/io.hpp"
#include "shockcop/kernels.hpp"
#include "shockcop/search.hpp"
#include "shockcop/shockmodel.hpp"

namespace shockcop {

void validate(const RunConfig& cfg) {
  if (cfg.grid && *cfg.grid < 2) throw ConfigError("--grid must be at least 2");
  if (cfg.tol && !(*cfg.tol > 0.0)) throw ConfigError("--tol must be positive");
  if (cfg.command != "search" && cfg.scenario.empty()) throw ConfigError("--scenario is required");
}

namespace {

Scenario configured_scenario(const RunConfig& cfg) {
  Scenario s = load_scenario(cfg.scenario);
  if (cfg.grid) s.grid = *cfg.grid;
  if (cfg.tol) s.tol = *cfg.tol;
  return s;
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + dir.string());
}

std::string checks_csv(const ScenarioResult& r) {
  std::string s = "id,pass,value\n";
  for (const Check& c : r.checks) s += c.id + ',' + (c.pass ? "1" : "0") + ',' + format_double(c.value) + '\n';
  return s;
}

// Knots plus the grid abscissas, sorted and unique.
std::string generator_csv(const Generator& g, std::size_t n) {
  std::set<double> us;
  for (const Knot& k : g.knots()) us.insert(k.u);
  for (double u : unit_grid(n)) us.insert(u);
  std::vector<std::vector<double>> rows;
  for (double u : us) rows.push_back({u, g(u)});
  return to_csv({"u", "g"}, rows);
}

std::string surface_csv(const CopulaSpec& lo, const CopulaSpec& hi, std::size_t n) {
  const std::vector<double> us = unit_grid(n);
  std::vector<std::vector<double>> rows;
  rows.reserve(n * n);
  for (double u : us) {
    for (double v : us) rows.push_back({u, v, lo(u, v), hi(u, v)});
  }
  return to_csv({"u", "v", "lowC", "upC"}, rows);
}

std::string marginals_csv(const ScenarioResult& r) {
  std::vector<std::vector<double>> rows;
  for (double x : r.xs) {
    rows.push_back({x, r.u_box.lower()(x), r.u_box.upper()(x), r.v_box.lower()(x), r.v_box.upper()(x)});
  }
  return to_csv({"x", "lowU", "upU", "lowV", "upV"}, rows);
}

std::string h_csv(const ScenarioResult& r) {
  const BivariateBound lo = r.h_low();
  const BivariateBound hi = r.h_up();
  std::vector<std::vector<double>> rows;
  rows.reserve(r.xs.size() * r.ys.size());
  for (double x : r.xs) {
    for (double y : r.ys) rows.push_back({x, y, lo(x, y), hi(x, y)});
  }
  return to_csv({"x", "y", "lowH", "upH"}, rows);
}

void summarize(const ScenarioResult& r, std::ostream& os) {
  os << to_string(r.model) << (r.discretized ? " (discretized)" : "") << ": "
     << (r.pass() ? "all checks pass" : "CHECK FAILURE") << '\n';
  for (const Check& c : r.checks) {
    if (!c.pass) os << "  failed " << c.id << ": " << c.what << " (value " << format_double(c.value) << ")\n";
  }
}

template <class F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  } catch (const Error& e) {
    // Invalid parameters in a scenario are configuration problems too.
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfigError;
  }
}

}  // namespace

int cmd_pipeline(const RunConfig& cfg) {
  return guarded([&] {
    validate(cfg);
    const Scenario s = configured_scenario(cfg);
    const ScenarioResult r = run_scenario(s);
    ensure_dir(cfg.out);
    if (cfg.format == OutputFormat::Json) {
      write_atomically(cfg.out / "report.json", to_json(r).dump(2) + '\n');
    } else {
      write_atomically(cfg.out / "checks.csv", checks_csv(r));
    }
    if (!cfg.quiet) summarize(r, std::cout);
    return r.pass() ? kExitPass : kExitCheckFailure;
  });
}

int cmd_search(const RunConfig& cfg) {
  return guarded([&] {
    validate(cfg);
    SearchConfig sc;
    sc.scenarios = cfg.scenarios;
    sc.grid = cfg.grid.value_or(sc.grid);
    sc.seed = cfg.seed;
    sc.max_atoms = cfg.atoms;
    sc.tol = cfg.tol.value_or(sc.tol);
    const SearchSummary sum = run_search(sc);
    ensure_dir(cfg.out);
    write_atomically(cfg.out / "search.json", to_json(sum).dump(2) + '\n');
    if (!cfg.quiet) {
      std::cout << "scanned " << sum.scanned << ", with violation " << sum.with_violation
                << " (ordered pair " << sum.ordered_with_ic_violation << ")";
      for (const auto& [k, v] : sum.counts) std::cout << ", " << k << ' ' << v;
      std::cout << '\n';
    }
    return kExitPass;
  });
}

int cmd_emit(const RunConfig& cfg) {
  return guarded([&] {
    validate(cfg);
    const Scenario s = configured_scenario(cfg);
    const ScenarioResult r = run_scenario(s);
    const EnvelopeFamily& g = r.generators;
    const bool mm = r.model == CopulaFamily::Maxmin;
    const std::string second = mm ? "chi" : "psi";
    ensure_dir(cfg.out);
    if (cfg.format == OutputFormat::Json) {
      json j = to_json(r);
      const auto surface = [&s](const CopulaSpec& lo, const CopulaSpec& hi) {
        json rows = json::array();
        for (double u : unit_grid(s.grid)) {
          for (double v : unit_grid(s.grid)) rows.push_back({u, v, lo(u, v), hi(u, v)});
        }
        return rows;
      };
      j["copula_surface"] = surface(r.imprecise_low(), r.imprecise_up());
      if (mm) j["same_corner_surface"] = surface(r.h_copula_low(), r.h_copula_up());
      write_atomically(cfg.out / "emit.json", j.dump(2) + '\n');
    } else {
      write_atomically(cfg.out / "phi_low.csv", generator_csv(g.phi_low, s.grid));
      write_atomically(cfg.out / "phi_up.csv", generator_csv(g.phi_up, s.grid));
      write_atomically(cfg.out / (second + "_low.csv"), generator_csv(g.second_low, s.grid));
      write_atomically(cfg.out / (second + "_up.csv"), generator_csv(g.second_up, s.grid));
      write_atomically(cfg.out / "copula_surface.csv", surface_csv(r.imprecise_low(), r.imprecise_up(), s.grid));
      if (mm) {
        write_atomically(cfg.out / "same_corner_surface.csv",
                         surface_csv(r.h_copula_low(), r.h_copula_up(), s.grid));
      }
      write_atomically(cfg.out / "marginals.csv", marginals_csv(r));
      write_atomically(cfg.out / "h_surface.csv", h_csv(r));
    }
    if (!cfg.quiet) summarize(r, std::cout);
    return r.pass() ? kExitPass : kExitCheckFailure;
  });
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Marshall and maxmin copulas from shock models with p-box marginals"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string format = "json";
  std::size_t grid = 0;
  double tol = 0.0;

  const auto common = [&](CLI::App* sub, bool needs_scenario) {
    auto* opt = sub->add_option("--scenario", cfg.scenario, "scenario JSON file");
    if (needs_scenario) opt->required();
    sub->add_option("--grid", grid, "copula grid size n (overrides the scenario)");
    sub->add_option("--tol", tol, "check tolerance");
    sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    sub->add_option("--out", cfg.out, "output directory")->capture_default_str();
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_flag("-q,--quiet", cfg.quiet, "no summary on stdout");
  };
  CLI::App* pipeline = app.add_subcommand("pipeline", "run every check of one scenario");
  common(pipeline, true);
  CLI::App* search = app.add_subcommand("search", "scan random maxmin scenarios for same-corner violations");
  common(search, false);
  search->add_option("--scenarios", cfg.scenarios, "number of scenarios")->capture_default_str();
  search->add_option("--atoms", cfg.atoms, "maximum atoms per distribution")->capture_default_str();
  CLI::App* emit = app.add_subcommand("emit", "write generator, copula and marginal tables");
  common(emit, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitConfigError;
  }
  for (CLI::App* sub : {pipeline, search, emit}) {
    if (!sub->parsed()) continue;
    cfg.command = sub->get_name();
    if (sub->count("--grid")) cfg.grid = grid;
    if (sub->count("--tol")) cfg.tol = tol;
  }
  cfg.format = format == "csv" ? OutputFormat::Csv : OutputFormat::Json;
  if (cfg.command == "pipeline") return cmd_pipeline(cfg);
  if (cfg.command == "search") return cmd_search(cfg);
  return cmd_emit(cfg);
}

}  // namespace shockcop
