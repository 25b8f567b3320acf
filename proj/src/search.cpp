#include "shockcop/search.hpp"

#include <algorithm>

#include "shockcop/error.hpp"
#include "shockcop/generators.hpp"
#include "shockcop/sampling.hpp"

namespace shockcop {

bool SearchSummary::all_reverified() const {
  return std::all_of(witnesses.begin(), witnesses.end(), [](const SearchWitness& w) { return w.reverified; });
}

double witness_value(Condition c, const CopulaSpec& low, const CopulaSpec& up, const Rect& r) {
  const auto form = [&r](const CopulaSpec& p, const CopulaSpec& q, const CopulaSpec& rr, const CopulaSpec& s) {
    return (p(r.u2, r.v2) - s(r.u1, r.v2)) + (q(r.u1, r.v1) - rr(r.u2, r.v1));
  };
  switch (c) {
    case Condition::IC1:
      return form(low, up, low, low);
    case Condition::IC2:
      return form(up, low, low, low);
    case Condition::IC3:
      return form(up, up, up, low);
    case Condition::IC4:
      return form(up, up, low, up);
    case Condition::Order:
      return up(r.u1, r.v1) - low(r.u1, r.v1);
    default:
      throw InvalidParameter(std::string("no rectangle expression for condition ") + to_string(c));
  }
}

SearchWitness reverify(const CopulaSpec& low, const CopulaSpec& up, const ViolationWitness& w,
                       std::size_t grid, double tol) {
  SearchWitness out;
  out.witness = w;
  out.recomputed = witness_value(w.condition, low, up, w.rect);
  const ConditionReport doubled = check_imprecise_copula({low, up}, 2 * grid - 1, tol);
  const ConditionResult* r = doubled.find(w.condition);
  out.doubled_min = r ? r->worst.value : 0.0;
  // The doubled grid contains the original one, so its minimum cannot be larger.
  out.reverified = out.recomputed == w.value && out.doubled_min <= w.value && out.doubled_min < -tol;
  return out;
}

Scenario search_scenario(const SearchConfig& cfg, std::size_t k) {
  ScenarioSampler sampler(derive_seed(cfg.seed, k), cfg.max_atoms);
  return sampler.imprecise_scenario(CopulaFamily::Maxmin, cfg.grid);
}

CopulaPair same_corner_pair(const Scenario& s) {
  const Generator phi_low = build_phi(s.x.lower(), s.z);
  const Generator phi_up = build_phi(s.x.upper(), s.z);
  const Generator chi_low = build_chi(s.y.lower(), s.z);
  const Generator chi_up = build_chi(s.y.upper(), s.z);
  return {CopulaSpec::maxmin(phi_low, chi_low), CopulaSpec::maxmin(phi_up, chi_up)};
}

SearchSummary run_search(const SearchConfig& cfg) {
  if (cfg.grid < 2) throw ConfigError("search grid must be at least 2");
  if (!(cfg.tol > 0.0)) throw ConfigError("search tolerance must be positive");
  if (cfg.max_atoms < 1) throw ConfigError("search needs at least one atom per distribution");
  SearchSummary sum;
  sum.config = cfg;
  for (const Condition c : {Condition::IC1, Condition::IC2, Condition::IC3, Condition::IC4, Condition::Order}) {
    sum.counts[to_string(c)] = 0;
  }
  for (std::size_t k = 0; k < cfg.scenarios; ++k) {
    const Scenario s = search_scenario(cfg, k);
    const CopulaPair pair = same_corner_pair(s);
    const std::vector<ViolationWitness> found = search_ic_violation(pair, cfg.grid, cfg.tol);
    ++sum.scanned;
    if (found.empty()) continue;
    ++sum.with_violation;
    const bool ordered = std::none_of(found.begin(), found.end(),
                                      [](const ViolationWitness& w) { return w.condition == Condition::Order; });
    if (ordered) ++sum.ordered_with_ic_violation;
    const CopulaSpec& low = std::get<CopulaSpec>(pair.low);
    const CopulaSpec& up = std::get<CopulaSpec>(pair.up);
    for (const ViolationWitness& w : found) {
      ++sum.counts[to_string(w.condition)];
      SearchWitness sw = reverify(low, up, w, cfg.grid, cfg.tol);
      sw.scenario = k;
      sw.scenario_seed = derive_seed(cfg.seed, k);
      sum.witnesses.push_back(sw);
    }
  }
  return sum;
}

json to_json(const SearchSummary& s) {
  json ws = json::array();
  for (const SearchWitness& w : s.witnesses) {
    json j = to_json(w.witness);
    j["scenario"] = w.scenario;
    j["scenario_seed"] = w.scenario_seed;
    j["recomputed"] = number(w.recomputed);
    j["doubled_grid_min"] = number(w.doubled_min);
    j["reverified"] = w.reverified;
    ws.push_back(j);
  }
  json counts = json::object();
  for (const auto& [k, v] : s.counts) counts[k] = v;
  return {{"pair", "maxmin same-corner (low phi, low chi) / (up phi, up chi)"},
          {"scenarios", s.config.scenarios},
          {"grid", s.config.grid},
          {"seed", s.config.seed},
          {"max_atoms", s.config.max_atoms},
          {"tol", number(s.config.tol)},
          {"scanned", s.scanned},
          {"with_violation", s.with_violation},
          {"ordered_with_ic_violation", s.ordered_with_ic_violation},
          {"counts", counts},
          {"all_reverified", s.all_reverified()},
          {"witnesses", ws}};
}

}  // namespace shockcop
