#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "shockcop/copulas.hpp"
#include "shockcop/imprecise.hpp"
#include "shockcop/io.hpp"

namespace shockcop {

/// Batch scan of maxmin same-corner pairs (C(low phi, low chi), C(up phi, up chi))
/// over seeded random discrete imprecise scenarios.
struct SearchConfig {
  std::size_t scenarios = 1000;
  std::size_t grid = 51;
  std::uint64_t seed = 42;
  std::size_t max_atoms = 10;
  double tol = 1e-12;
};

struct SearchWitness {
  std::size_t scenario = 0;
  std::uint64_t scenario_seed = 0;
  ViolationWitness witness;
  double recomputed = 0.0;   // expression re-evaluated from the copulas at the corners
  double doubled_min = 0.0;  // same condition scanned on the 2n - 1 grid
  bool reverified = false;
};

struct SearchSummary {
  SearchConfig config;
  std::size_t scanned = 0;
  std::size_t with_violation = 0;
  /// Scenarios whose pair is pointwise ordered and still fails an IC condition.
  /// Degenerate rectangles reduce every IC form to the order condition, so
  /// these are the failures that order alone does not explain.
  std::size_t ordered_with_ic_violation = 0;
  std::map<std::string, std::size_t> counts;  // per condition name
  std::vector<SearchWitness> witnesses;

  bool all_reverified() const;
};

/// Value of the condition's expression for `rect`, from direct evaluation.
double witness_value(Condition c, const CopulaSpec& low, const CopulaSpec& up, const Rect& rect);

SearchWitness reverify(const CopulaSpec& low, const CopulaSpec& up, const ViolationWitness& w,
                       std::size_t grid, double tol);

/// The scenario k of a search, reproducible from (seed, k).
Scenario search_scenario(const SearchConfig& cfg, std::size_t k);
CopulaPair same_corner_pair(const Scenario& s);

SearchSummary run_search(const SearchConfig& cfg);

json to_json(const SearchSummary& s);

}  // namespace shockcop
