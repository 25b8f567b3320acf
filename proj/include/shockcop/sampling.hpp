#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "shockcop/distfn.hpp"
#include "shockcop/rng.hpp"
#include "shockcop/shockmodel.hpp"

namespace shockcop {

/// Seeded random step distributions and scenarios. Atoms sit on the lattice
/// k/2, k = 0..16, so coincident breakpoints across functions are common.
class ScenarioSampler {
 public:
  explicit ScenarioSampler(std::uint64_t seed, std::size_t max_atoms = 10)
      : rng_(seed), max_atoms_(max_atoms) {}

  /// 1..max_atoms distinct lattice atoms with positive masses summing to 1.
  std::vector<Atom> atoms();
  DistFn step();

  /// lower <= upper; lower moves every atom of upper to the right by a
  /// random lattice amount. With `jitter`, breakpoint values are redrawn
  /// inside [left, right] (monotone-only functions) as long as the pair stays
  /// ordered.
  std::pair<DistFn, DistFn> ordered_pair(bool jitter = false);
  /// Atoms of an ordered pair, for callers that need the supports.
  std::pair<std::vector<Atom>, std::vector<Atom>> ordered_atoms();

  /// Random jitter of the breakpoint values of f.
  DistFn jittered(const DistFn& f);

  Scenario imprecise_scenario(CopulaFamily model, std::size_t grid, std::size_t xy_grid = 200);

  Rng& rng() noexcept { return rng_; }

 private:
  Rng rng_;
  std::size_t max_atoms_;
};

/// Independent seed for item k of a batch.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t k);

}  // namespace shockcop
