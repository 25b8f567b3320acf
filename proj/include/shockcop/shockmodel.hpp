#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "shockcop/copulas.hpp"
#include "shockcop/distfn.hpp"
#include "shockcop/generators.hpp"
#include "shockcop/imprecise.hpp"
#include "shockcop/kernels.hpp"
#include "shockcop/pbox.hpp"

namespace shockcop {

/// Imprecise X and Y, precise Z.
struct Scenario {
  PBox x;
  PBox y;
  DistFn z;
  CopulaFamily model = CopulaFamily::Marshall;
  std::size_t grid = 101;     // copula grid, n x n on [0,1]^2
  std::size_t xy_grid = 200;  // abscissa grid for the bivariate bounds
  std::optional<double> tol;  // overrides the engine default
};

/// Atom count used when a scenario has to be discretized.
inline constexpr std::size_t kDiscretizationAtoms = 10000;
inline constexpr double kExactTol = 1e-12;
inline constexpr double kDiscretizedTol = 1e-9;

struct Check {
  std::string id;    // "i".."ix" for the bound items, otherwise a short tag
  std::string what;
  bool pass = true;
  double value = 0.0;  // worst deviation, or worst signed margin for inequalities
};

struct ScenarioResult {
  CopulaFamily model = CopulaFamily::Marshall;
  bool discretized = false;
  double discretization_bound = 0.0;
  double tol = kExactTol;

  // Inputs actually used (after discretization, when it was needed).
  PBox x;
  PBox y;
  DistFn z;

  PBox u_box;  // (lowF, upF) of max{X, Z}
  PBox v_box;  // (lowG, upG) of max{Y, Z}, or (lowK, upK) of min{Y, Z}

  EnvelopeFamily generators;

  std::vector<double> xs;  // abscissa grid of the H checks
  std::vector<double> ys;

  std::vector<Check> checks;
  /// Gaps of the marginal images where an admissible associated generator
  /// undercuts or exceeds the canonical one, per envelope generator
  /// ("phi_low", "phi_up", then psi_ or chi_). Informational, never part of
  /// pass(); empty on discretized runs.
  std::vector<std::pair<std::string, ExtensionProbe>> extension_probes;
  /// Maxmin only: violations found on the same-corner pair. Exploratory, never
  /// part of pass().
  std::vector<ViolationWitness> same_corner_witnesses;
  /// Maxmin only: largest distance between the same-corner H bounds and the
  /// outer bounds from the opposite-corner copulas.
  double outer_gap = 0.0;

  /// Copulas composing (lowH, upH): (low, low)/(up, up) in both models.
  CopulaSpec h_copula_low() const;
  CopulaSpec h_copula_up() const;
  /// Opposite-corner pair for maxmin; same as the H pair for Marshall.
  CopulaSpec imprecise_low() const { return generators.lower_bound(); }
  CopulaSpec imprecise_up() const { return generators.upper_bound(); }

  BivariateBound h_low() const;
  BivariateBound h_up() const;

  bool pass() const;
  const Check* find(const std::string& id) const;
};

ScenarioResult run_marshall(const Scenario& s);
ScenarioResult run_maxmin(const Scenario& s);
ScenarioResult run_scenario(const Scenario& s);

/// H of (max{X,Z}, max{Y,Z}) for independent X, Y, Z.
double marshall_joint(const DistFn& fx, const DistFn& fy, const DistFn& fz, double x, double y);
/// H of (max{X,Z}, min{Y,Z}).
double maxmin_joint(const DistFn& fx, const DistFn& fy, const DistFn& fz, double x, double y);

/// Exact joint distribution of the shock-model pair by summing over all atom
/// triples. Rows are the atoms of max{X,Z} plus one point below them; columns
/// likewise for the second component.
GridTable oracle_joint(std::span<const Atom> xs, std::span<const Atom> ys, std::span<const Atom> zs,
                       CopulaFamily model);

/// max |H - oracle| over the oracle's corners.
double compare_oracle(const BivariateBound& h, const GridTable& oracle);

/// At least n sorted distinct abscissas covering the breakpoints of `fns`,
/// filled up uniformly over their padded support.
std::vector<double> probe_grid(std::span<const DistFn* const> fns, std::size_t n);

}  // namespace shockcop
