#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "shockcop/distfn.hpp"

namespace shockcop {

enum class GeneratorKind { Phi, Psi, Chi };

const char* to_string(GeneratorKind kind);

struct Knot {
  double u = 0.0;
  double g = 0.0;

  friend bool operator==(const Knot&, const Knot&) = default;
};

/// Continuous piecewise-affine map on (0, 1) with g(0) = 0 and g(1) = 1.
///
/// Knots have strictly increasing u, the first at u = 0 and the last at
/// u = 1. Their g values at the two ends are the one-sided limits g(0+) and
/// g(1-); the endpoint values themselves are fixed.
class Generator {
 public:
  Generator(GeneratorKind kind, std::vector<Knot> knots);

  static Generator identity(GeneratorKind kind);

  GeneratorKind kind() const noexcept { return kind_; }
  std::span<const Knot> knots() const noexcept { return knots_; }
  Generator as_kind(GeneratorKind kind) const { return Generator(kind, knots_); }

  double operator()(double u) const;
  /// Interpolated knot value on [0, 1], ignoring the fixed endpoint values.
  double interpolate(double u) const;
  double at_zero_plus() const noexcept { return knots_.front().g; }
  double at_one_minus() const noexcept { return knots_.back().g; }

  friend bool operator==(const Generator&, const Generator&) = default;

 private:
  GeneratorKind kind_;
  std::vector<Knot> knots_;
};

/// Thresholds at one source breakpoint x0. For phi/psi: u_minus = F(x0-),
/// u_low = F_X(x0-) F_Z(x0), u_up = F_X(x0+) F_Z(x0), u_plus = F(x0+). For
/// chi the same slots hold the w thresholds built from K = F_Y + F_Z - F_Y F_Z.
/// x0 = -inf and +inf stand for the tails.
struct GeneratorKnots {
  double x0 = 0.0;
  double u_minus = 0.0;
  double u_low = 0.0;
  double u_up = 0.0;
  double u_plus = 0.0;
  double g_left = 0.0;   // F_X(x0-) (resp. F_Y(y0-))
  double g_right = 0.0;  // F_X(x0+) (resp. F_Y(y0+))
  double fz = 0.0;       // F_Z(x0), the constant of the middle piece
};

std::vector<GeneratorKnots> phi_knots(const DistFn& fx, const DistFn& fz);
std::vector<GeneratorKnots> chi_knots(const DistFn& fy, const DistFn& fz);

/// Canonical generator with phi(F_X F_Z) = F_X. Throws NonProperInput when
/// F_X F_Z does not reach 1 at +inf and UnsupportedSegmentPair when F_X and
/// F_Z vary together on an open interval.
Generator build_phi(const DistFn& fx, const DistFn& fz);
Generator build_psi(const DistFn& fy, const DistFn& fz);
/// Canonical generator with chi(F_Y + F_Z - F_Y F_Z) = F_Y.
Generator build_chi(const DistFn& fy, const DistFn& fz);

/// g(u) / u, infinite at u = 0.
double phi_star(const Generator& g, double u);
/// (1 - g(w)) / (w - g(w)), infinite where w = g(w) < 1; 1 at w = 1.
double chi_star(const Generator& g, double w);

struct GeneratorCheck {
  bool pass = true;
  std::string condition;  // empty on pass
  double u1 = 0.0;
  double u2 = 0.0;
};

/// Monotonicity, boundary values and the star condition of the kind, on
/// knots and midpoints. Exact for piecewise-affine generators.
GeneratorCheck check_generator(const Generator& g, double tol = 1e-12);

struct AssociationReport {
  double max_deviation = 0.0;
  double worst_x = 0.0;
  std::size_t points = 0;
  bool pass(double tol) const { return max_deviation <= tol; }
};

/// max |g(base(x)) - target(x)| over breakpoints, one-sided limits, tails
/// and interior samples, where base > 0 (phi, psi) or base < 1 (chi).
AssociationReport check_association(const Generator& g, const DistFn& base,
                                    const DistFn& target);

struct OrderCheck {
  bool holds = true;
  double u = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
};

/// g1 <= g2 + tol on merged knots and midpoints.
OrderCheck check_order(const Generator& g1, const Generator& g2, double tol = 0.0);

struct Envelope {
  Generator lower;
  Generator upper;
  GeneratorCheck lower_check;
  GeneratorCheck upper_check;
};

/// Pointwise inf and sup of a non-empty family of one kind, re-validated.
Envelope envelope_generators(std::span<const Generator> gs);

/// t g1 + (1 - t) g2.
Generator convex_combination(const Generator& g1, const Generator& g2, double t);

/// Gap of im(base) where an associated generator differing from g exists.
struct ExtensionGap {
  double u = 0.0;          // probe abscissa inside the gap
  double canonical = 0.0;  // g(u)
  double found = 0.0;      // admissible alternative value
};

struct ExtensionProbe {
  std::size_t gaps = 0;
  std::size_t trials = 0;
  std::vector<ExtensionGap> below;  // admissible values smaller than g
  std::vector<ExtensionGap> above;  // admissible values larger than g
};

/// Randomly reshapes g inside gaps of im(base), keeps the candidates that
/// pass check_generator and check_association against target, and records
/// where they undercut or exceed g.
ExtensionProbe probe_extensions(const Generator& g, const DistFn& base, const DistFn& target,
                                std::uint64_t seed, std::size_t trials_per_gap = 64);

}  // namespace shockcop
