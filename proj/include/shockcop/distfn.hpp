#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

namespace shockcop {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Monotone distribution functions on the extended reals.
//
// No right-continuity is assumed: every breakpoint carries its own left
// limit, value and right limit, and queries always distinguish F(x-), F(x)
// and F(x+). Between breakpoints the function is one analytic piece.

/// F(x-), F(x), F(x+) at one breakpoint.
struct Limits {
  double left = 0.0;
  double value = 0.0;
  double right = 0.0;

  friend bool operator==(const Limits&, const Limits&) = default;
};

/// Analytic piece on an open interval between two breakpoints.
///
///   Constant     offset
///   Affine       offset + coef * (x - origin)
///   Exponential  offset + coef * exp(rate * (x - origin))
class Segment {
 public:
  enum class Kind { Constant, Affine, Exponential };

  Segment() = default;
  static Segment constant(double value);
  static Segment affine(double offset, double slope, double origin);
  static Segment exponential(double offset, double coef, double rate,
                             double origin);

  Kind kind() const noexcept { return kind_; }
  bool is_constant() const noexcept { return kind_ == Kind::Constant; }
  double offset() const noexcept { return offset_; }
  double coef() const noexcept { return coef_; }
  double rate() const noexcept { return rate_; }
  double origin() const noexcept { return origin_; }

  double eval(double x) const;
  /// Limit of the piece as x approaches `x` (which may be +-inf).
  double limit(double x) const;
  /// True when the piece is non-decreasing.
  bool is_monotone() const;

  Segment scaled(double k) const;
  Segment plus(double d) const;
  /// x -> 1 - s(x)
  Segment complement() const;
  /// x -> s(-x)
  Segment reflected() const;

  friend bool operator==(const Segment&, const Segment&) = default;

 private:
  Kind kind_ = Kind::Constant;
  double offset_ = 0.0;
  double coef_ = 0.0;
  double rate_ = 0.0;
  double origin_ = 0.0;
};

/// Pointwise product of two pieces. Throws UnsupportedSegmentPair unless one
/// of them is constant.
Segment product(const Segment& a, const Segment& b);
/// Pointwise t a + (1 - t) b. Throws UnsupportedSegmentPair when the result
/// is not a single piece (e.g. exponentials of different rates).
Segment mixed(const Segment& a, const Segment& b, double t);

class DistFn {
 public:
  /// Standardized constant 0 on the whole real line (all mass at +inf).
  DistFn();

  /// `segments` has one more entry than `breakpoints`: segments[0] lives on
  /// (-inf, x_1), segments[i] on (x_i, x_{i+1}), segments.back() on
  /// (x_n, +inf). `bottom` and `top` are the values at -inf and +inf.
  DistFn(std::vector<double> breakpoints, std::vector<Limits> limits,
         std::vector<Segment> segments, double bottom = 0.0, double top = 1.0);

  /// Constant `c` on every finite x, 0 at -inf and 1 at +inf.
  static DistFn constant(double c);

  double operator()(double x) const { return eval(x); }
  double eval(double x) const;
  double left_limit(double x) const;
  double right_limit(double x) const;

  std::span<const double> breakpoints() const noexcept { return xs_; }
  std::span<const Limits> limits() const noexcept { return limits_; }
  std::span<const Segment> segments() const noexcept { return segments_; }
  /// Piece covering the open interval that contains `x` (x not a breakpoint).
  const Segment& segment_at(double x) const;

  double bottom() const noexcept { return bottom_; }
  double top() const noexcept { return top_; }
  bool is_standardized() const noexcept { return bottom_ == 0.0; }
  /// F(+inf) = 1 and no mass at +inf, i.e. F(x) -> 1 as x -> +inf.
  bool is_proper() const { return top_ == 1.0 && left_limit(std::numeric_limits<double>::infinity()) == 1.0; }
  bool is_step() const noexcept;

  /// Finite interval that covers every breakpoint and most of the mass of
  /// the exponential tails.
  std::pair<double, double> support_hint() const;

  friend bool operator==(const DistFn&, const DistFn&) = default;

 private:
  void validate() const;

  std::vector<double> xs_;
  std::vector<Limits> limits_;
  std::vector<Segment> segments_;
  double bottom_ = 0.0;
  double top_ = 1.0;
};

// Parameter records (the tagged distribution entries of scenario files).

struct PointMassSpec {
  double at = 0.0;
};

struct Atom {
  double at = 0.0;
  double mass = 0.0;
};

/// Finitely many atoms; mass missing from 1 sits at +inf.
struct DiscreteSpec {
  std::vector<Atom> atoms;
};

struct ExponentialSpec {
  double rate = 1.0;
  double shift = 0.0;
};

/// Explicit representation. When `segments` is empty the pieces are the
/// constants implied by the limits.
struct PiecewiseSpec {
  std::vector<double> breakpoints;
  std::vector<Limits> limits;
  std::vector<Segment> segments;
  double top = 1.0;
};

using ParamSpec =
    std::variant<PointMassSpec, DiscreteSpec, ExponentialSpec, PiecewiseSpec>;

DistFn from_spec(const ParamSpec& spec);

DistFn point_mass(double at);
DistFn discrete(std::span<const Atom> atoms);
DistFn exponential(double rate, double shift = 0.0);

/// Pointwise F * G.
DistFn product(const DistFn& f, const DistFn& g);
/// Pointwise F + G - F G, evaluated as 1 - (1 - F)(1 - G).
DistFn comix(const DistFn& f, const DistFn& g);
/// x -> 1 - F(-x); left and right limits trade places.
DistFn reverse(const DistFn& f);
/// Pointwise t F + (1 - t) G. Both must be representable jointly.
DistFn mix(const DistFn& f, const DistFn& g, double t);

/// Where a pointwise comparison failed.
struct OrderWitness {
  enum class Side { Left, Value, Right };
  double x = 0.0;
  Side side = Side::Value;
  double lhs = 0.0;
  double rhs = 0.0;
};

/// First point (in increasing x) where f > g + tol; nullopt when f <= g.
/// Constant and affine pieces are compared exactly through their endpoint
/// limits; other pieces are sampled at 17 interior points.
std::optional<OrderWitness> find_order_violation(const DistFn& f,
                                                 const DistFn& g,
                                                 double tol = 0.0);
bool leq(const DistFn& f, const DistFn& g, double tol = 0.0);

/// Step function with grid points x_i = a + i (b - a) / (n - 1): D(x_i) is
/// F(x_i) for i < n - 1 and D(b) = F(+inf).
DistFn discretize(const DistFn& f, std::size_t n, double a, double b);
DistFn discretize(const ParamSpec& spec, std::size_t n, double a, double b);
/// Sup-norm bound of |discretize(f, n, a, b) - f|.
double discretization_bound(const DistFn& f, std::size_t n, double a,
                            double b);

/// Sorted union of breakpoints.
std::vector<double> merged_breakpoints(std::span<const DistFn* const> fns);

}  // namespace shockcop
