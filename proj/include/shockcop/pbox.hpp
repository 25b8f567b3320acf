#pragma once

#include <utility>

#include "shockcop/distfn.hpp"

namespace shockcop {

/// Pair of distribution functions with lower <= upper everywhere.
class PBox {
 public:
  PBox() = default;

  const DistFn& lower() const noexcept { return lower_; }
  const DistFn& upper() const noexcept { return upper_; }
  bool is_precise() const { return lower_ == upper_; }

 private:
  friend PBox make_pbox(DistFn lower, DistFn upper);
  PBox(DistFn lower, DistFn upper) : lower_(std::move(lower)), upper_(std::move(upper)) {}

  DistFn lower_;
  DistFn upper_;
};

/// Throws OrderViolation (carrying the first offending abscissa) when
/// lower <= upper fails, InvalidParameter when either side is not
/// standardized.
PBox make_pbox(DistFn lower, DistFn upper);
PBox precise(const DistFn& f);

/// Bounds of max{A, B} for independent A, B: products of the sides.
PBox max_pbox(const PBox& a, const PBox& b);
/// Bounds of min{A, B}: comix of the sides.
PBox min_pbox(const PBox& a, const PBox& b);

/// lowF(x, y) = lowF_X(x) lowF_Y(y), upF(x, y) = upF_X(x) upF_Y(y).
class FactorizingBivariatePBox {
 public:
  FactorizingBivariatePBox(PBox x, PBox y) : x_(std::move(x)), y_(std::move(y)) {}

  double lower(double x, double y) const { return x_.lower()(x) * y_.lower()(y); }
  double upper(double x, double y) const { return x_.upper()(x) * y_.upper()(y); }
  std::pair<double, double> operator()(double x, double y) const {
    return {lower(x, y), upper(x, y)};
  }

  const PBox& x() const noexcept { return x_; }
  const PBox& y() const noexcept { return y_; }

 private:
  PBox x_;
  PBox y_;
};

inline FactorizingBivariatePBox factorizing(PBox x, PBox y) {
  return FactorizingBivariatePBox(std::move(x), std::move(y));
}

}  // namespace shockcop
