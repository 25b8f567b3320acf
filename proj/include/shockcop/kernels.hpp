#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace shockcop {

/// Values of a bivariate function on a product grid, row-major in x.
struct GridTable {
  std::vector<double> xs;
  std::vector<double> ys;
  std::vector<double> values;

  std::size_t nx() const noexcept { return xs.size(); }
  std::size_t ny() const noexcept { return ys.size(); }
  double at(std::size_t i, std::size_t j) const { return values[i * ys.size() + j]; }
};

/// u_i = i / (n - 1), i = 0..n-1; the last point is exactly 1.
std::vector<double> unit_grid(std::size_t n);

/// Smallest value of P(i2,j2) + Q(i1,j1) - R(i2,j1) - S(i1,j2) over all
/// i1 <= i2, j1 <= j2 (degenerate rectangles included), evaluated as
/// (P - S) + (Q - R).
struct RectMin {
  double value = 0.0;
  std::size_t i1 = 0, i2 = 0, j1 = 0, j2 = 0;
};

/// The four tables entering one rectangle inequality. All share the grid.
struct RectForm {
  const GridTable* p;
  const GridTable* q;
  const GridTable* r;
  const GridTable* s;
};

namespace parallel {

/// OpenMP over rows; the result does not depend on the schedule.
GridTable tabulate(const std::function<double(double, double)>& f, std::span<const double> xs,
                   std::span<const double> ys);
/// O(nx^2 ny) scan with suffix minima, parallel over i1.
RectMin scan_rectangles(const RectForm& form);

}  // namespace parallel

namespace serial {

GridTable tabulate(const std::function<double(double, double)>& f, std::span<const double> xs,
                   std::span<const double> ys);
/// Brute force over all rectangles; reference for the parallel kernel.
/// Ties resolve to the lexicographically smallest (i1, i2, j1, j2).
RectMin scan_rectangles(const RectForm& form);

}  // namespace serial

}  // namespace shockcop
