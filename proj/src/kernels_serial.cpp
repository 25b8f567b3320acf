#include <stdexcept>

#include "shockcop/kernels.hpp"

namespace shockcop {

std::vector<double> unit_grid(std::size_t n) {
  if (n < 2) throw std::invalid_argument("unit grid needs n >= 2");
  std::vector<double> us(n);
  for (std::size_t i = 0; i < n; ++i) {
    us[i] = static_cast<double>(i) / static_cast<double>(n - 1);
  }
  return us;
}

namespace serial {

GridTable tabulate(const std::function<double(double, double)>& f, std::span<const double> xs,
                   std::span<const double> ys) {
  GridTable t{{xs.begin(), xs.end()}, {ys.begin(), ys.end()}, {}};
  t.values.resize(xs.size() * ys.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < ys.size(); ++j) t.values[i * ys.size() + j] = f(xs[i], ys[j]);
  }
  return t;
}

RectMin scan_rectangles(const RectForm& form) {
  const GridTable& P = *form.p;
  const GridTable& Q = *form.q;
  const GridTable& R = *form.r;
  const GridTable& S = *form.s;
  const std::size_t nx = P.nx();
  const std::size_t ny = P.ny();
  RectMin best;
  bool first = true;
  for (std::size_t i1 = 0; i1 < nx; ++i1) {
    for (std::size_t i2 = i1; i2 < nx; ++i2) {
      for (std::size_t j1 = 0; j1 < ny; ++j1) {
        const double b = Q.at(i1, j1) - R.at(i2, j1);
        for (std::size_t j2 = j1; j2 < ny; ++j2) {
          const double v = (P.at(i2, j2) - S.at(i1, j2)) + b;
          if (first || v < best.value) {
            best = {v, i1, i2, j1, j2};
            first = false;
          }
        }
      }
    }
  }
  return best;
}

}  // namespace serial
}  // namespace shockcop
