#include <omp.h>

#include <stdexcept>

#include "shockcop/kernels.hpp"

namespace shockcop::parallel {

GridTable tabulate(const std::function<double(double, double)>& f, std::span<const double> xs,
                   std::span<const double> ys) {
  GridTable t{{xs.begin(), xs.end()}, {ys.begin(), ys.end()}, {}};
  const std::size_t nx = xs.size();
  const std::size_t ny = ys.size();
  t.values.resize(nx * ny);
  double* out = t.values.data();
  const double* x = t.xs.data();
  const double* y = t.ys.data();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(nx); ++i) {
    for (std::size_t j = 0; j < ny; ++j) out[static_cast<std::size_t>(i) * ny + j] = f(x[i], y[j]);
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
  for (const GridTable* t : {form.q, form.r, form.s}) {
    if (t->nx() != nx || t->ny() != ny) throw std::invalid_argument("rectangle tables differ in shape");
  }
  if (nx == 0 || ny == 0) throw std::invalid_argument("empty rectangle tables");

  // Best rectangle per i1; reduced serially afterwards.
  std::vector<RectMin> per_row(nx);
#pragma omp parallel
  {
    std::vector<double> a(ny), b(ny), sa(ny);
    std::vector<std::size_t> arg(ny);
#pragma omp for schedule(dynamic)
    for (std::ptrdiff_t si1 = 0; si1 < static_cast<std::ptrdiff_t>(nx); ++si1) {
      const auto i1 = static_cast<std::size_t>(si1);
      RectMin best;
      bool first = true;
      for (std::size_t i2 = i1; i2 < nx; ++i2) {
        for (std::size_t j = 0; j < ny; ++j) {
          a[j] = P.at(i2, j) - S.at(i1, j);
          b[j] = Q.at(i1, j) - R.at(i2, j);
        }
        // Suffix minimum of a with the smallest index on ties.
        sa[ny - 1] = a[ny - 1];
        arg[ny - 1] = ny - 1;
        for (std::size_t j = ny - 1; j-- > 0;) {
          if (a[j] <= sa[j + 1]) {
            sa[j] = a[j];
            arg[j] = j;
          } else {
            sa[j] = sa[j + 1];
            arg[j] = arg[j + 1];
          }
        }
        for (std::size_t j1 = 0; j1 < ny; ++j1) {
          const double v = sa[j1] + b[j1];
          if (first || v < best.value) {
            best = {v, i1, i2, j1, arg[j1]};
            first = false;
          }
        }
      }
      per_row[i1] = best;
    }
  }
  RectMin best = per_row[0];
  for (std::size_t i = 1; i < nx; ++i) {
    if (per_row[i].value < best.value) best = per_row[i];
  }
  return best;
}

}  // namespace shockcop::parallel
