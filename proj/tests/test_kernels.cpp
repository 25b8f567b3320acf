#include <doctest.h>

#include <cmath>
#include <vector>

#include "shockcop/kernels.hpp"
#include "shockcop/rng.hpp"

using namespace shockcop;

namespace {

GridTable random_table(Rng& rng, std::size_t nx, std::size_t ny, bool coarse) {
  GridTable t;
  for (std::size_t i = 0; i < nx; ++i) t.xs.push_back(static_cast<double>(i));
  for (std::size_t j = 0; j < ny; ++j) t.ys.push_back(static_cast<double>(j));
  for (std::size_t k = 0; k < nx * ny; ++k) {
    // Coarse values produce many exact ties.
    t.values.push_back(coarse ? static_cast<double>(below(rng, 4)) : uniform(rng, -1.0, 1.0));
  }
  return t;
}

double form_value(const RectForm& f, const RectMin& m) {
  return (f.p->at(m.i2, m.j2) - f.s->at(m.i1, m.j2)) + (f.q->at(m.i1, m.j1) - f.r->at(m.i2, m.j1));
}

}  // namespace

TEST_CASE("unit grid") {
  const std::vector<double> g = unit_grid(11);
  REQUIRE(g.size() == 11);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 1.0);
  CHECK(g[3] == 0.3);
  // The doubled grid contains the original points bit for bit.
  const std::vector<double> d = unit_grid(21);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(d[2 * i] == g[i]);
}

TEST_CASE("tabulate: parallel equals serial") {
  const auto f = [](double x, double y) { return std::sin(x) * std::exp(-y) + x * y; };
  const std::vector<double> xs = unit_grid(37);
  const std::vector<double> ys = unit_grid(23);
  const GridTable a = parallel::tabulate(f, xs, ys);
  const GridTable b = serial::tabulate(f, xs, ys);
  CHECK(a.values == b.values);
  CHECK(a.at(5, 7) == f(xs[5], ys[7]));
}

TEST_CASE("rectangle scan: parallel minimum equals the brute-force reference") {
  Rng rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t nx = 1 + below(rng, 12);
    const std::size_t ny = 1 + below(rng, 12);
    const bool coarse = trial % 3 == 0;
    const GridTable p = random_table(rng, nx, ny, coarse);
    const GridTable q = random_table(rng, nx, ny, coarse);
    const GridTable r = random_table(rng, nx, ny, coarse);
    const GridTable s = random_table(rng, nx, ny, coarse);
    for (const RectForm& f : {RectForm{&p, &q, &r, &s}, RectForm{&p, &p, &p, &p}, RectForm{&q, &p, &p, &p}}) {
      const RectMin a = parallel::scan_rectangles(f);
      const RectMin b = serial::scan_rectangles(f);
      CHECK(a.value == b.value);
      // Witnesses may differ on ties; each must reproduce its value.
      CHECK(a.i1 <= a.i2);
      CHECK(a.j1 <= a.j2);
      CHECK(form_value(f, a) == a.value);
      CHECK(form_value(f, b) == b.value);
    }
  }
}

TEST_CASE("rectangle scan of a 2-increasing table is non-negative") {
  const std::vector<double> us = unit_grid(30);
  const GridTable t = parallel::tabulate([](double u, double v) { return u * v; }, us, us);
  const RectMin m = parallel::scan_rectangles({&t, &t, &t, &t});
  CHECK(m.value >= -1e-16);
  // Degenerate rectangles give exactly zero.
  CHECK(m.value <= 0.0);
}
