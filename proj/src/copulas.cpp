#include "shockcop/copulas.hpp"

#include <algorithm>
#include <cmath>

#include "shockcop/error.hpp"

namespace shockcop {

const char* to_string(CopulaFamily f) {
  return f == CopulaFamily::Marshall ? "marshall" : "maxmin";
}

CopulaSpec CopulaSpec::marshall(Generator phi, Generator psi) {
  if (phi.kind() != GeneratorKind::Phi || psi.kind() != GeneratorKind::Psi) {
    throw InvalidParameter("Marshall copula takes generators of kinds (phi, psi)");
  }
  return CopulaSpec(CopulaFamily::Marshall, std::move(phi), std::move(psi));
}

CopulaSpec CopulaSpec::maxmin(Generator phi, Generator chi) {
  if (phi.kind() != GeneratorKind::Phi || chi.kind() != GeneratorKind::Chi) {
    throw InvalidParameter("maxmin copula takes generators of kinds (phi, chi)");
  }
  return CopulaSpec(CopulaFamily::Maxmin, std::move(phi), std::move(chi));
}

double CopulaSpec::operator()(double u, double v) const {
  if (std::isnan(u) || std::isnan(v)) throw InvalidParameter("copula evaluated at NaN");
  if (u <= 0.0 || v <= 0.0) return 0.0;
  if (u >= 1.0) return std::min(v, 1.0);
  if (v >= 1.0) return u;
  double c;
  if (family_ == CopulaFamily::Marshall) {
    // uv min{phi(u)/u, psi(v)/v} without forming the quotients.
    c = std::min(v * phi_(u), u * second_(v));
  } else {
    c = u * v + std::min(u * (1.0 - v), (phi_(u) - u) * (v - second_(v)));
  }
  return std::clamp(c, 0.0, std::min(u, v));
}

double eval_copula(const CopulaSpec& c, double u, double v) { return c(u, v); }

double h_volume(const std::function<double(double, double)>& c, const Rect& r) {
  return (c(r.u2, r.v2) - c(r.u1, r.v2)) + (c(r.u1, r.v1) - c(r.u2, r.v1));
}

double h_volume(const CopulaSpec& c, const Rect& r) {
  return h_volume([&c](double u, double v) { return c(u, v); }, r);
}

AxiomReport check_copula_axioms(const GridTable& t) {
  AxiomReport rep;
  const std::size_t nx = t.nx();
  const std::size_t ny = t.ny();
  for (std::size_t i = 0; i < nx; ++i) {
    rep.boundary_deviation = std::max({rep.boundary_deviation, std::abs(t.at(i, 0)),
                                       std::abs(t.at(i, ny - 1) - t.xs[i])});
  }
  for (std::size_t j = 0; j < ny; ++j) {
    rep.boundary_deviation = std::max({rep.boundary_deviation, std::abs(t.at(0, j)),
                                       std::abs(t.at(nx - 1, j) - t.ys[j])});
  }
  const RectMin m = parallel::scan_rectangles({&t, &t, &t, &t});
  rep.min_volume = m.value;
  rep.worst = {t.xs[m.i1], t.xs[m.i2], t.ys[m.j1], t.ys[m.j2]};
  return rep;
}

AxiomReport check_copula_axioms(const std::function<double(double, double)>& c, std::size_t n) {
  const std::vector<double> us = unit_grid(n);
  return check_copula_axioms(parallel::tabulate(c, us, us));
}

AxiomReport check_copula_axioms(const CopulaSpec& c, std::size_t n) {
  return check_copula_axioms([&c](double u, double v) { return c(u, v); }, n);
}

BivariateBound sklar_compose(const CopulaSpec& c, const DistFn& f, const DistFn& g) {
  return BivariateBound([c, f, g](double x, double y) { return c(f(x), g(y)); },
                        std::string("C_") + to_string(c.family()) + "(F, G)");
}

}  // namespace shockcop
