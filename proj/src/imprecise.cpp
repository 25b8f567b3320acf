#include "shockcop/imprecise.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "shockcop/error.hpp"
#include "shockcop/rng.hpp"

namespace shockcop {

const char* to_string(Condition c) {
  switch (c) {
    case Condition::Boundary:
      return "boundary";
    case Condition::IC1:
      return "IC1";
    case Condition::IC2:
      return "IC2";
    case Condition::IC3:
      return "IC3";
    case Condition::IC4:
      return "IC4";
    case Condition::Order:
      return "order";
    case Condition::C3:
      return "C3";
    case Condition::LowerStandardized:
      return "lower-standardized";
    case Condition::UpperStandardized:
      return "upper-standardized";
    case Condition::PB1:
      return "pbox-i";
    case Condition::PB2:
      return "pbox-ii";
    case Condition::PB3:
      return "pbox-iii";
    case Condition::PB4:
      return "pbox-iv";
  }
  return "?";
}

bool ConditionReport::pass() const {
  return std::all_of(results.begin(), results.end(), [](const ConditionResult& r) { return r.pass; });
}

const ConditionResult* ConditionReport::find(Condition c) const {
  for (const ConditionResult& r : results) {
    if (r.condition == c) return &r;
  }
  return nullptr;
}

namespace {

GridTable table_of(const CopulaSide& side, std::span<const double> us) {
  if (const auto* c = std::get_if<CopulaSpec>(&side)) {
    return parallel::tabulate([c](double u, double v) { return (*c)(u, v); }, us, us);
  }
  return std::get<GridTable>(side);
}

std::vector<double> grid_of(const CopulaPair& p, std::size_t n) {
  for (const CopulaSide* s : {&p.low, &p.up}) {
    if (const auto* t = std::get_if<GridTable>(s)) return t->xs;
  }
  return unit_grid(n);
}

ConditionResult rect_condition(Condition c, const RectForm& form, double tol) {
  const RectMin m = parallel::scan_rectangles(form);
  const GridTable& t = *form.p;
  ConditionResult r{c, m.value >= -tol, {c, {t.xs[m.i1], t.xs[m.i2], t.ys[m.j1], t.ys[m.j2]}, m.value}};
  return r;
}

// Smallest up - low over the grid, with its point.
ConditionResult order_condition(const GridTable& low, const GridTable& up, double tol) {
  ConditionResult r{Condition::Order, true, {Condition::Order, {}, kInf}};
  for (std::size_t i = 0; i < low.nx(); ++i) {
    for (std::size_t j = 0; j < low.ny(); ++j) {
      const double d = up.at(i, j) - low.at(i, j);
      if (d < r.worst.value) r.worst = {Condition::Order, {low.xs[i], low.xs[i], low.ys[j], low.ys[j]}, d};
    }
  }
  r.pass = r.worst.value >= -tol;
  return r;
}

std::vector<ConditionResult> ic_conditions(const GridTable& L, const GridTable& U, double tol) {
  return {
      rect_condition(Condition::IC1, {&L, &U, &L, &L}, tol),
      rect_condition(Condition::IC2, {&U, &L, &L, &L}, tol),
      rect_condition(Condition::IC3, {&U, &U, &U, &L}, tol),
      rect_condition(Condition::IC4, {&U, &U, &L, &U}, tol),
  };
}

void require_same_shape(const GridTable& a, const GridTable& b) {
  if (a.xs != b.xs || a.ys != b.ys) throw InvalidParameter("copula pair tables use different grids");
}

}  // namespace

ConditionReport check_imprecise_copula(const CopulaPair& p, std::size_t n, double tol) {
  const std::vector<double> us = grid_of(p, n);
  const GridTable L = table_of(p.low, us);
  const GridTable U = table_of(p.up, us);
  require_same_shape(L, U);

  ConditionReport rep;
  const AxiomReport la = check_copula_axioms(L);
  const AxiomReport ua = check_copula_axioms(U);
  const double bdev = std::max(la.boundary_deviation, ua.boundary_deviation);
  rep.results.push_back({Condition::Boundary, bdev <= tol, {Condition::Boundary, {}, -bdev}});
  for (ConditionResult& r : ic_conditions(L, U, tol)) rep.results.push_back(r);
  rep.results.push_back(order_condition(L, U, tol));
  return rep;
}

std::vector<ViolationWitness> search_ic_violation(const CopulaPair& p, std::size_t n, double tol) {
  const std::vector<double> us = grid_of(p, n);
  const GridTable L = table_of(p.low, us);
  const GridTable U = table_of(p.up, us);
  require_same_shape(L, U);
  std::vector<ViolationWitness> out;
  for (const ConditionResult& r : ic_conditions(L, U, tol)) {
    if (!r.pass) out.push_back(r.worst);
  }
  const ConditionResult ord = order_condition(L, U, tol);
  if (!ord.pass) out.push_back(ord.worst);
  return out;
}

// ------------------------------------------------------- bivariate p-boxes

namespace {

std::vector<double> extended(std::span<const double> v) {
  std::vector<double> out;
  out.reserve(v.size() + 2);
  if (v.empty() || v.front() != -kInf) out.push_back(-kInf);
  out.insert(out.end(), v.begin(), v.end());
  if (out.back() != kInf) out.push_back(kInf);
  return out;
}

ConditionResult standardized(Condition c, const GridTable& t, double tol) {
  ViolationWitness worst{c, {}, kInf};
  const auto consider = [&worst, c](double value, Rect r) {
    if (value < worst.value) worst = {c, r, value};
  };
  const std::size_t nx = t.nx();
  const std::size_t ny = t.ny();
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      if (i + 1 < nx) consider(t.at(i + 1, j) - t.at(i, j), {t.xs[i], t.xs[i + 1], t.ys[j], t.ys[j]});
      if (j + 1 < ny) consider(t.at(i, j + 1) - t.at(i, j), {t.xs[i], t.xs[i], t.ys[j], t.ys[j + 1]});
    }
  }
  for (std::size_t i = 0; i < nx; ++i) consider(-std::abs(t.at(i, 0)), {t.xs[i], t.xs[i], -kInf, -kInf});
  for (std::size_t j = 0; j < ny; ++j) consider(-std::abs(t.at(0, j)), {-kInf, -kInf, t.ys[j], t.ys[j]});
  consider(-std::abs(t.at(nx - 1, ny - 1) - 1.0), {kInf, kInf, kInf, kInf});
  return {c, worst.value >= -tol, worst};
}

}  // namespace

ConditionReport check_bivariate_pbox_conditions(const BivariateBound& low,
                                                const BivariateBound& up,
                                                std::span<const double> xs,
                                                std::span<const double> ys, double tol) {
  const std::vector<double> ex = extended(xs);
  const std::vector<double> ey = extended(ys);
  const GridTable L = parallel::tabulate(low.fn(), ex, ey);
  const GridTable U = parallel::tabulate(up.fn(), ex, ey);
  ConditionReport rep;
  rep.results.push_back(standardized(Condition::LowerStandardized, L, tol));
  rep.results.push_back(standardized(Condition::UpperStandardized, U, tol));
  rep.results.push_back(order_condition(L, U, tol));
  const Condition names[] = {Condition::PB1, Condition::PB2, Condition::PB3, Condition::PB4};
  std::size_t k = 0;
  for (ConditionResult r : ic_conditions(L, U, tol)) {
    r.condition = r.worst.condition = names[k++];
    rep.results.push_back(r);
  }
  return rep;
}

// --------------------------------------------------------- coherence

CopulaSpec EnvelopeFamily::lower_bound() const {
  if (family == CopulaFamily::Marshall) return CopulaSpec::marshall(phi_low, second_low);
  return CopulaSpec::maxmin(phi_low, second_up);
}

CopulaSpec EnvelopeFamily::upper_bound() const {
  if (family == CopulaFamily::Marshall) return CopulaSpec::marshall(phi_up, second_up);
  return CopulaSpec::maxmin(phi_up, second_low);
}

CoherenceReport coherence_witness(const EnvelopeFamily& fam, std::size_t n, double tol,
                                  std::uint64_t seed, std::size_t members) {
  CoherenceReport rep;
  const CopulaSpec lo = fam.lower_bound();
  const CopulaSpec hi = fam.upper_bound();
  rep.lower_axioms = check_copula_axioms(lo, n);
  rep.upper_axioms = check_copula_axioms(hi, n);
  if (!rep.lower_axioms.pass(tol) || !rep.upper_axioms.pass(tol)) {
    throw NotAWitness("an envelope copula of the family fails the copula axioms");
  }
  for (const Generator* g : {&fam.phi_low, &fam.phi_up, &fam.second_low, &fam.second_up}) {
    if (!check_generator(*g).pass) throw NotAWitness("an envelope generator is not admissible");
  }

  const std::vector<double> us = unit_grid(n);
  const GridTable L = parallel::tabulate([&lo](double u, double v) { return lo(u, v); }, us, us);
  const GridTable U = parallel::tabulate([&hi](double u, double v) { return hi(u, v); }, us, us);
  Rng rng(seed);
  for (std::size_t m = 0; m < members; ++m) {
    ++rep.members_tried;
    const Generator phi = convex_combination(fam.phi_low, fam.phi_up, uniform01(rng));
    const Generator sec = convex_combination(fam.second_low, fam.second_up, uniform01(rng));
    if (!check_generator(phi).pass || !check_generator(sec).pass) continue;
    ++rep.members_valid;
    const CopulaSpec c = fam.family == CopulaFamily::Marshall ? CopulaSpec::marshall(phi, sec)
                                                              : CopulaSpec::maxmin(phi, sec);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const double v = c(us[i], us[j]);
        rep.max_outside = std::max({rep.max_outside, L.at(i, j) - v, v - U.at(i, j)});
      }
    }
  }
  rep.certified = rep.max_outside <= tol;
  return rep;
}

}  // namespace shockcop
