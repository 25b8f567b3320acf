#include "shockcop/generators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "shockcop/error.hpp"
#include "shockcop/rng.hpp"

namespace shockcop {

namespace {

constexpr double kKnotAgreement = 1e-12;

double comix_value(double a, double b) { return 1.0 - (1.0 - a) * (1.0 - b); }

bool by_u(const Knot& k, double u) { return k.u < u; }

}  // namespace

const char* to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::Phi:
      return "phi";
    case GeneratorKind::Psi:
      return "psi";
    case GeneratorKind::Chi:
      return "chi";
  }
  return "?";
}

Generator::Generator(GeneratorKind kind, std::vector<Knot> knots)
    : kind_(kind), knots_(std::move(knots)) {
  if (knots_.size() < 2) throw InvalidParameter("generator needs at least two knots");
  if (knots_.front().u != 0.0 || knots_.back().u != 1.0) {
    throw InvalidParameter("generator knots must start at u=0 and end at u=1");
  }
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    if (!std::isfinite(knots_[i].g)) throw InvalidParameter("non-finite generator value");
    if (i > 0 && !(knots_[i - 1].u < knots_[i].u)) {
      throw InvalidParameter("generator knots must have strictly increasing u");
    }
  }
}

Generator Generator::identity(GeneratorKind kind) {
  return Generator(kind, {{0.0, 0.0}, {1.0, 1.0}});
}

double Generator::interpolate(double u) const {
  if (std::isnan(u)) throw InvalidParameter("generator evaluated at NaN");
  if (u <= 0.0) return knots_.front().g;
  if (u >= 1.0) return knots_.back().g;
  const auto it = std::lower_bound(knots_.begin(), knots_.end(), u, by_u);
  if (it->u == u) return it->g;
  const Knot& a = *(it - 1);
  const Knot& b = *it;
  return a.g + (b.g - a.g) * ((u - a.u) / (b.u - a.u));
}

double Generator::operator()(double u) const {
  if (std::isnan(u)) throw InvalidParameter("generator evaluated at NaN");
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  return interpolate(u);
}

// ---------------------------------------------------------- construction

namespace {

struct Side3 {
  double left, value, right;
};

Side3 sides(const DistFn& f, double x) {
  if (x == -kInf) return {0.0, f.bottom(), f.right_limit(-kInf)};
  if (x == kInf) return {f.left_limit(kInf), f.top(), 1.0};
  return {f.left_limit(x), f.eval(x), f.right_limit(x)};
}

std::vector<double> abscissas(const DistFn& f, const DistFn& g) {
  const DistFn* both[] = {&f, &g};
  std::vector<double> xs = merged_breakpoints(both);
  xs.insert(xs.begin(), -kInf);
  xs.push_back(kInf);
  return xs;
}

// Both functions must not vary together on any open interval.
void require_separable(const DistFn& f, const DistFn& fz, std::span<const double> xs) {
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
    const double a = xs[k];
    const double b = xs[k + 1];
    double p;
    if (a == -kInf && b == kInf) {
      p = 0.0;
    } else if (a == -kInf) {
      p = b - 1.0;
    } else if (b == kInf) {
      p = a + 1.0;
    } else {
      p = a + 0.5 * (b - a);
    }
    if (!f.segment_at(p).is_constant() && !fz.segment_at(p).is_constant()) {
      throw UnsupportedSegmentPair(
          "generator construction needs one of the two distribution functions to be "
          "constant on every open interval; discretize first");
    }
  }
}

template <class Combine>
std::vector<GeneratorKnots> knots_generic(const DistFn& f, const DistFn& fz, Combine op) {
  const std::vector<double> xs = abscissas(f, fz);
  require_separable(f, fz, xs);
  std::vector<GeneratorKnots> out;
  out.reserve(xs.size());
  for (double x : xs) {
    const Side3 a = sides(f, x);
    const Side3 z = sides(fz, x);
    GeneratorKnots k;
    k.x0 = x;
    k.u_minus = op(a.left, z.left);
    k.u_low = op(a.left, z.value);
    k.u_up = op(a.right, z.value);
    k.u_plus = op(a.right, z.right);
    k.g_left = a.left;
    k.g_right = a.right;
    k.fz = z.value;
    out.push_back(k);
  }
  return out;
}

Generator assemble(GeneratorKind kind, std::span<const GeneratorKnots> ks) {
  std::vector<Knot> out;
  out.reserve(4 * ks.size());
  const auto push = [&out](double u, double g) {
    if (!out.empty() && u <= out.back().u) {
      if (u < out.back().u) throw std::logic_error("generator thresholds out of order");
      if (u == 0.0) {
        out.back().g = g;
      } else if (u < 1.0 && std::abs(g - out.back().g) > kKnotAgreement) {
        throw std::logic_error("generator is ambiguous at an interior threshold");
      }
      return;
    }
    out.push_back({u, g});
  };
  for (const GeneratorKnots& k : ks) {
    push(k.u_minus, k.g_left);
    push(k.u_low, k.g_left);
    push(k.u_up, k.g_right);
    push(k.u_plus, k.g_right);
  }
  return Generator(kind, std::move(out));
}

void require_proper(const DistFn& a, const DistFn& fz, const char* who) {
  if (!a.is_proper() || !fz.is_proper()) {
    throw NonProperInput(std::string(who) +
                         ": both distribution functions must equal 1 at +inf");
  }
}

}  // namespace

std::vector<GeneratorKnots> phi_knots(const DistFn& fx, const DistFn& fz) {
  return knots_generic(fx, fz, [](double a, double b) { return a * b; });
}

std::vector<GeneratorKnots> chi_knots(const DistFn& fy, const DistFn& fz) {
  return knots_generic(fy, fz, comix_value);
}

Generator build_phi(const DistFn& fx, const DistFn& fz) {
  require_proper(fx, fz, "build_phi");
  return assemble(GeneratorKind::Phi, phi_knots(fx, fz));
}

Generator build_psi(const DistFn& fy, const DistFn& fz) {
  require_proper(fy, fz, "build_psi");
  return assemble(GeneratorKind::Psi, phi_knots(fy, fz));
}

Generator build_chi(const DistFn& fy, const DistFn& fz) {
  require_proper(fy, fz, "build_chi");
  return assemble(GeneratorKind::Chi, chi_knots(fy, fz));
}

// ---------------------------------------------------------- star maps

double phi_star(const Generator& g, double u) {
  if (u <= 0.0) return kInf;
  return g(u) / u;
}

double chi_star(const Generator& g, double w) {
  if (w >= 1.0) return 1.0;
  const double gw = g(w);
  const double den = w - gw;
  if (den <= 0.0) return kInf;
  return (1.0 - gw) / den;
}

// ---------------------------------------------------------- checks

namespace {

struct StarPoint {
  double u;
  double star;
};

bool star_increases(double before, double after, double tol) {
  if (before == kInf) return false;
  if (after == kInf) return true;
  return after > before + tol * std::max(1.0, std::abs(before));
}

}  // namespace

GeneratorCheck check_generator(const Generator& g, double tol) {
  const bool chi = g.kind() == GeneratorKind::Chi;
  const char* monotone = chi ? "F2" : "P1";
  const char* boundary = chi ? "F1" : "P2";
  const char* star = chi ? "F3" : "P3";
  const auto fail = [](const char* what, double a, double b) {
    return GeneratorCheck{false, what, a, b};
  };
  const auto ks = g.knots();

  if (ks.front().g < -tol) return fail(boundary, 0.0, 0.0);
  if (ks.back().g > 1.0 + tol) return fail(boundary, 1.0, 1.0);
  for (std::size_t i = 1; i < ks.size(); ++i) {
    if (ks[i].g < ks[i - 1].g - tol) return fail(monotone, ks[i - 1].u, ks[i].u);
  }

  // Evaluation points in increasing order; the last two stand for 1- and 1.
  std::vector<Knot> pts;
  pts.reserve(2 * ks.size() + 1);
  for (std::size_t i = 0; i < ks.size(); ++i) {
    if (i > 0) {
      const double m = ks[i - 1].u + 0.5 * (ks[i].u - ks[i - 1].u);
      pts.push_back({m, g.interpolate(m)});
    }
    pts.push_back(ks[i]);
  }
  pts.push_back({1.0, 1.0});

  if (chi) {
    for (const Knot& p : pts) {
      if (p.g > p.u + tol) return fail(star, p.u, p.u);
    }
  }

  std::vector<StarPoint> stars;
  stars.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Knot& p = pts[i];
    const bool last = i + 1 == pts.size();
    if (!chi) {
      if (p.u <= 0.0) continue;
      stars.push_back({p.u, p.g / p.u});
    } else if (last) {
      stars.push_back({1.0, 1.0});
    } else {
      const double den = p.u - p.g;
      // 1- with g(1-) = 1 is 0/0; the last segment already carries the limit.
      if (p.u >= 1.0 && den <= 0.0) continue;
      stars.push_back({p.u, den <= 0.0 ? kInf : (1.0 - p.g) / den});
    }
  }
  for (std::size_t i = 1; i < stars.size(); ++i) {
    if (star_increases(stars[i - 1].star, stars[i].star, tol)) {
      return fail(star, stars[i - 1].u, stars[i].u);
    }
  }
  return {};
}

AssociationReport check_association(const Generator& g, const DistFn& base,
                                    const DistFn& target) {
  const bool chi = g.kind() == GeneratorKind::Chi;
  AssociationReport rep;
  const auto probe = [&](double x, double b, double t) {
    if (chi ? !(b < 1.0) : !(b > 0.0)) return;
    ++rep.points;
    const double dev = std::abs(g(b) - t);
    if (dev > rep.max_deviation) {
      rep.max_deviation = dev;
      rep.worst_x = x;
    }
  };
  const DistFn* both[] = {&base, &target};
  const std::vector<double> xs = merged_breakpoints(both);

  probe(-kInf, base.bottom(), target.bottom());
  probe(-kInf, base.right_limit(-kInf), target.right_limit(-kInf));
  for (double x : xs) {
    probe(x, base.left_limit(x), target.left_limit(x));
    probe(x, base.eval(x), target.eval(x));
    probe(x, base.right_limit(x), target.right_limit(x));
  }
  probe(kInf, base.left_limit(kInf), target.left_limit(kInf));
  probe(kInf, base.top(), target.top());

  // Interior samples where either function is not a step.
  for (std::size_t k = 0; k <= xs.size(); ++k) {
    const double lo = k == 0 ? -kInf : xs[k - 1];
    const double hi = k == xs.size() ? kInf : xs[k];
    double p = 0.0;
    if (std::isfinite(lo) && std::isfinite(hi)) {
      p = lo + 0.5 * (hi - lo);
    } else if (std::isfinite(lo)) {
      p = lo + 1.0;
    } else if (std::isfinite(hi)) {
      p = hi - 1.0;
    }
    if (base.segment_at(p).is_constant() && target.segment_at(p).is_constant()) continue;
    for (int i = 1; i <= 17; ++i) {
      double x;
      if (std::isfinite(lo) && std::isfinite(hi)) {
        x = lo + (hi - lo) * i / 18.0;
      } else if (std::isfinite(lo)) {
        x = lo + std::ldexp(1.0, i - 9);
      } else if (std::isfinite(hi)) {
        x = hi - std::ldexp(1.0, i - 9);
      } else {
        x = i - 9;
      }
      probe(x, base.eval(x), target.eval(x));
    }
  }
  return rep;
}

namespace {

std::vector<double> merged_knot_u(const Generator& a, const Generator& b) {
  std::vector<double> us;
  us.reserve(a.knots().size() + b.knots().size());
  for (const Knot& k : a.knots()) us.push_back(k.u);
  for (const Knot& k : b.knots()) us.push_back(k.u);
  std::sort(us.begin(), us.end());
  us.erase(std::unique(us.begin(), us.end()), us.end());
  return us;
}

}  // namespace

OrderCheck check_order(const Generator& g1, const Generator& g2, double tol) {
  const std::vector<double> us = merged_knot_u(g1, g2);
  const auto test = [&](double u) -> std::optional<OrderCheck> {
    const double a = g1.interpolate(u);
    const double b = g2.interpolate(u);
    if (a > b + tol) return OrderCheck{false, u, a, b};
    return std::nullopt;
  };
  for (std::size_t i = 0; i < us.size(); ++i) {
    if (i > 0) {
      if (auto r = test(us[i - 1] + 0.5 * (us[i] - us[i - 1]))) return *r;
    }
    if (auto r = test(us[i])) return *r;
  }
  return {};
}

namespace {

Generator pointwise(const Generator& a, const Generator& b, bool take_min) {
  const auto pick = [take_min](double x, double y) {
    return take_min ? std::min(x, y) : std::max(x, y);
  };
  const std::vector<double> us = merged_knot_u(a, b);
  std::vector<Knot> out;
  out.reserve(2 * us.size());
  for (std::size_t i = 0; i < us.size(); ++i) {
    const double va = a.interpolate(us[i]);
    const double vb = b.interpolate(us[i]);
    if (i > 0) {
      const double u0 = us[i - 1];
      const double da = a.interpolate(u0) - b.interpolate(u0);
      const double db = va - vb;
      if ((da < 0.0 && db > 0.0) || (da > 0.0 && db < 0.0)) {
        const double uc = u0 + (us[i] - u0) * (da / (da - db));
        if (uc > u0 && uc < us[i]) out.push_back({uc, pick(a.interpolate(uc), b.interpolate(uc))});
      }
    }
    out.push_back({us[i], pick(va, vb)});
  }
  return Generator(a.kind(), std::move(out));
}

}  // namespace

Envelope envelope_generators(std::span<const Generator> gs) {
  if (gs.empty()) throw InvalidParameter("envelope of an empty generator family");
  Generator lo = gs.front();
  Generator hi = gs.front();
  for (std::size_t i = 1; i < gs.size(); ++i) {
    if (gs[i].kind() != lo.kind()) throw InvalidParameter("envelope of mixed generator kinds");
    lo = pointwise(lo, gs[i], true);
    hi = pointwise(hi, gs[i], false);
  }
  GeneratorCheck lc = check_generator(lo);
  GeneratorCheck uc = check_generator(hi);
  return {std::move(lo), std::move(hi), std::move(lc), std::move(uc)};
}

Generator convex_combination(const Generator& g1, const Generator& g2, double t) {
  if (g1.kind() != g2.kind()) throw InvalidParameter("convex combination of mixed kinds");
  if (!(t >= 0.0 && t <= 1.0)) throw InvalidParameter("convex weight outside [0,1]");
  const std::vector<double> us = merged_knot_u(g1, g2);
  std::vector<Knot> out;
  out.reserve(us.size());
  for (double u : us) out.push_back({u, t * g1.interpolate(u) + (1.0 - t) * g2.interpolate(u)});
  return Generator(g1.kind(), std::move(out));
}

// ---------------------------------------------------------- extension probe

namespace {

// Open intervals of [0, 1] missed by the image of f.
std::vector<std::pair<double, double>> image_gaps(const DistFn& f) {
  std::vector<double> vals{0.0, f.right_limit(-kInf)};
  for (double x : f.breakpoints()) {
    vals.push_back(f.left_limit(x));
    vals.push_back(f.eval(x));
    vals.push_back(f.right_limit(x));
  }
  vals.push_back(f.left_limit(kInf));
  vals.push_back(f.top());
  vals.push_back(1.0);
  std::vector<std::pair<double, double>> gaps;
  for (std::size_t i = 1; i < vals.size(); ++i) {
    if (vals[i] > vals[i - 1]) gaps.emplace_back(vals[i - 1], vals[i]);
  }
  // Non-constant pieces fill their range; only jumps remain as gaps. The
  // list above already treats consecutive values across a piece as a gap, so
  // drop the ones spanned by a varying segment.
  std::vector<std::pair<double, double>> out;
  const auto segs = f.segments();
  const auto xs = f.breakpoints();
  for (const auto& gap : gaps) {
    bool filled = false;
    for (std::size_t k = 0; k < segs.size() && !filled; ++k) {
      if (segs[k].is_constant()) continue;
      const double lo = k == 0 ? f.right_limit(-kInf) : f.right_limit(xs[k - 1]);
      const double hi = k == xs.size() ? f.left_limit(kInf) : f.left_limit(xs[k]);
      if (lo <= gap.first && gap.second <= hi) filled = true;
    }
    if (!filled) out.push_back(gap);
  }
  return out;
}

// g with the knots inside (a, b) replaced by one knot (u, v). The one-sided
// end values g(0+) and g(1-) become v0 and v1 when the gap reaches them.
Generator reshaped(const Generator& g, double a, double b, double u, double v, double v0, double v1) {
  std::vector<Knot> out;
  for (const Knot& k : g.knots()) {
    if (k.u < a) out.push_back(k);
  }
  out.push_back({a, a == 0.0 ? v0 : g.interpolate(a)});
  out.push_back({u, v});
  out.push_back({b, b == 1.0 ? v1 : g.interpolate(b)});
  for (const Knot& k : g.knots()) {
    if (k.u > b) out.push_back(k);
  }
  return Generator(g.kind(), std::move(out));
}

}  // namespace

ExtensionProbe probe_extensions(const Generator& g, const DistFn& base, const DistFn& target,
                                std::uint64_t seed, std::size_t trials_per_gap) {
  ExtensionProbe probe;
  Rng rng(seed);
  const double tol = 1e-12;
  for (const auto& [a, b] : image_gaps(base)) {
    ++probe.gaps;
    ExtensionGap lowest{}, highest{};
    bool have_low = false, have_high = false;
    // Monotonicity confines values to [g(a), g(b)]; a free end value widens
    // the range to 0 or 1.
    const double ga = a == 0.0 ? 0.0 : g.interpolate(a);
    const double gb = b == 1.0 ? 1.0 : g.interpolate(b);
    for (std::size_t t = 0; t < trials_per_gap; ++t) {
      ++probe.trials;
      const double u = uniform(rng, a, b);
      if (!(u > a && u < b)) continue;
      const double v = uniform(rng, ga, gb);
      const double v0 = uniform(rng, 0.0, v);
      const double v1 = uniform(rng, v, 1.0);
      const Generator cand = reshaped(g, a, b, u, v, v0, v1);
      if (!check_generator(cand).pass) continue;
      if (!check_association(cand, base, target).pass(tol)) continue;
      const double c = g.interpolate(u);
      if (v < c - tol && (!have_low || v - c < lowest.found - lowest.canonical)) {
        lowest = {u, c, v};
        have_low = true;
      }
      if (v > c + tol && (!have_high || v - c > highest.found - highest.canonical)) {
        highest = {u, c, v};
        have_high = true;
      }
    }
    if (have_low) probe.below.push_back(lowest);
    if (have_high) probe.above.push_back(highest);
  }
  return probe;
}

}  // namespace shockcop
