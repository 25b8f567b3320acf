#include "shockcop/distfn.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <string>

#include "shockcop/error.hpp"

namespace shockcop {

namespace {

// Slack allowed between a segment's end limit and the stored breakpoint limit.
constexpr double kLimitSlack = 1e-12;

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

std::string describe(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace

// ---------------------------------------------------------------- Segment

Segment Segment::constant(double value) {
  Segment s;
  s.kind_ = Kind::Constant;
  s.offset_ = value;
  return s;
}

Segment Segment::affine(double offset, double slope, double origin) {
  if (slope == 0.0) return constant(offset);
  Segment s;
  s.kind_ = Kind::Affine;
  s.offset_ = offset;
  s.coef_ = slope;
  s.origin_ = origin;
  return s;
}

Segment Segment::exponential(double offset, double coef, double rate,
                             double origin) {
  if (coef == 0.0) return constant(offset);
  if (rate == 0.0) return constant(offset + coef);
  Segment s;
  s.kind_ = Kind::Exponential;
  s.offset_ = offset;
  s.coef_ = coef;
  s.rate_ = rate;
  s.origin_ = origin;
  return s;
}

double Segment::eval(double x) const {
  switch (kind_) {
    case Kind::Constant:
      return offset_;
    case Kind::Affine:
      return offset_ + coef_ * (x - origin_);
    case Kind::Exponential:
      return offset_ + coef_ * std::exp(rate_ * (x - origin_));
  }
  return offset_;
}

double Segment::limit(double x) const {
  if (std::isfinite(x)) return eval(x);
  switch (kind_) {
    case Kind::Constant:
      return offset_;
    case Kind::Affine:
      return (coef_ > 0) == (x > 0) ? kInf : -kInf;
    case Kind::Exponential: {
      const bool decays = (rate_ > 0) != (x > 0);
      if (decays) return offset_;
      return coef_ > 0 ? kInf : -kInf;
    }
  }
  return offset_;
}

bool Segment::is_monotone() const {
  switch (kind_) {
    case Kind::Constant:
      return true;
    case Kind::Affine:
      return coef_ >= 0;
    case Kind::Exponential:
      return coef_ * rate_ >= 0;
  }
  return true;
}

Segment Segment::scaled(double k) const {
  Segment s = *this;
  s.offset_ *= k;
  s.coef_ *= k;
  if (s.coef_ == 0.0) return constant(s.offset_);
  return s;
}

Segment Segment::plus(double d) const {
  Segment s = *this;
  s.offset_ += d;
  return s;
}

Segment Segment::complement() const {
  Segment s = *this;
  s.offset_ = 1.0 - offset_;
  s.coef_ = -coef_;
  return s;
}

Segment Segment::reflected() const {
  switch (kind_) {
    case Kind::Constant:
      return *this;
    case Kind::Affine:
      return affine(offset_, -coef_, -origin_);
    case Kind::Exponential:
      return exponential(offset_, coef_, -rate_, -origin_);
  }
  return *this;
}

Segment product(const Segment& a, const Segment& b) {
  if (a.is_constant()) return b.scaled(a.offset());
  if (b.is_constant()) return a.scaled(b.offset());
  throw UnsupportedSegmentPair(
      "product of two non-constant pieces is not representable; discretize "
      "first");
}

Segment mixed(const Segment& a, const Segment& b, double t) {
  const Segment ta = a.scaled(t);
  const Segment tb = b.scaled(1.0 - t);
  if (ta.is_constant()) return tb.plus(ta.offset());
  if (tb.is_constant()) return ta.plus(tb.offset());
  using K = Segment::Kind;
  if (ta.kind() == K::Affine && tb.kind() == K::Affine) {
    const double at = ta.origin();
    return Segment::affine(
        ta.offset() + tb.offset() + tb.coef() * (at - tb.origin()),
        ta.coef() + tb.coef(), at);
  }
  if (ta.kind() == K::Exponential && tb.kind() == K::Exponential &&
      ta.rate() == tb.rate()) {
    const double at = ta.origin();
    return Segment::exponential(
        ta.offset() + tb.offset(),
        ta.coef() + tb.coef() * std::exp(ta.rate() * (at - tb.origin())),
        ta.rate(), at);
  }
  throw UnsupportedSegmentPair(
      "mixture of these pieces is not a single piece; discretize first");
}

// ---------------------------------------------------------------- DistFn

DistFn::DistFn() : segments_{Segment::constant(0.0)} {}

DistFn::DistFn(std::vector<double> breakpoints, std::vector<Limits> limits,
               std::vector<Segment> segments, double bottom, double top)
    : xs_(std::move(breakpoints)),
      limits_(std::move(limits)),
      segments_(std::move(segments)),
      bottom_(bottom),
      top_(top) {
  validate();
}

DistFn DistFn::constant(double c) {
  return DistFn({}, {}, {Segment::constant(c)}, 0.0, 1.0);
}

void DistFn::validate() const {
  const auto fail = [](const std::string& what) {
    throw InvalidParameter("invalid distribution function: " + what);
  };
  const std::size_t n = xs_.size();
  if (limits_.size() != n) fail("one Limits entry per breakpoint expected");
  if (segments_.size() != n + 1) fail("one more segment than breakpoints expected");
  if (!(bottom_ >= 0.0 && bottom_ <= 1.0)) fail("value at -inf outside [0,1]");
  if (!(top_ >= 0.0 && top_ <= 1.0)) fail("value at +inf outside [0,1]");
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(xs_[i])) fail("non-finite breakpoint");
    if (i > 0 && !(xs_[i - 1] < xs_[i])) fail("breakpoints not strictly increasing");
    const Limits& l = limits_[i];
    if (!(l.left >= 0.0 && l.right <= 1.0 && l.left <= l.value &&
          l.value <= l.right)) {
      fail("limits at x=" + describe(xs_[i]) + " violate left <= value <= right in [0,1]");
    }
  }
  for (std::size_t k = 0; k <= n; ++k) {
    const Segment& s = segments_[k];
    if (!s.is_monotone()) fail("decreasing segment");
    const double lo_x = k == 0 ? -kInf : xs_[k - 1];
    const double hi_x = k == n ? kInf : xs_[k];
    const double lo = s.limit(lo_x);
    const double hi = s.limit(hi_x);
    if (!std::isfinite(lo) || !std::isfinite(hi)) fail("unbounded segment");
    const double lo_ref = k == 0 ? lo : limits_[k - 1].right;
    const double hi_ref = k == n ? hi : limits_[k].left;
    if (std::abs(lo - lo_ref) > kLimitSlack || std::abs(hi - hi_ref) > kLimitSlack) {
      fail("segment limits disagree with breakpoint limits near x=" +
           describe(k == 0 ? hi_x : lo_x));
    }
    if (lo < -kLimitSlack || hi > 1.0 + kLimitSlack) fail("segment leaves [0,1]");
  }
  if (segments_.front().limit(-kInf) < bottom_ - kLimitSlack) {
    fail("value at -inf exceeds the limit from the right");
  }
  if (segments_.back().limit(kInf) > top_ + kLimitSlack) {
    fail("value at +inf below the limit from the left");
  }
}

double DistFn::eval(double x) const {
  if (std::isnan(x)) throw InvalidParameter("eval at NaN");
  if (x == -kInf) return bottom_;
  if (x == kInf) return top_;
  const auto it = std::lower_bound(xs_.begin(), xs_.end(), x);
  const auto k = static_cast<std::size_t>(it - xs_.begin());
  if (it != xs_.end() && *it == x) return limits_[k].value;
  const double lo = k == 0 ? clamp01(segments_[0].limit(-kInf)) : limits_[k - 1].right;
  const double hi =
      k == xs_.size() ? clamp01(segments_.back().limit(kInf)) : limits_[k].left;
  return std::clamp(segments_[k].eval(x), lo, hi);
}

double DistFn::left_limit(double x) const {
  if (std::isnan(x)) throw InvalidParameter("left_limit at NaN");
  if (x == -kInf) return bottom_;
  if (x == kInf) return clamp01(segments_.back().limit(kInf));
  const auto it = std::lower_bound(xs_.begin(), xs_.end(), x);
  if (it != xs_.end() && *it == x) return limits_[static_cast<std::size_t>(it - xs_.begin())].left;
  return eval(x);
}

double DistFn::right_limit(double x) const {
  if (std::isnan(x)) throw InvalidParameter("right_limit at NaN");
  if (x == -kInf) return clamp01(segments_.front().limit(-kInf));
  if (x == kInf) return top_;
  const auto it = std::lower_bound(xs_.begin(), xs_.end(), x);
  if (it != xs_.end() && *it == x) return limits_[static_cast<std::size_t>(it - xs_.begin())].right;
  return eval(x);
}

const Segment& DistFn::segment_at(double x) const {
  const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  return segments_[static_cast<std::size_t>(it - xs_.begin())];
}

bool DistFn::is_step() const noexcept {
  return std::all_of(segments_.begin(), segments_.end(),
                     [](const Segment& s) { return s.is_constant(); });
}

std::pair<double, double> DistFn::support_hint() const {
  double lo = xs_.empty() ? 0.0 : xs_.front();
  double hi = xs_.empty() ? 0.0 : xs_.back();
  for (const Segment& s : segments_) {
    if (s.kind() != Segment::Kind::Exponential) continue;
    const double reach = 12.0 / std::abs(s.rate());
    if (s.rate() < 0) hi = std::max(hi, s.origin() + reach);
    if (s.rate() > 0) lo = std::min(lo, s.origin() - reach);
  }
  if (lo == hi) {
    lo -= 1.0;
    hi += 1.0;
  }
  return {lo, hi};
}

// ------------------------------------------------------------ construction

DistFn point_mass(double at) {
  if (!std::isfinite(at)) throw InvalidParameter("point mass location must be finite");
  return DistFn({at}, {{0.0, 1.0, 1.0}},
                {Segment::constant(0.0), Segment::constant(1.0)});
}

DistFn discrete(std::span<const Atom> atoms) {
  if (atoms.empty()) throw InvalidParameter("discrete distribution needs at least one atom");
  std::vector<Atom> sorted(atoms.begin(), atoms.end());
  for (const Atom& a : sorted) {
    if (!std::isfinite(a.at)) throw InvalidParameter("atom location must be finite");
    if (!(a.mass >= 0.0) || !std::isfinite(a.mass)) {
      throw InvalidParameter("atom mass must be non-negative, got " + describe(a.mass));
    }
  }
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const Atom& l, const Atom& r) { return l.at < r.at; });
  std::vector<double> xs;
  std::vector<Limits> lims;
  std::vector<Segment> segs{Segment::constant(0.0)};
  double cum = 0.0;
  for (std::size_t i = 0; i < sorted.size();) {
    double mass = 0.0;
    const double at = sorted[i].at;
    for (; i < sorted.size() && sorted[i].at == at; ++i) mass += sorted[i].mass;
    if (mass == 0.0) continue;
    const double before = cum;
    cum += mass;
    xs.push_back(at);
    lims.push_back({before, cum, cum});
    segs.push_back(Segment::constant(cum));
  }
  if (cum > 1.0 + 1e-12) {
    throw InvalidParameter("atom masses sum to " + describe(cum) + " > 1");
  }
  if (cum > 1.0 - 1e-12 && !xs.empty()) {
    // Pin the last cumulative value so the distribution is exactly proper.
    lims.back().value = lims.back().right = 1.0;
    segs.back() = Segment::constant(1.0);
  }
  return DistFn(std::move(xs), std::move(lims), std::move(segs));
}

DistFn exponential(double rate, double shift) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw InvalidParameter("exponential rate must be positive, got " + describe(rate));
  }
  if (!std::isfinite(shift)) throw InvalidParameter("exponential shift must be finite");
  return DistFn({shift}, {{0.0, 0.0, 0.0}},
                {Segment::constant(0.0), Segment::exponential(1.0, -1.0, -rate, shift)});
}

namespace {

DistFn from_piecewise(const PiecewiseSpec& s) {
  std::vector<Segment> segs = s.segments;
  if (segs.empty()) {
    if (s.breakpoints.empty()) {
      throw InvalidParameter("piecewise spec without breakpoints needs a segment");
    }
    if (s.limits.size() != s.breakpoints.size()) {
      throw InvalidParameter("piecewise spec needs one limit triple per breakpoint");
    }
    segs.push_back(Segment::constant(s.limits.front().left));
    for (std::size_t i = 0; i < s.limits.size(); ++i) {
      if (i + 1 < s.limits.size() && s.limits[i].right != s.limits[i + 1].left) {
        throw InvalidParameter(
            "piecewise spec without segments must have right limit equal to the next "
            "left limit");
      }
      segs.push_back(Segment::constant(s.limits[i].right));
    }
  }
  return DistFn(s.breakpoints, s.limits, std::move(segs), 0.0, s.top);
}

}  // namespace

DistFn from_spec(const ParamSpec& spec) {
  return std::visit(
      [](const auto& s) -> DistFn {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, PointMassSpec>) {
          return point_mass(s.at);
        } else if constexpr (std::is_same_v<T, DiscreteSpec>) {
          return discrete(s.atoms);
        } else if constexpr (std::is_same_v<T, ExponentialSpec>) {
          return exponential(s.rate, s.shift);
        } else {
          return from_piecewise(s);
        }
      },
      spec);
}

// -------------------------------------------------------------- algebra

std::vector<double> merged_breakpoints(std::span<const DistFn* const> fns) {
  std::vector<double> xs;
  for (const DistFn* f : fns) xs.insert(xs.end(), f->breakpoints().begin(), f->breakpoints().end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

namespace {

// A point strictly inside the k-th open interval of the partition xs.
double interior_point(std::span<const double> xs, std::size_t k) {
  if (xs.empty()) return 0.0;
  if (k == 0) return xs.front() - 1.0;
  if (k == xs.size()) return xs.back() + 1.0;
  return xs[k - 1] + 0.5 * (xs[k] - xs[k - 1]);
}

// Drop breakpoints that carry no information (continuous, same piece on
// both sides).
DistFn compacted(std::vector<double> xs, std::vector<Limits> lims, std::vector<Segment> segs,
                 double bottom, double top) {
  std::vector<double> ox;
  std::vector<Limits> ol;
  std::vector<Segment> os{segs.front()};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Limits& l = lims[i];
    const bool flat = l.left == l.value && l.value == l.right;
    if (flat && os.back() == segs[i + 1]) continue;
    ox.push_back(xs[i]);
    ol.push_back(l);
    os.push_back(segs[i + 1]);
  }
  return DistFn(std::move(ox), std::move(ol), std::move(os), bottom, top);
}

DistFn combine(const DistFn& f, const DistFn& g,
               const std::function<double(double, double)>& value_op,
               const std::function<Segment(const Segment&, const Segment&)>& segment_op) {
  const DistFn* both[] = {&f, &g};
  const std::vector<double> xs = merged_breakpoints(both);
  std::vector<Limits> lims;
  lims.reserve(xs.size());
  for (double x : xs) {
    lims.push_back({value_op(f.left_limit(x), g.left_limit(x)), value_op(f.eval(x), g.eval(x)),
                    value_op(f.right_limit(x), g.right_limit(x))});
  }
  std::vector<Segment> segs;
  segs.reserve(xs.size() + 1);
  for (std::size_t k = 0; k <= xs.size(); ++k) {
    const double p = interior_point(xs, k);
    segs.push_back(segment_op(f.segment_at(p), g.segment_at(p)));
  }
  return compacted(xs, std::move(lims), std::move(segs), value_op(f.bottom(), g.bottom()),
                   value_op(f.top(), g.top()));
}

}  // namespace

DistFn product(const DistFn& f, const DistFn& g) {
  return combine(
      f, g, [](double a, double b) { return a * b; },
      [](const Segment& a, const Segment& b) { return product(a, b); });
}

DistFn comix(const DistFn& f, const DistFn& g) {
  return combine(
      f, g, [](double a, double b) { return 1.0 - (1.0 - a) * (1.0 - b); },
      [](const Segment& a, const Segment& b) {
        return product(a.complement(), b.complement()).complement();
      });
}

DistFn mix(const DistFn& f, const DistFn& g, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw InvalidParameter("mixture weight outside [0,1]");
  return combine(
      f, g, [t](double a, double b) { return t * a + (1.0 - t) * b; },
      [t](const Segment& a, const Segment& b) { return mixed(a, b, t); });
}

DistFn reverse(const DistFn& f) {
  const auto xs = f.breakpoints();
  const auto lims = f.limits();
  const auto segs = f.segments();
  const std::size_t n = xs.size();
  std::vector<double> rx(n);
  std::vector<Limits> rl(n);
  std::vector<Segment> rs(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = n - 1 - i;
    rx[i] = -xs[j];
    rl[i] = {1.0 - lims[j].right, 1.0 - lims[j].value, 1.0 - lims[j].left};
  }
  for (std::size_t k = 0; k <= n; ++k) rs[k] = segs[n - k].reflected().complement();
  return DistFn(std::move(rx), std::move(rl), std::move(rs), 1.0 - f.top(), 1.0 - f.bottom());
}

// ----------------------------------------------------------- comparison

namespace {

bool exact_pieces(const Segment& a, const Segment& b) {
  return a.kind() != Segment::Kind::Exponential && b.kind() != Segment::Kind::Exponential;
}

double sample_scale(const Segment& a, const Segment& b) {
  double scale = 1.0;
  for (const Segment* s : {&a, &b}) {
    if (s->kind() == Segment::Kind::Exponential) scale = std::max(scale, 1.0 / std::abs(s->rate()));
  }
  return scale;
}

}  // namespace

std::optional<OrderWitness> find_order_violation(const DistFn& f, const DistFn& g, double tol) {
  using Side = OrderWitness::Side;
  std::optional<OrderWitness> found;
  const auto probe = [&](double x, Side side, double lhs, double rhs) {
    if (!found && lhs > rhs + tol) found = OrderWitness{x, side, lhs, rhs};
    return found.has_value();
  };
  const auto probe_interval = [&](std::size_t k, std::span<const double> xs) {
    const double p = interior_point(xs, k);
    const Segment& sf = f.segment_at(p);
    const Segment& sg = g.segment_at(p);
    if (exact_pieces(sf, sg)) return false;
    for (int i = 1; i <= 17; ++i) {
      double x;
      if (xs.empty()) {
        x = (i - 9) * sample_scale(sf, sg);
      } else if (k == 0) {
        x = xs.front() - sample_scale(sf, sg) * std::ldexp(1.0, i - 9);
      } else if (k == xs.size()) {
        x = xs.back() + sample_scale(sf, sg) * std::ldexp(1.0, i - 9);
      } else {
        x = xs[k - 1] + (xs[k] - xs[k - 1]) * i / 18.0;
      }
      if (probe(x, Side::Value, f.eval(x), g.eval(x))) return true;
    }
    return false;
  };

  const DistFn* both[] = {&f, &g};
  const std::vector<double> xs = merged_breakpoints(both);
  if (probe(-kInf, Side::Value, f.bottom(), g.bottom())) return found;
  if (probe(-kInf, Side::Right, f.right_limit(-kInf), g.right_limit(-kInf))) return found;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (probe_interval(k, xs)) return found;
    const double x = xs[k];
    if (probe(x, Side::Left, f.left_limit(x), g.left_limit(x))) return found;
    if (probe(x, Side::Value, f.eval(x), g.eval(x))) return found;
    if (probe(x, Side::Right, f.right_limit(x), g.right_limit(x))) return found;
  }
  if (probe_interval(xs.size(), xs)) return found;
  if (probe(kInf, Side::Left, f.left_limit(kInf), g.left_limit(kInf))) return found;
  probe(kInf, Side::Value, f.top(), g.top());
  return found;
}

bool leq(const DistFn& f, const DistFn& g, double tol) {
  return !find_order_violation(f, g, tol).has_value();
}

// --------------------------------------------------------- discretization

namespace {

void check_grid(std::size_t n, double a, double b) {
  if (n < 2) throw InvalidParameter("discretization needs at least 2 atoms");
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    throw InvalidParameter("invalid discretization range [" + describe(a) + ", " + describe(b) + "]");
  }
}

double grid_point(std::size_t i, std::size_t n, double a, double b) {
  if (i + 1 == n) return b;
  return a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
}

}  // namespace

DistFn discretize(const DistFn& f, std::size_t n, double a, double b) {
  check_grid(n, a, b);
  std::vector<double> xs;
  std::vector<Limits> lims;
  std::vector<Segment> segs{Segment::constant(0.0)};
  double prev = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = i + 1 == n ? f.top() : f.eval(grid_point(i, n, a, b));
    if (v == prev) continue;
    xs.push_back(grid_point(i, n, a, b));
    lims.push_back({prev, v, v});
    segs.push_back(Segment::constant(v));
    prev = v;
  }
  return DistFn(std::move(xs), std::move(lims), std::move(segs), 0.0, f.top());
}

DistFn discretize(const ParamSpec& spec, std::size_t n, double a, double b) {
  return discretize(from_spec(spec), n, a, b);
}

double discretization_bound(const DistFn& f, std::size_t n, double a, double b) {
  check_grid(n, a, b);
  double bound = f.left_limit(a);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double lo = f.eval(grid_point(i, n, a, b));
    const double hi = f.left_limit(grid_point(i + 1, n, a, b));
    bound = std::max(bound, hi - lo);
  }
  return std::max(bound, f.top() - f.eval(b));
}

}  // namespace shockcop
