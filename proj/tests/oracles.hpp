// Test-side reference implementations. They work on raw step data (points
// with left limit, value, right limit) and share no evaluation code with the
// library, so agreement with it is evidence rather than tautology.
#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "shockcop/distfn.hpp"

namespace oracle {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Jump {
  double x, left, value, right;
};

/// Monotone step function given by its jumps; 0 below the first one.
struct Step {
  std::vector<Jump> jumps;
  double top = 1.0;

  static Step of_atoms(std::vector<shockcop::Atom> atoms) {
    std::sort(atoms.begin(), atoms.end(), [](auto& a, auto& b) { return a.at < b.at; });
    Step s;
    double acc = 0.0;
    for (const auto& a : atoms) {
      const double before = acc;
      acc += a.mass;
      if (!s.jumps.empty() && s.jumps.back().x == a.at) {
        s.jumps.back().value = s.jumps.back().right = acc;
      } else {
        s.jumps.push_back({a.at, before, acc, acc});
      }
    }
    s.top = acc > 1.0 - 1e-12 ? 1.0 : acc;
    return s;
  }

  /// Copies the stored limits of a step DistFn without evaluating it.
  static Step of(const shockcop::DistFn& f) {
    if (!f.is_step()) throw std::invalid_argument("oracle::Step needs a step function");
    Step s;
    for (std::size_t i = 0; i < f.breakpoints().size(); ++i) {
      const auto& l = f.limits()[i];
      s.jumps.push_back({f.breakpoints()[i], l.left, l.value, l.right});
    }
    s.top = f.top();
    return s;
  }

  double left(double x) const {
    if (x == kInf) return before_inf();
    double v = 0.0;
    for (const Jump& j : jumps) {
      if (j.x < x) v = j.right;
      if (j.x == x) return j.left;
    }
    return v;
  }
  double at(double x) const {
    if (x == -kInf) return 0.0;
    if (x == kInf) return top;
    double v = 0.0;
    for (const Jump& j : jumps) {
      if (j.x < x) v = j.right;
      if (j.x == x) return j.value;
    }
    return v;
  }
  double right(double x) const {
    if (x == -kInf) return 0.0;
    if (x == kInf) return 1.0;
    double v = 0.0;
    for (const Jump& j : jumps) {
      if (j.x <= x) v = j.right;
    }
    return v;
  }
  double before_inf() const { return jumps.empty() ? 0.0 : jumps.back().right; }
};

/// Points where a generator value can be pinned down: every jump location,
/// the midpoints between them and the two tails.
inline std::vector<double> candidates(const Step& a, const Step& b) {
  std::vector<double> xs{-kInf, kInf};
  for (const Step* s : {&a, &b}) {
    for (const Jump& j : s->jumps) xs.push_back(j.x);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<double> out = xs;
  for (std::size_t i = 1; i + 2 < xs.size(); ++i) out.push_back(0.5 * (xs[i] + xs[i + 1]));
  if (xs.size() > 2) {
    out.push_back(xs[1] - 1.0);
    out.push_back(xs[xs.size() - 2] + 1.0);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Extended generator phi at u in (0, 1), evaluated at every admissible x0.
/// Returns nullopt when two admissible choices disagree by more than 1e-12
/// (which would contradict well-definedness).
inline std::optional<double> phi(const Step& fx, const Step& fz, double u) {
  if (u == 0.0) return 0.0;
  if (u == 1.0) return 1.0;
  std::optional<double> out;
  for (double x0 : candidates(fx, fz)) {
    const double um = fx.left(x0) * fz.left(x0);
    const double up = fx.right(x0) * fz.right(x0);
    if (!(um <= u && u <= up)) continue;
    const double ul = fx.left(x0) * fz.at(x0);
    const double uu = fx.right(x0) * fz.at(x0);
    double v;
    if (u <= ul) {
      v = fx.left(x0);
    } else if (u <= uu) {
      v = u / fz.at(x0);
    } else {
      v = fx.right(x0);
    }
    if (out && std::abs(*out - v) > 1e-12) return std::nullopt;
    if (!out) out = v;
  }
  return out;
}

inline double comix(double a, double b) { return 1.0 - (1.0 - a) * (1.0 - b); }

/// Extended generator chi at w in (0, 1), from the K thresholds directly.
inline std::optional<double> chi(const Step& fy, const Step& fz, double w) {
  if (w == 0.0) return 0.0;
  if (w == 1.0) return 1.0;
  std::optional<double> out;
  for (double y0 : candidates(fy, fz)) {
    const double wm = comix(fy.left(y0), fz.left(y0));
    const double wp = comix(fy.right(y0), fz.right(y0));
    if (!(wm <= w && w <= wp)) continue;
    const double zv = fz.at(y0);
    const double wl = comix(fy.left(y0), zv);
    const double wu = comix(fy.right(y0), zv);
    double v;
    if (w <= wl) {
      v = fy.left(y0);
    } else if (w <= wu) {
      v = (w - zv) / (1.0 - zv);
    } else {
      v = fy.right(y0);
    }
    if (out && std::abs(*out - v) > 1e-12) return std::nullopt;
    if (!out) out = v;
  }
  return out;
}

/// Joint distribution of (max{X,Z}, max{Y,Z}) or (max{X,Z}, min{Y,Z}) by
/// summing over atom triples.
inline double joint(const std::vector<shockcop::Atom>& xs, const std::vector<shockcop::Atom>& ys,
                    const std::vector<shockcop::Atom>& zs, bool maxmin, double x, double y) {
  double h = 0.0;
  for (const auto& a : xs) {
    for (const auto& b : ys) {
      for (const auto& c : zs) {
        const double second = maxmin ? std::min(b.at, c.at) : std::max(b.at, c.at);
        if (std::max(a.at, c.at) <= x && second <= y) h += a.mass * b.mass * c.mass;
      }
    }
  }
  return h;
}

}  // namespace oracle
