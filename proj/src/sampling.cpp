#include "shockcop/sampling.hpp"

#include <algorithm>

#include "shockcop/pbox.hpp"

namespace shockcop {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t k) {
  // splitmix64 finalizer over the pair.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (k + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<Atom> ScenarioSampler::atoms() {
  const std::size_t n = 1 + below(rng_, max_atoms_);
  std::vector<int> lattice(17);
  for (int k = 0; k < 17; ++k) lattice[k] = k;
  // Partial Fisher-Yates for n distinct lattice points.
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + below(rng_, lattice.size() - i);
    std::swap(lattice[i], lattice[j]);
  }
  std::vector<Atom> out(n);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    out[i].at = 0.5 * lattice[i];
    out[i].mass = 0.05 + uniform01(rng_);
    total += out[i].mass;
  }
  for (Atom& a : out) a.mass /= total;
  std::sort(out.begin(), out.end(), [](const Atom& a, const Atom& b) { return a.at < b.at; });
  return out;
}

DistFn ScenarioSampler::step() {
  const std::vector<Atom> a = atoms();
  return discrete(a);
}

std::pair<std::vector<Atom>, std::vector<Atom>> ScenarioSampler::ordered_atoms() {
  std::vector<Atom> up = atoms();
  std::vector<Atom> low = up;
  for (Atom& a : low) a.at += 0.5 * static_cast<double>(below(rng_, 5));
  return {std::move(low), std::move(up)};
}

DistFn ScenarioSampler::jittered(const DistFn& f) {
  std::vector<double> xs(f.breakpoints().begin(), f.breakpoints().end());
  std::vector<Limits> lims(f.limits().begin(), f.limits().end());
  std::vector<Segment> segs(f.segments().begin(), f.segments().end());
  for (Limits& l : lims) {
    const double r = uniform01(rng_);
    // Keep the endpoints reachable so both one-sided conventions occur.
    if (r < 0.25) {
      l.value = l.left;
    } else if (r < 0.5) {
      l.value = l.right;
    } else {
      l.value = l.left + (l.right - l.left) * uniform01(rng_);
    }
  }
  return DistFn(std::move(xs), std::move(lims), std::move(segs), f.bottom(), f.top());
}

namespace {

// min(low, up) for step functions, so that rounding in the cumulative masses
// of shifted atoms cannot break low <= up.
DistFn floored(const DistFn& low, const DistFn& up) {
  std::vector<double> xs(low.breakpoints().begin(), low.breakpoints().end());
  std::vector<Limits> lims;
  std::vector<Segment> segs{Segment::constant(0.0)};
  for (double x : xs) {
    const double left = std::min(low.left_limit(x), up.left_limit(x));
    const double value = std::min(low(x), up(x));
    lims.push_back({left, value, value});
    segs.push_back(Segment::constant(value));
  }
  return DistFn(std::move(xs), std::move(lims), std::move(segs), 0.0, low.top());
}

}  // namespace

std::pair<DistFn, DistFn> ScenarioSampler::ordered_pair(bool jitter) {
  auto [la, ua] = ordered_atoms();
  DistFn up = discrete(ua);
  DistFn low = floored(discrete(la), up);
  if (jitter) {
    DistFn jl = jittered(low);
    DistFn ju = jittered(up);
    if (leq(jl, ju)) return {std::move(jl), std::move(ju)};
  }
  return {std::move(low), std::move(up)};
}

Scenario ScenarioSampler::imprecise_scenario(CopulaFamily model, std::size_t grid, std::size_t xy_grid) {
  auto [lx, ux] = ordered_pair();
  auto [ly, uy] = ordered_pair();
  Scenario s;
  s.x = make_pbox(std::move(lx), std::move(ux));
  s.y = make_pbox(std::move(ly), std::move(uy));
  s.z = step();
  s.model = model;
  s.grid = grid;
  s.xy_grid = xy_grid;
  return s;
}

}  // namespace shockcop
