#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "oracles.hpp"
#include "shockcop/copulas.hpp"
#include "shockcop/error.hpp"
#include "shockcop/sampling.hpp"

using namespace shockcop;

namespace {
const double kLn2 = std::log(2.0);

Generator knee_phi(double a) { return Generator(GeneratorKind::Phi, {{0.0, a}, {a, a}, {1.0, 1.0}}); }
Generator knee_chi(double a) { return Generator(GeneratorKind::Chi, {{0.0, 0.0}, {a, a}, {1.0, a}}); }
Generator id(GeneratorKind k) { return Generator::identity(k); }
}  // namespace

TEST_CASE("corner cases of the Marshall family") {
  const CopulaSpec pi = CopulaSpec::marshall(id(GeneratorKind::Phi), id(GeneratorKind::Psi));
  const CopulaSpec m = CopulaSpec::marshall(Generator(GeneratorKind::Phi, {{0.0, 1.0}, {1.0, 1.0}}),
                                            Generator(GeneratorKind::Psi, {{0.0, 1.0}, {1.0, 1.0}}));
  for (double u : {0.0, 0.1, 0.35, 0.8, 1.0}) {
    for (double v : {0.0, 0.2, 0.5, 0.9, 1.0}) {
      CHECK(pi(u, v) == doctest::Approx(u * v).epsilon(1e-15));
      CHECK(m(u, v) == doctest::Approx(std::min(u, v)).epsilon(1e-15));
    }
  }
}

TEST_CASE("maxmin value on the D1 generators") {
  const CopulaSpec c = CopulaSpec::maxmin(knee_phi(0.5), knee_chi(0.4));
  CHECK(c(0.5, 0.4) == doctest::Approx(0.2).epsilon(1e-15));
  // min(u(1 - v), (phi(u) - u)(v - chi(v))) with both terms positive.
  CHECK(c(0.2, 0.6) == doctest::Approx(0.12 + std::min(0.2 * 0.4, 0.3 * 0.2)).epsilon(1e-15));
}

TEST_CASE("slots are kind-checked") {
  CHECK_THROWS_AS(CopulaSpec::marshall(id(GeneratorKind::Phi), id(GeneratorKind::Chi)), InvalidParameter);
  CHECK_THROWS_AS(CopulaSpec::maxmin(id(GeneratorKind::Psi), id(GeneratorKind::Chi)), InvalidParameter);
}

TEST_CASE("boundary values are exact") {
  const CopulaSpec a = CopulaSpec::marshall(knee_phi(0.3), knee_phi(0.6).as_kind(GeneratorKind::Psi));
  const CopulaSpec b = CopulaSpec::maxmin(knee_phi(0.3), knee_chi(0.7));
  for (const CopulaSpec* c : {&a, &b}) {
    for (int i = 0; i <= 50; ++i) {
      const double t = i / 50.0;
      CHECK((*c)(t, 0.0) == 0.0);
      CHECK((*c)(0.0, t) == 0.0);
      CHECK((*c)(t, 1.0) == t);
      CHECK((*c)(1.0, t) == t);
    }
  }
}

TEST_CASE("H-volumes") {
  const CopulaSpec pi = CopulaSpec::marshall(id(GeneratorKind::Phi), id(GeneratorKind::Psi));
  CHECK(h_volume(pi, {}) == 1.0);
  CHECK(h_volume(pi, {0.3, 0.3, 0.1, 0.9}) == 0.0);
  CHECK(h_volume(pi, {0.2, 0.6, 0.1, 0.9}) == doctest::Approx(0.32).epsilon(1e-15));
}

TEST_CASE("copula axioms on a grid") {
  const CopulaSpec pi = CopulaSpec::marshall(id(GeneratorKind::Phi), id(GeneratorKind::Psi));
  const AxiomReport r = check_copula_axioms(pi, 50);
  CHECK(r.pass(1e-12));
  CHECK(r.min_volume >= 0.0);

  const Generator phi = build_phi(exponential(1.0), point_mass(kLn2));
  const Generator psi = build_psi(exponential(1.0), point_mass(kLn2));
  CHECK(check_copula_axioms(CopulaSpec::marshall(phi, psi), 101).pass(1e-12));

  std::vector<Knot> sq;
  for (int i = 0; i <= 40; ++i) sq.push_back({i / 40.0, (i / 40.0) * (i / 40.0)});
  const CopulaSpec bad = CopulaSpec::marshall(Generator(GeneratorKind::Phi, sq), id(GeneratorKind::Psi));
  const AxiomReport b = check_copula_axioms(bad, 51);
  CHECK_FALSE(b.pass(1e-12));
  CHECK(b.min_volume < -1e-6);
  CHECK(h_volume(bad, b.worst) == doctest::Approx(b.min_volume).epsilon(1e-12));
}

TEST_CASE("copulas of random step data satisfy the axioms") {
  for (std::uint64_t k = 0; k < 40; ++k) {
    ScenarioSampler s(derive_seed(21, k));
    const DistFn fx = s.step();
    const DistFn fy = s.jittered(s.step());
    const DistFn fz = s.step();
    const CopulaSpec m = CopulaSpec::marshall(build_phi(fx, fz), build_psi(fy, fz));
    const CopulaSpec mm = CopulaSpec::maxmin(build_phi(fx, fz), build_chi(fy, fz));
    CHECK(check_copula_axioms(m, 41).pass(1e-12));
    CHECK(check_copula_axioms(mm, 41).pass(1e-12));
  }
}

TEST_CASE("Sklar composition") {
  const CopulaSpec pi = CopulaSpec::marshall(id(GeneratorKind::Phi), id(GeneratorKind::Psi));
  const BivariateBound h = sklar_compose(pi, point_mass(0.0), point_mass(0.0));
  CHECK(h(0.0, 0.0) == 1.0);
  CHECK(h(-1e-9, 0.0) == 0.0);
  CHECK(h(0.0, -1e-9) == 0.0);
  CHECK(h(kInf, kInf) == 1.0);
  CHECK(h(0.5, -kInf) == 0.0);

  const DistFn fx = discrete(std::vector<Atom>{{1.0, 0.5}, {2.0, 0.5}});
  const DistFn fy = discrete(std::vector<Atom>{{0.5, 0.4}, {3.0, 0.6}});
  const DistFn fz = point_mass(1.5);
  const auto ax = std::vector<Atom>{{1.0, 0.5}, {2.0, 0.5}};
  const auto ay = std::vector<Atom>{{0.5, 0.4}, {3.0, 0.6}};
  const auto az = std::vector<Atom>{{1.5, 1.0}};

  const BivariateBound hm = sklar_compose(CopulaSpec::marshall(build_phi(fx, fz), build_psi(fy, fz)),
                                          product(fx, fz), product(fy, fz));
  CHECK(hm(1.5, 1.5) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(oracle::joint(ax, ay, az, false, 1.5, 1.5) == doctest::Approx(0.2).epsilon(1e-15));

  const BivariateBound hmm = sklar_compose(CopulaSpec::maxmin(build_phi(fx, fz), build_chi(fy, fz)),
                                           product(fx, fz), comix(fy, fz));
  CHECK(hmm(1.5, 0.9) == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(oracle::joint(ax, ay, az, true, 1.5, 0.9) == doctest::Approx(0.2).epsilon(1e-15));
}
