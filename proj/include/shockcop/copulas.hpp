#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <utility>

#include "shockcop/distfn.hpp"
#include "shockcop/generators.hpp"
#include "shockcop/kernels.hpp"

namespace shockcop {

enum class CopulaFamily { Marshall, Maxmin };

const char* to_string(CopulaFamily f);

/// Marshall{phi, psi} or Maxmin{phi, chi}. Slot kinds are enforced; the
/// generator conditions are not, so deliberately broken generators can be
/// evaluated and rejected by check_copula_axioms.
class CopulaSpec {
 public:
  static CopulaSpec marshall(Generator phi, Generator psi);
  static CopulaSpec maxmin(Generator phi, Generator chi);

  CopulaFamily family() const noexcept { return family_; }
  const Generator& phi() const noexcept { return phi_; }
  /// psi for Marshall, chi for maxmin.
  const Generator& second() const noexcept { return second_; }

  double operator()(double u, double v) const;

 private:
  CopulaSpec(CopulaFamily f, Generator phi, Generator second)
      : family_(f), phi_(std::move(phi)), second_(std::move(second)) {}

  CopulaFamily family_;
  Generator phi_;
  Generator second_;
};

/// Exact boundary values: C(u,0) = C(0,v) = 0, C(u,1) = u, C(1,v) = v.
double eval_copula(const CopulaSpec& c, double u, double v);

struct Rect {
  double u1 = 0.0, u2 = 1.0, v1 = 0.0, v2 = 1.0;
};

double h_volume(const std::function<double(double, double)>& c, const Rect& r);
double h_volume(const CopulaSpec& c, const Rect& r);

struct AxiomReport {
  double boundary_deviation = 0.0;  // worst |C - boundary value| on the grid edges
  double min_volume = 0.0;          // smallest grid rectangle volume
  Rect worst;
  bool pass(double tol) const { return boundary_deviation <= tol && min_volume >= -tol; }
};

/// Boundary conditions on the grid edges and 2-increasingness on every grid
/// rectangle of unit_grid(n) x unit_grid(n).
AxiomReport check_copula_axioms(const std::function<double(double, double)>& c, std::size_t n);
AxiomReport check_copula_axioms(const CopulaSpec& c, std::size_t n);
AxiomReport check_copula_axioms(const GridTable& t);

/// Standardized bivariate function on the extended plane.
class BivariateBound {
 public:
  BivariateBound() = default;
  BivariateBound(std::function<double(double, double)> f, std::string name = {})
      : f_(std::move(f)), name_(std::move(name)) {}

  double operator()(double x, double y) const { return f_(x, y); }
  const std::string& name() const noexcept { return name_; }
  const std::function<double(double, double)>& fn() const noexcept { return f_; }

 private:
  std::function<double(double, double)> f_;
  std::string name_;
};

/// H(x, y) = C(F(x), G(y)).
BivariateBound sklar_compose(const CopulaSpec& c, const DistFn& f, const DistFn& g);

}  // namespace shockcop
