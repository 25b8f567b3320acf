#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "shockcop/copulas.hpp"
#include "shockcop/kernels.hpp"

namespace shockcop {

/// One side of a copula pair: a closed form or values on a unit grid.
using CopulaSide = std::variant<CopulaSpec, GridTable>;

struct CopulaPair {
  CopulaSide low;
  CopulaSide up;
};

enum class Condition {
  Boundary,
  IC1,
  IC2,
  IC3,
  IC4,
  Order,
  C3,
  LowerStandardized,
  UpperStandardized,
  PB1,
  PB2,
  PB3,
  PB4,
};

const char* to_string(Condition c);

/// Rectangle (or point, when degenerate) where a condition attains its
/// smallest value. Coordinates are copula arguments or (x, y) abscissas.
struct ViolationWitness {
  Condition condition = Condition::IC1;
  Rect rect;
  double value = 0.0;
};

struct ConditionResult {
  Condition condition;
  bool pass = true;
  ViolationWitness worst;
};

struct ConditionReport {
  std::vector<ConditionResult> results;
  bool pass() const;
  const ConditionResult* find(Condition c) const;
};

/// Boundary conditions of both sides, IC1-IC4 on every rectangle of the
/// n x n unit grid, and lowC <= upC.
ConditionReport check_imprecise_copula(const CopulaPair& p, std::size_t n, double tol);

/// Standardized-function checks on both bounds, lowF <= upF, and the four
/// coherence conditions on the grid xs x ys. The grid is extended by -inf and
/// +inf on both axes.
ConditionReport check_bivariate_pbox_conditions(const BivariateBound& low,
                                                const BivariateBound& up,
                                                std::span<const double> xs,
                                                std::span<const double> ys, double tol);

/// Envelope generators of a shock-model copula family.
struct EnvelopeFamily {
  CopulaFamily family = CopulaFamily::Marshall;
  Generator phi_low = Generator::identity(GeneratorKind::Phi);
  Generator phi_up = Generator::identity(GeneratorKind::Phi);
  Generator second_low = Generator::identity(GeneratorKind::Psi);  // psi or chi
  Generator second_up = Generator::identity(GeneratorKind::Psi);

  /// Pointwise minimal and maximal members: (low, low)/(up, up) for Marshall,
  /// (phi_low, chi_up)/(phi_up, chi_low) for maxmin.
  CopulaSpec lower_bound() const;
  CopulaSpec upper_bound() const;
};

struct CoherenceReport {
  AxiomReport lower_axioms;
  AxiomReport upper_axioms;
  std::size_t members_tried = 0;
  std::size_t members_valid = 0;
  double max_outside = 0.0;  // worst excursion of a member beyond the bounds
  bool certified = false;
};

/// Certifies Condition (C) by exhibiting the bounds as family members:
/// both pass the copula axioms and every sampled member lies between them.
/// Throws NotAWitness when a bound fails the axioms.
CoherenceReport coherence_witness(const EnvelopeFamily& family, std::size_t n, double tol,
                                  std::uint64_t seed, std::size_t members = 16);

/// Worst witness of every violated IC condition and of the order on the
/// n x n grid; empty when none is found at this resolution.
std::vector<ViolationWitness> search_ic_violation(const CopulaPair& p, std::size_t n,
                                                  double tol);

}  // namespace shockcop
