#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "evolia/matrix.hpp"
#include "evolia/ring.hpp"

namespace evolia {

class EvolutionAlgebra;
using AlgebraPtr = std::shared_ptr<const EvolutionAlgebra>;

/// Finite-dimensional evolution algebra over a commutative coefficient ring:
/// generators x_1..x_n with x_i * x_j = 0 for i != j and x_j * x_j given by
/// column j of the structure matrix. Columns hold the squares; entry (k, j)
/// is the coefficient of x_k in x_j^2.
class EvolutionAlgebra : public std::enable_shared_from_this<EvolutionAlgebra> {
public:
  /// columns[j] lists the coefficients of x_{j+1}^2, one per generator.
  static AlgebraPtr from_columns(RingPtr ring,
                                 const std::vector<std::vector<Value>>& columns,
                                 std::vector<std::string> labels = {});
  static AlgebraPtr from_structure(RingPtr ring, RingMatrix structure,
                                   std::vector<std::string> labels = {});

  const RingPtr& ring() const { return ring_; }
  std::size_t dimension() const { return structure_.cols(); }
  const RingMatrix& structure() const { return structure_; }
  /// Coefficient of x_{k+1} in x_{j+1}^2 (0-based indices).
  const Value& coeff(std::size_t k, std::size_t j) const { return structure_(k, j); }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }

  bool same_as(const EvolutionAlgebra& other) const;

private:
  EvolutionAlgebra(RingPtr ring, RingMatrix structure, std::vector<std::string> labels);
  RingPtr ring_;
  RingMatrix structure_;
  std::vector<std::string> labels_;
};

/// Algebra element as a dense coefficient vector over the generators.
/// Carries its algebra; operations verify both operands belong to the same
/// one (pointer identity or structural equality).
class Element {
public:
  Element(AlgebraPtr algebra, std::vector<Value> coeffs);
  static Element zero(AlgebraPtr algebra);
  static Element basis(AlgebraPtr algebra, std::size_t i);  // 0-based

  const AlgebraPtr& algebra() const { return algebra_; }
  const std::vector<Value>& coeffs() const { return coeffs_; }
  const Value& coeff(std::size_t i) const { return coeffs_[i]; }
  bool is_zero() const;

  friend bool operator==(const Element& a, const Element& b);
  friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }

private:
  AlgebraPtr algebra_;
  std::vector<Value> coeffs_;
};

Element add(const Element& a, const Element& b);
Element multiply(const Element& a, const Element& b);

/// The matrix M with column j equal to a_j times column j of the structure
/// matrix. It drives principal powers: coeffs(a^n) = M^(n-1) * coeffs(a).
RingMatrix power_matrix(const Element& a);

/// Matrix of the left multiplication operator x -> a*x on the generator
/// basis. Entrywise identical to power_matrix; kept separate because it is
/// consumed as an operator (spans, chains), not as a power iterator.
RingMatrix left_mult_matrix(const Element& a);

/// a^n with a^1 = a, a^n = a^(n-1) * a; computed through power_matrix.
Element principal_power(const Element& a, std::uint64_t n);

/// a^[n] with a^[1] = a*a, a^[n] = a^[n-1] * a^[n-1]. n is capped because
/// repeated squaring can blow up coefficient sizes.
Element plenary_power(const Element& a, std::uint64_t n, std::uint64_t cap = 64);

struct BasisQuotient {
  AlgebraPtr algebra;
  std::vector<std::size_t> retained;  // original indices of surviving generators
};

/// Quotient by the span of the dropped generators. The span must be an
/// ideal, which for an evolution algebra means every dropped generator's
/// square stays inside the span; the validator multiplies the basis pairs
/// and reports the first violation.
BasisQuotient quotient_by_basis_ideal(const AlgebraPtr& algebra,
                                      const std::vector<std::size_t>& drop);

/// Block-diagonal sum; generators of b are relabeled after those of a.
AlgebraPtr direct_sum(const AlgebraPtr& a, const AlgebraPtr& b);

/// Human-readable element, e.g. "2x2+x3" or "(t+1)x1"; "0" when zero.
std::string to_string(const Element& a);

}  // namespace evolia
