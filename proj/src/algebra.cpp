#include "evolia/algebra.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>

namespace evolia {

namespace {

std::vector<std::string> default_labels(std::size_t n) {
  std::vector<std::string> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back("x" + std::to_string(i + 1));
  return out;
}

void check_same_algebra(const Element& a, const Element& b) {
  if (a.algebra() == b.algebra()) return;
  if (!a.algebra()->same_as(*b.algebra())) {
    throw std::invalid_argument("elements belong to different algebras");
  }
}

}  // namespace

EvolutionAlgebra::EvolutionAlgebra(RingPtr ring, RingMatrix structure,
                                   std::vector<std::string> labels)
    : ring_(std::move(ring)), structure_(std::move(structure)),
      labels_(std::move(labels)) {}

AlgebraPtr EvolutionAlgebra::from_columns(RingPtr ring,
                                          const std::vector<std::vector<Value>>& columns,
                                          std::vector<std::string> labels) {
  const std::size_t n = columns.size();
  for (std::size_t j = 0; j < n; ++j) {
    if (columns[j].size() != n) {
      throw std::invalid_argument("structure column " + std::to_string(j + 1) +
                                  " has " + std::to_string(columns[j].size()) +
                                  " entries, expected " + std::to_string(n));
    }
  }
  RingMatrix m = RingMatrix::from_columns(ring, columns);
  return from_structure(std::move(ring), std::move(m), std::move(labels));
}

AlgebraPtr EvolutionAlgebra::from_structure(RingPtr ring, RingMatrix structure,
                                            std::vector<std::string> labels) {
  if (structure.rows() != structure.cols()) {
    throw std::invalid_argument("structure matrix must be square");
  }
  if (!structure.ring()->same_as(*ring)) {
    throw std::invalid_argument("structure matrix ring does not match algebra ring");
  }
  if (labels.empty()) {
    labels = default_labels(structure.cols());
  } else if (labels.size() != structure.cols()) {
    throw std::invalid_argument("label count does not match dimension");
  }
  return AlgebraPtr(new EvolutionAlgebra(std::move(ring), std::move(structure),
                                         std::move(labels)));
}

bool EvolutionAlgebra::same_as(const EvolutionAlgebra& other) const {
  if (this == &other) return true;
  return ring_->same_as(*other.ring_) && structure_ == other.structure_;
}

Element::Element(AlgebraPtr algebra, std::vector<Value> coeffs)
    : algebra_(std::move(algebra)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != algebra_->dimension()) {
    throw std::invalid_argument("element has " + std::to_string(coeffs_.size()) +
                                " coefficients, algebra dimension is " +
                                std::to_string(algebra_->dimension()));
  }
  for (const Value& c : coeffs_) {
    if (!c.ring()->same_as(*algebra_->ring())) {
      throw std::invalid_argument("element coefficient from ring " + c.ring()->name() +
                                  " in algebra over " + algebra_->ring()->name());
    }
  }
}

Element Element::zero(AlgebraPtr algebra) {
  std::vector<Value> c(algebra->dimension(), algebra->ring()->zero());
  return Element(std::move(algebra), std::move(c));
}

Element Element::basis(AlgebraPtr algebra, std::size_t i) {
  if (i >= algebra->dimension()) {
    throw std::invalid_argument("basis index " + std::to_string(i + 1) +
                                " out of range for dimension " +
                                std::to_string(algebra->dimension()));
  }
  std::vector<Value> c(algebra->dimension(), algebra->ring()->zero());
  c[i] = algebra->ring()->one();
  return Element(std::move(algebra), std::move(c));
}

bool Element::is_zero() const {
  for (const Value& c : coeffs_) {
    if (!evolia::is_zero(c)) return false;
  }
  return true;
}

bool operator==(const Element& a, const Element& b) {
  return a.algebra_->same_as(*b.algebra_) && a.coeffs_ == b.coeffs_;
}

Element add(const Element& a, const Element& b) {
  check_same_algebra(a, b);
  std::vector<Value> c;
  c.reserve(a.coeffs().size());
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    c.push_back(a.coeff(i) + b.coeff(i));
  }
  return Element(a.algebra(), std::move(c));
}

Element multiply(const Element& a, const Element& b) {
  check_same_algebra(a, b);
  // Cross terms x_i * x_j (i != j) vanish, so the product is
  // sum_i (a_i b_i) x_i^2 = C * (a .* b).
  const auto& alg = *a.algebra();
  std::vector<Value> diag;
  diag.reserve(alg.dimension());
  for (std::size_t i = 0; i < alg.dimension(); ++i) {
    diag.push_back(a.coeff(i) * b.coeff(i));
  }
  return Element(a.algebra(), alg.structure() * diag);
}

RingMatrix power_matrix(const Element& a) {
  return a.algebra()->structure().scaled_columns(a.coeffs());
}

RingMatrix left_mult_matrix(const Element& a) { return power_matrix(a); }

Element principal_power(const Element& a, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("principal power requires n >= 1");
  if (n == 1) return a;
  const RingMatrix m = power_matrix(a);
  std::vector<Value> beta = a.coeffs();
  for (std::uint64_t k = 1; k < n; ++k) beta = m * beta;
  return Element(a.algebra(), std::move(beta));
}

Element plenary_power(const Element& a, std::uint64_t n, std::uint64_t cap) {
  if (n == 0) throw std::invalid_argument("plenary power requires n >= 1");
  if (n > cap) {
    throw std::invalid_argument("plenary power exponent " + std::to_string(n) +
                                " exceeds cap " + std::to_string(cap));
  }
  Element p = multiply(a, a);
  for (std::uint64_t k = 1; k < n; ++k) p = multiply(p, p);
  return p;
}

BasisQuotient quotient_by_basis_ideal(const AlgebraPtr& algebra,
                                      const std::vector<std::size_t>& drop) {
  const std::size_t n = algebra->dimension();
  std::set<std::size_t> dropped;
  for (std::size_t i : drop) {
    if (i >= n) {
      throw std::invalid_argument("dropped index " + std::to_string(i + 1) +
                                  " out of range for dimension " + std::to_string(n));
    }
    dropped.insert(i);
  }
  // Ideal check by multiplying basis pairs: x_j * x_k = 0 for j != k, so the
  // only products that can leave the span are the squares of dropped
  // generators.
  for (std::size_t k : dropped) {
    for (std::size_t m = 0; m < n; ++m) {
      if (dropped.count(m)) continue;
      if (!is_zero(algebra->coeff(m, k))) {
        throw std::invalid_argument(
            "span is not an ideal: " + algebra->label(k) + "^2 has component " +
            algebra->ring()->to_string(algebra->coeff(m, k)) + " on " +
            algebra->label(m));
      }
    }
  }
  std::vector<std::size_t> retained;
  for (std::size_t i = 0; i < n; ++i) {
    if (!dropped.count(i)) retained.push_back(i);
  }
  RingMatrix sub(algebra->ring(), retained.size(), retained.size());
  std::vector<std::string> labels;
  for (std::size_t jj = 0; jj < retained.size(); ++jj) {
    labels.push_back(algebra->label(retained[jj]));
    for (std::size_t ii = 0; ii < retained.size(); ++ii) {
      sub.set(ii, jj, algebra->coeff(retained[ii], retained[jj]));
    }
  }
  return {EvolutionAlgebra::from_structure(algebra->ring(), std::move(sub),
                                           std::move(labels)),
          std::move(retained)};
}

AlgebraPtr direct_sum(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (!a->ring()->same_as(*b->ring())) {
    throw std::invalid_argument("direct sum over different rings: " + a->ring()->name() +
                                " and " + b->ring()->name());
  }
  const std::size_t na = a->dimension();
  const std::size_t nb = b->dimension();
  RingMatrix m(a->ring(), na + nb, na + nb);
  for (std::size_t i = 0; i < na; ++i) {
    for (std::size_t j = 0; j < na; ++j) m.set(i, j, a->coeff(i, j));
  }
  for (std::size_t i = 0; i < nb; ++i) {
    for (std::size_t j = 0; j < nb; ++j) m.set(na + i, na + j, b->coeff(i, j));
  }
  return EvolutionAlgebra::from_structure(a->ring(), std::move(m));
}

std::string to_string(const Element& a) {
  const auto& alg = *a.algebra();
  std::string out;
  for (std::size_t i = 0; i < alg.dimension(); ++i) {
    if (is_zero(a.coeff(i))) continue;
    std::string c = alg.ring()->to_string(a.coeff(i));
    std::string term;
    if (c == "1") {
      term = alg.label(i);
    } else {
      bool composite = c.find_first_of("+-/") != std::string::npos &&
                       !(c.size() > 1 && c[0] == '-' &&
                         c.find_first_of("+-/", 1) == std::string::npos);
      term = (composite ? "(" + c + ")" : c) + alg.label(i);
    }
    if (!out.empty() && term[0] != '-') out += "+";
    out += term;
  }
  return out.empty() ? "0" : out;
}

}  // namespace evolia
