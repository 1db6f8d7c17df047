#pragma once
// Shared fixtures and independent oracles for the test suites.
//
// The oracles here deliberately avoid the library's optimized routes: element
// multiplication expands the defining squares term by term (no matrix apply),
// powers multiply repeatedly (no power_matrix iteration), and nil detection
// watches the raw power sequence for zero or a revisit. Frozen expected
// values in the suites were computed by hand from the same rules.

#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

#include "evolia/algebra.hpp"
#include "evolia/ring.hpp"

namespace testutil {

using namespace evolia;

// =============================================================================
// Fixture algebras
// =============================================================================

/// Rows follow the job-file input convention: rows[k][j] is the coefficient
/// of generator k+1 in the square of generator j+1.
inline AlgebraPtr from_rows(const RingPtr& ring,
                            const std::vector<std::vector<std::int64_t>>& rows) {
  const std::size_t n = rows.size();
  std::vector<std::vector<Value>> columns(n, std::vector<Value>(n, ring->zero()));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) columns[j][k] = ring->from_int(rows[k][j]);
  }
  return EvolutionAlgebra::from_columns(ring, columns);
}

/// x1^2 = 6x1 + 2x2, x2^2 = 3x1 + 12x2 over Z/36. Both diagonal entries are
/// nilpotent (6^2 = 12^2 = 0 mod 36) and the whole algebra is nilpotent of
/// exponent 5: the 3-edge path 1->2->1->2 keeps the product 2*3*2 = 12
/// alive, while every 4-edge path product lands in 0 mod 36.
inline AlgebraPtr z36_nilpotent() {
  return from_rows(Ring::mod(36), {{6, 3}, {2, 12}});
}

/// x1^2 = 6x1 + 2x2, x2^2 = 2x1 + 12x2 over Z/36. Each generator is still
/// nil, but x1 + x2 is not: its power sequence enters a cycle. The algebra
/// is not nilpotent either.
inline AlgebraPtr z36_not_nil() {
  return from_rows(Ring::mod(36), {{6, 2}, {2, 12}});
}

// =============================================================================
// Element helpers
// =============================================================================

inline std::vector<Value> coeffs_from_ints(const RingPtr& ring,
                                           const std::vector<std::int64_t>& v) {
  std::vector<Value> out;
  out.reserve(v.size());
  for (std::int64_t x : v) out.push_back(ring->from_int(x));
  return out;
}

inline Element element_from_ints(const AlgebraPtr& alg,
                                 const std::vector<std::int64_t>& v) {
  return Element(alg, coeffs_from_ints(alg->ring(), v));
}

inline bool all_zero(const std::vector<Value>& v) {
  for (const Value& x : v) {
    if (!is_zero(x)) return false;
  }
  return true;
}

// =============================================================================
// Randomness (fixed seed so failures reproduce)
// =============================================================================

inline std::mt19937& rng() {
  static std::mt19937 g(20260816u);
  return g;
}

/// Uniform residue for Z/m; small integers in [-span, span] for Z; p/q with
/// |p| <= span, 1 <= q <= span for Q; recursive coefficients for quotients.
inline Value random_value(const RingPtr& ring, std::mt19937& g, int span = 3) {
  switch (ring->kind()) {
    case RingKind::mod: {
      const auto m = static_cast<std::int64_t>(ring->modulus());
      std::uniform_int_distribution<std::int64_t> d(0, m - 1);
      return ring->from_int(d(g));
    }
    case RingKind::integers: {
      std::uniform_int_distribution<int> d(-span, span);
      return ring->from_int(d(g));
    }
    case RingKind::rationals: {
      std::uniform_int_distribution<int> num(-span, span);
      std::uniform_int_distribution<int> den(1, span);
      return ring->from_rat(Rat(num(g), den(g)));
    }
    case RingKind::polyquot: {
      std::vector<Value> c;
      c.reserve(ring->exponent());
      for (unsigned i = 0; i < ring->exponent(); ++i) {
        c.push_back(random_value(ring->base(), g, span));
      }
      return ring->poly_value(std::move(c));
    }
  }
  throw std::logic_error("random_value: bad ring kind");
}

inline std::vector<Value> random_coeffs(const RingPtr& ring, std::size_t n,
                                        std::mt19937& g, int span = 3) {
  std::vector<Value> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_value(ring, g, span));
  return out;
}

inline AlgebraPtr random_algebra(const RingPtr& ring, std::size_t n, std::mt19937& g,
                                 int span = 3) {
  std::vector<std::vector<Value>> cols;
  cols.reserve(n);
  for (std::size_t j = 0; j < n; ++j) cols.push_back(random_coeffs(ring, n, g, span));
  return EvolutionAlgebra::from_columns(ring, cols);
}

// =============================================================================
// Independent oracles
// =============================================================================

/// Term expansion of (sum a_i x_i)(sum b_j x_j): cross terms vanish by the
/// defining relations, and each surviving a_i * b_i contributes that scalar
/// times the square of x_{i+1}, read straight off the structure columns.
inline std::vector<Value> oracle_multiply(const AlgebraPtr& alg,
                                          const std::vector<Value>& a,
                                          const std::vector<Value>& b) {
  const RingPtr& ring = alg->ring();
  const std::size_t n = alg->dimension();
  std::vector<Value> out(n, ring->zero());
  for (std::size_t i = 0; i < n; ++i) {
    Value s = a[i] * b[i];
    if (is_zero(s)) continue;
    for (std::size_t k = 0; k < n; ++k) out[k] = out[k] + s * alg->coeff(k, i);
  }
  return out;
}

/// a^n for n >= 1 by literal left-to-right repeated multiplication.
inline std::vector<Value> oracle_principal_power(const AlgebraPtr& alg,
                                                 const std::vector<Value>& a,
                                                 std::uint64_t n) {
  std::vector<Value> p = a;
  for (std::uint64_t i = 1; i < n; ++i) p = oracle_multiply(alg, p, a);
  return p;
}

/// Watches the raw power sequence: a zero means nil with that exponent, a
/// repeated state means the sequence is periodic and never reaches zero.
struct OracleNil {
  enum class Kind { nil, not_nil, exhausted } kind;
  std::uint64_t exponent = 0;  // set when kind == nil
};

inline OracleNil oracle_nil_element(const AlgebraPtr& alg, const std::vector<Value>& a,
                                    std::uint64_t max_steps = 4096) {
  std::map<std::vector<Value>, std::uint64_t> seen;
  std::vector<Value> p = a;
  for (std::uint64_t k = 1; k <= max_steps; ++k) {
    if (all_zero(p)) return {OracleNil::Kind::nil, k};
    if (seen.count(p) != 0) return {OracleNil::Kind::not_nil, 0};
    seen.emplace(p, k);
    p = oracle_multiply(alg, p, a);
  }
  return {OracleNil::Kind::exhausted, 0};
}

}  // namespace testutil
