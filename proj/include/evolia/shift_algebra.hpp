#pragma once

#include <cstdint>
#include <map>
#include <memory>

#include "evolia/algebra.hpp"
#include "evolia/ring.hpp"

namespace evolia {

class ShiftRule;
using ShiftRulePtr = std::shared_ptr<const ShiftRule>;

/// Multiplication rule of the countably-generated algebra with
/// x_i * x_i = nu * x_i + x_{i+1} and x_i * x_j = 0 for i != j, where nu is
/// a fixed nilpotent ring element. Indices are 1-based and unbounded.
class ShiftRule : public std::enable_shared_from_this<ShiftRule> {
public:
  static ShiftRulePtr make(RingPtr ring, Value nu);

  const RingPtr& ring() const { return ring_; }
  const Value& nu() const { return nu_; }
  /// Smallest k with nu^k = 0.
  std::uint64_t nu_index() const { return nu_index_; }

  bool same_as(const ShiftRule& other) const;

  /// Finite truncation keeping generators x_1..x_n: inside the window the
  /// rule is unchanged, and x_n^2 keeps its nu*x_n term while the x_{n+1}
  /// term falls away.
  AlgebraPtr window(std::size_t n) const;

private:
  ShiftRule(RingPtr ring, Value nu, std::uint64_t idx);
  RingPtr ring_;
  Value nu_;
  std::uint64_t nu_index_;
};

/// Finitely supported element of the shift-rule algebra, stored as a sorted
/// index -> coefficient map with no zero entries.
class SparseElement {
public:
  SparseElement(ShiftRulePtr rule, std::map<std::uint64_t, Value> support);
  static SparseElement zero(ShiftRulePtr rule);
  static SparseElement basis(ShiftRulePtr rule, std::uint64_t i);  // 1-based

  const ShiftRulePtr& rule() const { return rule_; }
  const std::map<std::uint64_t, Value>& support() const { return support_; }
  bool is_zero() const { return support_.empty(); }
  std::uint64_t min_index() const;  // support must be nonempty
  std::uint64_t max_index() const;

  friend bool operator==(const SparseElement& a, const SparseElement& b);
  friend bool operator!=(const SparseElement& a, const SparseElement& b) {
    return !(a == b);
  }

private:
  ShiftRulePtr rule_;
  std::map<std::uint64_t, Value> support_;
};

SparseElement add(const SparseElement& a, const SparseElement& b);
SparseElement multiply(const SparseElement& a, const SparseElement& b);
SparseElement principal_power(const SparseElement& a, std::uint64_t n);
SparseElement plenary_power(const SparseElement& a, std::uint64_t n,
                            std::uint64_t cap = 64);

/// Smallest k with a^k = 0, found by direct iteration. Requires nu^2 = 0,
/// which guarantees a^(2t+2) = 0 for t = max_index(a); the iteration is
/// therefore bounded and exceeding the bound is an internal error.
std::uint64_t nil_exponent(const SparseElement& a);

std::string to_string(const SparseElement& a);

}  // namespace evolia
