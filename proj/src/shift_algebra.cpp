#include "evolia/shift_algebra.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace evolia {

ShiftRule::ShiftRule(RingPtr ring, Value nu, std::uint64_t idx)
    : ring_(std::move(ring)), nu_(std::move(nu)), nu_index_(idx) {}

ShiftRulePtr ShiftRule::make(RingPtr ring, Value nu) {
  if (!nu.ring()->same_as(*ring)) {
    throw std::invalid_argument("shift coefficient from ring " + nu.ring()->name() +
                                ", rule ring is " + ring->name());
  }
  NilIndex idx = nilpotency_index(nu, 64);
  if (!idx.nilpotent()) {
    throw std::invalid_argument("shift coefficient " + ring->to_string(nu) +
                                " is not nilpotent in " + ring->name());
  }
  return ShiftRulePtr(new ShiftRule(std::move(ring), std::move(nu), idx.index));
}

bool ShiftRule::same_as(const ShiftRule& other) const {
  if (this == &other) return true;
  return ring_->same_as(*other.ring_) && nu_ == other.nu_;
}

AlgebraPtr ShiftRule::window(std::size_t n) const {
  if (n == 0) throw std::invalid_argument("window size must be at least 1");
  RingMatrix m(ring_, n, n);
  for (std::size_t j = 0; j < n; ++j) {
    m.set(j, j, nu_);
    if (j + 1 < n) m.set(j + 1, j, ring_->one());
  }
  return EvolutionAlgebra::from_structure(ring_, std::move(m));
}

SparseElement::SparseElement(ShiftRulePtr rule, std::map<std::uint64_t, Value> support)
    : rule_(std::move(rule)) {
  for (auto& [i, v] : support) {
    if (i == 0) throw std::invalid_argument("generator indices are 1-based");
    if (!v.ring()->same_as(*rule_->ring())) {
      throw std::invalid_argument("coefficient from ring " + v.ring()->name() +
                                  " in rule over " + rule_->ring()->name());
    }
    if (!evolia::is_zero(v)) support_.emplace(i, std::move(v));
  }
}

SparseElement SparseElement::zero(ShiftRulePtr rule) {
  return SparseElement(std::move(rule), {});
}

SparseElement SparseElement::basis(ShiftRulePtr rule, std::uint64_t i) {
  std::map<std::uint64_t, Value> s;
  s.emplace(i, rule->ring()->one());
  return SparseElement(std::move(rule), std::move(s));
}

std::uint64_t SparseElement::min_index() const {
  if (support_.empty()) throw std::logic_error("min_index of zero element");
  return support_.begin()->first;
}

std::uint64_t SparseElement::max_index() const {
  if (support_.empty()) throw std::logic_error("max_index of zero element");
  return support_.rbegin()->first;
}

bool operator==(const SparseElement& a, const SparseElement& b) {
  return a.rule_->same_as(*b.rule_) && a.support_ == b.support_;
}

namespace {

void check_same_rule(const SparseElement& a, const SparseElement& b) {
  if (a.rule() == b.rule()) return;
  if (!a.rule()->same_as(*b.rule())) {
    throw std::invalid_argument("elements follow different shift rules");
  }
}

void accumulate(std::map<std::uint64_t, Value>& acc, std::uint64_t i, const Value& v) {
  auto it = acc.find(i);
  if (it == acc.end()) {
    acc.emplace(i, v);
  } else {
    it->second = it->second + v;
  }
}

}  // namespace

SparseElement add(const SparseElement& a, const SparseElement& b) {
  check_same_rule(a, b);
  std::map<std::uint64_t, Value> acc = a.support();
  for (const auto& [i, v] : b.support()) accumulate(acc, i, v);
  return SparseElement(a.rule(), std::move(acc));
}

SparseElement multiply(const SparseElement& a, const SparseElement& b) {
  check_same_rule(a, b);
  // Only matching indices survive: (a_i x_i)(b_i x_i) = a_i b_i (nu x_i + x_{i+1}).
  const Value& nu = a.rule()->nu();
  std::map<std::uint64_t, Value> acc;
  for (const auto& [i, av] : a.support()) {
    auto it = b.support().find(i);
    if (it == b.support().end()) continue;
    Value p = av * it->second;
    if (is_zero(p)) continue;
    Value withnu = p * nu;
    if (!is_zero(withnu)) accumulate(acc, i, withnu);
    accumulate(acc, i + 1, p);
  }
  return SparseElement(a.rule(), std::move(acc));
}

SparseElement principal_power(const SparseElement& a, std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("principal power requires n >= 1");
  SparseElement p = a;
  for (std::uint64_t k = 1; k < n; ++k) p = multiply(p, a);
  return p;
}

SparseElement plenary_power(const SparseElement& a, std::uint64_t n, std::uint64_t cap) {
  if (n == 0) throw std::invalid_argument("plenary power requires n >= 1");
  if (n > cap) {
    throw std::invalid_argument("plenary power exponent " + std::to_string(n) +
                                " exceeds cap " + std::to_string(cap) +
                                " (support can grow without bound)");
  }
  SparseElement p = multiply(a, a);
  for (std::uint64_t k = 1; k < n; ++k) p = multiply(p, p);
  return p;
}

std::uint64_t nil_exponent(const SparseElement& a) {
  if (a.rule()->nu_index() > 2) {
    throw std::invalid_argument(
        "nil exponent bound is only available when the shift coefficient squares "
        "to zero; nu = " +
        a.rule()->ring()->to_string(a.rule()->nu()) + " has nilpotency index " +
        std::to_string(a.rule()->nu_index()));
  }
  if (a.is_zero()) return 1;
  const std::uint64_t bound = 2 * a.max_index() + 2;
  SparseElement p = a;
  std::uint64_t k = 1;
  while (!p.is_zero()) {
    if (k >= bound) {
      throw std::logic_error("nil exponent exceeded its proven bound");
    }
    p = multiply(p, a);
    ++k;
  }
  return k;
}

std::string to_string(const SparseElement& a) {
  const auto& ring = *a.rule()->ring();
  std::string out;
  for (const auto& [i, v] : a.support()) {
    std::string c = ring.to_string(v);
    std::string label = "x" + std::to_string(i);
    std::string term;
    if (c == "1") {
      term = label;
    } else {
      bool composite = c.find_first_of("+-/") != std::string::npos &&
                       !(c.size() > 1 && c[0] == '-' &&
                         c.find_first_of("+-/", 1) == std::string::npos);
      term = (composite ? "(" + c + ")" : c) + label;
    }
    if (!out.empty() && term[0] != '-') out += "+";
    out += term;
  }
  return out.empty() ? "0" : out;
}

}  // namespace evolia
