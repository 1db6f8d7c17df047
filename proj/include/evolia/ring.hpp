#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace evolia {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

enum class RingKind { integers, rationals, mod, polyquot };

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

/// An element of a coefficient ring, always held in canonical form:
/// reduced residues for Z/m, reduced fractions with positive denominator
/// for Q, coefficient arrays of exactly `exponent` entries for R[t]/(t^e).
/// Values are created through their Ring and carry it; arithmetic between
/// values of structurally different rings throws std::invalid_argument.
class Value {
public:
  using Poly = std::vector<Value>;
  using Rep = std::variant<Int, Rat, Poly>;

  const RingPtr& ring() const { return ring_; }
  const Rep& rep() const { return rep_; }
  const Int& as_int() const;    // integers and mod representations
  const Rat& as_rat() const;
  const Poly& as_poly() const;

  friend bool operator==(const Value& a, const Value& b);
  friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }
  /// Canonical total order among values of one ring; used for deterministic
  /// set representations, not for any ring-theoretic meaning.
  friend bool operator<(const Value& a, const Value& b);

private:
  friend class Ring;
  Value(RingPtr ring, Rep rep) : ring_(std::move(ring)), rep_(std::move(rep)) {}
  RingPtr ring_;
  Rep rep_;
};

Value operator+(const Value& a, const Value& b);
Value operator-(const Value& a, const Value& b);
Value operator*(const Value& a, const Value& b);
Value operator-(const Value& a);
bool is_zero(const Value& a);

/// Outcome of nilpotency_index. `not_nilpotent` is definitive;
/// `not_nilpotent_within` only reports that no power up to `bound` vanished.
struct NilIndex {
  enum class Kind { index, not_nilpotent, not_nilpotent_within };
  Kind kind;
  std::uint64_t index = 0;
  std::uint64_t bound = 0;
  bool nilpotent() const { return kind == Kind::index; }
};

/// Immutable commutative coefficient ring. Four kinds: the integers, the
/// rationals, Z/m (m >= 2), and quotient rings Base[t]/(t^e) (e >= 1),
/// which nest. Instances are shared; structural equality via same_as.
class Ring : public std::enable_shared_from_this<Ring> {
public:
  static RingPtr integers();
  static RingPtr rationals();
  static RingPtr mod(const Int& modulus);
  static RingPtr polyquot(RingPtr base, unsigned exponent);

  RingKind kind() const { return kind_; }
  const Int& modulus() const;   // mod only
  const RingPtr& base() const;  // polyquot only
  unsigned exponent() const;    // polyquot only

  bool same_as(const Ring& other) const;

  Value zero() const;
  Value one() const;
  /// polyquot only: the residue class of t (the zero value when e == 1).
  Value indeterminate() const;
  Value from_int(const Int& n) const;
  Value from_rat(const Rat& q) const;  // rationals only
  /// polyquot only: value from up to `exponent` base coefficients,
  /// constant term first; missing high coefficients are zero.
  Value poly_value(std::vector<Value> coeffs) const;

  Value add(const Value& a, const Value& b) const;
  Value sub(const Value& a, const Value& b) const;
  Value mul(const Value& a, const Value& b) const;
  Value neg(const Value& a) const;
  bool is_zero_value(const Value& a) const;
  /// Multiplicative inverse; defined for fields only, throws on 0.
  Value inv(const Value& a) const;

  bool is_field() const;
  bool is_domain() const;
  bool is_finite() const;
  Int cardinality() const;  // finite rings only

  /// Every element exactly once, in the deterministic order: Z/m ascending
  /// from 0; quotient rings count coefficient arrays with the constant term
  /// as the fastest digit, base order recursively. Throws for infinite rings.
  std::vector<Value> enumerate() const;

  std::string name() const;
  std::string to_string(const Value& v) const;

private:
  Ring() = default;
  void check_value(const Value& v) const;
  void check_pair(const Value& a, const Value& b) const;

  RingKind kind_ = RingKind::integers;
  Int modulus_;
  RingPtr base_;
  unsigned exponent_ = 0;
};

/// Smallest k >= 1 with a^k = 0, or evidence there is none. Finite rings are
/// decided by power-sequence cycle detection on canonical values; quotient
/// rings over the integers or rationals are decided through the constant
/// term (a is nilpotent iff its constant term is); over the integers and
/// rationals only 0 is nilpotent. `bound` caps iteration work and must be
/// positive; exceeding it yields not_nilpotent_within.
NilIndex nilpotency_index(const Value& a, std::uint64_t bound = 256);

nlohmann::json ring_to_json(const Ring& r);
RingPtr ring_from_json(const nlohmann::json& j);
nlohmann::json value_to_json(const Value& v);
Value value_from_json(const RingPtr& ring, const nlohmann::json& j);

}  // namespace evolia
