#include "evolia/ring.hpp"

#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace evolia {

namespace {

Int canon_residue(const Int& v, const Int& m) {
  Int r = v % m;
  if (r < 0) r += m;
  return r;
}

// Trial division; moduli here are desk scale.
bool is_prime(const Int& m) {
  if (m < 2) return false;
  if (m % 2 == 0) return m == 2;
  for (Int d = 3; d * d <= m; d += 2) {
    if (m % d == 0) return false;
  }
  return true;
}

// Inverse of a modulo m for gcd(a, m) = 1, via extended Euclid.
Int mod_inverse(const Int& a, const Int& m) {
  Int old_r = a, r = m;
  Int old_s = 1, s = 0;
  while (r != 0) {
    Int q = old_r / r;
    Int tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1 && old_r != -1) {
    throw std::invalid_argument("value has no inverse: gcd with modulus is not 1");
  }
  if (old_r == -1) old_s = -old_s;
  return canon_residue(old_s, m);
}

}  // namespace

const Int& Value::as_int() const { return std::get<Int>(rep_); }
const Rat& Value::as_rat() const { return std::get<Rat>(rep_); }
const Value::Poly& Value::as_poly() const { return std::get<Poly>(rep_); }

bool operator==(const Value& a, const Value& b) {
  return a.ring_->same_as(*b.ring_) && a.rep_ == b.rep_;
}

bool operator<(const Value& a, const Value& b) { return a.rep_ < b.rep_; }

Value operator+(const Value& a, const Value& b) { return a.ring()->add(a, b); }
Value operator-(const Value& a, const Value& b) { return a.ring()->sub(a, b); }
Value operator*(const Value& a, const Value& b) { return a.ring()->mul(a, b); }
Value operator-(const Value& a) { return a.ring()->neg(a); }
bool is_zero(const Value& a) { return a.ring()->is_zero_value(a); }

RingPtr Ring::integers() {
  static const RingPtr r = [] {
    auto p = std::shared_ptr<Ring>(new Ring());
    p->kind_ = RingKind::integers;
    return RingPtr(p);
  }();
  return r;
}

RingPtr Ring::rationals() {
  static const RingPtr r = [] {
    auto p = std::shared_ptr<Ring>(new Ring());
    p->kind_ = RingKind::rationals;
    return RingPtr(p);
  }();
  return r;
}

RingPtr Ring::mod(const Int& modulus) {
  if (modulus < 2) {
    throw std::invalid_argument("modulus must be at least 2, got " + modulus.str());
  }
  auto p = std::shared_ptr<Ring>(new Ring());
  p->kind_ = RingKind::mod;
  p->modulus_ = modulus;
  return p;
}

RingPtr Ring::polyquot(RingPtr base, unsigned exponent) {
  if (!base) throw std::invalid_argument("quotient ring needs a base ring");
  if (exponent < 1) throw std::invalid_argument("quotient exponent must be at least 1");
  auto p = std::shared_ptr<Ring>(new Ring());
  p->kind_ = RingKind::polyquot;
  p->base_ = std::move(base);
  p->exponent_ = exponent;
  return p;
}

const Int& Ring::modulus() const {
  if (kind_ != RingKind::mod) throw std::logic_error("modulus() on non-modular ring");
  return modulus_;
}

const RingPtr& Ring::base() const {
  if (kind_ != RingKind::polyquot) throw std::logic_error("base() on non-quotient ring");
  return base_;
}

unsigned Ring::exponent() const {
  if (kind_ != RingKind::polyquot) throw std::logic_error("exponent() on non-quotient ring");
  return exponent_;
}

bool Ring::same_as(const Ring& other) const {
  if (this == &other) return true;
  if (kind_ != other.kind_) return false;
  switch (kind_) {
    case RingKind::integers:
    case RingKind::rationals:
      return true;
    case RingKind::mod:
      return modulus_ == other.modulus_;
    case RingKind::polyquot:
      return exponent_ == other.exponent_ && base_->same_as(*other.base_);
  }
  return false;
}

void Ring::check_value(const Value& v) const {
  if (!v.ring()->same_as(*this)) {
    throw std::invalid_argument("value from ring " + v.ring()->name() +
                                " used in ring " + name());
  }
}

void Ring::check_pair(const Value& a, const Value& b) const {
  check_value(a);
  check_value(b);
}

Value Ring::zero() const {
  switch (kind_) {
    case RingKind::integers:
    case RingKind::mod:
      return Value(shared_from_this(), Int(0));
    case RingKind::rationals:
      return Value(shared_from_this(), Rat(0));
    case RingKind::polyquot:
      return Value(shared_from_this(), Value::Poly(exponent_, base_->zero()));
  }
  throw std::logic_error("bad ring kind");
}

Value Ring::one() const { return from_int(1); }

Value Ring::indeterminate() const {
  if (kind_ != RingKind::polyquot) {
    throw std::invalid_argument("indeterminate() requires a quotient ring");
  }
  Value::Poly c(exponent_, base_->zero());
  if (exponent_ >= 2) c[1] = base_->one();  // t^1 = 0 when e == 1
  return Value(shared_from_this(), std::move(c));
}

Value Ring::from_int(const Int& n) const {
  switch (kind_) {
    case RingKind::integers:
      return Value(shared_from_this(), n);
    case RingKind::rationals:
      return Value(shared_from_this(), Rat(n));
    case RingKind::mod:
      return Value(shared_from_this(), canon_residue(n, modulus_));
    case RingKind::polyquot: {
      Value::Poly c(exponent_, base_->zero());
      c[0] = base_->from_int(n);
      return Value(shared_from_this(), std::move(c));
    }
  }
  throw std::logic_error("bad ring kind");
}

Value Ring::from_rat(const Rat& q) const {
  if (kind_ != RingKind::rationals) {
    throw std::invalid_argument("from_rat() requires the rational ring");
  }
  return Value(shared_from_this(), q);
}

Value Ring::poly_value(std::vector<Value> coeffs) const {
  if (kind_ != RingKind::polyquot) {
    throw std::invalid_argument("poly_value() requires a quotient ring");
  }
  if (coeffs.size() > exponent_) {
    throw std::invalid_argument("too many coefficients for quotient ring " + name());
  }
  for (const Value& c : coeffs) base_->check_value(c);
  Value::Poly c;
  c.reserve(exponent_);
  for (Value& v : coeffs) c.push_back(std::move(v));
  while (c.size() < exponent_) c.push_back(base_->zero());
  return Value(shared_from_this(), std::move(c));
}

Value Ring::add(const Value& a, const Value& b) const {
  check_pair(a, b);
  switch (kind_) {
    case RingKind::integers:
      return Value(shared_from_this(), Int(a.as_int() + b.as_int()));
    case RingKind::rationals:
      return Value(shared_from_this(), Rat(a.as_rat() + b.as_rat()));
    case RingKind::mod: {
      Int r = a.as_int() + b.as_int();
      if (r >= modulus_) r -= modulus_;
      return Value(shared_from_this(), std::move(r));
    }
    case RingKind::polyquot: {
      const auto& pa = a.as_poly();
      const auto& pb = b.as_poly();
      Value::Poly c;
      c.reserve(exponent_);
      for (unsigned i = 0; i < exponent_; ++i) c.push_back(base_->add(pa[i], pb[i]));
      return Value(shared_from_this(), std::move(c));
    }
  }
  throw std::logic_error("bad ring kind");
}

Value Ring::sub(const Value& a, const Value& b) const { return add(a, neg(b)); }

Value Ring::mul(const Value& a, const Value& b) const {
  check_pair(a, b);
  switch (kind_) {
    case RingKind::integers:
      return Value(shared_from_this(), Int(a.as_int() * b.as_int()));
    case RingKind::rationals:
      return Value(shared_from_this(), Rat(a.as_rat() * b.as_rat()));
    case RingKind::mod:
      return Value(shared_from_this(), Int((a.as_int() * b.as_int()) % modulus_));
    case RingKind::polyquot: {
      // Truncated convolution: t^e = 0.
      const auto& pa = a.as_poly();
      const auto& pb = b.as_poly();
      Value::Poly c(exponent_, base_->zero());
      for (unsigned i = 0; i < exponent_; ++i) {
        if (base_->is_zero_value(pa[i])) continue;
        for (unsigned j = 0; i + j < exponent_; ++j) {
          if (base_->is_zero_value(pb[j])) continue;
          c[i + j] = base_->add(c[i + j], base_->mul(pa[i], pb[j]));
        }
      }
      return Value(shared_from_this(), std::move(c));
    }
  }
  throw std::logic_error("bad ring kind");
}

Value Ring::neg(const Value& a) const {
  check_value(a);
  switch (kind_) {
    case RingKind::integers:
      return Value(shared_from_this(), Int(-a.as_int()));
    case RingKind::rationals:
      return Value(shared_from_this(), Rat(-a.as_rat()));
    case RingKind::mod: {
      const Int& r = a.as_int();
      return Value(shared_from_this(), r == 0 ? Int(0) : Int(modulus_ - r));
    }
    case RingKind::polyquot: {
      Value::Poly c;
      c.reserve(exponent_);
      for (const Value& v : a.as_poly()) c.push_back(base_->neg(v));
      return Value(shared_from_this(), std::move(c));
    }
  }
  throw std::logic_error("bad ring kind");
}

bool Ring::is_zero_value(const Value& a) const {
  check_value(a);
  switch (kind_) {
    case RingKind::integers:
    case RingKind::mod:
      return a.as_int() == 0;
    case RingKind::rationals:
      return a.as_rat() == 0;
    case RingKind::polyquot:
      for (const Value& v : a.as_poly()) {
        if (!base_->is_zero_value(v)) return false;
      }
      return true;
  }
  throw std::logic_error("bad ring kind");
}

Value Ring::inv(const Value& a) const {
  check_value(a);
  if (!is_field()) {
    throw std::invalid_argument("inverse requires a field, " + name() + " is not one");
  }
  if (is_zero_value(a)) throw std::invalid_argument("inverse of zero");
  switch (kind_) {
    case RingKind::rationals:
      return Value(shared_from_this(), Rat(1 / a.as_rat()));
    case RingKind::mod:
      return Value(shared_from_this(), mod_inverse(a.as_int(), modulus_));
    case RingKind::polyquot: {
      // e == 1 here: the ring is its own base modulo nothing extra.
      Value::Poly c;
      c.push_back(base_->inv(a.as_poly()[0]));
      return Value(shared_from_this(), std::move(c));
    }
    default:
      throw std::logic_error("inv: unexpected ring kind");
  }
}

bool Ring::is_field() const {
  switch (kind_) {
    case RingKind::integers: return false;
    case RingKind::rationals: return true;
    case RingKind::mod: return is_prime(modulus_);
    case RingKind::polyquot: return exponent_ == 1 && base_->is_field();
  }
  return false;
}

bool Ring::is_domain() const {
  switch (kind_) {
    case RingKind::integers:
    case RingKind::rationals:
      return true;
    case RingKind::mod:
      return is_prime(modulus_);
    case RingKind::polyquot:
      // For e >= 2, t is a nonzero zero divisor (t * t^(e-1) = 0).
      return exponent_ == 1 && base_->is_domain();
  }
  return false;
}

bool Ring::is_finite() const {
  switch (kind_) {
    case RingKind::integers:
    case RingKind::rationals:
      return false;
    case RingKind::mod:
      return true;
    case RingKind::polyquot:
      return base_->is_finite();
  }
  return false;
}

Int Ring::cardinality() const {
  switch (kind_) {
    case RingKind::mod:
      return modulus_;
    case RingKind::polyquot: {
      if (!is_finite()) break;
      Int c = 1;
      Int b = base_->cardinality();
      for (unsigned i = 0; i < exponent_; ++i) c *= b;
      return c;
    }
    default:
      break;
  }
  throw std::invalid_argument("cardinality of infinite ring " + name());
}

std::vector<Value> Ring::enumerate() const {
  if (!is_finite()) {
    throw std::invalid_argument("cannot enumerate infinite ring " + name());
  }
  if (cardinality() > 10'000'000) {
    throw std::invalid_argument("ring " + name() + " is too large to enumerate");
  }
  std::vector<Value> out;
  if (kind_ == RingKind::mod) {
    out.reserve(static_cast<std::size_t>(modulus_));
    for (Int i = 0; i < modulus_; ++i) {
      out.push_back(Value(shared_from_this(), Int(i)));
    }
    return out;
  }
  // polyquot over a finite base: count coefficient arrays, constant term as
  // the fastest digit.
  std::vector<Value> basev = base_->enumerate();
  std::vector<std::size_t> digit(exponent_, 0);
  for (;;) {
    Value::Poly c;
    c.reserve(exponent_);
    for (unsigned i = 0; i < exponent_; ++i) c.push_back(basev[digit[i]]);
    out.push_back(Value(shared_from_this(), std::move(c)));
    unsigned pos = 0;
    while (pos < exponent_) {
      if (++digit[pos] < basev.size()) break;
      digit[pos] = 0;
      ++pos;
    }
    if (pos == exponent_) break;
  }
  return out;
}

std::string Ring::name() const {
  switch (kind_) {
    case RingKind::integers: return "Z";
    case RingKind::rationals: return "Q";
    case RingKind::mod: return "Z/" + modulus_.str();
    case RingKind::polyquot: {
      std::string b = base_->name();
      if (base_->kind() == RingKind::polyquot) b = "(" + b + ")";
      return b + "[t]/(t^" + std::to_string(exponent_) + ")";
    }
  }
  return "?";
}

std::string Ring::to_string(const Value& v) const {
  check_value(v);
  switch (kind_) {
    case RingKind::integers:
    case RingKind::mod:
      return v.as_int().str();
    case RingKind::rationals: {
      const Rat& q = v.as_rat();
      Int num = boost::multiprecision::numerator(q);
      Int den = boost::multiprecision::denominator(q);
      if (den == 1) return num.str();
      return num.str() + "/" + den.str();
    }
    case RingKind::polyquot: {
      const auto& p = v.as_poly();
      std::string out;
      for (unsigned d = 0; d < exponent_; ++d) {
        if (base_->is_zero_value(p[d])) continue;
        std::string coeff = base_->to_string(p[d]);
        std::string term;
        if (d == 0) {
          term = coeff;
        } else {
          std::string power = d == 1 ? "t" : "t^" + std::to_string(d);
          if (coeff == "1") {
            term = power;
          } else {
            bool composite = coeff.find_first_of("+-") != std::string::npos;
            term = (composite ? "(" + coeff + ")" : coeff) + power;
          }
        }
        if (!out.empty()) out += "+";
        out += term;
      }
      return out.empty() ? "0" : out;
    }
  }
  return "?";
}

NilIndex nilpotency_index(const Value& a, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("nilpotency bound must be positive");
  const RingPtr& ring = a.ring();
  if (is_zero(a)) return {NilIndex::Kind::index, 1, 0};

  if (ring->is_finite()) {
    // The power sequence lives in a finite set, so it either reaches 0 or
    // revisits a canonical value; a revisit means it never reaches 0.
    std::map<Value, std::uint64_t> seen;
    Value p = a;
    std::uint64_t k = 1;
    for (;;) {
      if (is_zero(p)) return {NilIndex::Kind::index, k, 0};
      if (seen.count(p)) return {NilIndex::Kind::not_nilpotent, 0, 0};
      if (k > bound) return {NilIndex::Kind::not_nilpotent_within, 0, bound};
      seen.emplace(p, k);
      p = p * a;
      ++k;
    }
  }

  switch (ring->kind()) {
    case RingKind::integers:
    case RingKind::rationals:
      // Domains: only 0 is nilpotent, and it was handled above.
      return {NilIndex::Kind::not_nilpotent, 0, 0};
    case RingKind::polyquot: {
      // a = a0 + t*b is nilpotent iff a0 is nilpotent in the base: the
      // constant term of a^k is a0^k, and t*b is nilpotent outright.
      NilIndex c = nilpotency_index(a.as_poly()[0], bound);
      if (c.kind != NilIndex::Kind::index) return c;
      Value p = a;
      std::uint64_t k = 1;
      while (!is_zero(p)) {
        if (k > bound) return {NilIndex::Kind::not_nilpotent_within, 0, bound};
        p = p * a;
        ++k;
      }
      return {NilIndex::Kind::index, k, 0};
    }
    default:
      throw std::logic_error("nilpotency_index: unexpected ring kind");
  }
}

namespace {

nlohmann::json int_to_json(const Int& v) {
  static const Int lo = std::numeric_limits<std::int64_t>::min();
  static const Int hi = std::numeric_limits<std::int64_t>::max();
  if (v >= lo && v <= hi) return static_cast<std::int64_t>(v);
  return v.str();
}

Int int_from_json(const nlohmann::json& j, const char* what) {
  try {
    if (j.is_number_integer()) return Int(j.get<std::int64_t>());
    if (j.is_string()) return Int(j.get<std::string>());
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("bad integer literal for ") + what +
                                ": " + j.dump());
  }
  throw std::invalid_argument(std::string("expected integer for ") + what + ", got " +
                              j.dump());
}

}  // namespace

nlohmann::json ring_to_json(const Ring& r) {
  nlohmann::json j;
  switch (r.kind()) {
    case RingKind::integers:
      j["kind"] = "int";
      break;
    case RingKind::rationals:
      j["kind"] = "rat";
      break;
    case RingKind::mod:
      j["kind"] = "mod";
      j["modulus"] = int_to_json(r.modulus());
      break;
    case RingKind::polyquot:
      j["kind"] = "polyquot";
      j["base"] = ring_to_json(*r.base());
      j["exponent"] = r.exponent();
      break;
  }
  return j;
}

RingPtr ring_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw std::invalid_argument("ring descriptor must be an object with a \"kind\": " +
                                j.dump());
  }
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "int") return Ring::integers();
  if (kind == "rat") return Ring::rationals();
  if (kind == "mod") {
    if (!j.contains("modulus")) {
      throw std::invalid_argument("mod ring descriptor needs a \"modulus\"");
    }
    return Ring::mod(int_from_json(j["modulus"], "modulus"));
  }
  if (kind == "polyquot") {
    if (!j.contains("base") || !j.contains("exponent")) {
      throw std::invalid_argument(
          "polyquot ring descriptor needs \"base\" and \"exponent\"");
    }
    if (!j["exponent"].is_number_unsigned()) {
      throw std::invalid_argument("polyquot exponent must be a positive integer, got " +
                                  j["exponent"].dump());
    }
    return Ring::polyquot(ring_from_json(j["base"]), j["exponent"].get<unsigned>());
  }
  throw std::invalid_argument("unknown ring kind \"" + kind + "\"");
}

nlohmann::json value_to_json(const Value& v) {
  const Ring& r = *v.ring();
  switch (r.kind()) {
    case RingKind::integers:
    case RingKind::mod:
      return int_to_json(v.as_int());
    case RingKind::rationals: {
      const Rat& q = v.as_rat();
      Int num = boost::multiprecision::numerator(q);
      Int den = boost::multiprecision::denominator(q);
      if (den == 1) return num.str();
      return num.str() + "/" + den.str();
    }
    case RingKind::polyquot: {
      nlohmann::json arr = nlohmann::json::array();
      for (const Value& c : v.as_poly()) arr.push_back(value_to_json(c));
      return arr;
    }
  }
  throw std::logic_error("value_to_json: bad ring kind");
}

Value value_from_json(const RingPtr& ring, const nlohmann::json& j) {
  switch (ring->kind()) {
    case RingKind::integers:
      return ring->from_int(int_from_json(j, "integer value"));
    case RingKind::mod:
      return ring->from_int(int_from_json(j, "residue value"));
    case RingKind::rationals: {
      if (j.is_number_integer()) return ring->from_int(Int(j.get<std::int64_t>()));
      if (j.is_string()) {
        const std::string s = j.get<std::string>();
        const auto slash = s.find('/');
        try {
          if (slash == std::string::npos) return ring->from_int(Int(s));
          Int num(s.substr(0, slash));
          Int den(s.substr(slash + 1));
          if (den == 0) throw std::invalid_argument("zero denominator");
          return ring->from_rat(Rat(num, den));
        } catch (const std::invalid_argument&) {
          throw;
        } catch (const std::exception&) {
          throw std::invalid_argument("bad rational literal \"" + s + "\"");
        }
      }
      throw std::invalid_argument("expected rational (\"p/q\" or integer), got " +
                                  j.dump());
    }
    case RingKind::polyquot: {
      if (j.is_array()) {
        if (j.size() > ring->exponent()) {
          throw std::invalid_argument("coefficient array longer than quotient exponent " +
                                      std::to_string(ring->exponent()) + ": " + j.dump());
        }
        std::vector<Value> coeffs;
        coeffs.reserve(j.size());
        for (const auto& c : j) coeffs.push_back(value_from_json(ring->base(), c));
        return ring->poly_value(std::move(coeffs));
      }
      // Scalars embed as constants.
      std::vector<Value> coeffs;
      coeffs.push_back(value_from_json(ring->base(), j));
      return ring->poly_value(std::move(coeffs));
    }
  }
  throw std::logic_error("value_from_json: bad ring kind");
}

}  // namespace evolia
