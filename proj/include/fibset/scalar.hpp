#pragma once

// Exact coefficients: reduced rationals and multivariate Laurent polynomials
// over the rationals with one variable x_q per prime q.

#include <compare>
#include <concepts>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

namespace fibset {

class ScalarError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Rational {
 public:
  Rational() = default;
  Rational(long n) : value_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(long n, long d);
  explicit Rational(mpq_class v) : value_(std::move(v)) { value_.canonicalize(); }

  static Rational zero() { return Rational(); }
  static Rational one() { return Rational(1); }
  static Rational from_rational(const Rational& q) { return q; }
  // "p/q" or "p"
  static Rational parse(const std::string& text);

  const mpq_class& value() const { return value_; }
  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_unit() const { return !is_zero(); }
  bool is_integer() const { return value_.get_den() == 1; }
  Rational inverse() const;
  Rational pow(long e) const;

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(const Rational& a, const Rational& b) { return a * b.inverse(); }
  Rational operator-() const { return Rational(mpq_class(-value_)); }
  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  // Always "p/q", q > 0.
  std::string to_string() const;
  // "p" for integers, "p/q" otherwise.
  std::string pretty() const;

 private:
  mpq_class value_;
};

// Exponent vector: sorted (prime, exponent) pairs with no zero exponents.
using Monomial = std::vector<std::pair<std::uint32_t, std::int32_t>>;

class LaurentScalar {
 public:
  using Term = std::pair<Monomial, Rational>;

  LaurentScalar() = default;
  LaurentScalar(long n) : LaurentScalar(Rational(n)) {}  // NOLINT(google-explicit-constructor)
  explicit LaurentScalar(const Rational& c);
  LaurentScalar(const Rational& c, Monomial m);

  static LaurentScalar zero() { return {}; }
  static LaurentScalar one() { return LaurentScalar(Rational(1)); }
  static LaurentScalar from_rational(const Rational& q) { return LaurentScalar(q); }
  // x_q
  static LaurentScalar variable(std::uint32_t prime);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // Units are exactly the single-term elements.
  bool is_unit() const { return terms_.size() == 1; }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].first.empty()); }
  Rational constant_value() const;
  LaurentScalar inverse() const;

  LaurentScalar& operator+=(const LaurentScalar& o);
  LaurentScalar& operator-=(const LaurentScalar& o);
  friend LaurentScalar operator+(LaurentScalar a, const LaurentScalar& b) { return a += b; }
  friend LaurentScalar operator-(LaurentScalar a, const LaurentScalar& b) { return a -= b; }
  friend LaurentScalar operator*(const LaurentScalar& a, const LaurentScalar& b);
  LaurentScalar& operator*=(const LaurentScalar& o) { return *this = *this * o; }
  LaurentScalar operator-() const;
  friend bool operator==(const LaurentScalar&, const LaurentScalar&) = default;

  std::string to_string() const;

 private:
  std::vector<Term> terms_;  // sorted by monomial, no zero coefficients
};

template <class S>
concept ScalarType = std::regular<S> && requires(const S& a, const S& b, const Rational& q) {
  { S::zero() } -> std::same_as<S>;
  { S::one() } -> std::same_as<S>;
  { S::from_rational(q) } -> std::same_as<S>;
  { a + b } -> std::same_as<S>;
  { a - b } -> std::same_as<S>;
  { a * b } -> std::same_as<S>;
  { a.inverse() } -> std::same_as<S>;
  { a.is_zero() } -> std::convertible_to<bool>;
  { a.is_unit() } -> std::convertible_to<bool>;
  { a.to_string() } -> std::convertible_to<std::string>;
};

static_assert(ScalarType<Rational>);
static_assert(ScalarType<LaurentScalar>);

// Ring homomorphism x_q -> assignment[q]; every variable must be assigned a
// nonzero rational.
Rational specialize(const LaurentScalar& s, const std::map<std::uint32_t, Rational>& assignment);
LaurentScalar specialize_partial(const LaurentScalar& s, const std::map<std::uint32_t, Rational>& assignment);

// Prime factorization n = prod p^a, n >= 1.
std::vector<std::pair<std::uint32_t, std::uint32_t>> factorize(std::uint64_t n);

// Multiplicative monoid map from positive integers to units, determined by its
// values on primes.
class EllMap {
 public:
  enum class Kind { identity, one, generic, explicit_values };

  static EllMap identity() { return EllMap(Kind::identity); }
  static EllMap one() { return EllMap(Kind::one); }
  static EllMap generic() { return EllMap(Kind::generic); }
  // Primes not listed fall back to x_q.
  static EllMap explicit_values(std::map<std::uint32_t, LaurentScalar> values);
  // "identity" | "one" | "generic"
  static EllMap parse(const std::string& name);

  Kind kind() const { return kind_; }
  std::string name() const;
  const std::map<std::uint32_t, LaurentScalar>& values() const { return values_; }

  LaurentScalar at_prime(std::uint32_t p) const;

 private:
  explicit EllMap(Kind k) : kind_(k) {}
  Kind kind_;
  std::map<std::uint32_t, LaurentScalar> values_;
};

LaurentScalar ell_eval(const EllMap& ell, std::uint64_t n);

// Evaluates ell(n) in the requested scalar ring; Rational requires the value
// to be a constant.
template <class S>
S ell_value(const EllMap& ell, std::uint64_t n);

template <>
inline LaurentScalar ell_value<LaurentScalar>(const EllMap& ell, std::uint64_t n) {
  return ell_eval(ell, n);
}
template <>
inline Rational ell_value<Rational>(const EllMap& ell, std::uint64_t n) {
  const auto v = ell_eval(ell, n);
  if (!v.is_constant()) throw ScalarError("ell(" + std::to_string(n) + ") = " + v.to_string() + " is not rational");
  return v.constant_value();
}

template <class S>
S from_laurent(const LaurentScalar& v);
template <>
inline LaurentScalar from_laurent<LaurentScalar>(const LaurentScalar& v) {
  return v;
}
template <>
inline Rational from_laurent<Rational>(const LaurentScalar& v) {
  if (!v.is_constant()) throw ScalarError(v.to_string() + " is not rational");
  return v.constant_value();
}

// Serialization forms.
nlohmann::json to_json(const Rational& q);
nlohmann::json to_json(const LaurentScalar& s);
nlohmann::json to_json(const EllMap& ell);
LaurentScalar laurent_from_json(const nlohmann::json& j);
EllMap ell_from_json(const nlohmann::json& j);

}  // namespace fibset
