#include "fibset/scalar.hpp"

#include <algorithm>
#include <sstream>

namespace fibset {

Rational::Rational(long n, long d) {
  if (d == 0) throw ScalarError("zero denominator");
  value_ = mpq_class(n, d);
  value_.canonicalize();
}

Rational Rational::parse(const std::string& text) {
  mpq_class v;
  if (text.empty() || v.set_str(text, 10) != 0) throw ScalarError("malformed rational '" + text + "'");
  if (v.get_den() == 0) throw ScalarError("zero denominator in '" + text + "'");
  return Rational(std::move(v));
}

Rational Rational::inverse() const {
  if (is_zero()) throw ScalarError("0 is not a unit");
  return Rational(mpq_class(1 / value_));
}

Rational Rational::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), value_.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(den.get_mpz_t(), value_.get_den_mpz_t(), static_cast<unsigned long>(e));
  return Rational(mpq_class(num, den));
}

std::string Rational::to_string() const {
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string Rational::pretty() const {
  return is_integer() ? value_.get_num().get_str() : to_string();
}

// ---------------------------------------------------------------------------

namespace {

Monomial monomial_product(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      const std::int32_t e = a[i].second + b[j].second;
      if (e != 0) out.emplace_back(a[i].first, e);
      ++i;
      ++j;
    }
  }
  return out;
}

void normalize_monomial(Monomial& m) {
  std::sort(m.begin(), m.end());
  Monomial out;
  for (const auto& [p, e] : m) {
    if (!out.empty() && out.back().first == p)
      out.back().second += e;
    else
      out.emplace_back(p, e);
  }
  std::erase_if(out, [](const auto& pe) { return pe.second == 0; });
  m = std::move(out);
}

std::vector<LaurentScalar::Term> merge(const std::vector<LaurentScalar::Term>& a,
                                       const std::vector<LaurentScalar::Term>& b, bool subtract) {
  std::vector<LaurentScalar::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, subtract ? -b[j].second : b[j].second);
      ++j;
    } else {
      Rational c = subtract ? a[i].second - b[j].second : a[i].second + b[j].second;
      if (!c.is_zero()) out.emplace_back(a[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

LaurentScalar::LaurentScalar(const Rational& c) {
  if (!c.is_zero()) terms_.emplace_back(Monomial{}, c);
}

LaurentScalar::LaurentScalar(const Rational& c, Monomial m) {
  normalize_monomial(m);
  if (!c.is_zero()) terms_.emplace_back(std::move(m), c);
}

LaurentScalar LaurentScalar::variable(std::uint32_t prime) {
  return LaurentScalar(Rational(1), Monomial{{prime, 1}});
}

Rational LaurentScalar::constant_value() const {
  if (!is_constant()) throw ScalarError(to_string() + " is not a constant");
  return terms_.empty() ? Rational() : terms_[0].second;
}

LaurentScalar LaurentScalar::inverse() const {
  if (!is_unit()) throw ScalarError(to_string() + " is not a unit");
  Monomial m = terms_[0].first;
  for (auto& pe : m) pe.second = -pe.second;
  LaurentScalar out;
  out.terms_.emplace_back(std::move(m), terms_[0].second.inverse());
  return out;
}

LaurentScalar& LaurentScalar::operator+=(const LaurentScalar& o) {
  terms_ = merge(terms_, o.terms_, false);
  return *this;
}

LaurentScalar& LaurentScalar::operator-=(const LaurentScalar& o) {
  terms_ = merge(terms_, o.terms_, true);
  return *this;
}

LaurentScalar operator*(const LaurentScalar& a, const LaurentScalar& b) {
  LaurentScalar out;
  if (a.is_zero() || b.is_zero()) return out;
  if (a.terms_.size() == 1 && b.terms_.size() == 1) {
    out.terms_.emplace_back(monomial_product(a.terms_[0].first, b.terms_[0].first), a.terms_[0].second * b.terms_[0].second);
    return out;
  }
  std::map<Monomial, Rational> acc;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) acc[monomial_product(ma, mb)] += ca * cb;
  for (auto& [m, c] : acc)
    if (!c.is_zero()) out.terms_.emplace_back(m, std::move(c));
  return out;
}

LaurentScalar LaurentScalar::operator-() const {
  LaurentScalar out = *this;
  for (auto& t : out.terms_) t.second = -t.second;
  return out;
}

std::string LaurentScalar::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    Rational coeff = c;
    if (!first) {
      if (coeff < Rational(0)) {
        os << " - ";
        coeff = -coeff;
      } else {
        os << " + ";
      }
    }
    first = false;
    std::string mono;
    for (const auto& [p, e] : m) {
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(p);
      if (e != 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty())
      os << coeff.pretty();
    else if (coeff == Rational(1))
      os << mono;
    else if (coeff == Rational(-1))
      os << "-" << mono;
    else
      os << coeff.pretty() << "*" << mono;
  }
  return os.str();
}

Rational specialize(const LaurentScalar& s, const std::map<std::uint32_t, Rational>& assignment) {
  Rational total;
  for (const auto& [m, c] : s.terms()) {
    Rational t = c;
    for (const auto& [p, e] : m) {
      auto it = assignment.find(p);
      if (it == assignment.end()) throw ScalarError("no value assigned to x" + std::to_string(p));
      if (it->second.is_zero()) throw ScalarError("x" + std::to_string(p) + " must be assigned a nonzero value");
      t *= it->second.pow(e);
    }
    total += t;
  }
  return total;
}

LaurentScalar specialize_partial(const LaurentScalar& s, const std::map<std::uint32_t, Rational>& assignment) {
  LaurentScalar total;
  for (const auto& [m, c] : s.terms()) {
    Rational coeff = c;
    Monomial rest;
    for (const auto& [p, e] : m) {
      if (auto it = assignment.find(p); it != assignment.end()) {
        if (it->second.is_zero()) throw ScalarError("x" + std::to_string(p) + " must be assigned a nonzero value");
        coeff *= it->second.pow(e);
      } else {
        rest.emplace_back(p, e);
      }
    }
    total += LaurentScalar(coeff, std::move(rest));
  }
  return total;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> factorize(std::uint64_t n) {
  if (n == 0) throw ScalarError("0 has no factorization in the multiplicative monoid");
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    std::uint32_t a = 0;
    while (n % p == 0) {
      n /= p;
      ++a;
    }
    if (a > 0) out.emplace_back(static_cast<std::uint32_t>(p), a);
  }
  if (n > 1) out.emplace_back(static_cast<std::uint32_t>(n), 1);
  return out;
}

// ---------------------------------------------------------------------------

EllMap EllMap::explicit_values(std::map<std::uint32_t, LaurentScalar> values) {
  for (const auto& [p, v] : values) {
    if (factorize(p).size() != 1 || factorize(p)[0].second != 1)
      throw ScalarError("ell values are given on primes; " + std::to_string(p) + " is not prime");
    if (!v.is_unit()) throw ScalarError("ell(" + std::to_string(p) + ") = " + v.to_string() + " is not a unit");
  }
  EllMap e(Kind::explicit_values);
  e.values_ = std::move(values);
  return e;
}

EllMap EllMap::parse(const std::string& name) {
  if (name == "identity" || name == "id") return identity();
  if (name == "one") return one();
  if (name == "generic") return generic();
  throw ScalarError("unknown ell preset '" + name + "' (expected identity, one or generic)");
}

std::string EllMap::name() const {
  switch (kind_) {
    case Kind::identity: return "identity";
    case Kind::one: return "one";
    case Kind::generic: return "generic";
    case Kind::explicit_values: return "explicit";
  }
  return "unknown";
}

LaurentScalar EllMap::at_prime(std::uint32_t p) const {
  switch (kind_) {
    case Kind::identity: return LaurentScalar(Rational(static_cast<long>(p)));
    case Kind::one: return LaurentScalar::one();
    case Kind::generic: return LaurentScalar::variable(p);
    case Kind::explicit_values:
      if (auto it = values_.find(p); it != values_.end()) return it->second;
      return LaurentScalar::variable(p);
  }
  return LaurentScalar::one();
}

LaurentScalar ell_eval(const EllMap& ell, std::uint64_t n) {
  if (n == 0) throw ScalarError("ell is defined on positive integers; got 0");
  LaurentScalar out = LaurentScalar::one();
  for (const auto& [p, a] : factorize(n)) {
    const LaurentScalar v = ell.at_prime(p);
    for (std::uint32_t i = 0; i < a; ++i) out = out * v;
  }
  return out;
}

// ---------------------------------------------------------------------------

nlohmann::json to_json(const Rational& q) { return q.to_string(); }

nlohmann::json to_json(const LaurentScalar& s) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [m, c] : s.terms()) {
    nlohmann::json exps = nlohmann::json::object();
    for (const auto& [p, e] : m) exps[std::to_string(p)] = e;
    out.push_back({{"coeff", c.to_string()}, {"exps", exps}});
  }
  return out;
}

nlohmann::json to_json(const EllMap& ell) {
  nlohmann::json values = nlohmann::json::object();
  for (const auto& [p, v] : ell.values()) values[std::to_string(p)] = to_json(v);
  return {{"kind", ell.name()}, {"values", values}};
}

LaurentScalar laurent_from_json(const nlohmann::json& j) {
  if (j.is_string()) return LaurentScalar(Rational::parse(j.get<std::string>()));
  if (j.is_number_integer()) return LaurentScalar(Rational(j.get<long>()));
  if (!j.is_array()) throw ScalarError("Laurent scalar must be a term list");
  LaurentScalar out;
  for (const auto& term : j) {
    Monomial m;
    if (term.contains("exps"))
      for (const auto& [p, e] : term.at("exps").items())
        m.emplace_back(static_cast<std::uint32_t>(std::stoul(p)), e.get<std::int32_t>());
    out += LaurentScalar(Rational::parse(term.at("coeff").get<std::string>()), std::move(m));
  }
  return out;
}

EllMap ell_from_json(const nlohmann::json& j) {
  if (j.is_string()) return EllMap::parse(j.get<std::string>());
  const auto kind = j.at("kind").get<std::string>();
  if (kind != "explicit") return EllMap::parse(kind);
  std::map<std::uint32_t, LaurentScalar> values;
  if (j.contains("values"))
    for (const auto& [p, v] : j.at("values").items())
      values.emplace(static_cast<std::uint32_t>(std::stoul(p)), laurent_from_json(v));
  return EllMap::explicit_values(std::move(values));
}

}  // namespace fibset
