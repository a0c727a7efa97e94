#pragma once

// Twisted linearization of a finite partial category with a basis-permuting
// interior structure, and its invariant category. Everything here is written
// once against the PartialCategory concept and instantiated for the pair
// category (class functions) and for the subcharacter category.

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <tuple>
#include <utility>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fibset/group.hpp"
#include "fibset/scalar.hpp"

namespace fibset {

using ObjectId = std::size_t;

template <class C>
concept PartialCategory = requires(const C& c, ObjectId o, std::size_t i, element_t x) {
  { c.object_count() } -> std::convertible_to<std::size_t>;
  { c.group(o) } -> std::convertible_to<const GroupPtr&>;
  { c.basis_size(o, o) } -> std::convertible_to<std::size_t>;
  { c.composite(o, o, o, i, i) } -> std::same_as<std::optional<std::size_t>>;
  { c.act(o, o, x, x, i) } -> std::convertible_to<std::size_t>;
  { c.orbit_rep(o, o, i) } -> std::convertible_to<std::size_t>;
  { c.orbit_size(o, o, i) } -> std::convertible_to<std::size_t>;
  { c.orbit_reps(o, o) } -> std::convertible_to<const std::vector<std::size_t>&>;
  { c.structural(o, x) } -> std::convertible_to<std::vector<std::size_t>>;
};

class LinearError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Finite linear combination of basis indices of one hom-set. The tag keeps the
// s-basis, the orbit basis and the d-basis apart at compile time.
template <ScalarType S, class Tag>
struct Combination {
  ObjectId cod = 0;
  ObjectId dom = 0;
  std::map<std::size_t, S> terms;  // no zero coefficients

  Combination() = default;
  Combination(ObjectId c, ObjectId d) : cod(c), dom(d) {}

  static Combination basis(ObjectId c, ObjectId d, std::size_t k, S coeff = S::one()) {
    Combination out(c, d);
    out.add(k, coeff);
    return out;
  }

  void add(std::size_t k, const S& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms.emplace(k, c);
    if (!inserted) {
      it->second = it->second + c;
      if (it->second.is_zero()) terms.erase(it);
    }
  }
  S coeff(std::size_t k) const {
    auto it = terms.find(k);
    return it == terms.end() ? S::zero() : it->second;
  }
  bool is_zero() const { return terms.empty(); }

  Combination& operator+=(const Combination& o) {
    check_same(o);
    for (const auto& [k, c] : o.terms) add(k, c);
    return *this;
  }
  Combination& operator-=(const Combination& o) {
    check_same(o);
    for (const auto& [k, c] : o.terms) add(k, S::zero() - c);
    return *this;
  }
  friend Combination operator+(Combination a, const Combination& b) { return a += b; }
  friend Combination operator-(Combination a, const Combination& b) { return a -= b; }
  friend Combination operator*(const S& s, const Combination& a) {
    Combination out(a.cod, a.dom);
    for (const auto& [k, c] : a.terms) out.add(k, s * c);
    return out;
  }
  friend bool operator==(const Combination& a, const Combination& b) {
    return a.cod == b.cod && a.dom == b.dom && a.terms == b.terms;
  }

  std::string to_string() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms) {
      os << (first ? "" : " + ") << "(" << c.to_string() << ")*[" << k << "]";
      first = false;
    }
    return os.str();
  }

 private:
  void check_same(const Combination& o) const {
    if (o.cod != cod || o.dom != dom) throw LinearError("adding morphisms of different hom-sets");
  }
};

struct SBasisTag;
struct OrbitBasisTag;

// Element of the twisted linearization, on basis symbols p_phi.
template <ScalarType S>
using Morphism = Combination<S, SBasisTag>;
// Element of the invariant category on the basis of orbit averages p-bar,
// keyed by canonical orbit representatives.
template <ScalarType S>
using BarMorphism = Combination<S, OrbitBasisTag>;

// gamma(phi, psi) for phi in P(F, G), psi in P(G, H); zero when unmatched.
template <ScalarType S>
using Cocycle = std::function<S(ObjectId, ObjectId, ObjectId, std::size_t, std::size_t)>;

template <ScalarType S, PartialCategory C>
Cocycle<S> trivial_cocycle(const C& cat) {
  return [&cat](ObjectId f, ObjectId g, ObjectId h, std::size_t i, std::size_t j) {
    return cat.composite(f, g, h, i, j) ? S::one() : S::zero();
  };
}

template <ScalarType S>
S order_inverse(std::size_t n) {
  return S::from_rational(Rational(1, static_cast<long>(n)));
}

// p_phi p_psi = gamma(phi, psi) p_{phi psi}, extended bilinearly.
template <ScalarType S, PartialCategory C>
Morphism<S> compose_linear(const C& cat, const Morphism<S>& x, const Morphism<S>& y, const Cocycle<S>& gamma) {
  if (x.dom != y.cod)
    throw LinearError("cannot compose: domain " + cat.group(x.dom)->name() + " differs from codomain " +
                      cat.group(y.cod)->name());
  Morphism<S> out(x.cod, y.dom);
  for (const auto& [i, a] : x.terms)
    for (const auto& [j, b] : y.terms) {
      const auto comp = cat.composite(x.cod, x.dom, y.dom, i, j);
      if (!comp) continue;
      out.add(*comp, a * b * gamma(x.cod, x.dom, y.dom, i, j));
    }
  return out;
}

// The structural map sigma_G(g).
template <ScalarType S, PartialCategory C>
Morphism<S> sigma(const C& cat, ObjectId g, element_t x) {
  Morphism<S> out(g, g);
  for (auto k : cat.structural(g, x)) out.add(k, S::one());
  return out;
}

// sigma_G(e_G) = (1/|G|) sum_g sigma_G(g)
template <ScalarType S, PartialCategory C>
Morphism<S> sigma_idempotent(const C& cat, ObjectId g) {
  const std::size_t n = cat.group(g)->order();
  Morphism<S> out(g, g);
  for (std::size_t x = 0; x < n; ++x) out += sigma<S>(cat, g, static_cast<element_t>(x));
  return order_inverse<S>(n) * out;
}

// ^{a x b} x, permuting basis symbols.
template <ScalarType S, PartialCategory C>
Morphism<S> act(const C& cat, element_t a, element_t b, const Morphism<S>& x) {
  Morphism<S> out(x.cod, x.dom);
  for (const auto& [k, c] : x.terms) out.add(cat.act(x.cod, x.dom, a, b, k), c);
  return out;
}

// (1/(|F||G|)) sum_{a, b} ^a phi ^b, expanded in the s-basis.
template <ScalarType S, PartialCategory C>
Morphism<S> bar(const C& cat, ObjectId f, ObjectId g, std::size_t k) {
  const auto& gf = *cat.group(f);
  const auto& gg = *cat.group(g);
  std::map<std::size_t, std::size_t> hits;
  for (std::size_t a = 0; a < gf.order(); ++a)
    for (std::size_t b = 0; b < gg.order(); ++b)
      ++hits[cat.act(f, g, static_cast<element_t>(a), gg.inv(static_cast<element_t>(b)), k)];
  Morphism<S> out(f, g);
  const S scale = order_inverse<S>(gf.order() * gg.order());
  for (const auto& [j, n] : hits) out.add(j, scale * S::from_rational(Rational(static_cast<long>(n))));
  return out;
}

template <ScalarType S, PartialCategory C>
Morphism<S> expand(const C& cat, const BarMorphism<S>& x) {
  Morphism<S> out(x.cod, x.dom);
  for (const auto& [k, c] : x.terms) out += c * bar<S>(cat, x.cod, x.dom, k);
  return out;
}

template <ScalarType S, PartialCategory C>
bool is_invariant(const C& cat, const Morphism<S>& x) {
  // orbit rep -> (coefficient, members seen)
  std::map<std::size_t, std::pair<S, std::size_t>> seen;
  for (const auto& [k, c] : x.terms) {
    auto [it, inserted] = seen.emplace(cat.orbit_rep(x.cod, x.dom, k), std::make_pair(c, std::size_t{1}));
    if (inserted) continue;
    if (!(it->second.first == c)) return false;
    ++it->second.second;
  }
  for (const auto& [rep, entry] : seen)
    if (entry.second != cat.orbit_size(x.cod, x.dom, rep)) return false;
  return true;
}

// Rewrites an F x G-fixed element on the orbit basis; throws if not fixed.
template <ScalarType S, PartialCategory C>
BarMorphism<S> collect(const C& cat, const Morphism<S>& x) {
  if (!is_invariant(cat, x)) throw LinearError("element is not fixed by the F x G action: " + x.to_string());
  BarMorphism<S> out(x.cod, x.dom);
  for (const auto& [k, c] : x.terms)
    if (cat.orbit_rep(x.cod, x.dom, k) == k)
      out.add(k, c * S::from_rational(Rational(static_cast<long>(cat.orbit_size(x.cod, x.dom, k)))));
  return out;
}

// Identity of the invariant category: sigma_G(e_G).
template <ScalarType S, PartialCategory C>
BarMorphism<S> invariant_identity(const C& cat, ObjectId g) {
  return collect(cat, sigma_idempotent<S>(cat, g));
}

// Composite in the invariant category, computed literally: expand both bars,
// compose in the linearization, recollect.
template <ScalarType S, PartialCategory C>
BarMorphism<S> compose_invariant_oracle(const C& cat, const BarMorphism<S>& x, const BarMorphism<S>& y,
                                        const Cocycle<S>& gamma) {
  if (x.dom != y.cod) throw LinearError("cannot compose invariant morphisms across different middle groups");
  return collect(cat, compose_linear(cat, expand(cat, x), expand(cat, y), gamma));
}

// p-bar_phi p-bar_psi = (1/|G|) sum_{g in G} gamma(phi, ^g psi) p-bar_{phi . ^g psi}
template <ScalarType S, PartialCategory C>
BarMorphism<S> compose_invariant_averaging(const C& cat, const BarMorphism<S>& x, const BarMorphism<S>& y,
                                           const Cocycle<S>& gamma) {
  if (x.dom != y.cod) throw LinearError("cannot compose invariant morphisms across different middle groups");
  const ObjectId f = x.cod, g = x.dom, h = y.dom;
  const std::size_t ng = cat.group(g)->order();
  BarMorphism<S> out(f, h);
  for (const auto& [i, a] : x.terms)
    for (const auto& [j, b] : y.terms) {
      S scale = a * b * order_inverse<S>(ng);
      for (std::size_t e = 0; e < ng; ++e) {
        const auto jg = cat.act(g, h, static_cast<element_t>(e), kIdentity, j);
        const auto comp = cat.composite(f, g, h, i, jg);
        if (!comp) continue;
        out.add(cat.orbit_rep(f, h, *comp), scale * gamma(f, g, h, i, jg));
      }
    }
  return out;
}

// ---------------------------------------------------------------------------
// Cocycle audit

// Dense composite tables, one per object triple, filled on first use:
// entry i * basis_size(g, h) + j is the composite index or -1.
template <PartialCategory C>
class CompositeCache {
 public:
  explicit CompositeCache(const C& cat) : cat_(cat) {}
  const std::vector<std::int64_t>& operator()(ObjectId f, ObjectId g, ObjectId h) {
    auto key = std::make_tuple(f, g, h);
    auto it = tables_.find(key);
    if (it != tables_.end()) return it->second;
    const std::size_t n1 = cat_.basis_size(f, g), n2 = cat_.basis_size(g, h);
    std::vector<std::int64_t> t(n1 * n2, -1);
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t j = 0; j < n2; ++j)
        if (auto c = cat_.composite(f, g, h, i, j)) t[i * n2 + j] = static_cast<std::int64_t>(*c);
    return tables_.emplace(key, std::move(t)).first->second;
  }

 private:
  const C& cat_;
  std::map<std::tuple<ObjectId, ObjectId, ObjectId>, std::vector<std::int64_t>> tables_;
};

struct CocycleReport {
  std::size_t pairs_checked = 0;
  std::size_t triples_checked = 0;
  std::size_t invariance_checked = 0;
  std::size_t violations = 0;
  std::string witness;  // first violation, empty when none
  bool passed() const { return violations == 0; }
};

struct AuditScope {
  std::vector<ObjectId> objects;  // F and I range here
  std::vector<ObjectId> middle;   // G and H range here; empty means `objects`
};

// Exhaustive check of non-degeneracy, associativity on defined triples, and
// gamma(phi^g, ^g psi) = gamma(phi, psi).
template <ScalarType S, PartialCategory C>
CocycleReport cocycle_audit(const C& cat, const Cocycle<S>& gamma, const AuditScope& scope) {
  CocycleReport r;
  const auto& outer = scope.objects;
  const auto& middle = scope.middle.empty() ? scope.objects : scope.middle;
  auto fail = [&](const std::string& what) {
    if (r.violations++ == 0) r.witness = what;
  };
  auto tag = [&](ObjectId a, ObjectId b, std::size_t k) {
    return cat.group(a)->name() + "x" + cat.group(b)->name() + "#" + std::to_string(k);
  };

  // Distinct cocycle values are interned so products are computed once.
  std::vector<S> values;
  std::map<std::string, std::size_t> value_ids;
  auto intern = [&](const S& s) {
    auto [it, inserted] = value_ids.emplace(s.to_string(), values.size());
    if (inserted) values.push_back(s);
    return it->second;
  };
  std::vector<std::vector<std::int64_t>> products;  // dense, -1 until computed
  auto product = [&](std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    if (products.size() <= b) products.resize(b + 1);
    auto& row = products[a];
    if (row.size() <= b) row.resize(b + 1, -1);
    if (row[b] < 0) {
      const auto id = static_cast<std::int64_t>(intern(values[a] * values[b]));
      products[a][b] = id;
    }
    return static_cast<std::size_t>(products[a][b]);
  };

  CompositeCache<C> composites(cat);
  // gamma tables per object triple
  std::map<std::tuple<ObjectId, ObjectId, ObjectId>, std::vector<std::size_t>> tables;
  auto gamma_table = [&](ObjectId f, ObjectId g, ObjectId h) -> const std::vector<std::size_t>& {
    auto key = std::make_tuple(f, g, h);
    auto it = tables.find(key);
    if (it != tables.end()) return it->second;
    const std::size_t n1 = cat.basis_size(f, g), n2 = cat.basis_size(g, h);
    std::vector<std::size_t> t(n1 * n2);
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t j = 0; j < n2; ++j) {
        const S v = gamma(f, g, h, i, j);
        const bool matched = cat.composite(f, g, h, i, j).has_value();
        ++r.pairs_checked;
        if (matched && !v.is_unit())
          fail("non-degeneracy: gamma(" + tag(f, g, i) + ", " + tag(g, h, j) + ") = " + v.to_string() + " is not a unit");
        if (!matched && !v.is_zero())
          fail("non-degeneracy: unmatched gamma(" + tag(f, g, i) + ", " + tag(g, h, j) + ") = " + v.to_string());
        t[i * n2 + j] = intern(v);
      }
    return tables.emplace(key, std::move(t)).first->second;
  };

  // pairs: F in outer or middle
  std::vector<ObjectId> all = outer;
  for (auto m : middle)
    if (std::find(all.begin(), all.end(), m) == all.end()) all.push_back(m);

  for (ObjectId f : all)
    for (ObjectId g : middle)
      for (ObjectId h : all) {
        const auto& t = gamma_table(f, g, h);
        const std::size_t n1 = cat.basis_size(f, g), n2 = cat.basis_size(g, h);
        const auto& gg = *cat.group(g);
        for (std::size_t e = 0; e < gg.order(); ++e) {
          const auto x = static_cast<element_t>(e);
          for (std::size_t i = 0; i < n1; ++i) {
            // phi^g = ^{1 x g^-1} phi
            const auto ig = cat.act(f, g, kIdentity, gg.inv(x), i);
            for (std::size_t j = 0; j < n2; ++j) {
              const auto jg = cat.act(g, h, x, kIdentity, j);
              ++r.invariance_checked;
              if (t[ig * n2 + jg] != t[i * n2 + j])
                fail("conjugation invariance: g=" + std::to_string(x) + " on (" + tag(f, g, i) + ", " + tag(g, h, j) + ")");
            }
          }
        }
      }

  for (ObjectId f : outer)
    for (ObjectId g : middle)
      for (ObjectId h : middle)
        for (ObjectId i_obj : outer) {
          const auto& t_fgh = gamma_table(f, g, h);
          const auto& t_ghi = gamma_table(g, h, i_obj);
          const auto& t_fhi = gamma_table(f, h, i_obj);
          const auto& t_fgi = gamma_table(f, g, i_obj);
          const std::size_t n1 = cat.basis_size(f, g), n2 = cat.basis_size(g, h), n3 = cat.basis_size(h, i_obj);
          const std::size_t ngi = cat.basis_size(g, i_obj);
          const auto& c_fgh = composites(f, g, h);
          const auto& c_ghi = composites(g, h, i_obj);
          const auto& c_fhi = composites(f, h, i_obj);
          for (std::size_t a = 0; a < n1; ++a)
            for (std::size_t b = 0; b < n2; ++b) {
              const auto ab = c_fgh[a * n2 + b];
              if (ab < 0) continue;
              for (std::size_t c = 0; c < n3; ++c) {
                const auto bc = c_ghi[b * n3 + c];
                if (bc < 0) continue;
                if (c_fhi[ab * n3 + c] < 0) continue;  // triple not defined
                ++r.triples_checked;
                const auto lhs = product(t_fgh[a * n2 + b], t_fhi[ab * n3 + c]);
                const auto rhs = product(t_fgi[a * ngi + bc], t_ghi[b * n3 + c]);
                if (lhs != rhs)
                  fail("associativity: (" + tag(f, g, a) + ", " + tag(g, h, b) + ", " + tag(h, i_obj, c) + ") gives " +
                       values[lhs].to_string() + " vs " + values[rhs].to_string());
              }
            }
        }
  return r;
}

}  // namespace fibset
