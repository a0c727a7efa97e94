#pragma once

// The ell-twisted linearization of the subcharacter category and the closed
// double-coset formula for composition in its invariant category.

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include <json.hpp>

#include "fibset/linear.hpp"
#include "fibset/scalar.hpp"
#include "fibset/subchar.hpp"

namespace fibset {

static_assert(PartialCategory<SubcharCategory>);

// ell(n) memoized per n.
template <ScalarType S>
class EllTable {
 public:
  explicit EllTable(EllMap ell) : ell_(std::move(ell)) {}
  const EllMap& map() const { return ell_; }
  const S& operator()(std::size_t n) {
    if (n >= cache_.size()) cache_.resize(n + 1);
    if (!cache_[n]) cache_[n] = ell_value<S>(ell_, n);
    return *cache_[n];
  }
  // ell(n) / n
  S ratio(std::size_t n) { return (*this)(n)*order_inverse<S>(n); }

 private:
  EllMap ell_;
  std::vector<std::optional<S>> cache_;
};

// gamma_ell((U, mu), (V, nu)) = ell(|Γ∩(U, V)|) when matched, else 0.
template <ScalarType S>
Cocycle<S> ell_cocycle(const SubcharCategory& cat, const EllMap& ell) {
  auto table = std::make_shared<EllTable<S>>(ell);
  return [&cat, table](ObjectId f, ObjectId g, ObjectId h, std::size_t i, std::size_t j) {
    if (!cat.composite(f, g, h, i, j)) return S::zero();
    return (*table)(cat.gamma_order(f, g, h, i, j));
  };
}

// s-bar_U s-bar_V = (1/|G|) sum_g |p2(U) g p1(V)| ell(|Γ∩(U, gV)|) s-bar_{U * gV},
// g over double coset representatives with (U, mu) ~ g(V, nu).
template <ScalarType S>
BarMorphism<S> compose_invariant_fast(const SubcharCategory& cat, const BarMorphism<S>& x, const BarMorphism<S>& y,
                                      const EllMap& ell) {
  if (x.dom != y.cod) throw LinearError("cannot compose invariant morphisms across different middle groups");
  EllTable<S> table(ell);
  const ObjectId f = x.cod, g = x.dom, h = y.dom;
  const S inv_g = order_inverse<S>(cat.group(g)->order());
  BarMorphism<S> out(f, h);
  for (const auto& [i, a] : x.terms)
    for (const auto& [j, b] : y.terms) {
      const S ab = a * b * inv_g;
      for (const auto& t : cat.coset_terms(f, g, h, i, j))
        out.add(t.composite_orbit, ab * S::from_rational(Rational(static_cast<long>(t.coset_size))) * table(t.gamma_order));
    }
  return out;
}

// Coordinates on the rescaled basis s-bar_{U, mu} / |U|.
template <ScalarType S>
BarMorphism<S> to_rescaled(const SubcharCategory& cat, const BarMorphism<S>& x) {
  BarMorphism<S> out(x.cod, x.dom);
  for (const auto& [k, c] : x.terms)
    out.add(k, c * S::from_rational(Rational(static_cast<long>(cat.subgroup_order(x.cod, x.dom, k)))));
  return out;
}

template <ScalarType S>
BarMorphism<S> from_rescaled(const SubcharCategory& cat, const BarMorphism<S>& x) {
  BarMorphism<S> out(x.cod, x.dom);
  for (const auto& [k, c] : x.terms) out.add(k, c * order_inverse<S>(cat.subgroup_order(x.cod, x.dom, k)));
  return out;
}

// Composition in rescaled coordinates:
// (s-bar_U/|U|)(s-bar_V/|V|) = (1/|G|) sum_g ell(n_g)/n_g (s-bar_W/|W|).
template <ScalarType S>
BarMorphism<S> compose_rescaled(const SubcharCategory& cat, const BarMorphism<S>& x, const BarMorphism<S>& y,
                                const EllMap& ell) {
  if (x.dom != y.cod) throw LinearError("cannot compose invariant morphisms across different middle groups");
  EllTable<S> table(ell);
  const ObjectId f = x.cod, g = x.dom, h = y.dom;
  const S inv_g = order_inverse<S>(cat.group(g)->order());
  BarMorphism<S> out(f, h);
  for (const auto& [i, a] : x.terms)
    for (const auto& [j, b] : y.terms)
      for (const auto& t : cat.coset_terms(f, g, h, i, j)) out.add(t.composite_orbit, a * b * inv_g * table.ratio(t.gamma_order));
  return out;
}

// {"pair": [F, G], "terms": [{"orbit": subchar, "coeff": scalar}]}
template <ScalarType S>
nlohmann::json bar_to_json(const SubcharCategory& cat, const BarMorphism<S>& x) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [k, c] : x.terms)
    terms.push_back({{"orbit", subchar_to_json(cat.catalog(x.cod, x.dom).at(k), cat.fiber())}, {"coeff", to_json(c)}});
  return {{"pair", {cat.group(x.cod)->name(), cat.group(x.dom)->name()}}, {"terms", terms}};
}

template <ScalarType S>
BarMorphism<S> bar_basis(const SubcharCategory& cat, ObjectId f, ObjectId g, std::size_t k, S coeff = S::one()) {
  return BarMorphism<S>::basis(f, g, cat.orbit_rep(f, g, k), coeff);
}

}  // namespace fibset
