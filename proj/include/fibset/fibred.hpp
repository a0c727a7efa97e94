#pragma once

// The deformed fibred biset category on the d-basis and the isomorphism nu
// onto the invariant category of the ell-twisted subcharacter category.

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fibset/deformation.hpp"

namespace fibset {

struct DBasisTag;

// Combination of d_{U, mu}, keyed by canonical orbit representatives.
template <ScalarType S>
using FibredMorphism = Combination<S, DBasisTag>;

template <ScalarType S>
FibredMorphism<S> d_basis(const SubcharCategory& cat, ObjectId f, ObjectId g, std::size_t k, S coeff = S::one()) {
  return FibredMorphism<S>::basis(f, g, cat.orbit_rep(f, g, k), coeff);
}

template <ScalarType S>
FibredMorphism<S> fibred_identity(const SubcharCategory& cat, ObjectId g) {
  return d_basis<S>(cat, g, g, cat.catalog(g, g).index_of(identity_subchar(cat.group(g))));
}

// d_U d_V = sum_g ell(n_g)/n_g d_{U * gV, mu * g nu}, n_g = |Γ∩(U, gV)|.
template <ScalarType S>
FibredMorphism<S> compose_fibred(const SubcharCategory& cat, const FibredMorphism<S>& x, const FibredMorphism<S>& y,
                                 const EllMap& ell) {
  if (x.dom != y.cod) throw LinearError("cannot compose fibred morphisms across different middle groups");
  EllTable<S> table(ell);
  FibredMorphism<S> out(x.cod, y.dom);
  for (const auto& [i, a] : x.terms)
    for (const auto& [j, b] : y.terms) {
      const S ab = a * b;
      for (const auto& t : cat.coset_terms(x.cod, x.dom, y.dom, i, j))
        out.add(t.composite_orbit, ab * table.ratio(t.gamma_order));
    }
  return out;
}

// Product of two basis symbols evaluated from arbitrary orbit members (i, j
// need not be canonical) and a random representative of each double coset.
template <ScalarType S>
FibredMorphism<S> compose_fibred_basis_with(const SubcharCategory& cat, ObjectId f, ObjectId g, ObjectId h,
                                            std::size_t i, std::size_t j, const EllMap& ell, std::mt19937_64& rng) {
  EllTable<S> table(ell);
  FibredMorphism<S> out(f, h);
  for (const auto& t : cat.coset_terms_with(f, g, h, i, j, rng)) out.add(t.composite_orbit, table.ratio(t.gamma_order));
  return out;
}

// nu(d_{U, mu}) = |G| s-bar_{U, mu} / |U|
template <ScalarType S>
BarMorphism<S> nu(const SubcharCategory& cat, const FibredMorphism<S>& x) {
  const std::size_t ng = cat.group(x.dom)->order();
  BarMorphism<S> out(x.cod, x.dom);
  for (const auto& [k, c] : x.terms)
    out.add(k, c * S::from_rational(Rational(static_cast<long>(ng), static_cast<long>(cat.subgroup_order(x.cod, x.dom, k)))));
  return out;
}

template <ScalarType S>
FibredMorphism<S> nu_inverse(const SubcharCategory& cat, const BarMorphism<S>& x) {
  const std::size_t ng = cat.group(x.dom)->order();
  FibredMorphism<S> out(x.cod, x.dom);
  for (const auto& [k, c] : x.terms)
    out.add(k, c * S::from_rational(Rational(static_cast<long>(cat.subgroup_order(x.cod, x.dom, k)), static_cast<long>(ng))));
  return out;
}

FibredMorphism<Rational> specialize_fibred(const FibredMorphism<LaurentScalar>& x,
                                           const std::map<std::uint32_t, Rational>& assignment);

// x_q -> q for every prime q dividing some integer up to `bound`, or -> 1.
std::map<std::uint32_t, Rational> identity_assignment(std::uint32_t bound);
std::map<std::uint32_t, Rational> one_assignment(std::uint32_t bound);

// Structure constants of all basis pairs (i, j) over canonical orbits.
template <ScalarType S>
struct StructureTable {
  ObjectId f = 0, g = 0, h = 0;
  std::string ell;
  std::vector<std::pair<std::size_t, std::size_t>> rows;  // (i, j) in increasing order
  std::vector<FibredMorphism<S>> products;                // aligned with rows
};

template <ScalarType S>
StructureTable<S> structure_table(const SubcharCategory& cat, ObjectId f, ObjectId g, ObjectId h, const EllMap& ell) {
  StructureTable<S> t{f, g, h, ell.name(), {}, {}};
  for (auto i : cat.orbit_reps(f, g))
    for (auto j : cat.orbit_reps(g, h)) {
      t.rows.emplace_back(i, j);
      t.products.push_back(compose_fibred(cat, d_basis<S>(cat, f, g, i), d_basis<S>(cat, g, h, j), ell));
    }
  return t;
}

StructureTable<Rational> specialize_table(const StructureTable<LaurentScalar>& t,
                                          const std::map<std::uint32_t, Rational>& assignment);

struct ClassicalCheck {
  std::size_t constants = 0;
  std::size_t violations = 0;
  std::string witness;
};

// Structure constants with ell(n) = n. Every constant must be the number of
// qualifying double coset representatives landing in its orbit, and the
// change of basis |G| s-bar <-> |U| d must intertwine the two compositions.
StructureTable<Rational> classical_structure_constants(const SubcharCategory& cat, ObjectId f, ObjectId g, ObjectId h,
                                                       ClassicalCheck* check = nullptr);

// JSON: {"pair": [...], "ell", "rows": [{"left": subchar, "right": subchar,
// "terms": [{"orbit": subchar, "coeff": scalar}]}]}
template <ScalarType S>
nlohmann::json table_to_json(const SubcharCategory& cat, const StructureTable<S>& t) {
  const auto& a = cat.fiber();
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [k, c] : t.products[r].terms)
      terms.push_back({{"orbit", subchar_to_json(cat.catalog(t.f, t.h).at(k), a)}, {"coeff", to_json(c)}});
    rows.push_back({{"left", subchar_to_json(cat.catalog(t.f, t.g).at(t.rows[r].first), a)},
                    {"right", subchar_to_json(cat.catalog(t.g, t.h).at(t.rows[r].second), a)},
                    {"terms", terms}});
  }
  return {{"groups", {cat.group(t.f)->name(), cat.group(t.g)->name(), cat.group(t.h)->name()}},
          {"fiber", a.to_json()},
          {"ell", t.ell},
          {"rows", rows}};
}

// CSV: one line per (row, term): left_index,right_index,orbit_index,coeff
// with indices into the canonical catalogs.
template <ScalarType S>
std::string table_to_csv(const StructureTable<S>& t) {
  std::string out = "left,right,orbit,coeff\n";
  for (std::size_t r = 0; r < t.rows.size(); ++r)
    for (const auto& [k, c] : t.products[r].terms)
      out += std::to_string(t.rows[r].first) + "," + std::to_string(t.rows[r].second) + "," + std::to_string(k) +
             ",\"" + c.to_string() + "\"\n";
  return out;
}

}  // namespace fibset
