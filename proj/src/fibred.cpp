#include "fibset/fibred.hpp"

#include <set>

namespace fibset {

FibredMorphism<Rational> specialize_fibred(const FibredMorphism<LaurentScalar>& x,
                                           const std::map<std::uint32_t, Rational>& assignment) {
  FibredMorphism<Rational> out(x.cod, x.dom);
  for (const auto& [k, c] : x.terms) out.add(k, specialize(c, assignment));
  return out;
}

static std::set<std::uint32_t> primes_up_to(std::uint32_t bound) {
  std::set<std::uint32_t> out;
  for (std::uint32_t n = 2; n <= bound; ++n)
    for (const auto& [p, e] : factorize(n)) out.insert(p);
  return out;
}

std::map<std::uint32_t, Rational> identity_assignment(std::uint32_t bound) {
  std::map<std::uint32_t, Rational> out;
  for (auto p : primes_up_to(bound)) out.emplace(p, Rational(static_cast<long>(p)));
  return out;
}

std::map<std::uint32_t, Rational> one_assignment(std::uint32_t bound) {
  std::map<std::uint32_t, Rational> out;
  for (auto p : primes_up_to(bound)) out.emplace(p, Rational(1));
  return out;
}

StructureTable<Rational> specialize_table(const StructureTable<LaurentScalar>& t,
                                          const std::map<std::uint32_t, Rational>& assignment) {
  StructureTable<Rational> out{t.f, t.g, t.h, t.ell, t.rows, {}};
  out.products.reserve(t.products.size());
  for (const auto& p : t.products) out.products.push_back(specialize_fibred(p, assignment));
  return out;
}

StructureTable<Rational> classical_structure_constants(const SubcharCategory& cat, ObjectId f, ObjectId g, ObjectId h,
                                                       ClassicalCheck* check) {
  const auto ell = EllMap::identity();
  auto t = structure_table<Rational>(cat, f, g, h, ell);
  if (!check) return t;
  auto fail = [&](const std::string& what) {
    if (check->violations++ == 0) check->witness = what;
  };
  const auto where = [&](std::size_t r) {
    return cat.group(f)->name() + "/" + cat.group(g)->name() + "/" + cat.group(h)->name() + " row (" +
           std::to_string(t.rows[r].first) + ", " + std::to_string(t.rows[r].second) + ")";
  };
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto [i, j] = t.rows[r];
    std::map<std::size_t, long> counts;
    for (const auto& term : cat.coset_terms(f, g, h, i, j)) ++counts[term.composite_orbit];
    const auto& prod = t.products[r];
    for (const auto& [k, c] : prod.terms) {
      ++check->constants;
      if (!c.is_integer() || c < Rational(0)) fail(where(r) + ": constant " + c.to_string() + " is not a nonnegative integer");
      auto it = counts.find(k);
      if (it == counts.end() || Rational(it->second) != c)
        fail(where(r) + ": constant " + c.to_string() + " differs from the number of qualifying representatives");
    }
    if (counts.size() != prod.terms.size()) fail(where(r) + ": orbit support differs from the qualifying representatives");

    // |G| s-bar_U <-> |U| d_U intertwines the compositions.
    const auto lhs = nu(cat, prod);
    const auto rhs = compose_invariant_fast(cat, nu(cat, d_basis<Rational>(cat, f, g, i)),
                                            nu(cat, d_basis<Rational>(cat, g, h, j)), ell);
    if (!(lhs == rhs)) fail(where(r) + ": basis change does not intertwine: " + lhs.to_string() + " vs " + rhs.to_string());
  }
  return t;
}

}  // namespace fibset
