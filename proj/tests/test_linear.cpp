#include <doctest.h>

#include <random>

#include "fibset/deformation.hpp"

using namespace fibset;

namespace {

LaurentScalar x(std::uint32_t p) { return LaurentScalar::variable(p); }

// objects: 0 = C1, 1 = C2, 2 = S3
struct Fixture {
  std::vector<GroupPtr> groups{build_group("c1"), build_group("c2"), build_group("s3")};
  AbelianFiber z2 = AbelianFiber::parse("z2");
  SubcharCategory cat{groups, z2};

  std::size_t id(ObjectId f, ObjectId g, std::initializer_list<element_t> members, std::vector<fiber_t> values) const {
    const auto& c = cat.catalog(f, g);
    ElementSet s;
    for (auto e : members) s.insert(e);
    Subgroup u(c.product(), s);
    return c.index_of(make_subchar(u, ACharacter{u, std::move(values)}));
  }
};

}  // namespace

TEST_CASE("linearized composition on C2") {
  Fixture fx;
  const auto gamma = ell_cocycle<LaurentScalar>(fx.cat, EllMap::generic());
  // C2 x C2 packed as 2f + g
  const auto diag = fx.id(1, 1, {0, 3}, {0, 0});
  const auto mu = fx.id(1, 1, {0, 1}, {0, 1});
  const auto nu = fx.id(1, 1, {0, 2}, {0, 1});
  const auto nu_trivial = fx.id(1, 1, {0, 2}, {0, 0});
  const auto point = fx.id(1, 1, {0}, {0});
  using M = Morphism<LaurentScalar>;

  CHECK(compose_linear(fx.cat, M::basis(1, 1, diag), M::basis(1, 1, diag), gamma) == M::basis(1, 1, diag));
  CHECK(compose_linear(fx.cat, M::basis(1, 1, mu), M::basis(1, 1, nu), gamma) == M::basis(1, 1, point, x(2)));
  CHECK(compose_linear(fx.cat, M::basis(1, 1, mu), M::basis(1, 1, nu_trivial), gamma).is_zero());
  CHECK(compose_linear(fx.cat, M::basis(1, 1, diag), M::basis(1, 1, nu), gamma) == M::basis(1, 1, nu));

  const auto sum = M::basis(1, 1, mu) + M::basis(1, 1, diag, LaurentScalar(3));
  CHECK(compose_linear(fx.cat, sum, M::basis(1, 1, nu), gamma) ==
        M::basis(1, 1, point, x(2)) + M::basis(1, 1, nu, LaurentScalar(3)));

  CHECK_THROWS_AS(compose_linear(fx.cat, M::basis(1, 1, mu), M::basis(2, 1, 0), gamma), LinearError);
  CHECK_THROWS_AS(M::basis(1, 1, mu) + M::basis(1, 2, 0), LinearError);
}

TEST_CASE("structural maps of S3") {
  Fixture fx;
  const auto gamma = ell_cocycle<LaurentScalar>(fx.cat, EllMap::generic());
  const auto& s3 = *fx.groups[2];
  for (element_t a = 0; a < 6; ++a) {
    const auto sa = sigma<LaurentScalar>(fx.cat, 2, a);
    REQUIRE(sa.terms.size() == 1);
    CHECK(fx.cat.catalog(2, 2).at(sa.terms.begin()->first) == twisted_diagonal(fx.groups[2], a));
    for (element_t b = 0; b < 6; ++b)
      CHECK(compose_linear(fx.cat, sa, sigma<LaurentScalar>(fx.cat, 2, b), gamma) ==
            sigma<LaurentScalar>(fx.cat, 2, s3.mul(a, b)));
  }
  const auto e = sigma_idempotent<LaurentScalar>(fx.cat, 2);
  CHECK(e.terms.size() == 6);
  CHECK(compose_linear(fx.cat, e, e, gamma) == e);
}

TEST_CASE("orbit averages") {
  Fixture fx;
  const auto diag2 = fx.cat.catalog(2, 2).index_of(twisted_diagonal(fx.groups[2], 2));
  const auto b = bar<Rational>(fx.cat, 2, 2, diag2);
  CHECK(b.terms.size() == 6);
  for (const auto& [k, c] : b.terms) CHECK(c == Rational(1, 6));
  CHECK(b == sigma_idempotent<Rational>(fx.cat, 2));
  CHECK(is_invariant(fx.cat, b));
  CHECK_FALSE(is_invariant(fx.cat, Morphism<Rational>::basis(2, 2, diag2)));
  CHECK_THROWS_AS(collect(fx.cat, Morphism<Rational>::basis(2, 2, diag2)), LinearError);

  const auto id = invariant_identity<Rational>(fx.cat, 2);
  CHECK(id == BarMorphism<Rational>::basis(2, 2, fx.cat.orbit_rep(2, 2, diag2)));
  CHECK(collect(fx.cat, expand(fx.cat, id)) == id);

  // every orbit average recollects to its basis symbol
  for (ObjectId f = 0; f < 3; ++f)
    for (ObjectId g = 0; g < 3; ++g)
      for (auto k : fx.cat.orbit_reps(f, g)) {
        const auto e = bar<Rational>(fx.cat, f, g, k);
        CHECK(collect(fx.cat, e) == BarMorphism<Rational>::basis(f, g, k));
        Rational total;
        for (const auto& [j, c] : e.terms) total += c;
        CHECK(total == Rational(1));
      }
}

TEST_CASE("invariant composition through a C2 middle") {
  Fixture fx;
  const auto ell = EllMap::generic();
  const auto gamma = ell_cocycle<LaurentScalar>(fx.cat, ell);
  const auto u = fx.id(0, 1, {0, 1}, {0, 0});  // C1 x C2
  const auto v = fx.id(1, 0, {0, 1}, {0, 0});  // C2 x C1
  const auto u_twisted = fx.id(0, 1, {0, 1}, {0, 1});
  const auto point = fx.id(0, 0, {0}, {0});
  using B = BarMorphism<LaurentScalar>;

  // (1/2) * |C2 C2| * ell(2) = x2
  const auto expected = B::basis(0, 0, point, x(2));
  CHECK(compose_invariant_fast(fx.cat, B::basis(0, 1, u), B::basis(1, 0, v), ell) == expected);
  CHECK(compose_invariant_oracle(fx.cat, B::basis(0, 1, u), B::basis(1, 0, v), gamma) == expected);
  CHECK(compose_invariant_averaging(fx.cat, B::basis(0, 1, u), B::basis(1, 0, v), gamma) == expected);
  CHECK(compose_invariant_fast(fx.cat, B::basis(0, 1, u_twisted), B::basis(1, 0, v), ell).is_zero());

  // rescaled coordinates: inputs 2 and 2, then (1/2) * ell(2)/2 on s-bar_1/1
  CHECK(compose_rescaled(fx.cat, to_rescaled(fx.cat, B::basis(0, 1, u)), to_rescaled(fx.cat, B::basis(1, 0, v)), ell) ==
        B::basis(0, 0, point, x(2)));
}

TEST_CASE("closed formula agrees with literal composition") {
  Fixture fx;
  for (const auto& ell : {EllMap::generic(), EllMap::identity(), EllMap::one()}) {
    const auto gamma = ell_cocycle<LaurentScalar>(fx.cat, ell);
    for (ObjectId f : {0, 1, 2})
      for (ObjectId g : {1, 2})
        for (ObjectId h : {0, 1}) {
          for (auto i : fx.cat.orbit_reps(f, g))
            for (auto j : fx.cat.orbit_reps(g, h)) {
              const auto a = bar_basis<LaurentScalar>(fx.cat, f, g, i);
              const auto b = bar_basis<LaurentScalar>(fx.cat, g, h, j);
              const auto fast = compose_invariant_fast(fx.cat, a, b, ell);
              CHECK(fast == compose_invariant_averaging(fx.cat, a, b, gamma));
              CHECK(fast == compose_invariant_oracle(fx.cat, a, b, gamma));
              CHECK(from_rescaled(fx.cat, compose_rescaled(fx.cat, to_rescaled(fx.cat, a), to_rescaled(fx.cat, b), ell)) ==
                    fast);
            }
        }
  }
}

TEST_CASE("cocycle audit") {
  std::vector<GroupPtr> groups{build_group("c1"), build_group("c2"), build_group("c3")};
  SubcharCategory z2(groups, AbelianFiber::parse("z2"));
  SubcharCategory plain(groups, AbelianFiber());
  const AuditScope scope{{0, 1, 2}, {}};

  auto r = cocycle_audit(z2, ell_cocycle<LaurentScalar>(z2, EllMap::generic()), scope);
  CHECK(r.passed());
  CHECK(r.triples_checked > 0);
  CHECK(r.witness.empty());
  CHECK(cocycle_audit(plain, ell_cocycle<Rational>(plain, EllMap::one()), scope).passed());
  CHECK(cocycle_audit(plain, ell_cocycle<Rational>(plain, EllMap::identity()), scope).passed());
  CHECK(cocycle_audit(plain, trivial_cocycle<Rational>(plain), scope).passed());

  // a single distorted value is caught
  const auto good = ell_cocycle<LaurentScalar>(z2, EllMap::generic());
  const auto mu = z2.catalog(1, 1).index_of(identity_subchar(groups[1]));
  Cocycle<LaurentScalar> bent = [&](ObjectId f, ObjectId g, ObjectId h, std::size_t i, std::size_t j) {
    auto v = good(f, g, h, i, j);
    if (f == 1 && g == 1 && h == 1 && i == mu && j == mu) v *= x(5);
    return v;
  };
  auto bad = cocycle_audit(z2, bent, scope);
  CHECK_FALSE(bad.passed());
  CHECK(bad.violations > 0);
  CHECK(bad.witness.find("associativity") != std::string::npos);

  // a zero on a matched pair is degenerate
  Cocycle<LaurentScalar> degenerate = [&](ObjectId f, ObjectId g, ObjectId h, std::size_t i, std::size_t j) {
    if (f == 0 && g == 0 && h == 0) return LaurentScalar::zero();
    return good(f, g, h, i, j);
  };
  auto deg = cocycle_audit(z2, degenerate, scope);
  CHECK(deg.witness.find("non-degeneracy") != std::string::npos);
}
