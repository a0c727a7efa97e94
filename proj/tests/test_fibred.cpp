#include <doctest.h>

#include <map>
#include <set>

#include "fibset/fibred.hpp"

using namespace fibset;

namespace {

LaurentScalar x(std::uint32_t p) { return LaurentScalar::variable(p); }

// objects: 0 = C1, 1 = C2, 2 = S3, 3 = C3
struct Fixture {
  std::vector<GroupPtr> groups{build_group("c1"), build_group("c2"), build_group("s3"), build_group("c3")};
  SubcharCategory cat;
  explicit Fixture(const char* fiber = "z2") : cat(groups, AbelianFiber::parse(fiber)) {}

  std::size_t id(ObjectId f, ObjectId g, std::initializer_list<element_t> members, std::vector<fiber_t> values) const {
    const auto& c = cat.catalog(f, g);
    ElementSet s;
    for (auto e : members) s.insert(e);
    Subgroup u(c.product(), s);
    return c.index_of(make_subchar(u, ACharacter{u, std::move(values)}));
  }
};

// Number of double cosets p2(U) g p1(V) whose members g give a defined
// composite, grouped by the orbit of that composite; found by scanning G.
std::map<std::size_t, long> qualifying_cosets(const SubcharCategory& cat, ObjectId f, ObjectId g, ObjectId h,
                                              std::size_t i, std::size_t j) {
  const auto& gg = *cat.group(g);
  const auto& fg = *cat.catalog(f, g).product();
  const auto& gh = *cat.catalog(g, h).product();
  std::set<element_t> right_u, left_v;
  for (auto e : cat.catalog(f, g).at(i).subgroup.members()) right_u.insert(fg.second(e));
  for (auto e : cat.catalog(g, h).at(j).subgroup.members()) left_v.insert(gh.first(e));
  std::set<std::set<element_t>> seen;
  std::map<std::size_t, long> out;
  for (element_t e = 0; e < gg.order(); ++e) {
    std::set<element_t> coset;
    for (auto a : right_u)
      for (auto b : left_v) coset.insert(gg.mul(gg.mul(a, e), b));
    if (!seen.insert(coset).second) continue;
    const auto je = cat.act(g, h, e, kIdentity, j);
    if (auto c = cat.composite(f, g, h, i, je)) ++out[cat.orbit_rep(f, h, *c)];
  }
  return out;
}

}  // namespace

TEST_CASE("fibred identity") {
  Fixture fx;
  for (const auto& ell : {EllMap::generic(), EllMap::identity()})
    for (ObjectId f : {0, 1, 2})
      for (ObjectId g : {1, 2})
        for (auto k : fx.cat.orbit_reps(f, g)) {
          const auto d = d_basis<LaurentScalar>(fx.cat, f, g, k);
          CHECK(compose_fibred(fx.cat, d, fibred_identity<LaurentScalar>(fx.cat, g), ell) == d);
          CHECK(compose_fibred(fx.cat, fibred_identity<LaurentScalar>(fx.cat, f), d, ell) == d);
        }
}

TEST_CASE("fibred products through C2") {
  Fixture fx;
  using D = FibredMorphism<LaurentScalar>;
  const auto u = fx.id(0, 1, {0, 1}, {0, 0});
  const auto v = fx.id(1, 0, {0, 1}, {0, 0});
  const auto u_twisted = fx.id(0, 1, {0, 1}, {0, 1});
  const auto v_twisted = fx.id(1, 0, {0, 1}, {0, 1});
  const auto point = fx.id(0, 0, {0}, {0});

  CHECK(compose_fibred(fx.cat, D::basis(0, 1, u), D::basis(1, 0, v), EllMap::generic()) ==
        D::basis(0, 0, point, LaurentScalar(Rational(1, 2)) * x(2)));
  CHECK(compose_fibred(fx.cat, D::basis(0, 1, u), D::basis(1, 0, v), EllMap::identity()) == D::basis(0, 0, point));
  CHECK(compose_fibred(fx.cat, D::basis(0, 1, u_twisted), D::basis(1, 0, v_twisted), EllMap::one()) ==
        D::basis(0, 0, point, LaurentScalar(Rational(1, 2))));
  CHECK(compose_fibred(fx.cat, D::basis(0, 1, u_twisted), D::basis(1, 0, v), EllMap::generic()).is_zero());
  CHECK_THROWS_AS(compose_fibred(fx.cat, D::basis(0, 1, u), D::basis(0, 1, u), EllMap::generic()), LinearError);

  // C2 x C2 packed as 2f + g; {1} x C2 then C2 x {1}
  const auto a = fx.id(1, 1, {0, 1}, {0, 0});
  const auto b = fx.id(1, 1, {0, 2}, {0, 0});
  const auto one = fx.id(1, 1, {0}, {0});
  CHECK(compose_fibred(fx.cat, D::basis(1, 1, a), D::basis(1, 1, b), EllMap::generic()) ==
        D::basis(1, 1, one, LaurentScalar(Rational(1, 2)) * x(2)));
  // C2 x {1} then {1} x C2: two double cosets, each giving the whole group
  const auto whole = fx.id(1, 1, {0, 1, 2, 3}, {0, 0, 0, 0});
  CHECK(compose_fibred(fx.cat, D::basis(1, 1, b), D::basis(1, 1, a), EllMap::generic()) == D::basis(1, 1, whole, LaurentScalar(2)));
}

TEST_CASE("nu on basis elements") {
  Fixture fx;
  const auto one = fx.id(1, 1, {0}, {0});
  const auto u = fx.id(0, 1, {0, 1}, {0, 0});
  CHECK(nu(fx.cat, d_basis<Rational>(fx.cat, 1, 1, one)) == BarMorphism<Rational>::basis(1, 1, one, Rational(2)));
  CHECK(nu(fx.cat, d_basis<Rational>(fx.cat, 0, 1, u)) == BarMorphism<Rational>::basis(0, 1, u));
  CHECK(nu(fx.cat, fibred_identity<Rational>(fx.cat, 2)) == invariant_identity<Rational>(fx.cat, 2));
  for (ObjectId g = 0; g < 4; ++g)
    CHECK(nu(fx.cat, fibred_identity<LaurentScalar>(fx.cat, g)) == invariant_identity<LaurentScalar>(fx.cat, g));
}

TEST_CASE("nu is a functor and invertible") {
  Fixture fx;
  const auto ell = EllMap::generic();
  const auto gamma = ell_cocycle<LaurentScalar>(fx.cat, ell);
  for (ObjectId f : {0, 1, 2})
    for (ObjectId g : {1, 2, 3})
      for (ObjectId h : {0, 1, 3})
        for (auto i : fx.cat.orbit_reps(f, g))
          for (auto j : fx.cat.orbit_reps(g, h)) {
            const auto a = d_basis<LaurentScalar>(fx.cat, f, g, i);
            const auto b = d_basis<LaurentScalar>(fx.cat, g, h, j);
            const auto prod = compose_fibred(fx.cat, a, b, ell);
            CHECK(nu(fx.cat, prod) == compose_invariant_oracle(fx.cat, nu(fx.cat, a), nu(fx.cat, b), gamma));
            CHECK(nu_inverse(fx.cat, nu(fx.cat, prod)) == prod);
          }
}

TEST_CASE("classical structure constants count double cosets") {
  for (const char* fiber : {"trivial", "z2", "z3"}) {
    Fixture fx(fiber);
    for (ObjectId f : {0, 1, 2})
      for (ObjectId g : {1, 2, 3})
        for (ObjectId h : {1, 2}) {
          ClassicalCheck check;
          const auto t = classical_structure_constants(fx.cat, f, g, h, &check);
          CHECK_MESSAGE(check.violations == 0, check.witness);
          CHECK(check.constants > 0);
          for (std::size_t r = 0; r < t.rows.size(); ++r) {
            const auto expected = qualifying_cosets(fx.cat, f, g, h, t.rows[r].first, t.rows[r].second);
            std::map<std::size_t, long> got;
            for (const auto& [k, c] : t.products[r].terms) {
              REQUIRE(c.is_integer());
              got[k] = c.numerator().get_si();
            }
            CHECK(got == expected);
          }
        }
  }
}

TEST_CASE("specializing the generic table") {
  Fixture fx;
  for (ObjectId f : {0, 1, 2})
    for (ObjectId g : {1, 2})
      for (ObjectId h : {1, 3}) {
        const auto generic = structure_table<LaurentScalar>(fx.cat, f, g, h, EllMap::generic());
        const auto at_n = specialize_table(generic, identity_assignment(64));
        const auto at_1 = specialize_table(generic, one_assignment(64));
        const auto classical = structure_table<Rational>(fx.cat, f, g, h, EllMap::identity());
        const auto trivial = structure_table<Rational>(fx.cat, f, g, h, EllMap::one());
        CHECK(at_n.rows == classical.rows);
        CHECK(at_n.products == classical.products);
        CHECK(at_1.products == trivial.products);
      }
  CHECK(identity_assignment(10) == std::map<std::uint32_t, Rational>{{2, Rational(2)}, {3, Rational(3)}, {5, Rational(5)}, {7, Rational(7)}});
  CHECK(one_assignment(4).size() == 2);
  CHECK_THROWS_AS(specialize_fibred(FibredMorphism<LaurentScalar>::basis(0, 0, 0, x(11)), identity_assignment(10)),
                  ScalarError);
}

TEST_CASE("table documents") {
  Fixture fx;
  const auto t = structure_table<LaurentScalar>(fx.cat, 0, 1, 0, EllMap::generic());
  const auto j = table_to_json(fx.cat, t);
  CHECK(j["groups"] == nlohmann::json({"C1", "C2", "C1"}));
  CHECK(j["ell"] == "generic");
  CHECK(j["rows"].size() == t.rows.size());
  CHECK(t.rows.size() == fx.cat.orbit_reps(0, 1).size() * fx.cat.orbit_reps(1, 0).size());

  const auto csv = table_to_csv(t);
  CHECK(csv.rfind("left,right,orbit,coeff\n", 0) == 0);
  std::size_t lines = 0, terms = 0;
  for (char c : csv) lines += c == '\n';
  for (const auto& p : t.products) terms += p.terms.size();
  CHECK(lines == terms + 1);
  CHECK(csv.find("1/2*x2") != std::string::npos);
}
