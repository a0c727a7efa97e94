#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "fibset/group.hpp"
#include "oracle.hpp"

using namespace fibset;

namespace {

std::vector<element_t> members(std::initializer_list<element_t> xs) { return std::vector<element_t>(xs); }

const std::vector<std::string> kTestGroups{"c1", "c2", "c3", "klein4", "s3", "c4", "d8", "q8", "c2xc3"};

}  // namespace

TEST_CASE("presets have the documented tables") {
  auto c1 = build_group("cyclic:1");
  CHECK(c1->order() == 1);
  CHECK(c1->table() == std::vector<element_t>{0});

  auto c2 = build_group("cyclic:2");
  CHECK(c2->table() == std::vector<element_t>{0, 1, 1, 0});

  auto s3 = build_group("symmetric:3");
  CHECK(s3->order() == 6);
  CHECK(conjugacy_classes(*s3).classes.size() == 3);
  CHECK_FALSE(s3->is_abelian());

  CHECK(build_group("dihedral:8")->order() == 8);
  CHECK(build_group("quaternion8")->order() == 8);
  CHECK(build_group("klein4")->is_abelian());
  CHECK(build_group("c2xs3")->order() == 12);
}

TEST_CASE("invalid tables name the violated axiom") {
  auto make = [](std::vector<element_t> t) {
    std::vector<std::string> labels(static_cast<std::size_t>(std::sqrt(t.size())), "x");
    return FiniteGroup("bad", labels, std::move(t));
  };
  CHECK_THROWS_WITH_AS(make({1, 0, 0, 1}), doctest::Contains("identity"), GroupError);
  CHECK_THROWS_WITH_AS(make({0, 1, 1, 1}), doctest::Contains("cancellation"), GroupError);
  // a Latin square with identity 0 that is not associative (order 5 loop)
  CHECK_THROWS_WITH_AS(make({0, 1, 2, 3, 4, 1, 0, 3, 4, 2, 2, 4, 0, 1, 3, 3, 2, 4, 0, 1, 4, 3, 1, 2, 0}),
                       doctest::Contains("associativ"), GroupError);
  CHECK_THROWS_AS(build_group("nonsense:3"), GroupError);
}

TEST_CASE("group documents round-trip") {
  auto s3 = build_group("s3");
  auto back = group_from_json(s3->to_json());
  CHECK(same_group(*back, *s3));
  CHECK(back->name() == s3->name());
}

TEST_CASE("direct products") {
  auto c1 = build_group("c1");
  auto c2 = build_group("c2");
  auto c3 = build_group("c3");
  auto s3 = build_group("s3");

  auto c1s3 = direct_product(c1, s3);
  CHECK(c1s3->order() == 6);
  for (element_t a = 0; a < 6; ++a)
    for (element_t b = 0; b < 6; ++b) CHECK(c1s3->mul(a, b) == s3->mul(a, b));

  auto v = direct_product(c2, c2);
  CHECK(v->order() == 4);
  for (element_t a = 1; a < 4; ++a) CHECK(v->mul(a, a) == 0);

  auto c6 = direct_product(c2, c3);
  CHECK(c6->is_abelian());
  bool has_order_six = false;
  for (element_t a = 0; a < 6; ++a) has_order_six |= c6->element_order(a) == 6;
  CHECK(has_order_six);

  CHECK(direct_product(c2, c3) == c6);  // memoized
  CHECK(c6->pack(1, 2) == 5);
  CHECK(c6->first(5) == 1);
  CHECK(c6->second(5) == 2);
}

TEST_CASE("closure") {
  auto v = direct_product(build_group("c2"), build_group("c2"));
  CHECK(closure(v, {}).members() == members({0}));
  CHECK(closure(v, {v->pack(1, 1)}).members() == members({0, 3}));

  auto s3 = build_group("s3");
  CHECK(closure(s3, {2, 3}).order() == 6);

  for (const auto& spec : kTestGroups) {
    auto g = build_group(spec);
    for (const auto& u : all_subgroups(g))
      for (element_t x = 0; x < g->order(); ++x) {
        std::vector<element_t> seed = u.members();
        seed.push_back(x);
        auto c = closure(g, seed);
        CHECK(closure(g, c.members()) == c);
        CHECK(std::includes(c.members().begin(), c.members().end(), u.members().begin(), u.members().end()));
      }
  }
}

TEST_CASE("subgroup enumeration against subset search") {
  CHECK(all_subgroups(build_group("c1")).size() == 1);
  CHECK(all_subgroups(build_group("klein4")).size() == 5);
  CHECK(all_subgroups(build_group("c2xc2xc2xc2")).size() == 67);
  CHECK(all_subgroups(build_group("s3xs3")).size() == 60);

  for (const auto& spec : {"c2xc2", "s3", "c4", "d8", "q8", "c2xc2xc2", "c2xc2xc2xc2", "c2xc3", "c3xc3"}) {
    auto g = build_group(spec);
    auto subs = all_subgroups(g);
    std::set<oracle::Set> ours;
    for (const auto& u : subs) ours.insert(oracle::as_set(u));
    auto theirs = oracle::subgroups_by_subsets(*g);
    CHECK_MESSAGE(ours == std::set<oracle::Set>(theirs.begin(), theirs.end()), spec);
    CHECK(ours.size() == subs.size());
    CHECK(std::is_sorted(subs.begin(), subs.end()));
  }
  CHECK_THROWS_AS(all_subgroups(build_group("s3xs3"), 16), CapError);
}

TEST_CASE("subgroups are closed under conjugation as a set") {
  for (const auto& spec : {"s3", "d8", "q8", "s3xc2", "s3xs3"}) {
    auto g = build_group(spec);
    auto subs = all_subgroups(g);
    for (const auto& u : subs) {
      CHECK(g->order() % u.order() == 0);
      for (element_t x = 0; x < g->order(); ++x)
        CHECK(std::binary_search(subs.begin(), subs.end(), conjugate_subgroup(x, u)));
    }
  }
}

TEST_CASE("projections and kernels") {
  auto c2 = build_group("c2");
  auto v = direct_product(c2, c2);
  ElementSet diag;
  diag.insert(0);
  diag.insert(3);
  auto pk = projections_and_kernels(Subgroup(v, diag));
  CHECK(pk.p1.order() == 2);
  CHECK(pk.p2.order() == 2);
  CHECK(pk.k1.order() == 1);
  CHECK(pk.k2.order() == 1);

  ElementSet right;
  right.insert(0);
  right.insert(v->pack(0, 1));
  pk = projections_and_kernels(Subgroup(v, right));
  CHECK(pk.p1.order() == 1);
  CHECK(pk.p2.order() == 2);
  CHECK(pk.k1.order() == 1);
  CHECK(pk.k2.order() == 2);

  pk = projections_and_kernels(whole_group(v));
  CHECK((pk.p1.order() == 2 && pk.p2.order() == 2 && pk.k1.order() == 2 && pk.k2.order() == 2));

  CHECK_THROWS_AS(projections_and_kernels(whole_group(build_group("s3"))), GroupError);

  for (const auto& [a, b] : std::vector<std::pair<const char*, const char*>>{{"s3", "s3"}, {"c2", "s3"}, {"klein4", "c3"}}) {
    auto fg = direct_product(build_group(a), build_group(b));
    for (const auto& u : all_subgroups(fg)) {
      auto p = projections_and_kernels(u);
      CHECK(u.order() == p.p1.order() * p.k2.order());
      CHECK(u.order() == p.p2.order() * p.k1.order());
    }
  }
}

TEST_CASE("conjugating the diagonal of S3 x S3") {
  auto s3 = build_group("s3");
  auto p = direct_product(s3, s3);
  ElementSet d;
  for (element_t y = 0; y < 6; ++y) d.insert(p->pack(y, y));
  Subgroup diag(p, d);
  auto twisted = conjugate_subgroup(p->pack(2, 0), diag);
  CHECK(twisted.order() == 6);
  CHECK_FALSE(twisted == diag);
  for (element_t y = 0; y < 6; ++y) CHECK(twisted.contains(p->pack(s3->conj(2, y), y)));
  CHECK(conjugate_subgroup(p->pack(3, 3), diag) == conjugate_subgroup(p->pack(3, 3), diag));
  CHECK(conjugate_subgroup(p->pack(1, 1), diag) == diag);  // x in U
  auto whole = whole_group(s3);
  CHECK(conjugate_subgroup(4, whole) == whole);
}

TEST_CASE("double cosets") {
  auto s3 = build_group("s3");
  auto whole = whole_group(s3);
  auto one = trivial_subgroup(s3);
  auto dc = double_coset_reps(whole, whole);
  CHECK(dc.reps == members({0}));
  CHECK(dc.sizes == std::vector<std::size_t>{6});
  dc = double_coset_reps(one, one);
  CHECK(dc.reps.size() == 6);
  CHECK(std::all_of(dc.sizes.begin(), dc.sizes.end(), [](std::size_t n) { return n == 1; }));

  auto t = closure(s3, {2});
  dc = double_coset_reps(t, t);
  CHECK(dc.reps.size() == 2);
  CHECK(std::multiset<std::size_t>(dc.sizes.begin(), dc.sizes.end()) == std::multiset<std::size_t>{2, 4});

  CHECK_THROWS_AS(double_coset_reps(t, trivial_subgroup(build_group("c2"))), GroupError);

  for (const auto& spec : kTestGroups) {
    auto g = build_group(spec);
    auto subs = all_subgroups(g);
    for (const auto& p : subs)
      for (const auto& q : subs) {
        auto d = double_coset_reps(p, q);
        std::size_t total = 0;
        std::set<element_t> seen;
        for (std::size_t k = 0; k < d.reps.size(); ++k) {
          total += d.sizes[k];
          // brute-force double coset of the representative
          std::set<element_t> coset;
          for (auto a : p.members())
            for (auto b : q.members()) coset.insert(g->mul(g->mul(a, d.reps[k]), b));
          CHECK(coset.size() == d.sizes[k]);
          CHECK(*coset.begin() == d.reps[k]);
          for (auto e : coset) CHECK(seen.insert(e).second);
        }
        CHECK(total == g->order());
      }
  }
}

TEST_CASE("set product sizes") {
  auto s3 = build_group("s3");
  auto a = closure(s3, {2});
  auto b = closure(s3, {5});
  CHECK(set_product_size(a, a) == 2);
  CHECK(set_product_size(a, b) == 4);
  auto c2 = build_group("c2");
  CHECK(set_product_size(whole_group(c2), whole_group(c2)) == 2);
  for (const auto& p : all_subgroups(s3))
    for (const auto& q : all_subgroups(s3)) {
      std::set<element_t> prod;
      for (auto x : p.members())
        for (auto y : q.members()) prod.insert(s3->mul(x, y));
      CHECK(set_product_size(p, q) == prod.size());
    }
}

TEST_CASE("conjugacy classes") {
  auto s3 = build_group("s3");
  auto cl = conjugacy_classes(*s3);
  std::multiset<std::size_t> sizes;
  for (const auto& c : cl.classes) sizes.insert(c.size());
  CHECK(sizes == std::multiset<std::size_t>{1, 2, 3});
  CHECK(conjugacy_classes(*build_group("klein4")).classes.size() == 4);
  CHECK(conjugacy_classes(*build_group("c3")).classes.size() == 3);
  for (const auto& spec : kTestGroups) {
    auto g = build_group(spec);
    auto c = conjugacy_classes(*g);
    std::size_t total = 0;
    for (std::size_t k = 0; k < c.classes.size(); ++k) {
      total += c.classes[k].size();
      CHECK(c.rep(k) == *std::min_element(c.classes[k].begin(), c.classes[k].end()));
      std::size_t centralizer = 0;
      for (element_t x = 0; x < g->order(); ++x) centralizer += g->conj(x, c.rep(k)) == c.rep(k);
      CHECK(centralizer * c.classes[k].size() == g->order());
    }
    CHECK(total == g->order());
  }
}
