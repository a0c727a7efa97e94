#include "fibset/suites.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <stdexcept>
#include <tuple>

#include "fibset/charcat.hpp"
#include "fibset/deformation.hpp"
#include "fibset/fibred.hpp"
#include "fibset/group.hpp"
#include "fibset/linear.hpp"
#include "fibset/subchar.hpp"

namespace fibset {

namespace {

using json = nlohmann::json;
using Laurent = LaurentScalar;

struct Scope {
  std::vector<GroupPtr> groups;  // all objects
  std::vector<ObjectId> outer;
  std::vector<ObjectId> middle;
  AbelianFiber fiber;
  EllMap ell = EllMap::generic();
  std::size_t cap = 64;
  std::uint64_t seed = 1;
};

Scope make_scope(const RunConfig& c) {
  Scope s;
  auto add = [&](const std::string& spec) {
    GroupPtr g;
    try {
      g = build_group(spec);
    } catch (const GroupError& e) {
      throw std::invalid_argument("group spec '" + spec + "': " + e.what());
    }
    for (ObjectId o = 0; o < s.groups.size(); ++o)
      if (same_group(*s.groups[o], *g)) return o;
    s.groups.push_back(g);
    return s.groups.size() - 1;
  };
  for (const auto& spec : c.groups) {
    auto o = add(spec);
    if (std::find(s.outer.begin(), s.outer.end(), o) == s.outer.end()) s.outer.push_back(o);
  }
  for (const auto& spec : c.middle_groups) {
    auto o = add(spec);
    if (std::find(s.middle.begin(), s.middle.end(), o) == s.middle.end()) s.middle.push_back(o);
  }
  if (s.middle.empty()) s.middle = s.outer;
  try {
    s.fiber = AbelianFiber::parse(c.fiber);
    s.ell = EllMap::parse(c.ell);
  } catch (const std::exception& e) {
    throw std::invalid_argument(e.what());
  }
  if (c.max_order == 0) throw std::invalid_argument("max-order must be positive");
  s.cap = c.max_order;
  s.seed = c.seed;
  return s;
}

class Recorder {
 public:
  explicit Recorder(SuiteResult& r) : r_(r) {}
  // Records one check; the witness is only built for the first failure.
  // Later checks are also tallied under this name.
  void part(std::string name) { part_ = std::move(name); }
  bool check(bool ok, const std::function<json()>& witness) {
    ++r_.checked;
    if (!part_.empty()) ++r_.parts[part_];
    if (!ok && r_.violations++ == 0) r_.witness = witness();
    return ok;
  }
  void count(std::size_t n) {
    r_.checked += n;
    if (!part_.empty()) r_.parts[part_] += n;
  }
  void fail(const std::function<json()>& witness) {
    if (r_.violations++ == 0) r_.witness = witness();
  }

 private:
  SuiteResult& r_;
  std::string part_;
};

json item(const SubcharCategory& cat, ObjectId f, ObjectId g, std::size_t i) {
  return subchar_to_json(cat.catalog(f, g).at(i), cat.fiber());
}

json names(const SubcharCategory& cat, std::initializer_list<ObjectId> objs) {
  json out = json::array();
  for (auto o : objs) out.push_back(cat.group(o)->name());
  return out;
}

template <class T>
json scalars(const T& x) {
  json out = json::array();
  for (const auto& [k, c] : x.terms) out.push_back({k, to_json(c)});
  return out;
}

// Dense composite and |Γ∩| tables for one object triple.
struct PairTable {
  std::size_t cols = 0;
  std::vector<std::int64_t> comp;
  std::vector<std::uint32_t> gamma;
};

class PairTables {
 public:
  explicit PairTables(const SubcharCategory& cat) : cat_(cat) {}
  const PairTable& operator()(ObjectId f, ObjectId g, ObjectId h) {
    auto key = std::make_tuple(f, g, h);
    auto it = tables_.find(key);
    if (it != tables_.end()) return it->second;
    PairTable t;
    const std::size_t n1 = cat_.basis_size(f, g);
    t.cols = cat_.basis_size(g, h);
    t.comp.assign(n1 * t.cols, -1);
    t.gamma.assign(n1 * t.cols, 0);
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t j = 0; j < t.cols; ++j) {
        t.gamma[i * t.cols + j] = static_cast<std::uint32_t>(cat_.gamma_order(f, g, h, i, j));
        if (auto c = cat_.composite(f, g, h, i, j)) t.comp[i * t.cols + j] = static_cast<std::int64_t>(*c);
      }
    return tables_.emplace(key, std::move(t)).first->second;
  }

 private:
  const SubcharCategory& cat_;
  std::map<std::tuple<ObjectId, ObjectId, ObjectId>, PairTable> tables_;
};

// ---------------------------------------------------------------------------

void suite_lemma42(const Scope& s, Recorder& rec) {
  SubcharCategory cat(s.groups, AbelianFiber(), s.cap);
  for (auto f : s.outer)
    for (auto g : s.outer)
      for (auto h : s.outer) {
        const auto& left = cat.catalog(f, g);
        const auto& right = cat.catalog(g, h);
        for (std::size_t a = 0; a < left.size(); ++a)
          for (std::size_t b = 0; b < right.size(); ++b) {
            const auto& u = left.at(a).subgroup;
            const auto& v = right.at(b).subgroup;
            const auto pu = projections_and_kernels(u);
            const auto pv = projections_and_kernels(v);
            const std::size_t lhs = u.order() * v.order();
            const std::size_t rhs = set_product_size(pu.p2, pv.p1) * gamma_cap(u, v).order() * star(u, v).order();
            rec.check(lhs == rhs, [&] {
              return json{{"message", "|U||V| = " + std::to_string(lhs) + " but |p2(U)p1(V)||Γ∩||U*V| = " +
                                          std::to_string(rhs)},
                          {"groups", names(cat, {f, g, h})},
                          {"U", item(cat, f, g, a)},
                          {"V", item(cat, g, h, b)}};
            });
          }
      }
}

void suite_lemma41(const Scope& s, Recorder& rec) {
  SubcharCategory cat(s.groups, AbelianFiber(), s.cap);
  PairTables tables(cat);
  auto small = [&](ObjectId a, ObjectId b) { return s.groups[a]->order() * s.groups[b]->order() <= 36; };
  for (auto f : s.outer)
    for (auto g : s.outer)
      for (auto h : s.outer)
        for (auto i : s.outer) {
          if (!small(f, g) || !small(g, h) || !small(h, i)) continue;
          const auto& t_fgh = tables(f, g, h);
          const auto& t_ghi = tables(g, h, i);
          const auto& t_fhi = tables(f, h, i);
          const auto& t_fgi = tables(f, g, i);
          const std::size_t n1 = cat.basis_size(f, g), n2 = t_fgh.cols, n3 = t_ghi.cols;
          std::size_t count = 0;
          for (std::size_t a = 0; a < n1; ++a)
            for (std::size_t b = 0; b < n2; ++b) {
              const auto uv = t_fgh.comp[a * n2 + b];
              const auto g_uv = t_fgh.gamma[a * n2 + b];
              for (std::size_t c = 0; c < n3; ++c) {
                const auto vw = t_ghi.comp[b * n3 + c];
                const auto lhs = std::size_t{g_uv} * t_fhi.gamma[uv * n3 + c];
                const auto rhs = std::size_t{t_fgi.gamma[a * t_fgi.cols + vw]} * t_ghi.gamma[b * n3 + c];
                const auto left_star = t_fhi.comp[uv * n3 + c];
                const auto right_star = t_fgi.comp[a * t_fgi.cols + vw];
                ++count;
                if (lhs != rhs || left_star != right_star)
                  rec.fail([&] {
                    return json{{"message", lhs != rhs ? "|Γ∩(U,V)||Γ∩(U*V,W)| = " + std::to_string(lhs) +
                                                             " but |Γ∩(U,V*W)||Γ∩(V,W)| = " + std::to_string(rhs)
                                                       : "(U*V)*W differs from U*(V*W)"},
                                {"groups", names(cat, {f, g, h, i})},
                                {"U", item(cat, f, g, a)},
                                {"V", item(cat, g, h, b)},
                                {"W", item(cat, h, i, c)}};
                  });
              }
            }
          rec.count(count);
        }
}

void suite_prop43(const Scope& s, Recorder& rec) {
  SubcharCategory cat(s.groups, s.fiber, s.cap);
  CompositeCache<SubcharCategory> comps(cat);
  for (auto f : s.outer)
    for (auto g : s.middle)
      for (auto h : s.middle)
        for (auto i : s.outer) {
          const auto& c_fgh = comps(f, g, h);
          const auto& c_ghi = comps(g, h, i);
          const auto& c_fhi = comps(f, h, i);
          const auto& c_fgi = comps(f, g, i);
          const std::size_t n1 = cat.basis_size(f, g), n2 = cat.basis_size(g, h), n3 = cat.basis_size(h, i);
          const std::size_t ngi = cat.basis_size(g, i);
          for (std::size_t a = 0; a < n1; ++a)
            for (std::size_t b = 0; b < n2; ++b) {
              const auto ab = c_fgh[a * n2 + b];
              for (std::size_t c = 0; c < n3; ++c) {
                const auto bc = c_ghi[b * n3 + c];
                const std::int64_t left = ab < 0 ? -1 : c_fhi[ab * n3 + c];
                const std::int64_t right = bc < 0 ? -1 : c_fgi[a * ngi + bc];
                if ((left < 0) != (right < 0) || left != right)
                  rec.fail([&] {
                    return json{{"message", (left < 0) != (right < 0) ? "matching conditions disagree"
                                                                      : "triple composites differ"},
                                {"groups", names(cat, {f, g, h, i})},
                                {"phi", item(cat, f, g, a)},
                                {"psi", item(cat, g, h, b)},
                                {"omega", item(cat, h, i, c)}};
                  });
              }
            }
          rec.count(n1 * n2 * n3);
        }
}

void suite_cocycle(const Scope& s, Recorder& rec) {
  SubcharCategory cat(s.groups, s.fiber, s.cap);
  const auto report = cocycle_audit<Laurent>(cat, ell_cocycle<Laurent>(cat, s.ell), AuditScope{s.outer, s.middle});
  rec.part("non_degeneracy");
  rec.count(report.pairs_checked);
  rec.part("associativity");
  rec.count(report.triples_checked);
  rec.part("invariance");
  rec.count(report.invariance_checked);
  for (std::size_t k = 0; k < report.violations; ++k) rec.fail([&] { return json{{"message", report.witness}}; });
}

// Invariant composition: closed formula, literal oracle, averaging formula and
// rescaled formula agree; bars are idempotent; composition is associative.
void suite_thm44(const Scope& s, Recorder& rec) {
  SubcharCategory cat(s.groups, s.fiber, s.cap);
  const auto gamma = ell_cocycle<Laurent>(cat, s.ell);
  rec.part("fast_vs_oracle");
  for (auto f : s.outer)
    for (auto g : s.middle)
      for (auto h : s.outer)
        for (auto i : cat.orbit_reps(f, g))
          for (auto j : cat.orbit_reps(g, h)) {
            const auto x = bar_basis<Laurent>(cat, f, g, i);
            const auto y = bar_basis<Laurent>(cat, g, h, j);
            const auto fast = compose_invariant_fast(cat, x, y, s.ell);
            const auto oracle = compose_invariant_oracle(cat, x, y, gamma);
            const auto averaging = compose_invariant_averaging(cat, x, y, gamma);
            const auto rescaled = compose_rescaled(cat, to_rescaled(cat, x), to_rescaled(cat, y), s.ell);
            auto witness = [&](const std::string& msg) {
              return [&, msg] {
                return json{{"message", msg},
                            {"groups", names(cat, {f, g, h})},
                            {"phi", item(cat, f, g, i)},
                            {"psi", item(cat, g, h, j)},
                            {"fast", scalars(fast)},
                            {"oracle", scalars(oracle)}};
              };
            };
            rec.check(fast == oracle, witness("double coset formula differs from the oracle"));
            rec.check(averaging == oracle, witness("averaging formula differs from the oracle"));
            rec.check(rescaled == to_rescaled(cat, fast), witness("rescaled formula differs"));
          }
  rec.part("orbit_basis");
  for (auto f : s.outer)
    for (auto g : s.middle)
      for (auto k : cat.orbit_reps(f, g)) {
        const auto x = bar_basis<Laurent>(cat, f, g, k);
        rec.check(collect(cat, expand(cat, x)) == x, [&] {
          return json{{"message", "bar is not idempotent"}, {"groups", names(cat, {f, g})}, {"phi", item(cat, f, g, k)}};
        });
      }
  rec.part("associativity");
  // associativity over the middle groups
  std::map<std::tuple<ObjectId, ObjectId, ObjectId, std::size_t, std::size_t>, BarMorphism<Laurent>> memo;
  auto product = [&](ObjectId f, ObjectId g, ObjectId h, std::size_t i, std::size_t j) -> const BarMorphism<Laurent>& {
    auto key = std::make_tuple(f, g, h, i, j);
    auto it = memo.find(key);
    if (it == memo.end())
      it = memo.emplace(key, compose_invariant_fast(cat, bar_basis<Laurent>(cat, f, g, i), bar_basis<Laurent>(cat, g, h, j), s.ell))
               .first;
    return it->second;
  };
  for (auto f : s.middle)
    for (auto g : s.middle)
      for (auto h : s.middle)
        for (auto i_obj : s.middle)
          for (auto a : cat.orbit_reps(f, g))
            for (auto b : cat.orbit_reps(g, h))
              for (auto c : cat.orbit_reps(h, i_obj)) {
                BarMorphism<Laurent> left(f, i_obj), right(f, i_obj);
                for (const auto& [k, v] : product(f, g, h, a, b).terms) left += v * product(f, h, i_obj, k, c);
                for (const auto& [k, v] : product(g, h, i_obj, b, c).terms) right += v * product(f, g, i_obj, a, k);
                rec.check(left == right, [&] {
                  return json{{"message", "invariant composition is not associative"},
                              {"groups", names(cat, {f, g, h, i_obj})},
                              {"phi", item(cat, f, g, a)},
                              {"psi", item(cat, g, h, b)},
                              {"omega", item(cat, h, i_obj, c)}};
                });
              }
}

void suite_thm51(const Scope& s, Recorder& rec) {
  SubcharCategory cat(s.groups, s.fiber, s.cap);
  std::map<std::tuple<ObjectId, ObjectId, ObjectId, std::size_t, std::size_t>, FibredMorphism<Laurent>> memo;
  auto product = [&](ObjectId f, ObjectId g, ObjectId h, std::size_t i, std::size_t j) -> const FibredMorphism<Laurent>& {
    auto key = std::make_tuple(f, g, h, i, j);
    auto it = memo.find(key);
    if (it == memo.end())
      it = memo.emplace(key, compose_fibred(cat, d_basis<Laurent>(cat, f, g, i), d_basis<Laurent>(cat, g, h, j), s.ell)).first;
    return it->second;
  };
  rec.part("associativity");
  for (auto f : s.outer)
    for (auto g : s.outer)
      for (auto h : s.outer)
        for (auto i_obj : s.outer)
          for (auto a : cat.orbit_reps(f, g))
            for (auto b : cat.orbit_reps(g, h))
              for (auto c : cat.orbit_reps(h, i_obj)) {
                FibredMorphism<Laurent> left(f, i_obj), right(f, i_obj);
                for (const auto& [k, v] : product(f, g, h, a, b).terms) left += v * product(f, h, i_obj, k, c);
                for (const auto& [k, v] : product(g, h, i_obj, b, c).terms) right += v * product(f, g, i_obj, a, k);
                rec.check(left == right, [&] {
                  return json{{"message", "fibred composition is not associative"},
                              {"groups", names(cat, {f, g, h, i_obj})},
                              {"phi", item(cat, f, g, a)},
                              {"psi", item(cat, g, h, b)},
                              {"omega", item(cat, h, i_obj, c)},
                              {"left", scalars(left)},
                              {"right", scalars(right)}};
                });
              }

  rec.part("representatives");
  // representative independence
  std::mt19937_64 rng(s.seed);
  for (auto f : s.outer)
    for (auto g : s.outer)
      for (auto h : s.outer) {
        const auto& fg = *cat.catalog(f, g).product();
        const auto& gh = *cat.catalog(g, h).product();
        for (auto a : cat.orbit_reps(f, g))
          for (auto b : cat.orbit_reps(g, h)) {
            const auto x = static_cast<element_t>(rng() % fg.order());
            const auto y = static_cast<element_t>(rng() % gh.order());
            const auto a2 = cat.catalog(f, g).act(x, a);
            const auto b2 = cat.catalog(g, h).act(y, b);
            const auto moved = compose_fibred_basis_with<Laurent>(cat, f, g, h, a2, b2, s.ell, rng);
            rec.check(moved == product(f, g, h, a, b), [&] {
              return json{{"message", "composite depends on the chosen representatives"},
                          {"groups", names(cat, {f, g, h})},
                          {"phi", item(cat, f, g, a2)},
                          {"psi", item(cat, g, h, b2)}};
            });
          }
      }
}

void suite_cor52(const Scope& s, Recorder& rec) {
  SubcharCategory cat(s.groups, s.fiber, s.cap);
  for (auto f : s.outer)
    for (auto g : s.outer)
      for (auto h : s.outer) {
        ClassicalCheck check;
        const auto table = classical_structure_constants(cat, f, g, h, &check);
        rec.count(check.constants + table.rows.size());
        for (std::size_t k = 0; k < check.violations; ++k)
          rec.fail([&] { return json{{"message", check.witness}, {"groups", names(cat, {f, g, h})}}; });
      }
}

void suite_nu(const Scope& s, Recorder& rec) {
  SubcharCategory cat(s.groups, s.fiber, s.cap);
  const auto gamma = ell_cocycle<Laurent>(cat, s.ell);
  rec.part("identity");
  for (auto g : s.outer) {
    rec.check(nu(cat, fibred_identity<Laurent>(cat, g)) == invariant_identity<Laurent>(cat, g), [&] {
      return json{{"message", "nu does not preserve the identity"}, {"groups", names(cat, {g})}};
    });
  }
  for (auto f : s.outer)
    for (auto g : s.outer)
      for (auto h : s.outer)
        for (auto i : cat.orbit_reps(f, g))
          for (auto j : cat.orbit_reps(g, h)) {
            const auto x = d_basis<Laurent>(cat, f, g, i);
            const auto y = d_basis<Laurent>(cat, g, h, j);
            const auto lhs = nu(cat, compose_fibred(cat, x, y, s.ell));
            const auto rhs = compose_invariant_oracle(cat, nu(cat, x), nu(cat, y), gamma);
            rec.part("functoriality");
            rec.check(lhs == rhs, [&] {
              return json{{"message", "nu(x y) differs from nu(x) nu(y)"},
                          {"groups", names(cat, {f, g, h})},
                          {"phi", item(cat, f, g, i)},
                          {"psi", item(cat, g, h, j)},
                          {"left", scalars(lhs)},
                          {"right", scalars(rhs)}};
            });
            rec.part("inverse");
            if (g == h)
              rec.check(nu_inverse(cat, nu(cat, x)) == x, [&] {
                return json{{"message", "nu is not invertible on a basis element"}, {"phi", item(cat, f, g, i)}};
              });
          }
}

json pair_names(const PairCategory& cat, std::initializer_list<ObjectId> objs) {
  json out = json::array();
  for (auto o : objs) out.push_back(cat.group(o)->name());
  return out;
}

void suite_lemma31(const Scope& s, Recorder& rec) {
  PairCategory cat(s.groups);
  std::map<std::tuple<ObjectId, ObjectId, ObjectId, std::size_t, std::size_t>, ClassFunction> memo;
  auto product = [&](ObjectId f, ObjectId g, ObjectId h, std::size_t a, std::size_t b) -> const ClassFunction& {
    auto key = std::make_tuple(f, g, h, a, b);
    auto it = memo.find(key);
    if (it == memo.end())
      it = memo.emplace(key, compose_class(cat, class_indicator(cat, f, g, a), class_indicator(cat, g, h, b))).first;
    return it->second;
  };
  for (auto f : s.outer)
    for (auto g : s.outer)
      for (auto h : s.outer)
        for (auto i_obj : s.outer)
          for (std::size_t a = 0; a < cat.class_count(f, g); ++a)
            for (std::size_t b = 0; b < cat.class_count(g, h); ++b)
              for (std::size_t c = 0; c < cat.class_count(h, i_obj); ++c) {
                const auto left = compose_class(cat, product(f, g, h, a, b), class_indicator(cat, h, i_obj, c));
                const auto right = compose_class(cat, class_indicator(cat, f, g, a), product(g, h, i_obj, b, c));
                rec.check(left == right, [&] {
                  return json{{"message", "class function composition is not associative"},
                              {"groups", pair_names(cat, {f, g, h, i_obj})},
                              {"classes", {a, b, c}}};
                });
              }
  for (auto f : s.outer)
    for (auto g : s.outer) {
      const auto id_f = identity_class_function(cat, f);
      const auto id_g = identity_class_function(cat, g);
      for (std::size_t a = 0; a < cat.class_count(f, g); ++a) {
        const auto xi = class_indicator(cat, f, g, a);
        rec.check(compose_class(cat, id_f, xi) == xi && compose_class(cat, xi, id_g) == xi, [&] {
          return json{{"message", "identity class function is not a two-sided identity"},
                      {"groups", pair_names(cat, {f, g})},
                      {"class", a}};
        });
      }
      const auto one_fg = constant_class_function(cat, f, g, Rational(1));
      for (auto h : s.outer)
        rec.check(compose_class(cat, one_fg, constant_class_function(cat, g, h, Rational(1))) ==
                      constant_class_function(cat, f, h, Rational(1)),
                  [&] {
                    return json{{"message", "constant 1 composed with constant 1 is not 1"},
                                {"groups", pair_names(cat, {f, g, h})}};
                  });
    }
}

void suite_prop32(const Scope& s, Recorder& rec) {
  PairCategory cat(s.groups);
  const auto gamma = trivial_cocycle<Rational>(cat);
  for (auto g : s.outer)
    rec.check(mu(cat, identity_class_function(cat, g)) == invariant_identity<Rational>(cat, g), [&] {
      return json{{"message", "mu does not send the identity class function to sigma(e)"},
                  {"groups", pair_names(cat, {g})}};
    });
  for (auto f : s.outer)
    for (auto g : s.outer) {
      for (std::size_t a = 0; a < cat.class_count(f, g); ++a) {
        const auto xi = class_indicator(cat, f, g, a);
        rec.check(mu_inverse(cat, mu(cat, xi)) == xi, [&] {
          return json{{"message", "mu is not invertible"}, {"groups", pair_names(cat, {f, g})}, {"class", a}};
        });
      }
      for (auto h : s.outer) {
        for (std::size_t a = 0; a < cat.class_count(f, g); ++a)
          for (std::size_t b = 0; b < cat.class_count(g, h); ++b) {
            const auto xi = class_indicator(cat, f, g, a);
            const auto eta = class_indicator(cat, g, h, b);
            const auto lhs = mu(cat, compose_class(cat, xi, eta));
            const auto rhs = compose_invariant_oracle(cat, mu(cat, xi), mu(cat, eta), gamma);
            rec.check(lhs == rhs, [&] {
              return json{{"message", "mu(xi eta) differs from mu(xi) mu(eta)"},
                          {"groups", pair_names(cat, {f, g, h})},
                          {"classes", {a, b}},
                          {"left", scalars(lhs)},
                          {"right", scalars(rhs)}};
            });
          }
        for (auto i : cat.orbit_reps(f, g))
          for (auto j : cat.orbit_reps(g, h)) {
            const auto closed = star_bar_product_pairs(cat, f, g, h, i, j);
            const auto oracle = compose_invariant_oracle(cat, BarMorphism<Rational>::basis(f, g, i),
                                                         BarMorphism<Rational>::basis(g, h, j), gamma);
            rec.check(closed == oracle, [&] {
              return json{{"message", "closed form for pair bars differs from the oracle"},
                          {"groups", pair_names(cat, {f, g, h})},
                          {"pairs", {i, j}}};
            });
          }
      }
    }
}

template <class C, ScalarType S>
void sigma_checks(const C& cat, const Scope& s, const Cocycle<S>& gamma, const std::string& label, Recorder& rec,
                  const std::function<json(ObjectId, ObjectId, std::size_t)>& describe) {
  for (auto g : s.outer) {
    const auto& gg = *cat.group(g);
    for (std::size_t x = 0; x < gg.order(); ++x)
      for (std::size_t y = 0; y < gg.order(); ++y) {
        const auto ex = static_cast<element_t>(x), ey = static_cast<element_t>(y);
        rec.check(compose_linear(cat, sigma<S>(cat, g, ex), sigma<S>(cat, g, ey), gamma) == sigma<S>(cat, g, gg.mul(ex, ey)),
                  [&] {
                    return json{{"message", label + ": sigma is not multiplicative"},
                                {"group", gg.name()},
                                {"elements", {x, y}}};
                  });
      }
  }
  for (auto f : s.outer)
    for (auto g : s.outer) {
      const auto& gf = *cat.group(f);
      const auto& gg = *cat.group(g);
      for (std::size_t k = 0; k < cat.basis_size(f, g); ++k) {
        const auto p = Morphism<S>::basis(f, g, k);
        for (std::size_t a = 0; a < gf.order(); ++a)
          for (std::size_t b = 0; b < gg.order(); ++b) {
            const auto ea = static_cast<element_t>(a), eb = static_cast<element_t>(b);
            const auto moved = compose_linear(
                cat, compose_linear(cat, sigma<S>(cat, f, ea), p, gamma), sigma<S>(cat, g, gg.inv(eb)), gamma);
            rec.check(moved == Morphism<S>::basis(f, g, cat.act(f, g, ea, eb, k)), [&] {
              return json{{"message", label + ": sigma(a) p sigma(b)^-1 differs from the action"},
                          {"basis", describe(f, g, k)},
                          {"elements", {a, b}}};
            });
          }
      }
    }
}

void suite_sigma(const Scope& s, Recorder& rec) {
  PairCategory pairs(s.groups);
  sigma_checks<PairCategory, Rational>(pairs, s, trivial_cocycle<Rational>(pairs), "pairs", rec,
                                       [&](ObjectId f, ObjectId g, std::size_t k) {
                                         return json{pair_names(pairs, {f, g}), k};
                                       });
  SubcharCategory cat(s.groups, s.fiber, s.cap);
  sigma_checks<SubcharCategory, Laurent>(cat, s, ell_cocycle<Laurent>(cat, s.ell), "subcharacters", rec,
                                         [&](ObjectId f, ObjectId g, std::size_t k) { return item(cat, f, g, k); });
}

void suite_equivariance(const Scope& s, Recorder& rec) {
  SubcharCategory cat(s.groups, s.fiber, s.cap);
  CompositeCache<SubcharCategory> comps(cat);
  for (auto f : s.outer)
    for (auto g : s.outer)
      for (auto h : s.outer) {
        const auto& c_fg = cat.catalog(f, g);
        const auto& c_gh = cat.catalog(g, h);
        const auto& c_fh = cat.catalog(f, h);
        const auto& table = comps(f, g, h);
        const std::size_t n1 = c_fg.size(), n2 = c_gh.size();
        const auto& gf = *cat.group(f);
        const auto& gg = *cat.group(g);
        const auto& gh = *cat.group(h);
        std::size_t count = 0;
        for (element_t a = 0; a < gf.order(); ++a)
          for (element_t b = 0; b < gg.order(); ++b)
            for (element_t c = 0; c < gh.order(); ++c) {
              const auto x_fg = c_fg.product()->pack(a, b);
              const auto x_gh = c_gh.product()->pack(b, c);
              const auto x_fh = c_fh.product()->pack(a, c);
              for (std::size_t i = 0; i < n1; ++i) {
                const auto i2 = c_fg.act(x_fg, i);
                for (std::size_t j = 0; j < n2; ++j) {
                  const auto j2 = c_gh.act(x_gh, j);
                  const auto before = table[i * n2 + j];
                  const auto after = table[i2 * n2 + j2];
                  ++count;
                  const bool ok = (before < 0) == (after < 0) &&
                                  (before < 0 || c_fh.act(x_fh, static_cast<std::size_t>(before)) ==
                                                     static_cast<std::size_t>(after));
                  if (!ok)
                    rec.fail([&] {
                      return json{{"message", "composition is not equivariant"},
                                  {"groups", names(cat, {f, g, h})},
                                  {"elements", {a, b, c}},
                                  {"phi", item(cat, f, g, i)},
                                  {"psi", item(cat, g, h, j)}};
                    });
                }
              }
            }
        rec.count(count);
      }

  // direct recomputation on sampled cases, bypassing the indexed tables
  std::mt19937_64 rng(s.seed);
  const auto& a = cat.fiber();
  for (auto f : s.outer)
    for (auto g : s.outer)
      for (auto h : s.outer) {
        const auto& c_fg = cat.catalog(f, g);
        const auto& c_gh = cat.catalog(g, h);
        for (int trial = 0; trial < 64; ++trial) {
          const auto& phi = c_fg.at(rng() % c_fg.size());
          const auto& psi = c_gh.at(rng() % c_gh.size());
          const auto ea = static_cast<element_t>(rng() % cat.group(f)->order());
          const auto eb = static_cast<element_t>(rng() % cat.group(g)->order());
          const auto ec = static_cast<element_t>(rng() % cat.group(h)->order());
          const auto phi2 = subchar_conjugate(c_fg.product()->pack(ea, eb), phi);
          const auto psi2 = subchar_conjugate(c_gh.product()->pack(eb, ec), psi);
          const bool m = matches(phi, psi, a);
          bool ok = m == matches(phi2, psi2, a);
          if (ok && m)
            ok = subchar_conjugate(cat.catalog(f, h).product()->pack(ea, ec), star_subchar(phi, psi, a)) ==
                 star_subchar(phi2, psi2, a);
          rec.check(ok, [&] {
            return json{{"message", "direct recomputation is not equivariant"},
                        {"groups", names(cat, {f, g, h})},
                        {"elements", {ea, eb, ec}},
                        {"phi", subchar_to_json(phi, a)},
                        {"psi", subchar_to_json(psi, a)}};
          });
        }
      }
}

// Generic structure tables specialized at x_q -> q and x_q -> 1 coincide with
// the identity and one tables.
void suite_specialize(const Scope& s, Recorder& rec) {
  SubcharCategory cat(s.groups, s.fiber, s.cap);
  std::uint32_t bound = 1;
  for (const auto& g : s.groups) bound = std::max<std::uint32_t>(bound, static_cast<std::uint32_t>(g->order()));
  const auto to_identity = identity_assignment(bound);
  const auto to_one = one_assignment(bound);
  for (auto f : s.outer)
    for (auto g : s.outer)
      for (auto h : s.outer) {
        const auto generic = structure_table<Laurent>(cat, f, g, h, EllMap::generic());
        const auto identity = structure_table<Rational>(cat, f, g, h, EllMap::identity());
        const auto one = structure_table<Rational>(cat, f, g, h, EllMap::one());
        const auto at_identity = specialize_table(generic, to_identity);
        const auto at_one = specialize_table(generic, to_one);
        for (std::size_t r = 0; r < generic.rows.size(); ++r) {
          auto witness = [&](const std::string& msg) {
            return [&, msg] {
              return json{{"message", msg},
                          {"groups", names(cat, {f, g, h})},
                          {"phi", item(cat, f, g, generic.rows[r].first)},
                          {"psi", item(cat, g, h, generic.rows[r].second)},
                          {"generic", scalars(generic.products[r])}};
            };
          };
          rec.check(at_identity.products[r] == identity.products[r], witness("x_q -> q differs from ell(n) = n"));
          rec.check(at_one.products[r] == one.products[r], witness("x_q -> 1 differs from ell(n) = 1"));
        }
      }
}

using SuiteFn = void (*)(const Scope&, Recorder&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r{
      {"lemma41", suite_lemma41},   {"lemma42", suite_lemma42}, {"prop43", suite_prop43},
      {"cocycle", suite_cocycle},   {"thm44", suite_thm44},     {"thm51", suite_thm51},
      {"cor52", suite_cor52},       {"nu", suite_nu},           {"lemma31", suite_lemma31},
      {"prop32", suite_prop32},     {"sigma", suite_sigma},     {"equivariance", suite_equivariance},
      {"specialize", suite_specialize},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [n, fn] : registry()) out.push_back(n);
    return out;
  }();
  return names;
}

RunConfig config_from_json(const nlohmann::json& j, RunConfig base) {
  auto strings = [&](const char* key, std::vector<std::string>& out) {
    if (!j.contains(key)) return;
    out.clear();
    for (const auto& v : j.at(key)) out.push_back(v.get<std::string>());
  };
  strings("groups", base.groups);
  strings("middle_groups", base.middle_groups);
  strings("suites", base.suites);
  if (j.contains("fiber")) base.fiber = j.at("fiber").get<std::string>();
  if (j.contains("ell")) base.ell = j.at("ell").get<std::string>();
  if (j.contains("max_order")) base.max_order = j.at("max_order").get<std::size_t>();
  if (j.contains("seed")) base.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("timing")) base.timing = j.at("timing").get<bool>();
  return base;
}

nlohmann::json config_to_json(const RunConfig& c) {
  return {{"groups", c.groups},   {"middle_groups", c.middle_groups},
          {"fiber", c.fiber},     {"ell", c.ell},
          {"max_order", c.max_order}, {"seed", c.seed},
          {"suites", c.suites.empty() ? suite_names() : c.suites}};
}

bool Report::passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& r) { return r.passed(); });
}

bool Report::any_violation() const {
  return std::any_of(suites.begin(), suites.end(), [](const SuiteResult& r) { return r.violations > 0; });
}

SuiteResult run_suite(const std::string& name, const RunConfig& config) {
  const auto& reg = registry();
  auto it = std::find_if(reg.begin(), reg.end(), [&](const auto& e) { return e.first == name; });
  if (it == reg.end()) throw std::invalid_argument("unknown suite '" + name + "'");
  const auto scope = make_scope(config);
  SuiteResult r;
  r.name = name;
  Recorder rec(r);
  const auto start = std::chrono::steady_clock::now();
  try {
    it->second(scope, rec);
  } catch (const CapError& e) {
    r.skipped = e.what();
  }
  r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

Report run_suites(const RunConfig& config) {
  Report report{config, {}};
  make_scope(config);  // validate before running anything
  const auto& names = config.suites.empty() ? suite_names() : config.suites;
  for (const auto& n : names) report.suites.push_back(run_suite(n, config));
  return report;
}

nlohmann::json report_to_json(const Report& r) {
  nlohmann::json suites = nlohmann::json::array();
  for (const auto& s : r.suites) {
    nlohmann::json e{{"name", s.name}, {"checked", s.checked}, {"passed", s.passed()}};
    if (!s.parts.empty()) e["parts"] = s.parts;
    if (s.violations) e["violations"] = s.violations;
    if (s.skipped) e["skipped"] = *s.skipped;
    if (s.witness) e["witness"] = *s.witness;
    if (r.config.timing) e["millis"] = s.millis;
    suites.push_back(e);
  }
  return {{"config", config_to_json(r.config)}, {"suites", suites}};
}

}  // namespace fibset
