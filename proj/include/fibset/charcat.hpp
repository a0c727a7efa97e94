#pragma once

// Class functions on direct products composed by convolution, and the
// partial category of pairs whose invariant category they model.

#include <cstddef>
#include <optional>
#include <vector>

#include <json.hpp>

#include "fibset/group.hpp"
#include "fibset/linear.hpp"
#include "fibset/scalar.hpp"

namespace fibset {

// Objects are groups; the morphisms F <- G are the elements u x v of F x G,
// indexed u * |G| + v, and (u x v)(v' x w) = u x w exactly when v = v'.
class PairCategory {
 public:
  explicit PairCategory(std::vector<GroupPtr> groups);

  std::size_t object_count() const { return groups_.size(); }
  const GroupPtr& group(ObjectId o) const { return groups_.at(o); }

  std::size_t basis_size(ObjectId f, ObjectId g) const { return group(f)->order() * group(g)->order(); }
  std::size_t pair_index(ObjectId g, element_t u, element_t v) const { return u * group(g)->order() + v; }
  element_t first(ObjectId g, std::size_t i) const { return static_cast<element_t>(i / group(g)->order()); }
  element_t second(ObjectId g, std::size_t i) const { return static_cast<element_t>(i % group(g)->order()); }

  std::optional<std::size_t> composite(ObjectId f, ObjectId g, ObjectId h, std::size_t i, std::size_t j) const;
  // ^{a x b}(u x v) = (a u a^-1) x (b v b^-1)
  std::size_t act(ObjectId f, ObjectId g, element_t a, element_t b, std::size_t i) const;
  std::size_t orbit_rep(ObjectId f, ObjectId g, std::size_t i) const;
  std::size_t orbit_size(ObjectId f, ObjectId g, std::size_t i) const;
  const std::vector<std::size_t>& orbit_reps(ObjectId f, ObjectId g) const { return reps_.at(f * groups_.size() + g); }
  // sigma_G(x) = sum_v (x v x^-1) x v
  std::vector<std::size_t> structural(ObjectId g, element_t x) const;

  const ConjugacyClasses& classes(ObjectId o) const { return classes_.at(o); }
  // Conjugacy classes of F x G are products of classes, numbered cf * #cl(G) + cg.
  std::size_t class_count(ObjectId f, ObjectId g) const {
    return classes(f).classes.size() * classes(g).classes.size();
  }
  std::size_t class_of(ObjectId f, ObjectId g, element_t u, element_t v) const {
    return classes(f).class_of[u] * classes(g).classes.size() + classes(g).class_of[v];
  }
  std::size_t class_size(ObjectId f, ObjectId g, std::size_t c) const;
  // Index of the smallest pair in class c.
  std::size_t class_rep(ObjectId f, ObjectId g, std::size_t c) const;

 private:
  std::vector<GroupPtr> groups_;
  std::vector<ConjugacyClasses> classes_;
  std::vector<std::vector<std::size_t>> reps_;
};

static_assert(PartialCategory<PairCategory>);

struct ClassFunction {
  ObjectId cod = 0;
  ObjectId dom = 0;
  std::vector<Rational> values;  // by class number of F x G

  friend bool operator==(const ClassFunction&, const ClassFunction&) = default;
};

ClassFunction zero_class_function(const PairCategory& cat, ObjectId f, ObjectId g);
ClassFunction constant_class_function(const PairCategory& cat, ObjectId f, ObjectId g, const Rational& c);
ClassFunction class_indicator(const PairCategory& cat, ObjectId f, ObjectId g, std::size_t c);
// g x g' -> |C_G(g)| if g, g' are conjugate, else 0
ClassFunction identity_class_function(const PairCategory& cat, ObjectId g);
Rational evaluate(const PairCategory& cat, const ClassFunction& xi, element_t u, element_t v);

// (xi eta)(f x h) = (1/|G|) sum_g xi(f x g) eta(g x h)
ClassFunction compose_class(const PairCategory& cat, const ClassFunction& xi, const ClassFunction& eta);

// mu(xi) = (1/|F|) sum_{u x v} xi(u x v) (u x v)-bar
BarMorphism<Rational> mu(const PairCategory& cat, const ClassFunction& xi);
ClassFunction mu_inverse(const PairCategory& cat, const BarMorphism<Rational>& x);

// (u x v)-bar (v' x w)-bar: zero unless v ~ v', else (u x w)-bar / |[v]_G|.
BarMorphism<Rational> star_bar_product_pairs(const PairCategory& cat, ObjectId f, ObjectId g, ObjectId h, std::size_t i,
                                             std::size_t j);

Morphism<Rational> compose_pairs(const PairCategory& cat, const Morphism<Rational>& x, const Morphism<Rational>& y);

// {"pair": [F, G], "values": [[class, scalar]]}, zero values omitted
nlohmann::json class_function_to_json(const PairCategory& cat, const ClassFunction& xi);
ClassFunction class_function_from_json(const PairCategory& cat, const nlohmann::json& j);

}  // namespace fibset
