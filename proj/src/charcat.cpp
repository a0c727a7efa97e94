#include "fibset/charcat.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace fibset {

PairCategory::PairCategory(std::vector<GroupPtr> groups) : groups_(std::move(groups)) {
  for (const auto& g : groups_) classes_.push_back(conjugacy_classes(*g));
  const std::size_t n = groups_.size();
  reps_.resize(n * n);
  for (std::size_t f = 0; f < n; ++f)
    for (std::size_t g = 0; g < n; ++g) {
      auto& reps = reps_[f * n + g];
      for (std::size_t c = 0; c < class_count(f, g); ++c) reps.push_back(class_rep(f, g, c));
      std::sort(reps.begin(), reps.end());
    }
}

std::optional<std::size_t> PairCategory::composite(ObjectId f, ObjectId g, ObjectId h, std::size_t i,
                                                   std::size_t j) const {
  (void)f;
  if (second(g, i) != first(h, j)) return std::nullopt;
  return pair_index(h, first(g, i), second(h, j));
}

std::size_t PairCategory::act(ObjectId f, ObjectId g, element_t a, element_t b, std::size_t i) const {
  return pair_index(g, group(f)->conj(a, first(g, i)), group(g)->conj(b, second(g, i)));
}

std::size_t PairCategory::orbit_rep(ObjectId f, ObjectId g, std::size_t i) const {
  return class_rep(f, g, class_of(f, g, first(g, i), second(g, i)));
}

std::size_t PairCategory::orbit_size(ObjectId f, ObjectId g, std::size_t i) const {
  return class_size(f, g, class_of(f, g, first(g, i), second(g, i)));
}

std::vector<std::size_t> PairCategory::structural(ObjectId g, element_t x) const {
  const auto& gg = *group(g);
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < gg.order(); ++v)
    out.push_back(pair_index(g, gg.conj(x, static_cast<element_t>(v)), static_cast<element_t>(v)));
  return out;
}

std::size_t PairCategory::class_size(ObjectId f, ObjectId g, std::size_t c) const {
  const std::size_t ng = classes(g).classes.size();
  return classes(f).classes.at(c / ng).size() * classes(g).classes.at(c % ng).size();
}

std::size_t PairCategory::class_rep(ObjectId f, ObjectId g, std::size_t c) const {
  const std::size_t ng = classes(g).classes.size();
  return pair_index(g, classes(f).rep(c / ng), classes(g).rep(c % ng));
}

ClassFunction zero_class_function(const PairCategory& cat, ObjectId f, ObjectId g) {
  return {f, g, std::vector<Rational>(cat.class_count(f, g))};
}

ClassFunction constant_class_function(const PairCategory& cat, ObjectId f, ObjectId g, const Rational& c) {
  return {f, g, std::vector<Rational>(cat.class_count(f, g), c)};
}

ClassFunction class_indicator(const PairCategory& cat, ObjectId f, ObjectId g, std::size_t c) {
  auto out = zero_class_function(cat, f, g);
  out.values.at(c) = Rational(1);
  return out;
}

ClassFunction identity_class_function(const PairCategory& cat, ObjectId g) {
  auto out = zero_class_function(cat, g, g);
  const auto& cl = cat.classes(g);
  const std::size_t order = cat.group(g)->order();
  for (std::size_t c = 0; c < cl.classes.size(); ++c)
    out.values[c * cl.classes.size() + c] = Rational(static_cast<long>(order / cl.classes[c].size()));
  return out;
}

Rational evaluate(const PairCategory& cat, const ClassFunction& xi, element_t u, element_t v) {
  return xi.values.at(cat.class_of(xi.cod, xi.dom, u, v));
}

ClassFunction compose_class(const PairCategory& cat, const ClassFunction& xi, const ClassFunction& eta) {
  if (xi.dom != eta.cod) throw LinearError("cannot compose class functions across different middle groups");
  const ObjectId f = xi.cod, g = xi.dom, h = eta.dom;
  const std::size_t ng = cat.group(g)->order();
  auto out = zero_class_function(cat, f, h);
  const Rational scale(1, static_cast<long>(ng));
  for (std::size_t c = 0; c < out.values.size(); ++c) {
    const auto rep = cat.class_rep(f, h, c);
    const auto u = cat.first(h, rep), w = cat.second(h, rep);
    Rational sum;
    for (std::size_t x = 0; x < ng; ++x)
      sum += evaluate(cat, xi, u, static_cast<element_t>(x)) * evaluate(cat, eta, static_cast<element_t>(x), w);
    out.values[c] = sum * scale;
  }
  return out;
}

BarMorphism<Rational> mu(const PairCategory& cat, const ClassFunction& xi) {
  BarMorphism<Rational> out(xi.cod, xi.dom);
  const long nf = static_cast<long>(cat.group(xi.cod)->order());
  for (std::size_t c = 0; c < xi.values.size(); ++c)
    out.add(cat.class_rep(xi.cod, xi.dom, c),
            xi.values[c] * Rational(static_cast<long>(cat.class_size(xi.cod, xi.dom, c)), nf));
  return out;
}

ClassFunction mu_inverse(const PairCategory& cat, const BarMorphism<Rational>& x) {
  auto out = zero_class_function(cat, x.cod, x.dom);
  const long nf = static_cast<long>(cat.group(x.cod)->order());
  for (const auto& [k, c] : x.terms) {
    if (cat.orbit_rep(x.cod, x.dom, k) != k) throw LinearError("orbit basis key is not canonical");
    const auto cl = cat.class_of(x.cod, x.dom, cat.first(x.dom, k), cat.second(x.dom, k));
    out.values[cl] = c * Rational(nf, static_cast<long>(cat.class_size(x.cod, x.dom, cl)));
  }
  return out;
}

BarMorphism<Rational> star_bar_product_pairs(const PairCategory& cat, ObjectId f, ObjectId g, ObjectId h, std::size_t i,
                                             std::size_t j) {
  BarMorphism<Rational> out(f, h);
  const auto v = cat.second(g, i), v2 = cat.first(h, j);
  const auto& cl = cat.classes(g);
  if (cl.class_of[v] != cl.class_of[v2]) return out;
  out.add(cat.orbit_rep(f, h, cat.pair_index(h, cat.first(g, i), cat.second(h, j))),
          Rational(1, static_cast<long>(cl.of(v).size())));
  return out;
}

Morphism<Rational> compose_pairs(const PairCategory& cat, const Morphism<Rational>& x, const Morphism<Rational>& y) {
  return compose_linear(cat, x, y, trivial_cocycle<Rational>(cat));
}

nlohmann::json class_function_to_json(const PairCategory& cat, const ClassFunction& xi) {
  nlohmann::json values = nlohmann::json::array();
  for (std::size_t c = 0; c < xi.values.size(); ++c)
    if (!xi.values[c].is_zero()) values.push_back({c, to_json(xi.values[c])});
  return {{"pair", {cat.group(xi.cod)->name(), cat.group(xi.dom)->name()}}, {"values", values}};
}

static ObjectId object_named(const PairCategory& cat, const std::string& name) {
  for (ObjectId o = 0; o < cat.object_count(); ++o)
    if (cat.group(o)->name() == name) return o;
  throw LinearError("class function refers to unknown group " + name);
}

ClassFunction class_function_from_json(const PairCategory& cat, const nlohmann::json& j) {
  const auto& pair = j.at("pair");
  if (!pair.is_array() || pair.size() != 2) throw LinearError("class function \"pair\" must list two groups");
  auto out = zero_class_function(cat, object_named(cat, pair[0].get<std::string>()),
                                 object_named(cat, pair[1].get<std::string>()));
  for (const auto& entry : j.at("values")) {
    const auto c = entry.at(0).get<std::size_t>();
    if (c >= out.values.size()) throw LinearError("class index " + std::to_string(c) + " out of range");
    out.values[c] = Rational::parse(entry.at(1).get<std::string>());
  }
  return out;
}

}  // namespace fibset
