#pragma once

// Finite groups as explicit multiplication tables, subgroups, and the
// combinatorial primitives used by every later module.

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fibset/element_set.hpp"

namespace fibset {

// Raised when a table violates the group axioms or an operation receives
// groups it cannot combine.
class GroupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computation was refused because a group exceeds the configured order cap.
class CapError : public GroupError {
 public:
  using GroupError::GroupError;
};

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

class FiniteGroup {
 public:
  // `table` is row-major, table[i * order + j] = i * j. Validates all axioms
  // (identity at index 0, Latin square, associativity) and throws GroupError
  // naming the first violated axiom with witness indices.
  FiniteGroup(std::string name, std::vector<std::string> labels, std::vector<element_t> table);

  const std::string& name() const { return name_; }
  std::size_t order() const { return order_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(element_t e) const { return labels_[e]; }

  element_t mul(element_t a, element_t b) const { return table_[a * order_ + b]; }
  element_t inv(element_t a) const { return inverse_[a]; }
  // x a x^-1
  element_t conj(element_t x, element_t a) const { return mul(mul(x, a), inverse_[x]); }
  element_t element_order(element_t a) const;
  bool is_abelian() const;

  const std::vector<element_t>& table() const { return table_; }

  // Product structure (pair_index); populated by direct_product only.
  bool is_product() const { return left_ != nullptr; }
  const GroupPtr& left() const { return left_; }
  const GroupPtr& right() const { return right_; }
  // index of f x g is f * |right| + g
  element_t pack(element_t f, element_t g) const { return f * static_cast<element_t>(right_order_) + g; }
  element_t first(element_t e) const { return e / static_cast<element_t>(right_order_); }
  element_t second(element_t e) const { return e % static_cast<element_t>(right_order_); }

  nlohmann::json to_json() const;

 private:
  friend GroupPtr direct_product(const GroupPtr& f, const GroupPtr& g);

  std::string name_;
  std::size_t order_ = 0;
  std::vector<std::string> labels_;
  std::vector<element_t> table_;
  std::vector<element_t> inverse_;
  GroupPtr left_;
  GroupPtr right_;
  std::size_t right_order_ = 1;
};

// Pointer identity or identical tables.
bool same_group(const FiniteGroup& a, const FiniteGroup& b);

// Preset strings: cyclic:n / cN, klein4 / v4, dihedral:2n / dN, symmetric:n / sN,
// quaternion8 / q8, and products joined with 'x' or '*' (left-associative),
// e.g. "c2xc2" or "cyclic:2*symmetric:3".
GroupPtr build_group(std::string_view spec);
// {"name": string, "elements": [string], "table": [[int]]}
GroupPtr group_from_json(const nlohmann::json& doc);

// Memoized: the same factor pair always yields the same shared instance, so
// subgroups of F x G built by different operations share a parent pointer.
GroupPtr direct_product(const GroupPtr& f, const GroupPtr& g);

class Subgroup {
 public:
  Subgroup() = default;
  // Members need not be sorted; closure is not checked here (see closure()).
  Subgroup(GroupPtr parent, const ElementSet& members);

  const GroupPtr& parent() const { return parent_; }
  const std::vector<element_t>& members() const { return members_; }
  const ElementSet& mask() const { return mask_; }
  std::size_t order() const { return members_.size(); }
  bool contains(element_t e) const { return mask_.contains(e); }
  // Position of e in members(), or npos.
  std::size_t position(element_t e) const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.members_ == b.members_; }
  // Size first, then lexicographic member list.
  friend bool operator<(const Subgroup& a, const Subgroup& b);

 private:
  GroupPtr parent_;
  std::vector<element_t> members_;
  ElementSet mask_;
};

Subgroup trivial_subgroup(const GroupPtr& g);
Subgroup whole_group(const GroupPtr& g);
bool is_subgroup(const FiniteGroup& g, const ElementSet& s);

Subgroup closure(const GroupPtr& g, const std::vector<element_t>& seed);
ElementSet closure_mask(const FiniteGroup& g, const ElementSet& seed);

constexpr std::size_t kDefaultOrderCap = 64;

// Every subgroup, ordered by size then lexicographic member list.
std::vector<Subgroup> all_subgroups(const GroupPtr& g, std::size_t order_cap = kDefaultOrderCap);

struct ProjectionsAndKernels {
  Subgroup p1, p2, k1, k2;
};
ProjectionsAndKernels projections_and_kernels(const Subgroup& u);

Subgroup conjugate_subgroup(element_t x, const Subgroup& u);
Subgroup intersect(const Subgroup& a, const Subgroup& b);

struct DoubleCosets {
  std::vector<element_t> reps;   // minimum index of each coset, increasing
  std::vector<std::size_t> sizes;
};
DoubleCosets double_coset_reps(const Subgroup& p, const Subgroup& q);

// |PQ| as a set.
std::size_t set_product_size(const Subgroup& p, const Subgroup& q);

struct ConjugacyClasses {
  std::vector<std::vector<element_t>> classes;  // ordered by representative
  std::vector<std::size_t> class_of;           // element -> class position
  const std::vector<element_t>& of(element_t e) const { return classes[class_of[e]]; }
  element_t rep(std::size_t c) const { return classes[c].front(); }
};
ConjugacyClasses conjugacy_classes(const FiniteGroup& g);

}  // namespace fibset
