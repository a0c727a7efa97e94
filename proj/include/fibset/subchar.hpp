#pragma once

// The A-subcharacter partial category: pairs (U, mu) with U <= F x G and
// mu : U -> A, composed by the star product when they match.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "fibset/fiber.hpp"
#include "fibset/group.hpp"

namespace fibset {

struct SubCharacter {
  GroupPtr left;   // F
  GroupPtr right;  // G
  Subgroup subgroup;
  ACharacter character;

  const Subgroup& domain() const { return subgroup; }
  friend bool operator==(const SubCharacter& a, const SubCharacter& b) {
    return a.subgroup == b.subgroup && a.character.values == b.character.values;
  }
  // Member list lexicographic, then value table lexicographic.
  friend bool operator<(const SubCharacter& a, const SubCharacter& b);
};

// Canonical representative of an F x G orbit.
struct OrbitKey {
  SubCharacter rep;
  friend bool operator==(const OrbitKey& a, const OrbitKey& b) { return a.rep == b.rep; }
};

// {g : 1 x g in U and g x 1 in V} = k2(U) ∩ k1(V)
Subgroup gamma_cap(const Subgroup& u, const Subgroup& v);
// {f x h : exists g with f x g in U, g x h in V}
Subgroup star(const Subgroup& u, const Subgroup& v);

bool matches(const SubCharacter& phi, const SubCharacter& psi, const AbelianFiber& a);
// Throws CharacterError when the pair does not match.
SubCharacter star_subchar(const SubCharacter& phi, const SubCharacter& psi, const AbelianFiber& a);

SubCharacter make_subchar(const Subgroup& u, ACharacter mu);
// (Delta(G, g, G), 1) with Delta(G, g, G) = {g y g^-1 x y}
SubCharacter twisted_diagonal(const GroupPtr& g, element_t x);
SubCharacter identity_subchar(const GroupPtr& g);
// Action of x in F x G.
SubCharacter subchar_conjugate(element_t x, const SubCharacter& phi);

OrbitKey orbit_canonical(const SubCharacter& phi);
std::vector<OrbitKey> enumerate_basis(const GroupPtr& f, const GroupPtr& g, const AbelianFiber& a,
                                      std::size_t order_cap = kDefaultOrderCap);

nlohmann::json subchar_to_json(const SubCharacter& s, const AbelianFiber& a);
SubCharacter subchar_from_json(const nlohmann::json& j, const GroupPtr& f, const GroupPtr& g, const AbelianFiber& a);

// ---------------------------------------------------------------------------
// Indexed view used by the exhaustive computations.

// Every A-subcharacter of F x G, indexed in canonical order (subgroup order,
// then character value table), with the F x G action and orbit data.
class SubcharCatalog {
 public:
  SubcharCatalog(GroupPtr f, GroupPtr g, AbelianFiber a, std::size_t order_cap);

  const GroupPtr& left() const { return left_; }
  const GroupPtr& right() const { return right_; }
  const GroupPtr& product() const { return product_; }

  std::size_t size() const { return items_.size(); }
  const SubCharacter& at(std::size_t id) const { return items_[id]; }
  std::optional<std::size_t> find(const SubCharacter& s) const;
  std::size_t index_of(const SubCharacter& s) const;

  std::size_t subgroup_count() const { return subgroups_.size(); }
  const Subgroup& subgroup(std::size_t k) const { return subgroups_[k]; }
  const ProjectionsAndKernels& projections(std::size_t k) const { return proj_[k]; }
  std::size_t subgroup_of(std::size_t id) const { return subgroup_of_[id]; }
  std::optional<std::size_t> find_subgroup(const ElementSet& mask) const;

  // id of x (phi) for x in F x G
  std::size_t act(element_t x, std::size_t id) const { return action_[x * items_.size() + id]; }
  std::size_t orbit_rep(std::size_t id) const { return orbit_rep_[id]; }
  std::size_t orbit_size(std::size_t id) const { return orbit_size_[orbit_rep_[id]]; }
  // canonical representatives, increasing
  const std::vector<std::size_t>& orbit_reps() const { return reps_; }

 private:
  GroupPtr left_, right_, product_;
  std::vector<Subgroup> subgroups_;
  std::vector<ProjectionsAndKernels> proj_;
  std::map<std::vector<element_t>, std::size_t> subgroup_index_;
  std::vector<SubCharacter> items_;
  std::vector<std::size_t> subgroup_of_;
  std::map<std::pair<std::size_t, std::vector<fiber_t>>, std::size_t> item_index_;
  std::vector<std::size_t> action_;
  std::vector<std::size_t> orbit_rep_;
  std::vector<std::size_t> orbit_size_;
  std::vector<std::size_t> reps_;
};

using ObjectId = std::size_t;

// One term of the double-coset formula: g a double coset representative of
// p2(U) \ G / p1(V) with (U, mu) ~ g(V, nu).
struct CosetTerm {
  element_t g;
  std::size_t coset_size;     // |p2(U) g p1(V)|
  std::size_t gamma_order;    // |Γ∩(U, gV)|
  std::size_t composite;      // id of (U, mu) * g(V, nu) in the (F, H) catalog
  std::size_t composite_orbit;
};

// The partial category S^A restricted to a finite list of groups. Catalogs and
// composite tables are built on first use and cached; the caches are guarded so
// a shared instance may be queried concurrently.
class SubcharCategory {
 public:
  SubcharCategory(std::vector<GroupPtr> groups, AbelianFiber fiber, std::size_t order_cap = kDefaultOrderCap);

  std::size_t object_count() const { return groups_.size(); }
  const GroupPtr& group(ObjectId o) const { return groups_.at(o); }
  const std::vector<GroupPtr>& groups() const { return groups_; }
  const AbelianFiber& fiber() const { return fiber_; }
  std::size_t order_cap() const { return order_cap_; }

  const SubcharCatalog& catalog(ObjectId f, ObjectId g) const;

  // PartialCategory interface.
  std::size_t basis_size(ObjectId f, ObjectId g) const { return catalog(f, g).size(); }
  std::optional<std::size_t> composite(ObjectId f, ObjectId g, ObjectId h, std::size_t i, std::size_t j) const;
  // ^{a x b} phi_i
  std::size_t act(ObjectId f, ObjectId g, element_t a, element_t b, std::size_t i) const;
  std::size_t orbit_rep(ObjectId f, ObjectId g, std::size_t i) const { return catalog(f, g).orbit_rep(i); }
  std::size_t orbit_size(ObjectId f, ObjectId g, std::size_t i) const { return catalog(f, g).orbit_size(i); }
  const std::vector<std::size_t>& orbit_reps(ObjectId f, ObjectId g) const { return catalog(f, g).orbit_reps(); }
  // sigma_G(x) = s_{Delta(G, x, G), 1}
  std::vector<std::size_t> structural(ObjectId g, element_t x) const;

  std::size_t gamma_order(ObjectId f, ObjectId g, ObjectId h, std::size_t i, std::size_t j) const;
  std::size_t subgroup_order(ObjectId f, ObjectId g, std::size_t i) const {
    return catalog(f, g).at(i).subgroup.order();
  }

  // Memoized double-coset data for (U_i, mu_i) and (V_j, nu_j).
  const std::vector<CosetTerm>& coset_terms(ObjectId f, ObjectId g, ObjectId h, std::size_t i, std::size_t j) const;
  // Same formula, recomputed with a random element of each double coset as
  // representative (no memo).
  std::vector<CosetTerm> coset_terms_with(ObjectId f, ObjectId g, ObjectId h, std::size_t i, std::size_t j,
                                          std::mt19937_64& rng) const;

 private:
  struct Composite {
    std::int32_t id;  // -1 when unmatched
    std::uint32_t gamma;
  };
  struct Table {
    std::size_t cols = 0;
    std::vector<Composite> entries;
  };
  const Table& table(ObjectId f, ObjectId g, ObjectId h) const;
  std::vector<CosetTerm> compute_coset_terms(ObjectId f, ObjectId g, ObjectId h, std::size_t i, std::size_t j,
                                             std::mt19937_64* rng) const;

  std::vector<GroupPtr> groups_;
  AbelianFiber fiber_;
  std::size_t order_cap_;

  mutable std::recursive_mutex mutex_;
  mutable std::map<std::pair<ObjectId, ObjectId>, std::unique_ptr<SubcharCatalog>> catalogs_;
  mutable std::map<std::tuple<ObjectId, ObjectId, ObjectId>, std::unique_ptr<Table>> tables_;
  mutable std::map<std::tuple<ObjectId, ObjectId, ObjectId, std::size_t, std::size_t>, std::unique_ptr<std::vector<CosetTerm>>>
      coset_memo_;
};

}  // namespace fibset
