#include "fibset/subchar.hpp"

#include <algorithm>
#include <stdexcept>

namespace fibset {

namespace {

void require_middle(const Subgroup& u, const Subgroup& v) {
  const auto& pu = u.parent();
  const auto& pv = v.parent();
  if (!pu || !pv || !pu->is_product() || !pv->is_product())
    throw GroupError("star operations need subgroups of direct products");
  if (!same_group(*pu->right(), *pv->left()))
    throw GroupError("middle groups differ: " + pu->right()->name() + " vs " + pv->left()->name());
}

ElementSet k2_mask(const Subgroup& u) {
  const auto& p = *u.parent();
  ElementSet out;
  for (element_t x : u.members())
    if (p.first(x) == kIdentity) out.insert(p.second(x));
  return out;
}

ElementSet k1_mask(const Subgroup& v) {
  const auto& p = *v.parent();
  ElementSet out;
  for (element_t x : v.members())
    if (p.second(x) == kIdentity) out.insert(p.first(x));
  return out;
}

// Members of V bucketed by first coordinate: by_middle[g] = {(h, position in V)}.
std::vector<std::vector<std::pair<element_t, std::size_t>>> bucket_by_first(const Subgroup& v) {
  const auto& p = *v.parent();
  std::vector<std::vector<std::pair<element_t, std::size_t>>> out(p.left()->order());
  const auto& m = v.members();
  for (std::size_t i = 0; i < m.size(); ++i) out[p.first(m[i])].emplace_back(p.second(m[i]), i);
  return out;
}

ElementSet star_mask(const Subgroup& u, const Subgroup& v, const FiniteGroup& fh) {
  const auto& pu = *u.parent();
  const auto by_middle = bucket_by_first(v);
  ElementSet out;
  for (element_t x : u.members()) {
    const element_t f = pu.first(x);
    for (const auto& [h, pos] : by_middle[pu.second(x)]) out.insert(fh.pack(f, h));
  }
  return out;
}

bool characters_match(const SubCharacter& phi, const SubCharacter& psi, const AbelianFiber& a) {
  const auto& pu = *phi.subgroup.parent();
  const auto& pv = *psi.subgroup.parent();
  const ElementSet cap = k2_mask(phi.subgroup) & k1_mask(psi.subgroup);
  bool ok = true;
  cap.for_each([&](element_t g) {
    if (a.add(phi.character.at(pu.pack(kIdentity, g)), psi.character.at(pv.pack(g, kIdentity))) != 0) ok = false;
  });
  return ok;
}

// Values of mu * nu on W = U * V, checking that every witness g agrees.
std::vector<fiber_t> composite_values(const SubCharacter& phi, const SubCharacter& psi, const Subgroup& w,
                                      const AbelianFiber& a) {
  const auto& pu = *phi.subgroup.parent();
  const auto& fh = *w.parent();
  const auto by_middle = bucket_by_first(psi.subgroup);
  std::vector<fiber_t> values(w.order(), 0);
  std::vector<char> set(w.order(), 0);
  const auto& um = phi.subgroup.members();
  for (std::size_t i = 0; i < um.size(); ++i) {
    const element_t f = pu.first(um[i]);
    for (const auto& [h, pos] : by_middle[pu.second(um[i])]) {
      const auto wpos = w.position(fh.pack(f, h));
      const fiber_t val = a.add(phi.character.values[i], psi.character.values[pos]);
      if (!set[wpos]) {
        set[wpos] = 1;
        values[wpos] = val;
      } else if (values[wpos] != val) {
        throw std::logic_error("mu * nu depends on the witness g; the pair does not match");
      }
    }
  }
  return values;
}

}  // namespace

bool operator<(const SubCharacter& a, const SubCharacter& b) {
  if (a.subgroup.members() != b.subgroup.members()) return a.subgroup.members() < b.subgroup.members();
  return a.character.values < b.character.values;
}

Subgroup gamma_cap(const Subgroup& u, const Subgroup& v) {
  require_middle(u, v);
  return Subgroup(u.parent()->right(), k2_mask(u) & k1_mask(v));
}

Subgroup star(const Subgroup& u, const Subgroup& v) {
  require_middle(u, v);
  auto fh = direct_product(u.parent()->left(), v.parent()->right());
  Subgroup w(fh, star_mask(u, v, *fh));
  if (!is_subgroup(*fh, w.mask())) throw std::logic_error("star product is not closed");
  return w;
}

bool matches(const SubCharacter& phi, const SubCharacter& psi, const AbelianFiber& a) {
  require_middle(phi.subgroup, psi.subgroup);
  return characters_match(phi, psi, a);
}

SubCharacter star_subchar(const SubCharacter& phi, const SubCharacter& psi, const AbelianFiber& a) {
  if (!matches(phi, psi, a)) throw CharacterError("subcharacters do not match; the composite is undefined");
  Subgroup w = star(phi.subgroup, psi.subgroup);
  auto values = composite_values(phi, psi, w, a);
  return SubCharacter{phi.left, psi.right, w, ACharacter{w, std::move(values)}};
}

SubCharacter make_subchar(const Subgroup& u, ACharacter mu) {
  const auto& p = u.parent();
  if (!p || !p->is_product()) throw GroupError("a subcharacter lives on a subgroup of a direct product");
  if (!(mu.domain == u)) throw CharacterError("character domain differs from the subgroup");
  return SubCharacter{p->left(), p->right(), u, std::move(mu)};
}

SubCharacter twisted_diagonal(const GroupPtr& g, element_t x) {
  if (x >= g->order()) throw GroupError("element " + std::to_string(x) + " is not in " + g->name());
  auto gg = direct_product(g, g);
  ElementSet s;
  for (std::size_t y = 0; y < g->order(); ++y) {
    const auto ey = static_cast<element_t>(y);
    s.insert(gg->pack(g->conj(x, ey), ey));
  }
  Subgroup d(gg, s);
  return SubCharacter{g, g, d, char_trivial(d)};
}

SubCharacter identity_subchar(const GroupPtr& g) { return twisted_diagonal(g, kIdentity); }

SubCharacter subchar_conjugate(element_t x, const SubCharacter& phi) {
  ACharacter c = char_conjugate(x, phi.character);
  Subgroup u = c.domain;
  return SubCharacter{phi.left, phi.right, std::move(u), std::move(c)};
}

OrbitKey orbit_canonical(const SubCharacter& phi) {
  const auto& p = *phi.subgroup.parent();
  SubCharacter best = phi;
  for (std::size_t x = 1; x < p.order(); ++x) {
    SubCharacter c = subchar_conjugate(static_cast<element_t>(x), phi);
    if (c < best) best = std::move(c);
  }
  return OrbitKey{std::move(best)};
}

std::vector<OrbitKey> enumerate_basis(const GroupPtr& f, const GroupPtr& g, const AbelianFiber& a,
                                      std::size_t order_cap) {
  SubcharCatalog cat(f, g, a, order_cap);
  std::vector<OrbitKey> out;
  for (auto id : cat.orbit_reps()) out.push_back(OrbitKey{cat.at(id)});
  return out;
}

nlohmann::json subchar_to_json(const SubCharacter& s, const AbelianFiber& a) {
  return {{"pair", {s.left->name(), s.right->name()}},
          {"subgroup", s.subgroup.members()},
          {"character", character_to_json(s.character, a)}};
}

SubCharacter subchar_from_json(const nlohmann::json& j, const GroupPtr& f, const GroupPtr& g, const AbelianFiber& a) {
  auto fg = direct_product(f, g);
  ElementSet s;
  for (const auto& e : j.at("subgroup")) {
    const auto x = e.get<element_t>();
    if (x >= fg->order()) throw GroupError("subgroup member " + std::to_string(x) + " is out of range");
    s.insert(x);
  }
  if (!is_subgroup(*fg, s)) throw GroupError("member list is not a subgroup of " + fg->name());
  Subgroup u(fg, s);
  ACharacter c = j.contains("character") ? character_from_json(j.at("character"), u, a) : char_trivial(u);
  return SubCharacter{f, g, u, std::move(c)};
}

// ---------------------------------------------------------------------------

SubcharCatalog::SubcharCatalog(GroupPtr f, GroupPtr g, AbelianFiber a, std::size_t order_cap)
    : left_(std::move(f)), right_(std::move(g)) {
  product_ = direct_product(left_, right_);
  subgroups_ = all_subgroups(product_, order_cap);
  for (std::size_t k = 0; k < subgroups_.size(); ++k) {
    proj_.push_back(projections_and_kernels(subgroups_[k]));
    subgroup_index_.emplace(subgroups_[k].members(), k);
  }
  for (std::size_t k = 0; k < subgroups_.size(); ++k) {
    for (auto& c : hom_enumerate(subgroups_[k], a, order_cap)) {
      item_index_.emplace(std::make_pair(k, c.values), items_.size());
      items_.push_back(SubCharacter{left_, right_, subgroups_[k], std::move(c)});
      subgroup_of_.push_back(k);
    }
  }
  const std::size_t n = items_.size();
  const std::size_t order = product_->order();
  action_.assign(order * n, 0);
  for (std::size_t x = 0; x < order; ++x) {
    const auto ex = static_cast<element_t>(x);
    for (std::size_t id = 0; id < n; ++id) action_[x * n + id] = index_of(subchar_conjugate(ex, items_[id]));
  }
  orbit_rep_.assign(n, 0);
  orbit_size_.assign(n, 0);
  for (std::size_t id = 0; id < n; ++id) {
    std::size_t rep = id;
    for (std::size_t x = 0; x < order; ++x) rep = std::min(rep, action_[x * n + id]);
    orbit_rep_[id] = rep;
    ++orbit_size_[rep];
    if (rep == id) reps_.push_back(id);
  }
}

std::optional<std::size_t> SubcharCatalog::find_subgroup(const ElementSet& mask) const {
  auto it = subgroup_index_.find(mask.to_vector());
  if (it == subgroup_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> SubcharCatalog::find(const SubCharacter& s) const {
  auto k = subgroup_index_.find(s.subgroup.members());
  if (k == subgroup_index_.end()) return std::nullopt;
  auto it = item_index_.find(std::make_pair(k->second, s.character.values));
  if (it == item_index_.end()) return std::nullopt;
  return it->second;
}

std::size_t SubcharCatalog::index_of(const SubCharacter& s) const {
  auto id = find(s);
  if (!id) throw std::logic_error("subcharacter missing from the catalog of " + product_->name());
  return *id;
}

// ---------------------------------------------------------------------------

SubcharCategory::SubcharCategory(std::vector<GroupPtr> groups, AbelianFiber fiber, std::size_t order_cap)
    : groups_(std::move(groups)), fiber_(std::move(fiber)), order_cap_(order_cap) {
  if (groups_.empty()) throw GroupError("the object set must be non-empty");
}

const SubcharCatalog& SubcharCategory::catalog(ObjectId f, ObjectId g) const {
  std::lock_guard lock(mutex_);
  auto& slot = catalogs_[{f, g}];
  if (!slot) slot = std::make_unique<SubcharCatalog>(groups_.at(f), groups_.at(g), fiber_, order_cap_);
  return *slot;
}

const SubcharCategory::Table& SubcharCategory::table(ObjectId f, ObjectId g, ObjectId h) const {
  std::lock_guard lock(mutex_);
  auto& slot = tables_[{f, g, h}];
  if (slot) return *slot;
  const auto& left = catalog(f, g);
  const auto& right = catalog(g, h);
  const auto& out = catalog(f, h);
  auto t = std::make_unique<Table>();
  t->cols = right.size();
  t->entries.resize(left.size() * right.size());

  // subgroup-level data, shared by all characters on the same pair
  struct StarData {
    std::size_t w;
    std::uint32_t gamma;
  };
  std::vector<StarData> star_cache(left.subgroup_count() * right.subgroup_count());
  for (std::size_t ku = 0; ku < left.subgroup_count(); ++ku)
    for (std::size_t kv = 0; kv < right.subgroup_count(); ++kv) {
      const auto& u = left.subgroup(ku);
      const auto& v = right.subgroup(kv);
      const auto w = out.find_subgroup(star_mask(u, v, *out.product()));
      if (!w) throw std::logic_error("star product is not a subgroup");
      const auto gamma = (k2_mask(u) & k1_mask(v)).size();
      star_cache[ku * right.subgroup_count() + kv] = {*w, static_cast<std::uint32_t>(gamma)};
    }

  for (std::size_t i = 0; i < left.size(); ++i)
    for (std::size_t j = 0; j < right.size(); ++j) {
      const auto& sd = star_cache[left.subgroup_of(i) * right.subgroup_count() + right.subgroup_of(j)];
      Composite c{-1, sd.gamma};
      const auto& phi = left.at(i);
      const auto& psi = right.at(j);
      if (characters_match(phi, psi, fiber_)) {
        const auto& w = out.subgroup(sd.w);
        auto values = composite_values(phi, psi, w, fiber_);
        SubCharacter comp{phi.left, psi.right, w, ACharacter{w, std::move(values)}};
        c.id = static_cast<std::int32_t>(out.index_of(comp));
      }
      t->entries[i * t->cols + j] = c;
    }
  slot = std::move(t);
  return *slot;
}

std::optional<std::size_t> SubcharCategory::composite(ObjectId f, ObjectId g, ObjectId h, std::size_t i,
                                                      std::size_t j) const {
  const auto& t = table(f, g, h);
  const auto id = t.entries[i * t.cols + j].id;
  if (id < 0) return std::nullopt;
  return static_cast<std::size_t>(id);
}

std::size_t SubcharCategory::gamma_order(ObjectId f, ObjectId g, ObjectId h, std::size_t i, std::size_t j) const {
  const auto& t = table(f, g, h);
  return t.entries[i * t.cols + j].gamma;
}

std::size_t SubcharCategory::act(ObjectId f, ObjectId g, element_t a, element_t b, std::size_t i) const {
  const auto& c = catalog(f, g);
  return c.act(c.product()->pack(a, b), i);
}

std::vector<std::size_t> SubcharCategory::structural(ObjectId g, element_t x) const {
  return {catalog(g, g).index_of(twisted_diagonal(groups_.at(g), x))};
}

std::vector<CosetTerm> SubcharCategory::compute_coset_terms(ObjectId f, ObjectId g, ObjectId h, std::size_t i,
                                                            std::size_t j, std::mt19937_64* rng) const {
  const auto& left = catalog(f, g);
  const auto& right = catalog(g, h);
  const auto& out = catalog(f, h);
  const auto& gp = *groups_.at(g);
  const Subgroup& p2u = left.projections(left.subgroup_of(i)).p2;
  const Subgroup& p1v = right.projections(right.subgroup_of(j)).p1;
  const auto cosets = double_coset_reps(p2u, p1v);
  std::vector<CosetTerm> terms;
  for (std::size_t c = 0; c < cosets.reps.size(); ++c) {
    element_t rep = cosets.reps[c];
    if (rng) {
      std::vector<element_t> members;
      ElementSet seen;
      for (element_t a : p2u.members())
        for (element_t b : p1v.members()) seen.insert(gp.mul(gp.mul(a, rep), b));
      members = seen.to_vector();
      rep = members[std::uniform_int_distribution<std::size_t>(0, members.size() - 1)(*rng)];
    }
    const std::size_t jg = right.act(right.product()->pack(rep, kIdentity), j);
    const auto comp = composite(f, g, h, i, jg);
    if (!comp) continue;
    terms.push_back(CosetTerm{rep, cosets.sizes[c], gamma_order(f, g, h, i, jg), *comp, out.orbit_rep(*comp)});
  }
  return terms;
}

const std::vector<CosetTerm>& SubcharCategory::coset_terms(ObjectId f, ObjectId g, ObjectId h, std::size_t i,
                                                           std::size_t j) const {
  std::lock_guard lock(mutex_);
  auto& slot = coset_memo_[{f, g, h, i, j}];
  if (!slot) slot = std::make_unique<std::vector<CosetTerm>>(compute_coset_terms(f, g, h, i, j, nullptr));
  return *slot;
}

std::vector<CosetTerm> SubcharCategory::coset_terms_with(ObjectId f, ObjectId g, ObjectId h, std::size_t i,
                                                         std::size_t j, std::mt19937_64& rng) const {
  return compute_coset_terms(f, g, h, i, j, &rng);
}

}  // namespace fibset
