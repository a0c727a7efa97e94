#include "fibset/group.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace fibset {

namespace {

std::string witness(std::initializer_list<std::size_t> idx) {
  std::ostringstream os;
  os << "(";
  bool first = true;
  for (auto i : idx) {
    os << (first ? "" : ", ") << i;
    first = false;
  }
  os << ")";
  return os.str();
}

void validate_table(const std::string& name, std::size_t n, const std::vector<element_t>& t) {
  if (n == 0) throw GroupError(name + ": a group needs at least one element");
  if (t.size() != n * n) throw GroupError(name + ": table is not " + std::to_string(n) + "x" + std::to_string(n));
  for (std::size_t i = 0; i < n * n; ++i)
    if (t[i] >= n) throw GroupError(name + ": closure violated, entry out of range at " + witness({i / n, i % n}));
  for (std::size_t j = 0; j < n; ++j) {
    if (t[j] != j) throw GroupError(name + ": identity law violated at (0, " + std::to_string(j) + ")");
    if (t[j * n] != j) throw GroupError(name + ": identity law violated at (" + std::to_string(j) + ", 0)");
  }
  std::vector<char> seen(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t j = 0; j < n; ++j) {
      if (seen[t[i * n + j]]) throw GroupError(name + ": cancellation violated, row " + std::to_string(i) + " repeats an entry at column " + std::to_string(j));
      seen[t[i * n + j]] = 1;
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t j = 0; j < n; ++j) {
      if (seen[t[j * n + i]]) throw GroupError(name + ": cancellation violated, column " + std::to_string(i) + " repeats an entry at row " + std::to_string(j));
      seen[t[j * n + i]] = 1;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t ij = t[i * n + j];
      for (std::size_t k = 0; k < n; ++k)
        if (t[ij * n + k] != t[i * n + t[j * n + k]])
          throw GroupError(name + ": associativity violated at " + witness({i, j, k}));
    }
}

std::vector<element_t> table_from(std::size_t n, auto&& product) {
  std::vector<element_t> t(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i * n + j] = static_cast<element_t>(product(i, j));
  return t;
}

std::string power_label(const std::string& base, std::size_t k) {
  if (k == 0) return "";
  if (k == 1) return base;
  return base + "^" + std::to_string(k);
}

GroupPtr make_cyclic(std::size_t n) {
  if (n == 0) throw GroupError("cyclic:0 is not a group");
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = i == 0 ? "1" : power_label("a", i);
  return std::make_shared<const FiniteGroup>("C" + std::to_string(n), std::move(labels),
                                             table_from(n, [n](std::size_t i, std::size_t j) { return (i + j) % n; }));
}

GroupPtr make_klein4() {
  return std::make_shared<const FiniteGroup>("V4", std::vector<std::string>{"1", "a", "b", "ab"},
                                             table_from(4, [](std::size_t i, std::size_t j) { return i ^ j; }));
}

// r^i s^j has index i + n*j.
GroupPtr make_dihedral(std::size_t order) {
  if (order < 2 || order % 2 != 0) throw GroupError("dihedral:" + std::to_string(order) + " needs an even order >= 2");
  const std::size_t n = order / 2;
  std::vector<std::string> labels(order);
  for (std::size_t j = 0; j < 2; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      std::string l = power_label("r", i) + (j ? "s" : "");
      labels[i + n * j] = l.empty() ? "1" : l;
    }
  auto t = table_from(order, [n](std::size_t x, std::size_t y) {
    const std::size_t i = x % n, j = x / n, k = y % n, l = y / n;
    const std::size_t rot = j == 0 ? (i + k) % n : (i + n - k) % n;
    return rot + n * ((j + l) % 2);
  });
  return std::make_shared<const FiniteGroup>("D" + std::to_string(order), std::move(labels), std::move(t));
}

std::string cycle_label(const std::vector<std::size_t>& p) {
  std::vector<char> done(p.size());
  std::string out;
  for (std::size_t s = 0; s < p.size(); ++s) {
    if (done[s] || p[s] == s) continue;
    out += "(";
    std::size_t x = s;
    bool first = true;
    while (!done[x]) {
      done[x] = 1;
      out += (first ? "" : " ") + std::to_string(x + 1);
      first = false;
      x = p[x];
    }
    out += ")";
  }
  return out.empty() ? "1" : out;
}

// Permutations in lexicographic order of one-line notation; (p*q)(x) = p(q(x)).
GroupPtr make_symmetric(std::size_t n) {
  if (n == 0 || n > 5) throw GroupError("symmetric:" + std::to_string(n) + " is outside the supported range 1..5");
  std::vector<std::vector<std::size_t>> perms;
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<std::size_t>, std::size_t> index;
  for (std::size_t i = 0; i < perms.size(); ++i) index[perms[i]] = i;
  std::vector<std::string> labels;
  for (const auto& q : perms) labels.push_back(cycle_label(q));
  auto t = table_from(perms.size(), [&](std::size_t a, std::size_t b) {
    std::vector<std::size_t> c(n);
    for (std::size_t x = 0; x < n; ++x) c[x] = perms[a][perms[b][x]];
    return index.at(c);
  });
  return std::make_shared<const FiniteGroup>("S" + std::to_string(n), std::move(labels), std::move(t));
}

// Order: 1, -1, i, -i, j, -j, k, -k.
GroupPtr make_quaternion8() {
  // unit index u in {0:1, 1:i, 2:j, 3:k}; element = 2*u + sign
  static constexpr int kUnitMul[4][4][2] = {
      {{0, 0}, {1, 0}, {2, 0}, {3, 0}},
      {{1, 0}, {0, 1}, {3, 0}, {2, 1}},
      {{2, 0}, {3, 1}, {0, 1}, {1, 0}},
      {{3, 0}, {2, 0}, {1, 1}, {0, 1}},
  };
  auto t = table_from(8, [](std::size_t x, std::size_t y) {
    const auto& r = kUnitMul[x / 2][y / 2];
    const std::size_t sign = (x % 2 + y % 2 + static_cast<std::size_t>(r[1])) % 2;
    return static_cast<std::size_t>(r[0]) * 2 + sign;
  });
  return std::make_shared<const FiniteGroup>("Q8", std::vector<std::string>{"1", "-1", "i", "-i", "j", "-j", "k", "-k"},
                                             std::move(t));
}

std::size_t parse_count(std::string_view s, std::string_view whole) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw GroupError("unrecognized group spec '" + std::string(whole) + "'");
  return static_cast<std::size_t>(std::stoul(std::string(s)));
}

GroupPtr build_atom(std::string_view spec) {
  std::string s(spec);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  auto with_prefix = [&](std::string_view long_name, std::string_view short_name, std::string_view& rest) {
    std::string_view v(s);
    if (v.starts_with(long_name)) {
      rest = v.substr(long_name.size());
      return true;
    }
    if (v.size() > short_name.size() && v.starts_with(short_name) && std::isdigit(static_cast<unsigned char>(v[short_name.size()]))) {
      rest = v.substr(short_name.size());
      return true;
    }
    return false;
  };
  if (s == "klein4" || s == "v4") return make_klein4();
  if (s == "quaternion8" || s == "q8") return make_quaternion8();
  std::string_view rest;
  if (with_prefix("cyclic:", "c", rest) || with_prefix("cyclic:", "z", rest)) return make_cyclic(parse_count(rest, spec));
  if (with_prefix("dihedral:", "d", rest)) return make_dihedral(parse_count(rest, spec));
  if (with_prefix("symmetric:", "s", rest)) return make_symmetric(parse_count(rest, spec));
  throw GroupError("unrecognized group spec '" + std::string(spec) + "'");
}

}  // namespace

FiniteGroup::FiniteGroup(std::string name, std::vector<std::string> labels, std::vector<element_t> table)
    : name_(std::move(name)), labels_(std::move(labels)), table_(std::move(table)) {
  order_ = labels_.size();
  validate_table(name_, order_, table_);
  inverse_.resize(order_);
  for (std::size_t i = 0; i < order_; ++i)
    for (std::size_t j = 0; j < order_; ++j)
      if (table_[i * order_ + j] == kIdentity) inverse_[i] = static_cast<element_t>(j);
}

element_t FiniteGroup::element_order(element_t a) const {
  element_t k = 1;
  for (element_t x = a; x != kIdentity; x = mul(x, a)) ++k;
  return k;
}

bool FiniteGroup::is_abelian() const {
  for (std::size_t i = 0; i < order_; ++i)
    for (std::size_t j = i + 1; j < order_; ++j)
      if (table_[i * order_ + j] != table_[j * order_ + i]) return false;
  return true;
}

nlohmann::json FiniteGroup::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < order_; ++i)
    rows.push_back(std::vector<element_t>(table_.begin() + static_cast<std::ptrdiff_t>(i * order_),
                                          table_.begin() + static_cast<std::ptrdiff_t>((i + 1) * order_)));
  return {{"name", name_}, {"elements", labels_}, {"table", rows}};
}

bool same_group(const FiniteGroup& a, const FiniteGroup& b) {
  return &a == &b || (a.order() == b.order() && a.table() == b.table());
}

GroupPtr build_group(std::string_view spec) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= spec.size(); ++i) {
    if (i == spec.size() || spec[i] == 'x' || spec[i] == 'X' || spec[i] == '*') {
      parts.push_back(spec.substr(start, i - start));
      start = i + 1;
    }
  }
  GroupPtr g = build_atom(parts.front());
  for (std::size_t i = 1; i < parts.size(); ++i) g = direct_product(g, build_atom(parts[i]));
  return g;
}

GroupPtr group_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("elements") || !doc.contains("table"))
    throw GroupError("group document needs \"elements\" and \"table\"");
  auto labels = doc.at("elements").get<std::vector<std::string>>();
  const std::size_t n = labels.size();
  const auto& rows = doc.at("table");
  if (!rows.is_array() || rows.size() != n) throw GroupError("group table must have one row per element");
  std::vector<element_t> table;
  table.reserve(n * n);
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != n) throw GroupError("group table rows must have one entry per element");
    for (const auto& v : row) {
      const auto x = v.get<long long>();
      if (x < 0) throw GroupError("group table entries must be non-negative indices");
      table.push_back(static_cast<element_t>(x));
    }
  }
  return std::make_shared<const FiniteGroup>(doc.value("name", std::string("G")), std::move(labels), std::move(table));
}

GroupPtr direct_product(const GroupPtr& f, const GroupPtr& g) {
  static std::mutex mutex;
  static std::map<std::pair<const FiniteGroup*, const FiniteGroup*>, GroupPtr> cache;
  std::lock_guard lock(mutex);
  const auto key = std::make_pair(f.get(), g.get());
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  const std::size_t nf = f->order(), ng = g->order();
  auto wrap = [](const FiniteGroup& x) { return x.is_product() ? "(" + x.name() + ")" : x.name(); };
  std::vector<std::string> labels(nf * ng);
  for (std::size_t a = 0; a < nf; ++a)
    for (std::size_t b = 0; b < ng; ++b) labels[a * ng + b] = f->label(static_cast<element_t>(a)) + "x" + g->label(static_cast<element_t>(b));
  auto table = table_from(nf * ng, [&](std::size_t x, std::size_t y) {
    return f->mul(static_cast<element_t>(x / ng), static_cast<element_t>(y / ng)) * ng +
           g->mul(static_cast<element_t>(x % ng), static_cast<element_t>(y % ng));
  });
  auto product = std::make_shared<FiniteGroup>(wrap(*f) + "x" + wrap(*g), std::move(labels), std::move(table));
  product->left_ = f;
  product->right_ = g;
  product->right_order_ = ng;
  GroupPtr out = product;
  cache.emplace(key, out);
  return out;
}

// ---------------------------------------------------------------------------

Subgroup::Subgroup(GroupPtr parent, const ElementSet& members)
    : parent_(std::move(parent)), members_(members.to_vector()), mask_(members) {}

std::size_t Subgroup::position(element_t e) const {
  auto it = std::lower_bound(members_.begin(), members_.end(), e);
  if (it == members_.end() || *it != e) return npos;
  return static_cast<std::size_t>(it - members_.begin());
}

bool operator<(const Subgroup& a, const Subgroup& b) {
  if (a.order() != b.order()) return a.order() < b.order();
  return a.members_ < b.members_;
}

Subgroup trivial_subgroup(const GroupPtr& g) {
  ElementSet s;
  s.insert(kIdentity);
  return Subgroup(g, s);
}

Subgroup whole_group(const GroupPtr& g) {
  ElementSet s;
  for (std::size_t i = 0; i < g->order(); ++i) s.insert(static_cast<element_t>(i));
  return Subgroup(g, s);
}

bool is_subgroup(const FiniteGroup& g, const ElementSet& s) {
  if (!s.contains(kIdentity)) return false;
  bool ok = true;
  s.for_each([&](element_t a) {
    if (!s.contains(g.inv(a))) ok = false;
    s.for_each([&](element_t b) {
      if (!s.contains(g.mul(a, b))) ok = false;
    });
  });
  return ok;
}

namespace {

// Closure under right multiplication by the generators; in a finite group this
// already yields inverses.
ElementSet generate(const FiniteGroup& g, const std::vector<element_t>& gens) {
  ElementSet out;
  out.insert(kIdentity);
  std::vector<element_t> queue{kIdentity};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const element_t a = queue[head];
    for (element_t s : gens) {
      const element_t b = g.mul(a, s);
      if (!out.contains(b)) {
        out.insert(b);
        queue.push_back(b);
      }
    }
  }
  return out;
}

void check_kernel_order(const FiniteGroup& g) {
  if (g.order() > kMaxKernelOrder)
    throw GroupError(g.name() + ": order " + std::to_string(g.order()) + " exceeds the kernel limit " +
                     std::to_string(kMaxKernelOrder));
}

}  // namespace

ElementSet closure_mask(const FiniteGroup& g, const ElementSet& seed) {
  check_kernel_order(g);
  return generate(g, seed.to_vector());
}

Subgroup closure(const GroupPtr& g, const std::vector<element_t>& seed) {
  check_kernel_order(*g);
  for (auto e : seed)
    if (e >= g->order()) throw GroupError("closure seed index " + std::to_string(e) + " is not an element of " + g->name());
  return Subgroup(g, generate(*g, seed));
}

std::vector<Subgroup> all_subgroups(const GroupPtr& g, std::size_t order_cap) {
  if (g->order() > order_cap)
    throw CapError(g->name() + " has order " + std::to_string(g->order()) + ", above the configured cap of " +
                   std::to_string(order_cap));
  check_kernel_order(*g);
  const std::size_t n = g->order();
  struct Entry {
    ElementSet mask;
    std::vector<element_t> gens;
  };
  std::unordered_set<ElementSet, ElementSetHash> seen;
  std::vector<Entry> found;
  auto add = [&](Entry e) {
    if (seen.insert(e.mask).second) {
      found.push_back(std::move(e));
      return true;
    }
    return false;
  };
  add({generate(*g, {}), {}});
  for (std::size_t x = 1; x < n; ++x) {
    std::vector<element_t> gens{static_cast<element_t>(x)};
    add({generate(*g, gens), gens});
  }
  std::size_t frontier_begin = 0;
  while (frontier_begin < found.size()) {
    const std::size_t frontier_end = found.size();
    for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
      for (std::size_t x = 1; x < n; ++x) {
        if (found[i].mask.contains(static_cast<element_t>(x))) continue;
        auto gens = found[i].gens;
        gens.push_back(static_cast<element_t>(x));
        auto mask = generate(*g, gens);
        if (!seen.contains(mask)) add({mask, std::move(gens)});
      }
    }
    frontier_begin = frontier_end;
  }
  std::vector<Subgroup> out;
  out.reserve(found.size());
  for (const auto& e : found) out.emplace_back(g, e.mask);
  std::sort(out.begin(), out.end());
  return out;
}

ProjectionsAndKernels projections_and_kernels(const Subgroup& u) {
  const auto& p = u.parent();
  if (!p || !p->is_product()) throw GroupError("projections need a subgroup of a direct product");
  ElementSet p1, p2, k1, k2;
  for (element_t x : u.members()) {
    const element_t a = p->first(x), b = p->second(x);
    p1.insert(a);
    p2.insert(b);
    if (b == kIdentity) k1.insert(a);
    if (a == kIdentity) k2.insert(b);
  }
  ProjectionsAndKernels out{Subgroup(p->left(), p1), Subgroup(p->right(), p2), Subgroup(p->left(), k1),
                            Subgroup(p->right(), k2)};
  if (u.order() != out.p1.order() * out.k2.order() || u.order() != out.p2.order() * out.k1.order())
    throw GroupError("projection/kernel orders are inconsistent; the member list is not a subgroup");
  return out;
}

Subgroup conjugate_subgroup(element_t x, const Subgroup& u) {
  const auto& g = *u.parent();
  ElementSet s;
  for (element_t a : u.members()) s.insert(g.conj(x, a));
  return Subgroup(u.parent(), s);
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  if (!same_group(*a.parent(), *b.parent())) throw GroupError("intersection of subgroups of different groups");
  return Subgroup(a.parent(), a.mask() & b.mask());
}

DoubleCosets double_coset_reps(const Subgroup& p, const Subgroup& q) {
  if (!same_group(*p.parent(), *q.parent())) throw GroupError("double cosets need subgroups of the same group");
  const auto& g = *p.parent();
  DoubleCosets out;
  ElementSet visited;
  for (std::size_t x = 0; x < g.order(); ++x) {
    const auto gx = static_cast<element_t>(x);
    if (visited.contains(gx)) continue;
    ElementSet coset;
    for (element_t a : p.members()) {
      const element_t ag = g.mul(a, gx);
      for (element_t b : q.members()) coset.insert(g.mul(ag, b));
    }
    visited |= coset;
    out.reps.push_back(gx);
    out.sizes.push_back(coset.size());
  }
  return out;
}

std::size_t set_product_size(const Subgroup& p, const Subgroup& q) {
  if (!same_group(*p.parent(), *q.parent())) throw GroupError("set product of subgroups of different groups");
  return p.order() * q.order() / (p.mask() & q.mask()).size();
}

ConjugacyClasses conjugacy_classes(const FiniteGroup& g) {
  const std::size_t n = g.order();
  ConjugacyClasses out;
  out.class_of.assign(n, static_cast<std::size_t>(-1));
  for (std::size_t a = 0; a < n; ++a) {
    if (out.class_of[a] != static_cast<std::size_t>(-1)) continue;
    std::vector<element_t> cls;
    for (std::size_t x = 0; x < n; ++x) {
      const element_t c = g.conj(static_cast<element_t>(x), static_cast<element_t>(a));
      if (out.class_of[c] == static_cast<std::size_t>(-1)) {
        out.class_of[c] = out.classes.size();
        cls.push_back(c);
      }
    }
    std::sort(cls.begin(), cls.end());
    out.classes.push_back(std::move(cls));
  }
  return out;
}

}  // namespace fibset
