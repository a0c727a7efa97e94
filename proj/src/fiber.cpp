#include "fibset/fiber.hpp"

#include <algorithm>
#include <sstream>

namespace fibset {

AbelianFiber::AbelianFiber(std::vector<std::uint32_t> cyclic_orders) : orders_(std::move(cyclic_orders)) {
  std::erase(orders_, 1U);
  for (auto m : orders_) {
    if (m == 0) throw CharacterError("fiber factor orders must be positive");
    order_ *= m;
    if (order_ > kMaxOrder) throw CharacterError("fiber order exceeds " + std::to_string(kMaxOrder));
  }
  add_.resize(order_ * order_);
  neg_.resize(order_);
  for (fiber_t a = 0; a < order_; ++a) {
    const auto ta = decode(a);
    std::vector<std::uint32_t> n(ta.size());
    for (std::size_t i = 0; i < ta.size(); ++i) n[i] = (orders_[i] - ta[i]) % orders_[i];
    neg_[a] = encode(n);
    for (fiber_t b = 0; b < order_; ++b) {
      const auto tb = decode(b);
      std::vector<std::uint32_t> s(ta.size());
      for (std::size_t i = 0; i < ta.size(); ++i) s[i] = (ta[i] + tb[i]) % orders_[i];
      add_[a * order_ + b] = encode(s);
    }
  }
}

AbelianFiber AbelianFiber::parse(const std::string& spec) {
  std::string s;
  for (char c : spec) s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (s.empty() || s == "trivial" || s == "1" || s == "none") return AbelianFiber();
  std::vector<std::uint32_t> orders;
  std::string token;
  auto flush = [&] {
    std::string t = token;
    token.clear();
    for (const char* prefix : {"cyclic:", "z/", "z", "c"})
      if (t.starts_with(prefix)) {
        t = t.substr(std::string(prefix).size());
        break;
      }
    if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw CharacterError("unrecognized fiber spec '" + spec + "'");
    orders.push_back(static_cast<std::uint32_t>(std::stoul(t)));
  };
  for (char c : s) {
    if (c == 'x' || c == '*' || c == ',') {
      flush();
    } else {
      token += c;
    }
  }
  flush();
  return AbelianFiber(std::move(orders));
}

AbelianFiber AbelianFiber::from_json(const nlohmann::json& j) {
  if (j.is_string()) return parse(j.get<std::string>());
  return AbelianFiber(j.at("cyclic_orders").get<std::vector<std::uint32_t>>());
}

fiber_t AbelianFiber::scale(fiber_t a, std::uint64_t k) const {
  fiber_t out = 0;
  for (std::uint64_t i = 0; i < k % (order_ == 0 ? 1 : order_); ++i) out = add(out, a);
  return out;
}

std::vector<std::uint32_t> AbelianFiber::decode(fiber_t a) const {
  std::vector<std::uint32_t> t(orders_.size());
  for (std::size_t i = 0; i < orders_.size(); ++i) {
    t[i] = a % orders_[i];
    a /= orders_[i];
  }
  return t;
}

fiber_t AbelianFiber::encode(const std::vector<std::uint32_t>& tuple) const {
  if (tuple.size() != orders_.size()) throw CharacterError("fiber tuple has the wrong length");
  fiber_t out = 0;
  for (std::size_t i = orders_.size(); i-- > 0;) {
    if (tuple[i] >= orders_[i]) throw CharacterError("fiber tuple entry out of range");
    out = out * orders_[i] + tuple[i];
  }
  return out;
}

std::string AbelianFiber::render(fiber_t a) const {
  const auto t = decode(a);
  std::string out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += "z" + std::to_string(i + 1);
    if (t[i] != 1) out += "^" + std::to_string(t[i]);
  }
  return out.empty() ? "1" : out;
}

std::string AbelianFiber::name() const {
  if (orders_.empty()) return "trivial";
  std::string out;
  for (auto m : orders_) out += (out.empty() ? "Z" : "xZ") + std::to_string(m);
  return out;
}

// ---------------------------------------------------------------------------

fiber_t ACharacter::at(element_t t) const {
  const auto pos = domain.position(t);
  if (pos == Subgroup::npos) throw CharacterError("element " + std::to_string(t) + " is outside the character's domain");
  return values[pos];
}

bool ACharacter::is_trivial() const {
  return std::all_of(values.begin(), values.end(), [](fiber_t v) { return v == 0; });
}

bool is_homomorphism(const ACharacter& c, const AbelianFiber& a) {
  const auto& g = *c.domain.parent();
  const auto& m = c.domain.members();
  if (c.values.size() != m.size() || c.at(kIdentity) != 0) return false;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) {
      const auto pos = c.domain.position(g.mul(m[i], m[j]));
      if (pos == Subgroup::npos || c.values[pos] != a.add(c.values[i], c.values[j])) return false;
    }
  return true;
}

std::size_t abelianization_hom_count(const Subgroup& t, const AbelianFiber& a) {
  const auto& g = *t.parent();
  ElementSet commutators;
  for (element_t x : t.members())
    for (element_t y : t.members()) commutators.insert(g.mul(g.mul(x, y), g.mul(g.inv(x), g.inv(y))));
  const ElementSet derived = closure_mask(g, commutators);
  const std::size_t d = derived.size();
  std::size_t count = 1;
  for (auto m : a.cyclic_orders()) {
    std::size_t torsion = 0;
    for (element_t x : t.members()) {
      element_t p = kIdentity;
      for (std::uint32_t i = 0; i < m; ++i) p = g.mul(p, x);
      if (derived.contains(p)) ++torsion;
    }
    count *= torsion / d;
  }
  return count;
}

std::vector<ACharacter> hom_enumerate(const Subgroup& t, const AbelianFiber& a, std::size_t order_cap) {
  if (t.order() > order_cap)
    throw CapError("subgroup of order " + std::to_string(t.order()) + " exceeds the configured cap of " +
                   std::to_string(order_cap));
  const auto& g = *t.parent();
  // greedy generating set
  std::vector<element_t> gens;
  ElementSet span;
  span.insert(kIdentity);
  for (element_t x : t.members()) {
    if (span.contains(x)) continue;
    gens.push_back(x);
    ElementSet seed = span;
    seed.insert(x);
    span = closure_mask(g, seed);
  }

  std::vector<ACharacter> out;
  std::vector<fiber_t> images(gens.size(), 0);
  const std::size_t n = t.order();
  std::vector<fiber_t> values(n);
  std::vector<char> assigned(n);

  auto try_extend = [&]() -> bool {
    std::fill(assigned.begin(), assigned.end(), 0);
    values[0] = 0;
    assigned[0] = 1;
    std::vector<element_t> queue{kIdentity};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const element_t x = queue[head];
      const fiber_t vx = values[t.position(x)];
      for (std::size_t s = 0; s < gens.size(); ++s) {
        const element_t y = g.mul(x, gens[s]);
        const auto py = t.position(y);
        const fiber_t vy = a.add(vx, images[s]);
        if (!assigned[py]) {
          assigned[py] = 1;
          values[py] = vy;
          queue.push_back(y);
        } else if (values[py] != vy) {
          return false;
        }
      }
    }
    return true;
  };

  // odometer over gen images
  while (true) {
    if (try_extend()) {
      ACharacter c{t, values};
      if (!is_homomorphism(c, a)) throw CharacterError("internal: extended map failed the homomorphism check");
      out.push_back(std::move(c));
    }
    std::size_t i = 0;
    while (i < images.size() && ++images[i] == a.order()) images[i++] = 0;
    if (i == images.size()) break;
  }
  std::sort(out.begin(), out.end(), [](const ACharacter& x, const ACharacter& y) { return x.values < y.values; });
  if (out.size() != abelianization_hom_count(t, a))
    throw CharacterError("internal: enumerated " + std::to_string(out.size()) +
                         " characters but the abelianization predicts " + std::to_string(abelianization_hom_count(t, a)));
  return out;
}

ACharacter char_conjugate(element_t x, const ACharacter& tau) {
  const auto& g = *tau.domain.parent();
  ACharacter out{conjugate_subgroup(x, tau.domain), std::vector<fiber_t>(tau.values.size())};
  const auto& m = tau.domain.members();
  for (std::size_t i = 0; i < m.size(); ++i) out.values[out.domain.position(g.conj(x, m[i]))] = tau.values[i];
  return out;
}

ACharacter char_trivial(const Subgroup& t) { return ACharacter{t, std::vector<fiber_t>(t.order(), 0)}; }

nlohmann::json character_to_json(const ACharacter& c, const AbelianFiber& a) {
  nlohmann::json out = nlohmann::json::array();
  for (std::size_t i = 0; i < c.values.size(); ++i) out.push_back({c.domain.members()[i], a.decode(c.values[i])});
  return out;
}

ACharacter character_from_json(const nlohmann::json& j, const Subgroup& domain, const AbelianFiber& a) {
  ACharacter c = char_trivial(domain);
  std::vector<char> seen(domain.order());
  for (const auto& entry : j) {
    const auto e = entry.at(0).get<element_t>();
    const auto pos = domain.position(e);
    if (pos == Subgroup::npos) throw CharacterError("character entry " + std::to_string(e) + " is outside the subgroup");
    c.values[pos] = a.encode(entry.at(1).get<std::vector<std::uint32_t>>());
    seen[pos] = 1;
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) throw CharacterError("character does not cover the subgroup");
  if (!is_homomorphism(c, a)) throw CharacterError("character values do not define a homomorphism");
  return c;
}

}  // namespace fibset
