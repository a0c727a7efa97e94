#pragma once

// The abelian fiber group A and A-characters (homomorphisms T -> A) of
// subgroups.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "fibset/group.hpp"

namespace fibset {

using fiber_t = std::uint32_t;  // mixed-radix code of a tuple, 0 is the identity

class AbelianFiber {
 public:
  static constexpr std::size_t kMaxOrder = 256;

  AbelianFiber() : AbelianFiber(std::vector<std::uint32_t>{}) {}
  explicit AbelianFiber(std::vector<std::uint32_t> cyclic_orders);

  // "trivial", "z2", "z2xz3", "cyclic:4", or a comma list "2,2".
  static AbelianFiber parse(const std::string& spec);
  static AbelianFiber from_json(const nlohmann::json& j);

  const std::vector<std::uint32_t>& cyclic_orders() const { return orders_; }
  std::size_t order() const { return order_; }
  bool is_trivial() const { return order_ == 1; }

  fiber_t add(fiber_t a, fiber_t b) const { return add_[a * order_ + b]; }
  fiber_t neg(fiber_t a) const { return neg_[a]; }
  fiber_t scale(fiber_t a, std::uint64_t k) const;

  std::vector<std::uint32_t> decode(fiber_t a) const;
  fiber_t encode(const std::vector<std::uint32_t>& tuple) const;
  // Multiplicative rendering: "1" or products of generator powers "z1^k".
  std::string render(fiber_t a) const;
  std::string name() const;
  nlohmann::json to_json() const { return {{"cyclic_orders", orders_}}; }

  friend bool operator==(const AbelianFiber& a, const AbelianFiber& b) { return a.orders_ == b.orders_; }

 private:
  std::vector<std::uint32_t> orders_;
  std::size_t order_ = 1;
  std::vector<fiber_t> add_;
  std::vector<fiber_t> neg_;
};

struct ACharacter {
  Subgroup domain;
  std::vector<fiber_t> values;  // aligned with domain.members()

  fiber_t at(element_t t) const;
  bool is_trivial() const;
  friend bool operator==(const ACharacter& a, const ACharacter& b) {
    return a.domain == b.domain && a.values == b.values;
  }
};

class CharacterError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// All homomorphisms T -> A ordered by value table, cross-checked against
// |Hom(T/[T,T], A)|.
std::vector<ACharacter> hom_enumerate(const Subgroup& t, const AbelianFiber& a,
                                      std::size_t order_cap = kDefaultOrderCap);

// |Hom(T/[T,T], A)| from the abelianization: prod over cyclic factors Z/m of A
// of #{t : t^m in [T,T]} / |[T,T]|.
std::size_t abelianization_hom_count(const Subgroup& t, const AbelianFiber& a);

bool is_homomorphism(const ACharacter& c, const AbelianFiber& a);

// (x tau)(x t x^-1) = tau(t)
ACharacter char_conjugate(element_t x, const ACharacter& tau);
ACharacter char_trivial(const Subgroup& t);

nlohmann::json character_to_json(const ACharacter& c, const AbelianFiber& a);
ACharacter character_from_json(const nlohmann::json& j, const Subgroup& domain, const AbelianFiber& a);

}  // namespace fibset
