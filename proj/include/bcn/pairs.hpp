#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bcn/group.hpp"

namespace bcn {

/// G-conjugacy class of a pair (H, Y) with H abelian and nontrivial,
/// H <= Y <= Z_G(H).
struct PairClass {
  std::uint32_t index = 0;
  std::uint32_t h_class = 0;
  Subgroup h, y;
  /// N_G(H) n N_G(Y)
  Subgroup stabilizer;
  /// [G : stabilizer]
  std::size_t orbit_size = 0;

  std::string label() const;
};

/// Conjugacy class of a nontrivial abelian subgroup.
struct AbelianClass {
  Subgroup rep;
  Subgroup normalizer;
  Subgroup centralizer;
  std::size_t orbit_size = 0;
  std::vector<std::uint32_t> pair_classes;
  /// Y with rep <= Y <= centralizer -> (pair class, element of the normalizer taking Y to the class representative)
  std::unordered_map<ElementSet, std::pair<std::uint32_t, Elem>, ElementSetHash> y_lookup;
};

struct Located {
  std::uint32_t pair_class;
  /// x with x H x^-1 and x Y x^-1 the class representatives
  Elem conjugator;
};

class PairClassification {
 public:
  explicit PairClassification(GroupPtr g);

  const GroupPtr& group() const { return g_; }
  const std::vector<PairClass>& classes() const { return classes_; }
  const std::vector<AbelianClass>& abelian_classes() const { return h_classes_; }
  /// Every abelian subgroup of G (trivial included), canonical order.
  const std::vector<Subgroup>& abelian_subgroups() const { return abelian_; }

  /// Class of an abelian subgroup and x with x H x^-1 = rep; nullopt for H = 1.
  std::optional<std::pair<std::uint32_t, Elem>> locate_abelian(const ElementSet& h) const;
  /// nullopt when H is trivial; throws std::invalid_argument on an invalid pair.
  std::optional<Located> locate(const Subgroup& h, const Subgroup& y) const;

 private:
  GroupPtr g_;
  std::vector<Subgroup> abelian_;
  std::vector<AbelianClass> h_classes_;
  std::vector<PairClass> classes_;
  std::unordered_map<ElementSet, std::pair<std::uint32_t, Elem>, ElementSetHash> h_lookup_;
};

std::vector<PairClass> pair_classes(const GroupPtr& g);

/// x S x^-1 as an element set.
ElementSet conjugate_set(const PermutationGroup& g, const std::vector<Elem>& elements, Elem x);

}  // namespace bcn
