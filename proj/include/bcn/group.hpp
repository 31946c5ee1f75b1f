#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "bcn/permutation.hpp"

namespace bcn {

/// Index of a group element in the deterministic element order of its group.
using Elem = std::uint32_t;

/// Fixed-universe bitset over element indices.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::size_t universe);

  std::size_t universe() const { return universe_; }
  void insert(Elem e) { words_[e >> 6] |= (std::uint64_t{1} << (e & 63)); }
  bool contains(Elem e) const { return (words_[e >> 6] >> (e & 63)) & 1u; }
  std::size_t count() const;
  bool subset_of(const ElementSet& other) const;
  ElementSet intersect(const ElementSet& other) const;
  std::vector<Elem> to_vector() const;
  std::size_t hash() const;
  const std::vector<std::uint64_t>& words() const { return words_; }

  bool operator==(const ElementSet&) const = default;

 private:
  std::size_t universe_ = 0;
  std::vector<std::uint64_t> words_;
};

struct ElementSetHash {
  std::size_t operator()(const ElementSet& s) const noexcept { return s.hash(); }
};

/// Caps that keep enumerations bounded. Stretch targets raise these explicitly.
struct GroupLimits {
  std::size_t max_order = 1'000'000;
  std::size_t max_degree = 4096;
  /// Groups up to this order get a full Cayley table.
  std::size_t table_order = 2048;
};

class PermutationGroup;
using GroupPtr = std::shared_ptr<const PermutationGroup>;

/// Finite permutation group with all elements enumerated. Elements are sorted
/// by their image tuples, so the identity is element 0 and indexing is
/// reproducible across runs.
class PermutationGroup {
 public:
  static GroupPtr generate(std::vector<Permutation> generators, const GroupLimits& limits = {},
                           std::size_t degree = 0);

  std::size_t degree() const { return degree_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<Permutation>& generators() const { return generators_; }
  const std::vector<Elem>& generator_elements() const { return generator_elements_; }
  const Permutation& element(Elem e) const { return elements_[e]; }
  const GroupLimits& limits() const { return limits_; }

  std::optional<Elem> find(const Permutation& p) const;
  Elem index_of(const Permutation& p) const;

  static constexpr Elem identity() { return 0; }
  Elem mul(Elem a, Elem b) const {
    if (!table_.empty()) return table_[static_cast<std::size_t>(a) * elements_.size() + b];
    return mul_slow(a, b);
  }
  Elem inv(Elem a) const { return inverse_[a]; }
  /// g x g^-1
  Elem conj(Elem g, Elem x) const { return mul(mul(g, x), inverse_[g]); }
  std::size_t element_order(Elem e) const { return element_order_[e]; }
  std::size_t max_element_order() const;
  bool is_abelian() const;
  bool commute(Elem a, Elem b) const { return mul(a, b) == mul(b, a); }

 private:
  PermutationGroup() = default;
  Elem mul_slow(Elem a, Elem b) const;

  std::size_t degree_ = 0;
  GroupLimits limits_;
  std::vector<Permutation> generators_;
  std::vector<Elem> generator_elements_;
  std::vector<Permutation> elements_;
  std::unordered_map<Permutation, Elem> index_;
  std::vector<Elem> table_;
  std::vector<Elem> inverse_;
  std::vector<std::uint32_t> element_order_;
};

/// Subgroup of an enumerated permutation group, stored as a sorted element
/// list plus a membership bitset and a generating witness list.
class Subgroup {
 public:
  Subgroup() = default;

  static Subgroup generated_by(GroupPtr parent, std::span<const Elem> generators);
  /// Verifies closure; throws std::invalid_argument otherwise.
  static Subgroup from_elements(GroupPtr parent, const ElementSet& members);
  /// No closure check; for sets known to be subgroups (centralizers, kernels).
  static Subgroup from_trusted(GroupPtr parent, const ElementSet& members);
  static Subgroup trivial(GroupPtr parent);
  static Subgroup whole(GroupPtr parent);

  const GroupPtr& parent() const { return parent_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<Elem>& elements() const { return elements_; }
  const ElementSet& members() const { return members_; }
  const std::vector<Elem>& generators() const { return generators_; }
  bool contains(Elem e) const { return members_.contains(e); }
  bool is_trivial() const { return elements_.size() == 1; }
  bool is_abelian() const;
  bool is_subgroup_of(const Subgroup& other) const;
  /// Position of `e` in elements(), or npos.
  std::size_t local_index(Elem e) const;

  /// g H g^-1
  Subgroup conjugate(Elem g) const;
  Subgroup intersect(const Subgroup& other) const;
  /// Subgroup generated by this one and `x`.
  Subgroup extended_by(Elem x) const;

  std::vector<Permutation> generator_permutations() const;
  std::string to_string() const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.members_ == b.members_; }
  /// Canonical order: by order, then by sorted element list.
  friend bool operator<(const Subgroup& a, const Subgroup& b);

 private:
  GroupPtr parent_;
  std::vector<Elem> elements_;
  ElementSet members_;
  std::vector<Elem> generators_;
};

struct SubgroupHash {
  std::size_t operator()(const Subgroup& s) const noexcept { return s.members().hash(); }
};

Subgroup centralizer(const Subgroup& ambient, const Subgroup& h);
Subgroup centralizer(const GroupPtr& g, const Subgroup& h);
Subgroup normalizer(const Subgroup& ambient, const Subgroup& h);
Subgroup normalizer(const GroupPtr& g, const Subgroup& h);

/// Distinct cyclic subgroups of `ambient`, canonical order.
std::vector<Subgroup> cyclic_subgroups(const Subgroup& ambient);

/// Every abelian subgroup (trivial one included) exactly once, canonical order.
std::vector<Subgroup> abelian_subgroups(const Subgroup& ambient);
std::vector<Subgroup> abelian_subgroups(const GroupPtr& g);

/// Every subgroup Y with h <= Y <= c, canonical order. Y need not be abelian.
std::vector<Subgroup> subgroups_between(const Subgroup& h, const Subgroup& c);

/// G1 x G2 acting on the disjoint union of the point sets.
struct DirectProduct {
  GroupPtr group;
  GroupPtr left;
  GroupPtr right;
  std::vector<Elem> embed_left;   // G1 element -> product element
  std::vector<Elem> embed_right;  // G2 element -> product element
  std::vector<Elem> project_left;   // product element -> G1 element
  std::vector<Elem> project_right;  // product element -> G2 element

  /// {(g,g)}; requires both factors to be the same group.
  Subgroup diagonal() const;
};

DirectProduct direct_product(const GroupPtr& g1, const GroupPtr& g2);

}  // namespace bcn
