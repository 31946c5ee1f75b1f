#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "bcn/group.hpp"

namespace bcn {

/// Index of a character: mixed-radix encoding of its coordinates against the
/// invariant factors (first coordinate fastest). 0 is the trivial character.
using CharId = std::uint32_t;

class AbelianStructure;
using StructurePtr = std::shared_ptr<const AbelianStructure>;

/// Invariant-factor decomposition of an abelian subgroup H, with coordinates
/// for elements and additive arithmetic on the dual H^v.
class AbelianStructure {
 public:
  /// Throws std::invalid_argument if h is not abelian.
  static StructurePtr of(const Subgroup& h);

  const Subgroup& subgroup() const { return h_; }
  std::size_t order() const { return h_.order(); }
  std::size_t rank() const { return d_.size(); }
  const std::vector<std::uint32_t>& invariant_factors() const { return d_; }
  std::uint32_t exponent() const { return exponent_; }
  /// Elements of the ambient group generating the cyclic factors.
  const std::vector<Elem>& basis() const { return basis_; }

  /// Coordinates of h (an element of H) against basis().
  std::vector<std::uint32_t> coordinates(Elem h) const;
  Elem element_at(std::span<const std::int64_t> coords) const;
  /// Local position (index into subgroup().elements()) of the element with given code.
  std::uint32_t element_code(std::size_t local) const { return elem_code_[local]; }

  // characters
  std::size_t character_count() const { return h_.order(); }
  std::vector<std::uint32_t> char_coords(CharId c) const;
  CharId char_from_coords(std::span<const std::int64_t> coords) const;
  CharId add(CharId a, CharId b) const { return add_[static_cast<std::size_t>(a) * order() + b]; }
  CharId neg(CharId a) const { return neg_[a]; }
  CharId sub(CharId a, CharId b) const { return add(a, neg(b)); }
  CharId scale(CharId a, std::int64_t m) const;
  std::uint32_t char_order(CharId a) const { return char_order_[a]; }
  /// b(h) as a residue mod exponent(); h given by local index.
  std::uint32_t evaluate_local(CharId b, std::size_t local) const;
  std::uint32_t evaluate(CharId b, Elem h) const;
  /// Kernel of b as a bitmask over local element indices.
  const std::vector<std::uint64_t>& kernel_mask(CharId b) const { return kernel_[b]; }
  Subgroup kernel(CharId b) const;

  /// Does the list generate H^v (intersection of kernels trivial)?
  bool generates(std::span<const CharId> chars) const;
  /// Is b a multiple of c?
  bool in_cyclic_span(CharId b, CharId c) const;

  /// Pullback of every character of `from` along f: this -> from (f maps
  /// elements of this subgroup into from's subgroup, homomorphically).
  /// Result[c] is the character c o f of this structure.
  std::vector<CharId> pullback_from(const AbelianStructure& from, const std::function<Elem(Elem)>& f) const;

 private:
  AbelianStructure() = default;
  void build_tables();

  Subgroup h_;
  std::vector<std::uint32_t> d_;
  std::uint32_t exponent_ = 1;
  std::vector<Elem> basis_;
  std::vector<std::uint32_t> coords_;     // local element -> coords (rank per element)
  std::vector<std::uint32_t> elem_code_;  // local element -> mixed radix code
  std::vector<std::uint32_t> code_elem_;  // code -> local element
  std::vector<std::uint32_t> scale_;      // exponent / d_i
  std::vector<CharId> add_;
  std::vector<CharId> neg_;
  std::vector<std::uint32_t> char_order_;
  std::vector<std::vector<std::uint64_t>> kernel_;
};

/// Value type for a character of a specific abelian subgroup.
class Character {
 public:
  Character() = default;
  Character(StructurePtr owner, CharId id);
  Character(StructurePtr owner, std::span<const std::int64_t> coords);
  static Character trivial(StructurePtr owner) { return Character(std::move(owner), CharId{0}); }

  const StructurePtr& owner() const { return owner_; }
  CharId id() const { return id_; }
  std::vector<std::uint32_t> coords() const { return owner_->char_coords(id_); }

  Character operator+(const Character& o) const;
  Character operator-(const Character& o) const;
  Character operator-() const;
  std::uint32_t order() const { return owner_->char_order(id_); }
  bool is_trivial() const { return id_ == 0; }
  /// Value on h in Z/exponent.
  std::uint32_t operator()(Elem h) const { return owner_->evaluate(id_, h); }

  bool operator==(const Character& o) const;

 private:
  void same_owner(const Character& o) const;
  StructurePtr owner_;
  CharId id_ = 0;
};

Character restrict_character(const Character& b, const StructurePtr& sub);
/// b^g on gHg^-1, b^g(x) = b(g^-1 x g). `target` may be supplied when the
/// structure of gHg^-1 is already built.
Character conjugate_character(const Character& b, Elem g, StructurePtr target = nullptr);
Subgroup kernel_subgroup(const Character& b);
Subgroup kernel_of_difference(const Character& b1, const Character& b2);
bool generates_dual(std::span<const Character> beta, const StructurePtr& h);
bool in_cyclic_span(const Character& b, const Character& c);

/// All subgroups of an abelian H, canonical order (trivial first, H last).
std::vector<Subgroup> subgroup_lattice(const Subgroup& h);

/// Moebius function of the subgroup lattice of an abelian H, by the
/// recursion mu(K,K) = 1, mu(K,L) = -sum_{K <= M < L} mu(K,M), 0 unless K <= L.
class MoebiusTable {
 public:
  explicit MoebiusTable(const Subgroup& h);

  const std::vector<Subgroup>& lattice() const { return lattice_; }
  std::size_t index_of(const Subgroup& k) const;
  std::int64_t mu(std::size_t a, std::size_t b) const { return mu_[a * lattice_.size() + b]; }
  std::int64_t mu(const Subgroup& a, const Subgroup& b) const { return mu(index_of(a), index_of(b)); }
  bool leq(std::size_t a, std::size_t b) const { return leq_[a * lattice_.size() + b]; }

 private:
  std::vector<Subgroup> lattice_;
  std::vector<std::int64_t> mu_;
  std::vector<bool> leq_;
};

/// mu(K, H) in closed form: zero unless H/K has squarefree exponent, else the
/// product over primes of (-1)^r p^(r(r-1)/2), r the p-rank of H/K.
std::int64_t moebius_to_top(const Subgroup& k, const Subgroup& h);

}  // namespace bcn
