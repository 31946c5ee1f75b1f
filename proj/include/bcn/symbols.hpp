#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "bcn/abelian.hpp"
#include "bcn/pairs.hpp"
#include "bcn/zlattice.hpp"

namespace bcn {

enum class Flavor { BC, BCPrime, Tuple };
std::string flavor_name(Flavor f);

/// Canonical symbol: pair class index plus a sorted multiset of characters of
/// the class representative H. For tuples (Flavor::Tuple) zeros are allowed.
struct Symbol {
  std::uint32_t pair_class = 0;
  std::vector<CharId> beta;

  auto operator<=>(const Symbol&) const = default;
  bool operator==(const Symbol&) const = default;
};

struct SymbolHash {
  std::size_t operator()(const Symbol& s) const noexcept;
};

/// Integer combination of canonical symbols; zero coefficients never stored.
class FormalSum {
 public:
  FormalSum() = default;
  explicit FormalSum(const Symbol& s, std::int64_t c = 1) { add(s, c); }

  void add(const Symbol& s, std::int64_t c);
  void add(const FormalSum& o, std::int64_t scale = 1);
  FormalSum operator+(const FormalSum& o) const;
  FormalSum operator-(const FormalSum& o) const;
  FormalSum scaled(std::int64_t c) const;
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::map<Symbol, std::int64_t>& terms() const { return terms_; }
  bool operator==(const FormalSum&) const = default;

 private:
  std::map<Symbol, std::int64_t> terms_;
};

/// Per pair class data used by canonicalization, relations and the maps Psi/Phi.
struct ClassData {
  struct Link {
    Subgroup k;                  // K <= H, nontrivial
    std::uint32_t target = 0;    // class of (K, Y)
    std::vector<CharId> map;     // character of H -> character of the target representative
    std::int64_t mu = 0;         // mu(K, H)
  };
  StructurePtr structure;
  /// Character permutations induced by the stabilizer (a group; identity first).
  std::vector<std::vector<CharId>> automorphisms;
  /// Character permutations of the stabilizer's generators.
  std::vector<std::vector<CharId>> generator_automorphisms;
  std::vector<Link> links;  // all nontrivial K <= H, canonical order, H last
  std::vector<std::int64_t> kernel_link;  // character -> link of its kernel, -1 when the kernel is trivial
};

/// Shared, lazily filled tables over one group. Thread-safe.
class SymbolContext {
 public:
  explicit SymbolContext(GroupPtr g);
  explicit SymbolContext(std::shared_ptr<const PairClassification> pc);

  const GroupPtr& group() const { return pairs_->group(); }
  const PairClassification& pairs() const { return *pairs_; }
  std::size_t class_count() const { return pairs_->classes().size(); }
  const PairClass& pair_class(std::uint32_t i) const { return pairs_->classes()[i]; }
  const ClassData& data(std::uint32_t pair_class) const;
  const StructurePtr& structure(std::uint32_t pair_class) const { return data(pair_class).structure; }

  /// Sorted and minimized over the stabilizer action (relations (O) and (C)).
  std::vector<CharId> canonical_beta(std::uint32_t pair_class, std::vector<CharId> beta) const;
  Symbol canonical(std::uint32_t pair_class, std::vector<CharId> beta) const;

  /// Canonical symbol of (K, Y, beta) with K, Y subgroups of this group and
  /// beta characters of `src`, transported by the pullback along
  /// to_src: K -> src. nullopt (Zero) when K is trivial or, with
  /// zero_on_trivial, when some character becomes trivial; otherwise a trivial
  /// character throws.
  std::optional<Symbol> canonicalize(const Subgroup& k, const Subgroup& y, const AbelianStructure& src,
                                     std::span<const CharId> beta, const std::function<Elem(Elem)>& to_src,
                                     bool zero_on_trivial) const;
  /// Same, with beta given on K itself.
  std::optional<Symbol> canonicalize(const Subgroup& h, const Subgroup& y, std::span<const Character> beta,
                                     Flavor flavor = Flavor::BC) const;

  /// Symbols of one class with |beta| in [min_len, max_len], nontrivial
  /// characters, generating H^v, canonical.
  std::vector<Symbol> class_symbols(std::uint32_t pair_class, std::size_t min_len, std::size_t max_len) const;

 private:
  ClassData build(std::uint32_t pc) const;

  std::shared_ptr<const PairClassification> pairs_;
  mutable std::mutex mutex_;
  mutable std::vector<std::unique_ptr<ClassData>> data_;
  mutable std::vector<StructurePtr> h_structures_;
};

/// Indexed generators plus relation rows.
struct Presentation {
  Flavor flavor = Flavor::BC;
  std::size_t n = 0;
  std::vector<Symbol> generators;
  std::unordered_map<Symbol, std::uint32_t, SymbolHash> index;
  SparseMatrix relations;

  std::optional<std::uint32_t> find(const Symbol& s) const;
  std::uint32_t add_generator(const Symbol& s);
  /// Coefficient vector; throws if a symbol is not a generator.
  SparseVector vector_of(const FormalSum& x) const;
  void add_relation(const FormalSum& row);
};

/// All canonical symbols of the BC / BC' generator set, classes in order.
Presentation enumerate_generators(const SymbolContext& ctx, std::size_t n, Flavor flavor);

enum class BlowupVariant { B2, B2Prime, B };

struct BlowupOptions {
  /// Two-term reading of the equal-entry case for tuples: (b,b,..) = 2 (0,b,..).
  bool two_term_equal_case = false;
};

/// Relation "symbol - expansion" for positions i != j. For BC flavors the
/// symbol lives in ctx; for B tuples use the tuple overload below.
FormalSum blowup(const SymbolContext& ctx, const Symbol& s, std::size_t i, std::size_t j, BlowupVariant variant);
/// Rows (V): symbols with two distinct positions summing to zero.
std::vector<std::uint32_t> vanishing_generators(const SymbolContext& ctx, const Presentation& p);
Presentation build_presentation(const SymbolContext& ctx, std::size_t n, Flavor flavor, unsigned threads = 1);

/// Sorted n-multisets over the dual of an abelian H (zeros allowed) that
/// generate it, modulo (O) and the relation (B).
struct TupleSystem {
  StructurePtr structure;
  std::size_t n = 0;
  /// Character permutations for the conjugation relation (C_(H,Y)).
  std::vector<std::vector<CharId>> automorphisms;
  /// Fold conjugation into the canonical form (true) or emit rows beta - beta^g.
  bool fold = true;
  BlowupOptions options;
};

std::vector<CharId> tuple_canonical(const TupleSystem& t, std::vector<CharId> beta);
FormalSum tuple_blowup(const TupleSystem& t, const Symbol& s, std::size_t i, std::size_t j);
std::vector<FormalSum> conjugation_rows(const TupleSystem& t, const Symbol& s);
Presentation build_tuple_presentation(const TupleSystem& t);

/// B_n(H) for an abelian subgroup H (no conjugation).
Presentation tuple_presentation(const StructurePtr& h, std::size_t n, BlowupOptions options = {});
/// B_n([H,Y]) = B_n(H) / (C_(H,Y)) for a pair class of ctx.
TupleSystem class_tuple_system(const SymbolContext& ctx, std::uint32_t pair_class, std::size_t n, bool fold = true,
                               bool all_elements = false);

FormalSum psi(const SymbolContext& ctx, const Symbol& s);
FormalSum phi(const SymbolContext& ctx, const Symbol& s);
FormalSum psi(const SymbolContext& ctx, const FormalSum& x);
FormalSum phi(const SymbolContext& ctx, const FormalSum& x);

/// Psi or Phi as a map on presentation generators (the generator sets of BC
/// and BC' coincide).
LinearMap psi_map(const SymbolContext& ctx, const Presentation& p);
LinearMap phi_map(const SymbolContext& ctx, const Presentation& p);

}  // namespace bcn
