#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "bcn/symbols.hpp"

namespace bcn {

/// Pair class index used for the unit of BC_0(G) = Z in formal sums.
constexpr std::uint32_t kUnitClass = 0xffffffffu;
Symbol unit_symbol();

struct Summand {
  std::uint32_t pair_class = 0;
  std::string label;
  std::size_t h_order = 0;
  AbelianInvariants invariants;
};

struct DecompositionReport {
  std::size_t n = 0;
  std::vector<Summand> summands;
  AbelianInvariants total;
};

struct VerificationReport {
  std::size_t n = 0;
  std::size_t generators = 0;
  bool psi_relations_mapped = false;  // Psi(BC rows) in the BC' lattice
  bool phi_relations_mapped = false;  // Phi(BC' rows) in the BC lattice
  bool inverse_formal = false;        // Phi o Psi = Psi o Phi = Id on generators
  bool inverse_mod_relations = false;
  bool surjective = false;            // Psi onto BC'
  bool invariants_equal = false;
  bool decomposition_consistent = false;  // BC' presentation vs sum of B_n([H,Y])
  AbelianInvariants bc, bc_prime;
  bool iso() const {
    return psi_relations_mapped && phi_relations_mapped && inverse_mod_relations && surjective && invariants_equal;
  }
};

enum class Coefficients { Z, Q, Fp };

struct CdReport {
  Coefficients coefficients = Coefficients::Z;
  unsigned long p = 0;
  std::size_t bound = 0;  // BC_m = 0 for every m >= bound
  std::vector<AbelianInvariants> values;  // values[m-1] = BC_m for m < bound
  std::size_t cd = 0;
  std::size_t largest_abelian_order = 0;
  double conjectured_bound = 0;  // log2 |H| (Q: log3 |H| + 1), reported only
};

/// All computations over one group, with presentations and reductions cached.
class Burnside {
 public:
  explicit Burnside(GroupPtr g, unsigned threads = 1);
  explicit Burnside(std::shared_ptr<const SymbolContext> ctx, unsigned threads = 1);

  const GroupPtr& group() const { return ctx_->group(); }
  const SymbolContext& context() const { return *ctx_; }
  std::shared_ptr<const SymbolContext> context_ptr() const { return ctx_; }
  unsigned threads() const { return threads_; }

  const Presentation& presentation(std::size_t n, Flavor f);
  const Cokernel& cokernel(std::size_t n, Flavor f);

  AbelianInvariants bc(std::size_t n);
  AbelianInvariants bc_prime_total(std::size_t n) { return cokernel(n, Flavor::BCPrime).invariants(); }
  DecompositionReport bc_prime(std::size_t n);
  VerificationReport verify_main(std::size_t n, bool corrupt_psi = false);

  /// Order of the class of x in BC_n(G); nullopt when infinite.
  std::optional<Int> class_order(std::size_t n, const FormalSum& x);
  AbelianInvariants filtration(std::size_t n, std::size_t r);
  /// Invariants of the image of BC_r(G) -> BC_n(G) (all symbols of length <= r).
  AbelianInvariants filtration_image(std::size_t n, std::size_t r);
  CdReport cd(Coefficients c = Coefficients::Z, unsigned long p = 0);
  /// 1 + max over abelian H of |H| - 2 + exp(H); BC_m = 0 for m >= this
  std::size_t vanishing_bound() const;

 private:
  std::shared_ptr<const SymbolContext> ctx_;
  unsigned threads_;
  std::mutex mutex_;
  std::map<std::pair<std::size_t, int>, std::unique_ptr<Presentation>> presentations_;
  std::map<std::pair<std::size_t, int>, std::unique_ptr<Cokernel>> cokernels_;
};

AbelianInvariants bc(const GroupPtr& g, std::size_t n);
DecompositionReport bc_prime(const GroupPtr& g, std::size_t n);
VerificationReport verify_main(const GroupPtr& g, std::size_t n);

/// A symbol given by explicit subgroups of some group A (not canonicalized).
struct ConcreteSymbol {
  Subgroup h, y;
  StructurePtr structure;  // of h
  std::vector<CharId> beta;
};

/// Sum over the orbits of the image of T (via the injective homomorphism
/// embed: T -> A) on the A-conjugates of s, of the intersected symbols,
/// canonicalized in `target` (a context over T).
FormalSum restrict_concrete(const ConcreteSymbol& s, const SymbolContext& target, const std::vector<Elem>& embed);

/// res: BC_n(G) -> BC_n(G') for a subgroup G' of G.
FormalSum restrict_sum(const SymbolContext& from, const SymbolContext& to, const FormalSum& x);
/// Embedding of a group generated by permutations inside G into G.
std::vector<Elem> embedding(const PermutationGroup& sub, const PermutationGroup& g);

/// Product BC_n(G) x BC_n'(G) -> BC_{n+n'}(G) via G x G and the diagonal.
FormalSum product(const SymbolContext& ctx, const FormalSum& x, const FormalSum& y);
/// Product on BC'_n for abelian G: 0 unless H = H', else (H, Y n Y', beta u beta')'.
FormalSum product_prime_abelian(const SymbolContext& ctx, const FormalSum& x, const FormalSum& y);

/// Symbol length in characters (0 for the unit).
std::size_t symbol_length(const Symbol& s);

}  // namespace bcn
