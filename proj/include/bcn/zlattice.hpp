#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bcn {

using Int = mpz_class;

/// Dense row-major integer matrix.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Int& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntMatrix operator*(const IntMatrix& rhs) const;
  bool operator==(const IntMatrix&) const = default;
  bool is_zero() const;

  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  /// row[dst] += k * row[src]
  void add_row(std::size_t dst, std::size_t src, const Int& k);
  /// col[dst] += k * col[src]
  void add_col(std::size_t dst, std::size_t src, const Int& k);
  void negate_row(std::size_t r);

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Int> data_;
};

/// U * M * V = D with U, V unimodular and D diagonal, d1 | d2 | ..., all >= 0.
struct SmithForm {
  IntMatrix d, u, v;
};

SmithForm smith_normal_form(const IntMatrix& m);
/// Diagonal of the Smith form only (length min(rows, cols)); when v is
/// non-null it receives the column transform.
std::vector<Int> smith_diagonal(IntMatrix m, IntMatrix* v = nullptr);

/// Row-style Hermite normal form of the row lattice: echelon rows, positive
/// pivots, entries above each pivot reduced into [0, pivot). Zero rows dropped.
IntMatrix hermite_normal_form(const IntMatrix& m);

/// Finitely generated abelian group Z^free_rank x Z/d1 x ... x Z/dk with
/// d1 | d2 | ... | dk and every di >= 2.
struct AbelianInvariants {
  std::size_t free_rank = 0;
  std::vector<Int> torsion;

  /// Canonical form of Z^free x (Z/c1 x Z/c2 x ...) for arbitrary cyclic
  /// orders ci >= 1 (no divisibility assumed).
  static AbelianInvariants from_cyclic_orders(std::size_t free_rank, const std::vector<Int>& orders);
  static AbelianInvariants direct_sum(const std::vector<AbelianInvariants>& parts);
  /// Parses the primary display ("(Z/2)^6 x Z/4 x Z^3", "0").
  static AbelianInvariants parse(std::string_view text);

  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  /// Number of factors after tensoring with F_p.
  std::size_t mod_p_dimension(unsigned long p) const;
  /// Prime powers of the torsion part, ascending by (prime, power).
  std::vector<std::pair<Int, Int>> primary_parts() const;  // (prime, prime power)

  std::string primary_display() const;
  std::string chain_display() const;

  bool operator==(const AbelianInvariants&) const = default;
};

using SparseVector = std::vector<std::pair<std::uint32_t, Int>>;

/// Sorts by column, merges duplicates, removes zeros.
void normalize(SparseVector& v);

/// Relation rows over `cols` generators.
struct SparseMatrix {
  std::size_t cols = 0;
  std::vector<SparseVector> rows;

  /// Normalizes and appends; empty rows are kept out.
  void add_row(SparseVector row);
  static SparseMatrix from_dense(const IntMatrix& m);
};

/// Quotient Z^cols / rowspan(relations), split into independent blocks and
/// reduced once so that many membership / order / coordinate queries are
/// cheap. Unit pivots are eliminated sparsely; the rest goes through a dense
/// Smith normal form.
class Cokernel {
 public:
  explicit Cokernel(const SparseMatrix& relations, unsigned threads = 1);

  std::size_t generator_count() const { return cols_; }
  const AbelianInvariants& invariants() const { return invariants_; }

  /// Image of v in Z/m1 x Z/m2 x ..., moduli()[i] == 0 meaning a free factor.
  std::vector<Int> coordinates(const SparseVector& v) const;
  const std::vector<Int>& moduli() const { return moduli_; }

  bool contains(const SparseVector& v) const;
  /// Order of the image of v; nullopt when infinite.
  std::optional<Int> order(const SparseVector& v) const;
  /// Invariants of the subgroup generated by the images of `span`.
  AbelianInvariants subgroup_invariants(const std::vector<SparseVector>& span) const;

  std::size_t block_count() const { return blocks_.size(); }

 private:
  struct Pivot {
    std::uint32_t col;  // local column
    SparseVector row;   // local columns, coefficient at col is +-1
  };
  struct Block {
    std::vector<std::uint32_t> columns;  // global ids, sorted
    std::vector<Pivot> pivots;
    std::vector<std::uint32_t> residual;  // local ids of dense residual columns
    std::vector<std::int64_t> residual_pos;  // local id -> position in residual, or -1
    IntMatrix v;                          // residual column transform
    std::vector<Int> diagonal;            // SNF diagonal of the residual (size = residual count, 0 = free)
    std::size_t coord_offset = 0;
  };

  void reduce_block(Block& b, std::vector<SparseVector> rows) const;
  void block_coordinates(const Block& b, const SparseVector& v, std::vector<Int>& out) const;

  std::size_t cols_ = 0;
  std::vector<Block> blocks_;
  std::vector<std::int64_t> block_of_col_;
  std::vector<std::uint32_t> local_of_col_;
  std::vector<Int> moduli_;
  AbelianInvariants invariants_;
};

AbelianInvariants cokernel_invariants(std::size_t generator_count, const SparseMatrix& relations);
AbelianInvariants cokernel_invariants(const IntMatrix& relations);

/// Least m >= 1 with m*v in the row lattice; nullopt when no multiple lies in it.
std::optional<Int> order_in_cokernel(const SparseMatrix& relations, const SparseVector& v);
bool lattice_membership(const SparseMatrix& relations, const SparseVector& v);
/// Invariants of (span + L) / L, L the row lattice of `relations`.
AbelianInvariants subquotient_invariants(const SparseMatrix& relations, const std::vector<SparseVector>& span);

/// Homomorphism Z^from -> Z^to given by the image of each generator.
struct LinearMap {
  std::size_t from = 0, to = 0;
  std::vector<SparseVector> images;

  SparseVector apply(const SparseVector& v) const;
};

struct InducedMapReport {
  bool relations_mapped = false;
  bool surjective = false;
  bool invariants_equal = false;
  bool iso() const { return relations_mapped && surjective && invariants_equal; }
};

/// Does `m` send every relation of A into the lattice of B and induce an
/// isomorphism coker(A) -> coker(B)? Bijectivity follows from surjectivity
/// plus isomorphic invariants (finitely generated abelian groups are Hopfian).
InducedMapReport induced_map_check(const SparseMatrix& a, const SparseMatrix& b, const LinearMap& m);
bool induced_iso_check(const SparseMatrix& a, const SparseMatrix& b, const LinearMap& m);

}  // namespace bcn
