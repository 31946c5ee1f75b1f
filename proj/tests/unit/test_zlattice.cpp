#include <doctest.h>

#include <random>

#include "bcn/zlattice.hpp"

using namespace bcn;

namespace {

IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int range) {
  std::uniform_int_distribution<int> d(-range, range);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = d(rng);
  return m;
}

Int det(IntMatrix m) {
  // Bareiss
  const std::size_t n = m.rows();
  Int prev = 1, sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m.at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m.at(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
    prev = m.at(k, k);
  }
  return sign * m.at(n - 1, n - 1);
}

// membership by reducing against the Hermite form
bool hnf_member(const IntMatrix& rel, std::vector<Int> v) {
  IntMatrix h = hermite_normal_form(rel);
  for (std::size_t r = 0; r < h.rows(); ++r) {
    std::size_t p = 0;
    while (h.at(r, p) == 0) ++p;
    if (v[p] % h.at(r, p) != 0) return false;
    Int q = v[p] / h.at(r, p);
    for (std::size_t j = 0; j < v.size(); ++j) v[j] -= q * h.at(r, j);
  }
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

SparseVector sparse(const std::vector<Int>& v) {
  SparseVector s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] != 0) s.emplace_back(static_cast<std::uint32_t>(i), v[i]);
  return s;
}

}  // namespace

TEST_CASE("smith form of [[2,2]]") {
  auto s = smith_normal_form(IntMatrix{{2, 2}});
  CHECK(s.d == IntMatrix{{2, 0}});
  CHECK(s.u * IntMatrix{{2, 2}} * s.v == s.d);
}

TEST_CASE("smith form of random matrices") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t r = 1 + trial % 6, c = 1 + (trial * 5) % 7;
    auto m = random_matrix(rng, r, c, 9);
    auto s = smith_normal_form(m);
    CHECK(s.u * m * s.v == s.d);
    CHECK((det(s.u) == 1 || det(s.u) == -1));
    CHECK((det(s.v) == 1 || det(s.v) == -1));
    std::size_t k = std::min(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (i != j) CHECK(s.d.at(i, j) == 0);
    for (std::size_t i = 0; i < k; ++i) {
      CHECK(s.d.at(i, i) >= 0);
      if (i + 1 < k && s.d.at(i, i) != 0) CHECK(s.d.at(i + 1, i + 1) % s.d.at(i, i) == 0);
      if (s.d.at(i, i) == 0 && i + 1 < k) CHECK(s.d.at(i + 1, i + 1) == 0);
    }
    auto diag = smith_diagonal(m);
    for (std::size_t i = 0; i < k; ++i) CHECK(diag[i] == s.d.at(i, i));
  }
  // 6x6 square: product of the diagonal is |det|
  for (int trial = 0; trial < 10; ++trial) {
    auto m = random_matrix(rng, 6, 6, 20);
    auto d = smith_diagonal(m);
    Int p = 1;
    for (const auto& x : d) p *= x;
    Int dm = det(m);
    CHECK(p == abs(dm));
  }
}

TEST_CASE("cokernel invariants") {
  auto a = cokernel_invariants(IntMatrix{{2, 2}});
  CHECK(a.free_rank == 1);
  CHECK(a.torsion == std::vector<Int>{2});
  CHECK(a.primary_display() == "Z/2 x Z");
  CHECK(cokernel_invariants(IntMatrix{{1, 0}, {0, 1}}).is_trivial());
  CHECK(cokernel_invariants(IntMatrix{{2, 0}, {0, 3}}).torsion == std::vector<Int>{6});
  auto b = cokernel_invariants(IntMatrix{{2, 0, 0}, {0, 4, 0}, {0, 0, 0}});
  CHECK(b.free_rank == 1);
  CHECK(b.torsion == std::vector<Int>{2, 4});
  SparseMatrix empty;
  CHECK(cokernel_invariants(3, empty).free_rank == 3);
}

TEST_CASE("invariants display and parse") {
  auto x = AbelianInvariants::from_cyclic_orders(3, {2, 2, 2, 2, 2, 2, 4, 1});
  CHECK(x.primary_display() == "(Z/2)^6 x Z/4 x Z^3");
  CHECK(AbelianInvariants::parse("(Z/2)^6 x Z/4 x Z^3") == x);
  CHECK(AbelianInvariants::parse("0").is_trivial());
  CHECK(AbelianInvariants{}.primary_display() == "0");
  auto y = AbelianInvariants::from_cyclic_orders(0, {6, 4});
  CHECK(y.torsion == std::vector<Int>{2, 12});
  CHECK(y.primary_display() == "Z/2 x Z/4 x Z/3");
  CHECK(AbelianInvariants::parse(y.primary_display()) == y);
  CHECK(y.mod_p_dimension(2) == 2);
  CHECK(y.mod_p_dimension(3) == 1);
  CHECK(y.mod_p_dimension(5) == 0);
  CHECK(AbelianInvariants::direct_sum({x, y}) == AbelianInvariants::from_cyclic_orders(3, {2, 2, 2, 2, 2, 2, 4, 6, 4}));
}

TEST_CASE("element orders in a cokernel") {
  auto rel = SparseMatrix::from_dense(IntMatrix{{2, 2}});
  Cokernel c(rel);
  CHECK(c.order(SparseVector{{0, 1}, {1, 1}}) == Int(2));
  CHECK_FALSE(c.order(SparseVector{{0, 1}}).has_value());
  CHECK(c.contains(SparseVector{{0, 2}, {1, 2}}));
  CHECK_FALSE(c.contains(SparseVector{{0, 1}, {1, 1}}));
  CHECK(c.order(SparseVector{}) == Int(1));
  CHECK(order_in_cokernel(rel, SparseVector{{0, 1}, {1, 1}}) == Int(2));
}

TEST_CASE("cokernel queries agree with a Hermite form oracle") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t r = 2 + trial % 5, c = 3 + trial % 4;
    auto m = random_matrix(rng, r, c, 4);
    // sprinkle unit pivots so both code paths run
    if (trial % 2) m.at(0, 0) = 1;
    auto sm = SparseMatrix::from_dense(m);
    Cokernel ck(sm);
    CHECK(ck.invariants() == cokernel_invariants(m));
    for (int q = 0; q < 15; ++q) {
      std::vector<Int> v(c);
      std::uniform_int_distribution<int> d(-3, 3);
      for (auto& x : v) x = d(rng);
      if (q % 3 == 0) {
        // something in the lattice
        std::fill(v.begin(), v.end(), 0);
        for (std::size_t i = 0; i < r; ++i) {
          int k = d(rng);
          for (std::size_t j = 0; j < c; ++j) v[j] += k * m.at(i, j);
        }
      }
      bool oracle = hnf_member(m, v);
      CHECK(ck.contains(sparse(v)) == oracle);
      CHECK(lattice_membership(sm, sparse(v)) == oracle);
      // order: least k with k v in the lattice (search up to the torsion exponent)
      auto o = ck.order(sparse(v));
      Int bound = 1;
      for (const auto& t : ck.invariants().torsion) bound = lcm(bound, t);
      std::optional<Int> brute;
      for (long k = 1; k <= bound.get_si(); ++k) {
        std::vector<Int> w(v);
        for (auto& x : w) x *= k;
        if (hnf_member(m, w)) {
          brute = k;
          break;
        }
      }
      CHECK(o == brute);
    }
  }
}

TEST_CASE("subquotient") {
  SparseMatrix none;
  none.cols = 2;
  auto s = subquotient_invariants(none, {SparseVector{{0, 1}}});
  CHECK(s.free_rank == 1);
  CHECK(s.torsion.empty());
  auto rel = SparseMatrix::from_dense(IntMatrix{{4, 0}, {0, 6}});
  auto t = subquotient_invariants(rel, {SparseVector{{0, 2}}, SparseVector{{1, 3}}});
  CHECK(t.torsion == std::vector<Int>{2, 2});
  Cokernel ck(rel);
  CHECK(ck.subgroup_invariants({SparseVector{{0, 1}, {1, 1}}}).torsion == std::vector<Int>{12});
}

TEST_CASE("induced isomorphism check") {
  auto a = SparseMatrix::from_dense(IntMatrix{{2, 0}, {0, 3}});
  LinearMap id{2, 2, {SparseVector{{0, 1}}, SparseVector{{1, 1}}}};
  CHECK(induced_iso_check(a, a, id));
  // doubling on Z
  SparseMatrix z;
  z.cols = 1;
  LinearMap twice{1, 1, {SparseVector{{0, 2}}}};
  auto r = induced_map_check(z, z, twice);
  CHECK(r.relations_mapped);
  CHECK_FALSE(r.surjective);
  CHECK_FALSE(r.iso());
  // swap of the two factors of Z/2 x Z/3 does not respect relations
  LinearMap swap{2, 2, {SparseVector{{1, 1}}, SparseVector{{0, 1}}}};
  CHECK_FALSE(induced_map_check(a, a, swap).relations_mapped);
  // multiplication by 5 is an automorphism of Z/6
  auto c6 = SparseMatrix::from_dense(IntMatrix{{6}});
  CHECK(induced_iso_check(c6, c6, LinearMap{1, 1, {SparseVector{{0, 5}}}}));
  CHECK_FALSE(induced_iso_check(c6, c6, LinearMap{1, 1, {SparseVector{{0, 2}}}}));
}
