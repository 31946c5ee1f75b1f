#include "bcn/zlattice.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "bcn/permutation.hpp"

namespace bcn {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    for (long x : r) data_.emplace_back(x);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw std::invalid_argument("matrix shape mismatch");
  IntMatrix out(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Int& a = at(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) out.at(i, j) += a * rhs.at(k, j);
    }
  return out;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Int& x) { return x == 0; });
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t i = 0; i < rows_; ++i) std::swap(at(i, a), at(i, b));
}

void IntMatrix::add_row(std::size_t dst, std::size_t src, const Int& k) {
  if (k == 0) return;
  for (std::size_t j = 0; j < cols_; ++j)
    if (at(src, j) != 0) at(dst, j) += k * at(src, j);
}

void IntMatrix::add_col(std::size_t dst, std::size_t src, const Int& k) {
  if (k == 0) return;
  for (std::size_t i = 0; i < rows_; ++i)
    if (at(i, src) != 0) at(i, dst) += k * at(i, src);
}

void IntMatrix::negate_row(std::size_t r) {
  for (std::size_t j = 0; j < cols_; ++j) at(r, j) = -at(r, j);
}

namespace {

Int tdiv(const Int& a, const Int& b) {
  Int q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int fdiv(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int emod(const Int& a, const Int& m) {
  Int r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

Int lcm(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

/// In-place Smith form of `a`; u and v (optional) accumulate the row and
/// column operations so that u * a_in * v = a_out.
// nearest-integer quotient, so remainders are at most |d|/2
Int round_div(const Int& n, const Int& d) {
  Int q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  if (2 * abs(r) > abs(d)) q += 1;  // r has the sign of d
  return q;
}

void smith_in_place(IntMatrix& a, IntMatrix* u, IntMatrix* v) {
  const std::size_t m = a.rows(), n = a.cols();
  const std::size_t lim = std::min(m, n);
  for (std::size_t t = 0; t < lim; ++t) {
    for (;;) {
      // least absolute value in the remaining block; re-chosen after every
      // reduction round, which keeps entry growth down
      std::size_t pi = m, pj = n;
      Int best;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          const Int& x = a.at(i, j);
          if (x == 0) continue;
          if (pi == m || abs(x) < best) {
            best = abs(x);
            pi = i;
            pj = j;
            if (best == 1) goto found;
          }
        }
    found:
      if (pi == m) return;
      a.swap_rows(t, pi);
      if (u) u->swap_rows(t, pi);
      a.swap_cols(t, pj);
      if (v) v->swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a.at(i, t) == 0) continue;
        Int q = round_div(a.at(i, t), a.at(t, t));
        a.add_row(i, t, -q);
        if (u) u->add_row(i, t, -q);
        if (a.at(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a.at(t, j) == 0) continue;
        Int q = round_div(a.at(t, j), a.at(t, t));
        a.add_col(j, t, -q);
        if (v) v->add_col(j, t, -q);
        if (a.at(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // divisibility of the remaining block by the pivot
      bool fixed = false;
      const Int& p = a.at(t, t);
      if (abs(p) != 1) {
        for (std::size_t i = t + 1; i < m && !fixed; ++i)
          for (std::size_t j = t + 1; j < n; ++j)
            if (a.at(i, j) != 0 && emod(a.at(i, j), p) != 0) {
              a.add_row(t, i, 1);
              if (u) u->add_row(t, i, 1);
              fixed = true;
              break;
            }
      }
      if (!fixed) break;
    }
    if (a.at(t, t) < 0) {
      a.negate_row(t);
      if (u) u->negate_row(t);
    }
  }
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  SmithForm s{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
  smith_in_place(s.d, &s.u, &s.v);
  return s;
}

std::vector<Int> smith_diagonal(IntMatrix m, IntMatrix* v) {
  if (v) *v = IntMatrix::identity(m.cols());
  smith_in_place(m, nullptr, v);
  std::vector<Int> d;
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) d.push_back(m.at(i, i));
  return d;
}

IntMatrix hermite_normal_form(const IntMatrix& m) {
  IntMatrix a = m;
  const std::size_t rows = a.rows(), cols = a.cols();
  std::size_t r = 0;
  for (std::size_t j = 0; j < cols && r < rows; ++j) {
    for (;;) {
      std::size_t pi = rows;
      for (std::size_t i = r; i < rows; ++i)
        if (a.at(i, j) != 0 && (pi == rows || abs(a.at(i, j)) < abs(a.at(pi, j)))) pi = i;
      if (pi == rows) break;
      a.swap_rows(r, pi);
      bool clean = true;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (a.at(i, j) == 0) continue;
        a.add_row(i, r, -fdiv(a.at(i, j), a.at(r, j)));
        if (a.at(i, j) != 0) clean = false;
      }
      if (clean) break;
    }
    if (r >= rows || a.at(r, j) == 0) continue;
    if (a.at(r, j) < 0) a.negate_row(r);
    for (std::size_t i = 0; i < r; ++i) a.add_row(i, r, -fdiv(a.at(i, j), a.at(r, j)));
    ++r;
  }
  IntMatrix out(r, cols);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < cols; ++j) out.at(i, j) = a.at(i, j);
  return out;
}

// ---------------------------------------------------------------- invariants

AbelianInvariants AbelianInvariants::from_cyclic_orders(std::size_t free_rank, const std::vector<Int>& orders) {
  std::vector<Int> c;
  for (const auto& x : orders) {
    if (x == 0) {
      ++free_rank;
      continue;
    }
    Int a = abs(x);
    if (a != 1) c.push_back(a);
  }
  std::sort(c.begin(), c.end());
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      if (c[j] % c[i] == 0) continue;
      Int g = gcd(c[i], c[j]);
      Int l = lcm(c[i], c[j]);
      c[i] = g;
      c[j] = l;
    }
  AbelianInvariants out;
  out.free_rank = free_rank;
  for (auto& x : c)
    if (x != 1) out.torsion.push_back(x);
  std::sort(out.torsion.begin(), out.torsion.end());
  return out;
}

AbelianInvariants AbelianInvariants::direct_sum(const std::vector<AbelianInvariants>& parts) {
  std::size_t f = 0;
  std::vector<Int> t;
  for (const auto& p : parts) {
    f += p.free_rank;
    t.insert(t.end(), p.torsion.begin(), p.torsion.end());
  }
  return from_cyclic_orders(f, t);
}

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

Int parse_int(const std::string& s, std::string_view whole) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw ParseError("malformed abelian group \"" + std::string(whole) + "\"");
  return Int(s);
}

}  // namespace

AbelianInvariants AbelianInvariants::parse(std::string_view text) {
  std::string s(text);
  // accept the multiplication sign as a separator as well
  for (std::size_t pos; (pos = s.find("\xC3\x97")) != std::string::npos;) s.replace(pos, 2, "x");
  std::vector<std::string> tokens;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i)
    if (i == s.size() || s[i] == 'x') {
      tokens.push_back(trim(std::string_view(s).substr(start, i - start)));
      start = i + 1;
    }
  std::size_t free = 0;
  std::vector<Int> orders;
  for (const auto& tok : tokens) {
    if (tok == "0" && tokens.size() == 1) break;
    std::string body = tok;
    Int mult = 1;
    if (!body.empty() && body[0] == '(') {
      auto close = body.find(')');
      if (close == std::string::npos) throw ParseError("malformed abelian group \"" + std::string(text) + "\"");
      std::string rest = body.substr(close + 1);
      if (rest.empty()) {
        body = body.substr(1, close - 1);
      } else {
        if (rest[0] != '^') throw ParseError("malformed abelian group \"" + std::string(text) + "\"");
        mult = parse_int(rest.substr(1), text);
        body = body.substr(1, close - 1);
      }
    } else if (body.starts_with("Z^")) {
      mult = parse_int(body.substr(2), text);
      body = "Z";
    }
    if (body == "Z") {
      free += mult.get_ui();
    } else if (body.starts_with("Z/")) {
      Int d = parse_int(body.substr(2), text);
      if (d == 0) throw ParseError("Z/0 in \"" + std::string(text) + "\"");
      for (unsigned long k = 0; k < mult.get_ui(); ++k) orders.push_back(d);
    } else {
      throw ParseError("malformed abelian group \"" + std::string(text) + "\"");
    }
  }
  return from_cyclic_orders(free, orders);
}

std::size_t AbelianInvariants::mod_p_dimension(unsigned long p) const {
  std::size_t n = free_rank;
  for (const auto& d : torsion)
    if (mpz_divisible_ui_p(d.get_mpz_t(), p)) ++n;
  return n;
}

std::vector<std::pair<Int, Int>> AbelianInvariants::primary_parts() const {
  std::vector<std::pair<Int, Int>> out;
  for (Int d : torsion) {
    for (Int p = 2; p * p <= d; ++p) {
      if (d % p != 0) continue;
      Int q = 1;
      while (d % p == 0) {
        d /= p;
        q *= p;
      }
      out.emplace_back(p, q);
    }
    if (d > 1) out.emplace_back(d, d);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string AbelianInvariants::primary_display() const {
  if (is_trivial()) return "0";
  std::vector<std::string> parts;
  auto pp = primary_parts();
  for (std::size_t i = 0; i < pp.size();) {
    std::size_t j = i;
    while (j < pp.size() && pp[j] == pp[i]) ++j;
    std::string z = "Z/" + pp[i].second.get_str();
    parts.push_back(j - i == 1 ? z : "(" + z + ")^" + std::to_string(j - i));
    i = j;
  }
  if (free_rank == 1) parts.push_back("Z");
  if (free_rank > 1) parts.push_back("Z^" + std::to_string(free_rank));
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? " x " : "") + parts[i];
  return s;
}

std::string AbelianInvariants::chain_display() const {
  if (is_trivial()) return "0";
  std::vector<std::string> parts;
  for (const auto& d : torsion) parts.push_back("Z/" + d.get_str());
  if (free_rank == 1) parts.push_back("Z");
  if (free_rank > 1) parts.push_back("Z^" + std::to_string(free_rank));
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? " x " : "") + parts[i];
  return s;
}

// ---------------------------------------------------------------- sparse

void normalize(SparseVector& v) {
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::size_t w = 0;
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i;
    Int s = 0;
    while (j < v.size() && v[j].first == v[i].first) s += v[j++].second;
    if (s != 0) v[w++] = {v[i].first, std::move(s)};
    i = j;
  }
  v.resize(w);
}

void SparseMatrix::add_row(SparseVector row) {
  normalize(row);
  for (const auto& [c, x] : row)
    if (c >= cols) throw std::out_of_range("relation column out of range");
  if (!row.empty()) rows.push_back(std::move(row));
}

SparseMatrix SparseMatrix::from_dense(const IntMatrix& m) {
  SparseMatrix s;
  s.cols = m.cols();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    SparseVector r;
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m.at(i, j) != 0) r.emplace_back(static_cast<std::uint32_t>(j), m.at(i, j));
    s.add_row(std::move(r));
  }
  return s;
}

namespace {

/// a += k * b, both sorted
SparseVector axpy(const SparseVector& a, const Int& k, const SparseVector& b) {
  SparseVector out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, k * b[j].second);
      ++j;
    } else {
      Int s = a[i].second + k * b[j].second;
      if (s != 0) out.emplace_back(a[i].first, std::move(s));
      ++i;
      ++j;
    }
  }
  return out;
}

const Int* entry(const SparseVector& v, std::uint32_t col) {
  auto it = std::lower_bound(v.begin(), v.end(), col, [](const auto& e, std::uint32_t c) { return e.first < c; });
  return it != v.end() && it->first == col ? &it->second : nullptr;
}

struct UnionFind {
  std::vector<std::uint32_t> p;
  explicit UnionFind(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) p[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

void Cokernel::reduce_block(Block& b, std::vector<SparseVector> rows) const {
  const std::size_t ncol = b.columns.size();
  std::vector<bool> alive(rows.size(), true);
  std::vector<std::vector<std::uint32_t>> col_rows(ncol);
  std::vector<std::size_t> col_count(ncol, 0);
  std::vector<bool> pivoted(ncol, false);
  std::size_t nnz = 0;
  for (std::uint32_t r = 0; r < rows.size(); ++r)
    for (const auto& [c, x] : rows[r]) {
      col_rows[c].push_back(r);
      ++col_count[c];
      ++nnz;
    }
  using Item = std::pair<std::size_t, std::uint32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  for (std::uint32_t r = 0; r < rows.size(); ++r) queue.emplace(rows[r].size(), r);
  std::size_t alive_rows = rows.size();
  std::size_t active_cols = ncol;

  while (!queue.empty()) {
    auto [len, r] = queue.top();
    queue.pop();
    if (!alive[r] || rows[r].size() != len) continue;
    if (len == 0) {
      alive[r] = false;
      --alive_rows;
      continue;
    }
    // switch to dense once the remainder is small and filled in
    if (active_cols <= 400 && alive_rows > 0 && nnz * 10 > 3 * alive_rows * active_cols && active_cols * alive_rows > 64)
      break;
    std::int64_t pc = -1;
    for (const auto& [c, x] : rows[r])
      if (abs(x) == 1 && (pc < 0 || col_count[c] < col_count[pc])) pc = c;
    if (pc < 0) continue;  // stays for the dense phase unless modified later
    const std::uint32_t c = static_cast<std::uint32_t>(pc);
    const Int s = *entry(rows[r], c);
    SparseVector prow = rows[r];
    alive[r] = false;
    --alive_rows;
    for (const auto& [cc, x] : prow) {
      --col_count[cc];
      --nnz;
    }
    std::vector<std::uint32_t> targets;
    targets.swap(col_rows[c]);
    for (std::uint32_t q : targets) {
      if (q == r || !alive[q]) continue;
      const Int* e = entry(rows[q], c);
      if (!e) continue;
      Int f = -(*e) * s;
      SparseVector updated = axpy(rows[q], f, prow);
      for (const auto& [cc, x] : rows[q]) {
        --col_count[cc];
        --nnz;
      }
      for (const auto& [cc, x] : updated) {
        ++col_count[cc];
        ++nnz;
        if (!entry(rows[q], cc)) col_rows[cc].push_back(q);
      }
      rows[q] = std::move(updated);
      queue.emplace(rows[q].size(), q);
    }
    pivoted[c] = true;
    --active_cols;
    b.pivots.push_back({c, std::move(prow)});
  }

  b.residual_pos.assign(ncol, -1);
  for (std::uint32_t c = 0; c < ncol; ++c)
    if (!pivoted[c]) {
      b.residual_pos[c] = static_cast<std::int64_t>(b.residual.size());
      b.residual.push_back(c);
    }
  std::vector<std::uint32_t> rest;
  for (std::uint32_t r = 0; r < rows.size(); ++r)
    if (alive[r] && !rows[r].empty()) rest.push_back(r);
  IntMatrix dense(rest.size(), b.residual.size());
  for (std::size_t i = 0; i < rest.size(); ++i)
    for (const auto& [c, x] : rows[rest[i]]) dense.at(i, static_cast<std::size_t>(b.residual_pos[c])) = x;
  b.v = IntMatrix::identity(b.residual.size());
  smith_in_place(dense, nullptr, &b.v);
  b.diagonal.assign(b.residual.size(), Int(0));
  for (std::size_t i = 0; i < std::min(dense.rows(), dense.cols()); ++i) b.diagonal[i] = dense.at(i, i);
}

Cokernel::Cokernel(const SparseMatrix& relations, unsigned threads) : cols_(relations.cols) {
  UnionFind uf(cols_);
  for (const auto& row : relations.rows) {
    for (const auto& [c, x] : row)
      if (c >= cols_) throw std::out_of_range("relation column out of range");
    for (std::size_t i = 1; i < row.size(); ++i) uf.unite(row[0].first, row[i].first);
  }
  block_of_col_.assign(cols_, -1);
  local_of_col_.assign(cols_, 0);
  for (std::uint32_t c = 0; c < cols_; ++c) {
    std::uint32_t root = uf.find(c);
    if (block_of_col_[root] < 0) {
      block_of_col_[root] = static_cast<std::int64_t>(blocks_.size());
      blocks_.emplace_back();
    }
    auto bi = static_cast<std::size_t>(block_of_col_[root]);
    block_of_col_[c] = static_cast<std::int64_t>(bi);
    local_of_col_[c] = static_cast<std::uint32_t>(blocks_[bi].columns.size());
    blocks_[bi].columns.push_back(c);
  }
  std::vector<std::vector<SparseVector>> block_rows(blocks_.size());
  for (const auto& row : relations.rows) {
    if (row.empty()) continue;
    SparseVector local;
    local.reserve(row.size());
    for (const auto& [c, x] : row) local.emplace_back(local_of_col_[c], x);
    normalize(local);
    if (!local.empty()) block_rows[static_cast<std::size_t>(block_of_col_[row[0].first])].push_back(std::move(local));
  }

  auto work = [&](std::size_t from, std::size_t step) {
    for (std::size_t i = from; i < blocks_.size(); i += step) reduce_block(blocks_[i], std::move(block_rows[i]));
  };
  if (threads > 1 && blocks_.size() > 1) {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
    for (auto& t : pool) t.join();
  } else {
    work(0, 1);
  }

  std::size_t free = 0;
  std::vector<Int> orders;
  for (auto& b : blocks_) {
    b.coord_offset = moduli_.size();
    for (const auto& d : b.diagonal) {
      if (d == 1) continue;
      moduli_.push_back(d);
      if (d == 0)
        ++free;
      else
        orders.push_back(d);
    }
  }
  invariants_ = AbelianInvariants::from_cyclic_orders(free, orders);
}

void Cokernel::block_coordinates(const Block& b, const SparseVector& v, std::vector<Int>& out) const {
  std::vector<Int> x(b.columns.size());
  for (const auto& [c, val] : v) x[local_of_col_[c]] += val;
  for (const auto& p : b.pivots) {
    if (x[p.col] == 0) continue;
    const Int s = *entry(p.row, p.col);
    Int f = -x[p.col] * s;
    for (const auto& [c, val] : p.row) x[c] += f * val;
  }
  const std::size_t n = b.residual.size();
  std::size_t k = b.coord_offset;
  for (std::size_t j = 0; j < n; ++j) {
    if (b.diagonal[j] == 1) continue;
    Int y = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const Int& xi = x[b.residual[i]];
      if (xi != 0) y += xi * b.v.at(i, j);
    }
    out[k++] = b.diagonal[j] == 0 ? y : emod(y, b.diagonal[j]);
  }
}

std::vector<Int> Cokernel::coordinates(const SparseVector& v) const {
  std::vector<Int> out(moduli_.size());
  std::map<std::size_t, SparseVector> by_block;
  for (const auto& e : v) {
    if (e.first >= cols_) throw std::out_of_range("vector column out of range");
    if (e.second != 0) by_block[static_cast<std::size_t>(block_of_col_[e.first])].push_back(e);
  }
  for (const auto& [bi, part] : by_block) block_coordinates(blocks_[bi], part, out);
  return out;
}

bool Cokernel::contains(const SparseVector& v) const {
  auto y = coordinates(v);
  return std::all_of(y.begin(), y.end(), [](const Int& x) { return x == 0; });
}

std::optional<Int> Cokernel::order(const SparseVector& v) const {
  auto y = coordinates(v);
  Int ord = 1;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y[i] == 0) continue;
    if (moduli_[i] == 0) return std::nullopt;
    ord = lcm(ord, moduli_[i] / gcd(y[i], moduli_[i]));
  }
  return ord;
}

AbelianInvariants Cokernel::subgroup_invariants(const std::vector<SparseVector>& span) const {
  const std::size_t k = moduli_.size();
  std::size_t torsion_rows = 0;
  for (const auto& d : moduli_)
    if (d != 0) ++torsion_rows;
  IntMatrix m(span.size() + torsion_rows, k);
  for (std::size_t i = 0; i < span.size(); ++i) {
    auto y = coordinates(span[i]);
    for (std::size_t j = 0; j < k; ++j) m.at(i, j) = y[j];
  }
  IntMatrix drows(torsion_rows, k);
  std::size_t r = span.size(), dr = 0;
  for (std::size_t j = 0; j < k; ++j)
    if (moduli_[j] != 0) {
      m.at(r++, j) = moduli_[j];
      drows.at(dr++, j) = moduli_[j];
    }
  IntMatrix basis = hermite_normal_form(m);
  // express each d_j e_j in the echelon basis
  std::vector<std::size_t> pivot_col(basis.rows());
  for (std::size_t i = 0; i < basis.rows(); ++i) {
    std::size_t j = 0;
    while (basis.at(i, j) == 0) ++j;
    pivot_col[i] = j;
  }
  IntMatrix x(torsion_rows, basis.rows());
  for (std::size_t t = 0; t < torsion_rows; ++t) {
    std::vector<Int> target(k);
    for (std::size_t j = 0; j < k; ++j) target[j] = drows.at(t, j);
    for (std::size_t i = 0; i < basis.rows(); ++i) {
      const Int& p = basis.at(i, pivot_col[i]);
      if (target[pivot_col[i]] == 0) continue;
      if (target[pivot_col[i]] % p != 0) throw std::logic_error("subgroup lattice solve failed");
      Int q = target[pivot_col[i]] / p;
      x.at(t, i) = q;
      for (std::size_t j = 0; j < k; ++j) target[j] -= q * basis.at(i, j);
    }
  }
  return cokernel_invariants(x);
}

AbelianInvariants cokernel_invariants(std::size_t generator_count, const SparseMatrix& relations) {
  SparseMatrix r = relations;
  r.cols = generator_count;
  return Cokernel(r).invariants();
}

AbelianInvariants cokernel_invariants(const IntMatrix& relations) {
  IntMatrix d = relations;
  smith_in_place(d, nullptr, nullptr);
  std::vector<Int> diag;
  const std::size_t lim = std::min(d.rows(), d.cols());
  for (std::size_t i = 0; i < lim; ++i) diag.push_back(d.at(i, i));
  return AbelianInvariants::from_cyclic_orders(d.cols() - lim, diag);
}

std::optional<Int> order_in_cokernel(const SparseMatrix& relations, const SparseVector& v) {
  return Cokernel(relations).order(v);
}

bool lattice_membership(const SparseMatrix& relations, const SparseVector& v) { return Cokernel(relations).contains(v); }

AbelianInvariants subquotient_invariants(const SparseMatrix& relations, const std::vector<SparseVector>& span) {
  return Cokernel(relations).subgroup_invariants(span);
}

SparseVector LinearMap::apply(const SparseVector& v) const {
  SparseVector out;
  for (const auto& [c, x] : v) {
    if (c >= images.size()) throw std::out_of_range("linear map input out of range");
    for (const auto& [d, y] : images[c]) out.emplace_back(d, x * y);
  }
  normalize(out);
  return out;
}

InducedMapReport induced_map_check(const SparseMatrix& a, const SparseMatrix& b, const LinearMap& m) {
  InducedMapReport rep;
  Cokernel cb(b);
  rep.relations_mapped = std::all_of(a.rows.begin(), a.rows.end(), [&](const SparseVector& r) { return cb.contains(m.apply(r)); });
  SparseMatrix ext = b;
  for (const auto& img : m.images) ext.add_row(img);
  rep.surjective = Cokernel(ext).invariants().is_trivial();
  rep.invariants_equal = Cokernel(a).invariants() == cb.invariants();
  return rep;
}

bool induced_iso_check(const SparseMatrix& a, const SparseMatrix& b, const LinearMap& m) {
  return induced_map_check(a, b, m).iso();
}

}  // namespace bcn
