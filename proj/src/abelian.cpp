#include "bcn/abelian.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <stdexcept>

#include "bcn/zlattice.hpp"

namespace bcn {

namespace {

constexpr std::size_t kAddTableLimit = 1024;

std::uint32_t mod(std::int64_t x, std::uint32_t m) {
  std::int64_t r = x % static_cast<std::int64_t>(m);
  return static_cast<std::uint32_t>(r < 0 ? r + m : r);
}

}  // namespace

StructurePtr AbelianStructure::of(const Subgroup& h) {
  if (!h.is_abelian()) throw std::invalid_argument("abelian_structure: subgroup is not abelian");
  auto s = std::shared_ptr<AbelianStructure>(new AbelianStructure());
  s->h_ = h;
  const auto& g = *h.parent();
  const std::vector<Elem>& w = h.generators();
  const std::size_t k0 = w.size();
  const std::size_t n = h.order();

  // word vectors along a BFS tree; every non-tree edge is a relation
  std::vector<std::vector<std::int64_t>> vec(n);
  std::vector<bool> seen(n, false);
  std::vector<std::vector<std::int64_t>> rel;
  std::deque<std::size_t> queue{0};
  seen[0] = true;
  vec[0].assign(k0, 0);
  while (!queue.empty()) {
    std::size_t cur = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < k0; ++i) {
      std::size_t nxt = h.local_index(g.mul(h.elements()[cur], w[i]));
      std::vector<std::int64_t> v = vec[cur];
      ++v[i];
      if (!seen[nxt]) {
        seen[nxt] = true;
        vec[nxt] = std::move(v);
        queue.push_back(nxt);
      } else {
        for (std::size_t j = 0; j < k0; ++j) v[j] -= vec[nxt][j];
        if (std::any_of(v.begin(), v.end(), [](std::int64_t x) { return x != 0; })) rel.push_back(std::move(v));
      }
    }
  }

  IntMatrix r(rel.size(), k0);
  for (std::size_t i = 0; i < rel.size(); ++i)
    for (std::size_t j = 0; j < k0; ++j) r.at(i, j) = rel[i][j];
  IntMatrix v;
  std::vector<Int> diag = smith_diagonal(r, &v);
  if (diag.size() != k0) throw std::logic_error("abelian_structure: relation lattice is not of full rank");
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < k0; ++j) {
    if (diag[j] == 0) throw std::logic_error("abelian_structure: infinite factor");
    if (diag[j] != 1) {
      keep.push_back(j);
      s->d_.push_back(static_cast<std::uint32_t>(diag[j].get_ui()));
    }
  }
  const std::size_t k = keep.size();
  s->exponent_ = k ? s->d_.back() : 1;
  s->coords_.assign(n * k, 0);
  for (std::size_t e = 0; e < n; ++e)
    for (std::size_t t = 0; t < k; ++t) {
      Int y = 0;
      for (std::size_t j = 0; j < k0; ++j) y += vec[e][j] * v.at(j, keep[t]);
      Int m = y % s->d_[t];
      if (m < 0) m += s->d_[t];
      s->coords_[e * k + t] = static_cast<std::uint32_t>(m.get_ui());
    }
  s->build_tables();
  return s;
}

void AbelianStructure::build_tables() {
  const std::size_t n = order(), k = rank();
  std::size_t prod = 1;
  for (auto d : d_) prod *= d;
  if (prod != n) throw std::logic_error("abelian_structure: invariant factors do not multiply to |H|");
  scale_.resize(k);
  for (std::size_t i = 0; i < k; ++i) scale_[i] = exponent_ / d_[i];

  elem_code_.resize(n);
  code_elem_.assign(n, static_cast<std::uint32_t>(-1));
  for (std::size_t e = 0; e < n; ++e) {
    std::uint32_t code = 0, radix = 1;
    for (std::size_t i = 0; i < k; ++i) {
      code += coords_[e * k + i] * radix;
      radix *= d_[i];
    }
    if (code_elem_[code] != static_cast<std::uint32_t>(-1)) throw std::logic_error("abelian_structure: coordinates not injective");
    elem_code_[e] = code;
    code_elem_[code] = static_cast<std::uint32_t>(e);
  }
  basis_.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    std::uint32_t radix = 1;
    for (std::size_t j = 0; j < i; ++j) radix *= d_[j];
    basis_[i] = h_.elements()[code_elem_[radix]];
  }

  neg_.resize(n);
  char_order_.resize(n);
  for (CharId c = 0; c < n; ++c) {
    auto cc = char_coords(c);
    std::vector<std::int64_t> m(k);
    std::uint32_t ord = 1;
    for (std::size_t i = 0; i < k; ++i) {
      m[i] = -static_cast<std::int64_t>(cc[i]);
      std::uint32_t oi = d_[i] / std::gcd(cc[i], d_[i]);
      ord = std::lcm(ord, oi);
    }
    neg_[c] = char_from_coords(m);
    char_order_[c] = ord;
  }
  if (n <= kAddTableLimit) {
    add_.resize(n * n);
    for (CharId a = 0; a < n; ++a) {
      auto ca = char_coords(a);
      for (CharId b = 0; b < n; ++b) {
        auto cb = char_coords(b);
        std::vector<std::int64_t> s(k);
        for (std::size_t i = 0; i < k; ++i) s[i] = ca[i] + cb[i];
        add_[a * n + b] = char_from_coords(s);
      }
    }
  } else {
    throw ResourceError("abelian subgroup too large for character tables");
  }
  const std::size_t words = (n + 63) / 64;
  kernel_.assign(n, std::vector<std::uint64_t>(words, 0));
  for (CharId c = 0; c < n; ++c)
    for (std::size_t e = 0; e < n; ++e)
      if (evaluate_local(c, e) == 0) kernel_[c][e >> 6] |= std::uint64_t{1} << (e & 63);
}

std::vector<std::uint32_t> AbelianStructure::coordinates(Elem h) const {
  std::size_t l = h_.local_index(h);
  if (l == static_cast<std::size_t>(-1) || !h_.contains(h)) throw std::invalid_argument("element not in subgroup");
  return {coords_.begin() + static_cast<std::ptrdiff_t>(l * rank()), coords_.begin() + static_cast<std::ptrdiff_t>((l + 1) * rank())};
}

Elem AbelianStructure::element_at(std::span<const std::int64_t> coords) const {
  if (coords.size() != rank()) throw std::invalid_argument("coordinate length mismatch");
  std::uint32_t code = 0, radix = 1;
  for (std::size_t i = 0; i < rank(); ++i) {
    code += mod(coords[i], d_[i]) * radix;
    radix *= d_[i];
  }
  return h_.elements()[code_elem_[code]];
}

std::vector<std::uint32_t> AbelianStructure::char_coords(CharId c) const {
  std::vector<std::uint32_t> out(rank());
  for (std::size_t i = 0; i < rank(); ++i) {
    out[i] = c % d_[i];
    c /= d_[i];
  }
  return out;
}

CharId AbelianStructure::char_from_coords(std::span<const std::int64_t> coords) const {
  if (coords.size() != rank()) throw std::invalid_argument("character length mismatch");
  CharId code = 0, radix = 1;
  for (std::size_t i = 0; i < rank(); ++i) {
    code += mod(coords[i], d_[i]) * radix;
    radix *= d_[i];
  }
  return code;
}

CharId AbelianStructure::scale(CharId a, std::int64_t m) const {
  auto c = char_coords(a);
  std::vector<std::int64_t> s(rank());
  for (std::size_t i = 0; i < rank(); ++i) s[i] = static_cast<std::int64_t>(c[i]) * mod(m, d_[i]);
  return char_from_coords(s);
}

std::uint32_t AbelianStructure::evaluate_local(CharId b, std::size_t local) const {
  const std::size_t k = rank();
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < k; ++i) {
    std::uint32_t ci = b % d_[i];
    b /= d_[i];
    v += static_cast<std::uint64_t>(ci) * coords_[local * k + i] * scale_[i];
  }
  return static_cast<std::uint32_t>(v % exponent_);
}

std::uint32_t AbelianStructure::evaluate(CharId b, Elem h) const {
  if (!h_.contains(h)) throw std::invalid_argument("character evaluated outside its group");
  return evaluate_local(b, h_.local_index(h));
}

Subgroup AbelianStructure::kernel(CharId b) const {
  ElementSet members(h_.parent()->order());
  for (std::size_t e = 0; e < order(); ++e)
    if ((kernel_[b][e >> 6] >> (e & 63)) & 1u) members.insert(h_.elements()[e]);
  return Subgroup::from_trusted(h_.parent(), members);
}

bool AbelianStructure::generates(std::span<const CharId> chars) const {
  const std::size_t words = kernel_.empty() ? 1 : kernel_[0].size();
  std::vector<std::uint64_t> acc(words, ~std::uint64_t{0});
  for (CharId c : chars)
    for (std::size_t w = 0; w < words; ++w) acc[w] &= kernel_[c][w];
  // identity is local element 0
  if (!(acc[0] & 1u)) return false;
  acc[0] &= ~std::uint64_t{1};
  const std::size_t n = order();
  for (std::size_t w = 0; w < words; ++w) {
    std::uint64_t word = acc[w];
    if (w == words - 1 && n % 64) word &= (std::uint64_t{1} << (n % 64)) - 1;
    if (word) return false;
  }
  return true;
}

bool AbelianStructure::in_cyclic_span(CharId b, CharId c) const {
  CharId x = 0;
  for (std::uint32_t m = 0; m < char_order(c); ++m) {
    if (x == b) return true;
    x = add(x, c);
  }
  return false;
}

std::vector<CharId> AbelianStructure::pullback_from(const AbelianStructure& from, const std::function<Elem(Elem)>& f) const {
  const std::size_t k1 = from.rank(), k2 = rank();
  // m[i][j]: coordinate j of the pullback of the i-th basis character of `from`
  std::vector<std::vector<std::uint32_t>> m(k1, std::vector<std::uint32_t>(k2));
  std::vector<std::uint32_t> radix(k1, 1);
  for (std::size_t i = 1; i < k1; ++i) radix[i] = radix[i - 1] * from.d_[i - 1];
  for (std::size_t j = 0; j < k2; ++j) {
    const Elem img = f(basis_[j]);
    for (std::size_t i = 0; i < k1; ++i) {
      const std::uint64_t v = from.evaluate(radix[i], img);
      const std::uint64_t num = v * d_[j];
      if (num % from.exponent_ != 0) throw std::logic_error("pullback: map is not a homomorphism");
      m[i][j] = static_cast<std::uint32_t>((num / from.exponent_) % d_[j]);
    }
  }
  std::vector<CharId> out(from.order());
  std::vector<std::int64_t> acc(k2);
  for (CharId c = 0; c < from.order(); ++c) {
    auto cc = from.char_coords(c);
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t i = 0; i < k1; ++i)
      if (cc[i])
        for (std::size_t j = 0; j < k2; ++j) acc[j] += static_cast<std::int64_t>(cc[i]) * m[i][j];
    out[c] = char_from_coords(acc);
  }
  return out;
}

// ---------------------------------------------------------------- Character

Character::Character(StructurePtr owner, CharId id) : owner_(std::move(owner)), id_(id) {
  if (id_ >= owner_->character_count()) throw std::out_of_range("character index out of range");
}

Character::Character(StructurePtr owner, std::span<const std::int64_t> coords)
    : owner_(std::move(owner)), id_(owner_->char_from_coords(coords)) {}

void Character::same_owner(const Character& o) const {
  if (owner_ == o.owner_) return;
  if (!owner_ || !o.owner_ || !(owner_->subgroup() == o.owner_->subgroup()))
    throw std::invalid_argument("characters of different groups");
}

Character Character::operator+(const Character& o) const {
  same_owner(o);
  return Character(owner_, owner_->add(id_, o.id_));
}

Character Character::operator-(const Character& o) const {
  same_owner(o);
  return Character(owner_, owner_->sub(id_, o.id_));
}

Character Character::operator-() const { return Character(owner_, owner_->neg(id_)); }

bool Character::operator==(const Character& o) const {
  same_owner(o);
  return id_ == o.id_;
}

Character restrict_character(const Character& b, const StructurePtr& sub) {
  if (!sub->subgroup().is_subgroup_of(b.owner()->subgroup()))
    throw std::invalid_argument("restrict_character: not a subgroup");
  auto map = sub->pullback_from(*b.owner(), [](Elem x) { return x; });
  return Character(sub, map[b.id()]);
}

Character conjugate_character(const Character& b, Elem g, StructurePtr target) {
  const auto& h = b.owner()->subgroup();
  const auto& grp = *h.parent();
  if (!target) target = AbelianStructure::of(h.conjugate(g));
  if (!(target->subgroup() == h.conjugate(g))) throw std::invalid_argument("conjugate_character: wrong target");
  const Elem gi = grp.inv(g);
  auto map = target->pullback_from(*b.owner(), [&](Elem x) { return grp.conj(gi, x); });
  return Character(target, map[b.id()]);
}

Subgroup kernel_subgroup(const Character& b) { return b.owner()->kernel(b.id()); }

Subgroup kernel_of_difference(const Character& b1, const Character& b2) { return kernel_subgroup(b1 - b2); }

bool generates_dual(std::span<const Character> beta, const StructurePtr& h) {
  std::vector<CharId> ids;
  for (const auto& b : beta) {
    if (!(b.owner()->subgroup() == h->subgroup())) throw std::invalid_argument("generates_dual: mixed owners");
    ids.push_back(b.id());
  }
  return h->generates(ids);
}

bool in_cyclic_span(const Character& b, const Character& c) {
  if (!(b.owner()->subgroup() == c.owner()->subgroup())) throw std::invalid_argument("in_cyclic_span: mixed owners");
  return b.owner()->in_cyclic_span(b.id(), c.id());
}

// ---------------------------------------------------------------- Moebius

std::vector<Subgroup> subgroup_lattice(const Subgroup& h) {
  if (!h.is_abelian()) throw std::invalid_argument("subgroup_lattice: subgroup is not abelian");
  return abelian_subgroups(h);
}

MoebiusTable::MoebiusTable(const Subgroup& h) : lattice_(subgroup_lattice(h)) {
  const std::size_t n = lattice_.size();
  leq_.assign(n * n, false);
  mu_.assign(n * n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      leq_[a * n + b] = lattice_[a].order() <= lattice_[b].order() && lattice_[a].is_subgroup_of(lattice_[b]);
  // lattice is sorted by order, so every proper subgroup precedes its overgroup
  for (std::size_t a = 0; a < n; ++a) {
    mu_[a * n + a] = 1;
    for (std::size_t b = a + 1; b < n; ++b) {
      if (!leq_[a * n + b]) continue;
      std::int64_t s = 0;
      for (std::size_t m = a; m < b; ++m)
        if (leq_[a * n + m] && leq_[m * n + b]) s += mu_[a * n + m];
      mu_[a * n + b] = -s;
    }
  }
}

std::size_t MoebiusTable::index_of(const Subgroup& k) const {
  for (std::size_t i = 0; i < lattice_.size(); ++i)
    if (lattice_[i] == k) return i;
  throw std::invalid_argument("subgroup not in lattice");
}

std::int64_t moebius_to_top(const Subgroup& k, const Subgroup& h) {
  if (!k.is_subgroup_of(h)) return 0;
  const auto& g = *h.parent();
  std::size_t m = h.order() / k.order();
  std::vector<std::pair<std::size_t, std::size_t>> primes;  // (p, exponent)
  std::size_t rad = 1;
  for (std::size_t p = 2, x = m; x > 1; ++p) {
    if (x % p) continue;
    std::size_t e = 0;
    while (x % p == 0) {
      x /= p;
      ++e;
    }
    primes.emplace_back(p, e);
    rad *= p;
  }
  for (Elem x : h.elements()) {
    Elem y = PermutationGroup::identity();
    for (std::size_t i = 0; i < rad; ++i) y = g.mul(y, x);
    if (!k.contains(y)) return 0;
  }
  std::int64_t mu = 1;
  for (auto [p, r] : primes) {
    std::int64_t t = (r % 2) ? -1 : 1;
    for (std::size_t i = 0; i < r * (r - 1) / 2; ++i) t *= static_cast<std::int64_t>(p);
    mu *= t;
  }
  return mu;
}

}  // namespace bcn
