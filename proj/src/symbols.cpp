#include "bcn/symbols.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>
#include <thread>

namespace bcn {

std::string flavor_name(Flavor f) {
  switch (f) {
    case Flavor::BC: return "BC";
    case Flavor::BCPrime: return "BC'";
    case Flavor::Tuple: return "B";
  }
  return "?";
}

std::size_t SymbolHash::operator()(const Symbol& s) const noexcept {
  std::size_t h = s.pair_class * 0x9e3779b97f4a7c15ull;
  for (CharId c : s.beta) h = (h ^ c) * 0x100000001b3ull + 0x7f4a7c15;
  return h;
}

// ---------------------------------------------------------------- FormalSum

void FormalSum::add(const Symbol& s, std::int64_t c) {
  if (c == 0) return;
  auto it = terms_.find(s);
  if (it == terms_.end()) {
    terms_.emplace(s, c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

void FormalSum::add(const FormalSum& o, std::int64_t scale) {
  for (const auto& [s, c] : o.terms_) add(s, c * scale);
}

FormalSum FormalSum::operator+(const FormalSum& o) const {
  FormalSum r = *this;
  r.add(o);
  return r;
}

FormalSum FormalSum::operator-(const FormalSum& o) const {
  FormalSum r = *this;
  r.add(o, -1);
  return r;
}

FormalSum FormalSum::scaled(std::int64_t c) const {
  FormalSum r;
  r.add(*this, c);
  return r;
}

// ---------------------------------------------------------------- context

namespace {

using Perm = std::vector<CharId>;

Perm char_action(const AbelianStructure& st, Elem s) {
  const auto& g = *st.subgroup().parent();
  const Elem si = g.inv(s);
  // c -> c^s, c^s(x) = c(s^-1 x s)
  return st.pullback_from(st, [&](Elem x) { return g.conj(si, x); });
}

std::vector<Perm> close_group(const std::vector<Perm>& gens, std::size_t degree) {
  Perm id(degree);
  for (std::size_t i = 0; i < degree; ++i) id[i] = static_cast<CharId>(i);
  std::set<Perm> seen{id};
  std::vector<Perm> out{id};
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto& g : gens) {
      Perm p(degree);
      for (std::size_t c = 0; c < degree; ++c) p[c] = g[out[i][c]];
      if (seen.insert(p).second) out.push_back(std::move(p));
    }
  return out;
}

}  // namespace

SymbolContext::SymbolContext(GroupPtr g) : SymbolContext(std::make_shared<const PairClassification>(std::move(g))) {}

SymbolContext::SymbolContext(std::shared_ptr<const PairClassification> pc) : pairs_(std::move(pc)) {
  data_.resize(pairs_->classes().size());
  for (const auto& hc : pairs_->abelian_classes()) h_structures_.push_back(AbelianStructure::of(hc.rep));
}

const ClassData& SymbolContext::data(std::uint32_t pc) const {
  if (pc >= data_.size()) throw std::out_of_range("pair class index out of range");
  {
    std::lock_guard<std::mutex> lock(mutex_);
    if (data_[pc]) return *data_[pc];
  }
  auto built = std::make_unique<ClassData>(build(pc));
  std::lock_guard<std::mutex> lock(mutex_);
  if (!data_[pc]) data_[pc] = std::move(built);
  return *data_[pc];
}

ClassData SymbolContext::build(std::uint32_t pc) const {
  const PairClass& P = pair_class(pc);
  const auto& g = *group();
  ClassData d;
  d.structure = h_structures_[P.h_class];
  const AbelianStructure& st = *d.structure;
  for (Elem s : P.stabilizer.generators()) d.generator_automorphisms.push_back(char_action(st, s));
  d.automorphisms = close_group(d.generator_automorphisms, st.character_count());

  std::unordered_map<ElementSet, std::size_t, ElementSetHash> link_of;
  for (const Subgroup& k : subgroup_lattice(P.h)) {
    if (k.is_trivial()) continue;
    auto loc = pairs_->locate(k, P.y);
    ClassData::Link link;
    link.k = k;
    link.target = loc->pair_class;
    const auto& tst = *h_structures_[pair_class(loc->pair_class).h_class];
    const Elem xi = g.inv(loc->conjugator);
    link.map = tst.pullback_from(st, [&](Elem z) { return g.conj(xi, z); });
    link.mu = moebius_to_top(k, P.h);
    link_of.emplace(k.members(), d.links.size());
    d.links.push_back(std::move(link));
  }
  d.kernel_link.assign(st.character_count(), -1);
  for (CharId c = 0; c < st.character_count(); ++c) {
    Subgroup ker = st.kernel(c);
    if (ker.is_trivial()) continue;
    d.kernel_link[c] = static_cast<std::int64_t>(link_of.at(ker.members()));
  }
  return d;
}

std::vector<CharId> SymbolContext::canonical_beta(std::uint32_t pc, std::vector<CharId> beta) const {
  std::sort(beta.begin(), beta.end());
  const auto& autos = data(pc).automorphisms;
  std::vector<CharId> best = beta, img(beta.size());
  for (std::size_t a = 1; a < autos.size(); ++a) {
    for (std::size_t i = 0; i < beta.size(); ++i) img[i] = autos[a][beta[i]];
    std::sort(img.begin(), img.end());
    if (img < best) best = img;
  }
  return best;
}

Symbol SymbolContext::canonical(std::uint32_t pc, std::vector<CharId> beta) const {
  return Symbol{pc, canonical_beta(pc, std::move(beta))};
}

std::optional<Symbol> SymbolContext::canonicalize(const Subgroup& k, const Subgroup& y, const AbelianStructure& src,
                                                  std::span<const CharId> beta, const std::function<Elem(Elem)>& to_src,
                                                  bool zero_on_trivial) const {
  auto loc = pairs_->locate(k, y);
  if (!loc) return std::nullopt;
  const auto& g = *group();
  const AbelianStructure& st = *structure(loc->pair_class);
  const Elem xi = g.inv(loc->conjugator);
  auto map = st.pullback_from(src, [&](Elem z) { return to_src(g.conj(xi, z)); });
  std::vector<CharId> out;
  out.reserve(beta.size());
  for (CharId b : beta) {
    CharId c = map[b];
    if (c == 0) {
      if (zero_on_trivial) return std::nullopt;
      throw std::invalid_argument("symbol has a trivial character");
    }
    out.push_back(c);
  }
  return canonical(loc->pair_class, std::move(out));
}

std::optional<Symbol> SymbolContext::canonicalize(const Subgroup& h, const Subgroup& y, std::span<const Character> beta,
                                                  Flavor flavor) const {
  if (flavor == Flavor::Tuple) throw std::invalid_argument("canonicalize: tuples have no pair");
  if (h.is_trivial()) return std::nullopt;
  if (beta.empty()) throw std::invalid_argument("canonicalize: empty character list");
  const StructurePtr& src = beta.front().owner();
  if (!(src->subgroup() == h)) throw std::invalid_argument("canonicalize: characters do not belong to H");
  std::vector<CharId> ids;
  for (const auto& b : beta) {
    if (!(b.owner()->subgroup() == h)) throw std::invalid_argument("canonicalize: mixed owners");
    ids.push_back(b.id());
  }
  if (!src->generates(ids)) throw std::invalid_argument("canonicalize: characters do not generate the dual");
  return canonicalize(h, y, *src, ids, [](Elem x) { return x; }, false);
}

std::vector<Symbol> SymbolContext::class_symbols(std::uint32_t pc, std::size_t min_len, std::size_t max_len) const {
  const AbelianStructure& st = *structure(pc);
  const auto count = static_cast<CharId>(st.character_count());
  std::vector<Symbol> out;
  std::vector<CharId> beta;
  std::function<void(CharId)> rec = [&](CharId from) {
    if (beta.size() >= min_len && !beta.empty() && st.generates(beta) && canonical_beta(pc, beta) == beta)
      out.push_back(Symbol{pc, beta});
    if (beta.size() == max_len) return;
    for (CharId c = from; c < count; ++c) {
      beta.push_back(c);
      rec(c);
      beta.pop_back();
    }
  };
  rec(1);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------- presentations

std::optional<std::uint32_t> Presentation::find(const Symbol& s) const {
  auto it = index.find(s);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

std::uint32_t Presentation::add_generator(const Symbol& s) {
  auto [it, fresh] = index.emplace(s, static_cast<std::uint32_t>(generators.size()));
  if (fresh) {
    generators.push_back(s);
    relations.cols = generators.size();
  }
  return it->second;
}

SparseVector Presentation::vector_of(const FormalSum& x) const {
  SparseVector v;
  for (const auto& [s, c] : x.terms()) {
    auto i = find(s);
    if (!i) throw std::invalid_argument("symbol is not a generator of the presentation");
    v.emplace_back(*i, Int(static_cast<long>(c)));
  }
  normalize(v);
  return v;
}

void Presentation::add_relation(const FormalSum& row) {
  if (!row.empty()) relations.add_row(vector_of(row));
}

Presentation enumerate_generators(const SymbolContext& ctx, std::size_t n, Flavor flavor) {
  if (flavor == Flavor::Tuple) throw std::invalid_argument("enumerate_generators: use build_tuple_presentation for tuples");
  Presentation p;
  p.flavor = flavor;
  p.n = n;
  for (std::uint32_t pc = 0; pc < ctx.class_count(); ++pc)
    for (auto& s : ctx.class_symbols(pc, 1, n)) p.add_generator(s);
  return p;
}

FormalSum blowup(const SymbolContext& ctx, const Symbol& s, std::size_t i, std::size_t j, BlowupVariant variant) {
  const auto& beta = s.beta;
  if (i == j || i >= beta.size() || j >= beta.size()) throw std::invalid_argument("blowup: invalid positions");
  if (variant == BlowupVariant::B) throw std::invalid_argument("blowup: variant B applies to tuples");
  const ClassData& d = ctx.data(s.pair_class);
  const AbelianStructure& st = *d.structure;
  FormalSum row(s);
  const CharId bi = beta[i], bj = beta[j];
  if (bi == bj) {
    std::vector<CharId> shorter = beta;
    shorter.erase(shorter.begin() + static_cast<std::ptrdiff_t>(i));
    row.add(ctx.canonical(s.pair_class, std::move(shorter)), -1);
    return row;
  }
  std::vector<CharId> b1 = beta, b2 = beta;
  b1[i] = st.sub(bi, bj);
  b2[j] = st.sub(bj, bi);
  row.add(ctx.canonical(s.pair_class, std::move(b1)), -1);
  row.add(ctx.canonical(s.pair_class, std::move(b2)), -1);
  if (variant == BlowupVariant::B2) {
    const CharId diff = st.sub(bi, bj);
    bool in_span = false;
    for (CharId b : beta)
      if (st.in_cyclic_span(b, diff)) in_span = true;
    const std::int64_t li = d.kernel_link[diff];
    bool restricted_trivial = li < 0;
    if (li >= 0)
      for (CharId b : beta)
        if (d.links[static_cast<std::size_t>(li)].map[b] == 0) restricted_trivial = true;
    if (in_span != restricted_trivial) throw std::logic_error("blowup: Theta2 case split disagrees");
    if (!in_span) {
      const auto& link = d.links[static_cast<std::size_t>(li)];
      std::vector<CharId> bar;
      for (CharId b : beta) bar.push_back(link.map[b]);
      row.add(ctx.canonical(link.target, std::move(bar)), -1);
    }
  }
  return row;
}

namespace {

bool has_vanishing_pair(const AbelianStructure& st, const std::vector<CharId>& beta) {
  for (std::size_t i = 0; i < beta.size(); ++i)
    for (std::size_t j = i + 1; j < beta.size(); ++j)
      if (st.add(beta[i], beta[j]) == 0) return true;
  return false;
}

/// One representative position pair per distinct value pair of a sorted beta.
std::vector<std::pair<std::size_t, std::size_t>> value_pairs(const std::vector<CharId>& beta) {
  std::vector<std::size_t> first;
  for (std::size_t i = 0; i < beta.size(); ++i)
    if (i == 0 || beta[i] != beta[i - 1]) first.push_back(i);
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < first.size(); ++a) {
    const std::size_t i = first[a];
    if (i + 1 < beta.size() && beta[i + 1] == beta[i]) out.emplace_back(i, i + 1);
    for (std::size_t b = a + 1; b < first.size(); ++b) out.emplace_back(i, first[b]);
  }
  return out;
}

}  // namespace

std::vector<std::uint32_t> vanishing_generators(const SymbolContext& ctx, const Presentation& p) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < p.generators.size(); ++i) {
    const auto& s = p.generators[i];
    if (has_vanishing_pair(*ctx.structure(s.pair_class), s.beta)) out.push_back(i);
  }
  return out;
}

Presentation build_presentation(const SymbolContext& ctx, std::size_t n, Flavor flavor, unsigned threads) {
  if (n == 0) throw std::invalid_argument("build_presentation: n must be at least 1");
  Presentation p = enumerate_generators(ctx, n, flavor);
  for (auto g : vanishing_generators(ctx, p)) p.add_relation(FormalSum(p.generators[g]));
  const BlowupVariant variant = flavor == Flavor::BC ? BlowupVariant::B2 : BlowupVariant::B2Prime;
  // make sure class tables exist before fanning out
  for (std::uint32_t pc = 0; pc < ctx.class_count(); ++pc) ctx.data(pc);
  auto rows_for = [&](std::size_t g) {
    std::vector<FormalSum> rows;
    const Symbol& s = p.generators[g];
    for (auto [i, j] : value_pairs(s.beta)) rows.push_back(blowup(ctx, s, i, j, variant));
    return rows;
  };
  if (threads <= 1) {
    for (std::size_t g = 0; g < p.generators.size(); ++g)
      for (auto& r : rows_for(g)) p.add_relation(r);
  } else {
    std::vector<std::vector<FormalSum>> out(p.generators.size());
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t g = t; g < p.generators.size(); g += threads) out[g] = rows_for(g);
      });
    for (auto& th : pool) th.join();
    for (auto& rows : out)
      for (auto& r : rows) p.add_relation(r);
  }
  return p;
}

// ---------------------------------------------------------------- tuples

std::vector<CharId> tuple_canonical(const TupleSystem& t, std::vector<CharId> beta) {
  std::sort(beta.begin(), beta.end());
  if (!t.fold) return beta;
  std::vector<CharId> best = beta, img(beta.size());
  for (const auto& a : t.automorphisms) {
    for (std::size_t i = 0; i < beta.size(); ++i) img[i] = a[beta[i]];
    std::sort(img.begin(), img.end());
    if (img < best) best = img;
  }
  return best;
}

FormalSum tuple_blowup(const TupleSystem& t, const Symbol& s, std::size_t i, std::size_t j) {
  const auto& beta = s.beta;
  if (i == j || i >= beta.size() || j >= beta.size()) throw std::invalid_argument("blowup: invalid positions");
  const AbelianStructure& st = *t.structure;
  FormalSum row(s);
  const CharId bi = beta[i], bj = beta[j];
  if (bi == bj) {
    if (bi == 0) return {};
    std::vector<CharId> z = beta;
    z[i] = 0;
    row.add(Symbol{0, tuple_canonical(t, std::move(z))}, t.options.two_term_equal_case ? -2 : -1);
    return row;
  }
  std::vector<CharId> b1 = beta, b2 = beta;
  b1[i] = st.sub(bi, bj);
  b2[j] = st.sub(bj, bi);
  row.add(Symbol{0, tuple_canonical(t, std::move(b1))}, -1);
  row.add(Symbol{0, tuple_canonical(t, std::move(b2))}, -1);
  return row;
}

std::vector<FormalSum> conjugation_rows(const TupleSystem& t, const Symbol& s) {
  std::vector<FormalSum> rows;
  for (const auto& a : t.automorphisms) {
    std::vector<CharId> img;
    for (CharId b : s.beta) img.push_back(a[b]);
    FormalSum row(s);
    row.add(Symbol{0, tuple_canonical(t, std::move(img))}, -1);
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return rows;
}

Presentation build_tuple_presentation(const TupleSystem& t) {
  if (t.n == 0) throw std::invalid_argument("tuple presentation needs n >= 1");
  const AbelianStructure& st = *t.structure;
  Presentation p;
  p.flavor = Flavor::Tuple;
  p.n = t.n;
  if (st.order() == 1) return p;  // B_n(1) = 0
  const auto count = static_cast<CharId>(st.character_count());
  std::vector<CharId> beta;
  std::function<void(CharId)> rec = [&](CharId from) {
    if (beta.size() == t.n) {
      if (st.generates(beta) && tuple_canonical(t, beta) == beta) p.add_generator(Symbol{0, beta});
      return;
    }
    for (CharId c = from; c < count; ++c) {
      beta.push_back(c);
      rec(c);
      beta.pop_back();
    }
  };
  rec(0);
  const std::size_t gens = p.generators.size();
  for (std::size_t g = 0; g < gens; ++g) {
    const Symbol s = p.generators[g];
    if (t.n >= 2)
      for (auto [i, j] : value_pairs(s.beta)) p.add_relation(tuple_blowup(t, s, i, j));
    if (!t.fold)
      for (auto& r : conjugation_rows(t, s)) p.add_relation(r);
  }
  return p;
}

Presentation tuple_presentation(const StructurePtr& h, std::size_t n, BlowupOptions options) {
  TupleSystem t;
  t.structure = h;
  t.n = n;
  t.options = options;
  return build_tuple_presentation(t);
}

TupleSystem class_tuple_system(const SymbolContext& ctx, std::uint32_t pc, std::size_t n, bool fold, bool all_elements) {
  const ClassData& d = ctx.data(pc);
  TupleSystem t;
  t.structure = d.structure;
  t.n = n;
  t.fold = fold;
  if (fold) {
    t.automorphisms = d.automorphisms;
  } else if (all_elements) {
    for (Elem s : ctx.pair_class(pc).stabilizer.elements()) t.automorphisms.push_back(char_action(*d.structure, s));
  } else {
    t.automorphisms = d.generator_automorphisms;
  }
  return t;
}

// ---------------------------------------------------------------- Psi, Phi

namespace {

FormalSum lattice_sum(const SymbolContext& ctx, const Symbol& s, bool weighted) {
  const ClassData& d = ctx.data(s.pair_class);
  FormalSum out;
  std::vector<CharId> img(s.beta.size());
  for (const auto& link : d.links) {
    const std::int64_t w = weighted ? link.mu : 1;
    if (w == 0) continue;
    bool zero = false;
    for (std::size_t i = 0; i < s.beta.size(); ++i) {
      img[i] = link.map[s.beta[i]];
      if (img[i] == 0) zero = true;
    }
    if (zero) continue;
    out.add(ctx.canonical(link.target, img), w);
  }
  return out;
}

LinearMap as_map(const SymbolContext& ctx, const Presentation& p, bool weighted) {
  LinearMap m;
  m.from = m.to = p.generators.size();
  m.images.reserve(p.generators.size());
  for (const auto& s : p.generators) m.images.push_back(p.vector_of(lattice_sum(ctx, s, weighted)));
  return m;
}

}  // namespace

FormalSum psi(const SymbolContext& ctx, const Symbol& s) { return lattice_sum(ctx, s, false); }
FormalSum phi(const SymbolContext& ctx, const Symbol& s) { return lattice_sum(ctx, s, true); }

FormalSum psi(const SymbolContext& ctx, const FormalSum& x) {
  FormalSum out;
  for (const auto& [s, c] : x.terms()) out.add(psi(ctx, s), c);
  return out;
}

FormalSum phi(const SymbolContext& ctx, const FormalSum& x) {
  FormalSum out;
  for (const auto& [s, c] : x.terms()) out.add(phi(ctx, s), c);
  return out;
}

LinearMap psi_map(const SymbolContext& ctx, const Presentation& p) { return as_map(ctx, p, false); }
LinearMap phi_map(const SymbolContext& ctx, const Presentation& p) { return as_map(ctx, p, true); }

}  // namespace bcn
