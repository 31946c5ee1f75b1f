#include "bcn/burnside.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>
#include <thread>

namespace bcn {

Symbol unit_symbol() { return Symbol{kUnitClass, {}}; }

std::size_t symbol_length(const Symbol& s) { return s.pair_class == kUnitClass ? 0 : s.beta.size(); }

Burnside::Burnside(GroupPtr g, unsigned threads) : Burnside(std::make_shared<const SymbolContext>(std::move(g)), threads) {}

Burnside::Burnside(std::shared_ptr<const SymbolContext> ctx, unsigned threads) : ctx_(std::move(ctx)), threads_(std::max(1u, threads)) {}

const Presentation& Burnside::presentation(std::size_t n, Flavor f) {
  const auto key = std::make_pair(n, static_cast<int>(f));
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = presentations_.find(key);
    if (it != presentations_.end()) return *it->second;
  }
  auto p = std::make_unique<Presentation>(build_presentation(*ctx_, n, f, threads_));
  std::lock_guard<std::mutex> lock(mutex_);
  auto& slot = presentations_[key];
  if (!slot) slot = std::move(p);
  return *slot;
}

const Cokernel& Burnside::cokernel(std::size_t n, Flavor f) {
  const auto key = std::make_pair(n, static_cast<int>(f));
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cokernels_.find(key);
    if (it != cokernels_.end()) return *it->second;
  }
  const Presentation& p = presentation(n, f);
  auto c = std::make_unique<Cokernel>(p.relations, threads_);
  std::lock_guard<std::mutex> lock(mutex_);
  auto& slot = cokernels_[key];
  if (!slot) slot = std::move(c);
  return *slot;
}

AbelianInvariants Burnside::bc(std::size_t n) { return cokernel(n, Flavor::BC).invariants(); }

DecompositionReport Burnside::bc_prime(std::size_t n) {
  DecompositionReport rep;
  rep.n = n;
  const std::size_t count = ctx_->class_count();
  rep.summands.resize(count);
  auto work = [&](std::size_t from, std::size_t step) {
    for (std::size_t pc = from; pc < count; pc += step) {
      auto idx = static_cast<std::uint32_t>(pc);
      TupleSystem t = class_tuple_system(*ctx_, idx, n);
      Presentation p = build_tuple_presentation(t);
      Summand s;
      s.pair_class = idx;
      s.label = ctx_->pair_class(idx).label();
      s.h_order = ctx_->pair_class(idx).h.order();
      s.invariants = Cokernel(p.relations).invariants();
      rep.summands[pc] = std::move(s);
    }
  };
  for (std::uint32_t pc = 0; pc < count; ++pc) ctx_->data(pc);
  if (threads_ > 1) {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads_; ++t) pool.emplace_back(work, t, threads_);
    for (auto& th : pool) th.join();
  } else {
    work(0, 1);
  }
  std::vector<AbelianInvariants> parts;
  for (const auto& s : rep.summands) parts.push_back(s.invariants);
  rep.total = AbelianInvariants::direct_sum(parts);
  return rep;
}

namespace {

SparseVector unit_vector(std::uint32_t i) { return SparseVector{{i, Int(1)}}; }

SparseVector minus(SparseVector a, const SparseVector& b) {
  for (const auto& [c, x] : b) a.emplace_back(c, -x);
  normalize(a);
  return a;
}

}  // namespace

VerificationReport Burnside::verify_main(std::size_t n, bool corrupt_psi) {
  VerificationReport r;
  r.n = n;
  const Presentation& pb = presentation(n, Flavor::BC);
  const Presentation& pp = presentation(n, Flavor::BCPrime);
  if (pb.generators != pp.generators) throw std::logic_error("BC and BC' generator sets differ");
  r.generators = pb.generators.size();
  LinearMap psi = psi_map(*ctx_, pb);
  LinearMap phi = phi_map(*ctx_, pb);
  const Cokernel& cb = cokernel(n, Flavor::BC);
  const Cokernel& cp = cokernel(n, Flavor::BCPrime);
  if (corrupt_psi) {
    // drop the own summand of the first generator that is nonzero in BC'
    for (std::uint32_t e = 0; e < psi.images.size(); ++e) {
      if (cp.contains(unit_vector(e))) continue;
      auto& img = psi.images[e];
      img.erase(std::remove_if(img.begin(), img.end(), [e](const auto& t) { return t.first == e; }), img.end());
      break;
    }
  }
  r.bc = cb.invariants();
  r.bc_prime = cp.invariants();
  r.psi_relations_mapped = std::all_of(pb.relations.rows.begin(), pb.relations.rows.end(),
                                       [&](const SparseVector& row) { return cp.contains(psi.apply(row)); });
  r.phi_relations_mapped = std::all_of(pp.relations.rows.begin(), pp.relations.rows.end(),
                                       [&](const SparseVector& row) { return cb.contains(phi.apply(row)); });
  r.inverse_formal = true;
  r.inverse_mod_relations = true;
  for (std::uint32_t e = 0; e < r.generators; ++e) {
    SparseVector pf = phi.apply(psi.images[e]);
    SparseVector fp = psi.apply(phi.images[e]);
    SparseVector d1 = minus(pf, unit_vector(e));
    SparseVector d2 = minus(fp, unit_vector(e));
    if (!d1.empty() || !d2.empty()) r.inverse_formal = false;
    if (!cb.contains(d1) || !cp.contains(d2)) r.inverse_mod_relations = false;
  }
  SparseMatrix ext = pp.relations;
  for (const auto& img : psi.images) ext.add_row(img);
  r.surjective = Cokernel(ext).invariants().is_trivial();
  r.invariants_equal = r.bc == r.bc_prime;
  r.decomposition_consistent = bc_prime(n).total == r.bc_prime;
  return r;
}

std::optional<Int> Burnside::class_order(std::size_t n, const FormalSum& x) {
  for (const auto& [s, c] : x.terms())
    if (s.pair_class == kUnitClass) throw std::invalid_argument("class_order: the unit is not in BC_n for n >= 1");
  const Presentation& p = presentation(n, Flavor::BC);
  return cokernel(n, Flavor::BC).order(p.vector_of(x));
}

AbelianInvariants Burnside::filtration(std::size_t n, std::size_t r) {
  if (r < 1 || r > n) throw std::invalid_argument("filtration: need 1 <= r <= n");
  const Presentation& p = presentation(n, Flavor::BC);
  std::vector<SparseVector> span;
  for (std::uint32_t i = 0; i < p.generators.size(); ++i) {
    const auto& b = p.generators[i].beta;
    if (b.size() <= r && std::adjacent_find(b.begin(), b.end()) == b.end()) span.push_back(unit_vector(i));
  }
  return cokernel(n, Flavor::BC).subgroup_invariants(span);
}

AbelianInvariants Burnside::filtration_image(std::size_t n, std::size_t r) {
  const Presentation& p = presentation(n, Flavor::BC);
  std::vector<SparseVector> span;
  for (std::uint32_t i = 0; i < p.generators.size(); ++i)
    if (p.generators[i].beta.size() <= r) span.push_back(unit_vector(i));
  return cokernel(n, Flavor::BC).subgroup_invariants(span);
}

std::size_t Burnside::vanishing_bound() const {
  std::size_t bound = 1;
  const auto& g = *group();
  for (const auto& hc : ctx_->pairs().abelian_classes()) {
    std::size_t ex = 1;
    for (Elem e : hc.rep.elements()) ex = std::max(ex, g.element_order(e));
    bound = std::max(bound, hc.rep.order() - 2 + ex + 1);
  }
  return bound;
}

CdReport Burnside::cd(Coefficients c, unsigned long p) {
  CdReport rep;
  rep.coefficients = c;
  rep.p = p;
  rep.bound = vanishing_bound();
  for (const auto& hc : ctx_->pairs().abelian_classes()) rep.largest_abelian_order = std::max(rep.largest_abelian_order, hc.rep.order());
  rep.conjectured_bound = rep.largest_abelian_order <= 1 ? 0.0
                          : c == Coefficients::Q      ? std::log(static_cast<double>(rep.largest_abelian_order)) / std::log(3.0) + 1
                                                      : std::log2(static_cast<double>(rep.largest_abelian_order));
  for (std::size_t m = 1; m < rep.bound; ++m) {
    Presentation pres = build_presentation(*ctx_, m, Flavor::BC, threads_);
    AbelianInvariants inv = Cokernel(pres.relations, threads_).invariants();
    bool nonzero = false;
    switch (c) {
      case Coefficients::Z: nonzero = !inv.is_trivial(); break;
      case Coefficients::Q: nonzero = inv.free_rank > 0; break;
      case Coefficients::Fp: nonzero = inv.mod_p_dimension(p) > 0; break;
    }
    if (nonzero) rep.cd = m;
    rep.values.push_back(std::move(inv));
  }
  return rep;
}

AbelianInvariants bc(const GroupPtr& g, std::size_t n) { return Burnside(g).bc(n); }
DecompositionReport bc_prime(const GroupPtr& g, std::size_t n) { return Burnside(g).bc_prime(n); }
VerificationReport verify_main(const GroupPtr& g, std::size_t n) { return Burnside(g).verify_main(n); }

// ---------------------------------------------------------------- restriction

namespace {

std::vector<CharId> char_action_of(const AbelianStructure& st, Elem s) {
  const auto& g = *st.subgroup().parent();
  const Elem si = g.inv(s);
  return st.pullback_from(st, [&](Elem x) { return g.conj(si, x); });
}

bool normalizes(const PermutationGroup& g, Elem x, const Subgroup& h) {
  for (Elem s : h.generators())
    if (!h.contains(g.conj(x, s))) return false;
  return true;
}

}  // namespace

std::vector<Elem> embedding(const PermutationGroup& sub, const PermutationGroup& g) {
  std::vector<Elem> out(sub.order());
  for (Elem t = 0; t < sub.order(); ++t) {
    Permutation p = sub.element(t);
    if (p.degree() < g.degree()) p = p.extended(g.degree());
    auto e = g.find(p);
    if (!e) throw std::invalid_argument("restriction target is not a subgroup");
    out[t] = *e;
  }
  return out;
}

FormalSum restrict_concrete(const ConcreteSymbol& s, const SymbolContext& target, const std::vector<Elem>& embed) {
  const GroupPtr& ap = s.h.parent();
  const auto& a = *ap;
  const auto& t = *target.group();
  if (embed.size() != t.order()) throw std::invalid_argument("embedding has the wrong size");
  std::vector<std::int64_t> back(a.order(), -1);
  for (Elem x = 0; x < t.order(); ++x) back[embed[x]] = x;

  std::vector<CharId> sorted_beta = s.beta;
  std::sort(sorted_beta.begin(), sorted_beta.end());
  ElementSet stab(a.order());
  for (Elem g = 0; g < a.order(); ++g) {
    if (!normalizes(a, g, s.h) || !normalizes(a, g, s.y)) continue;
    auto act = char_action_of(*s.structure, g);
    std::vector<CharId> img;
    for (CharId b : s.beta) img.push_back(act[b]);
    std::sort(img.begin(), img.end());
    if (img == sorted_beta) stab.insert(g);
  }
  const std::vector<Elem> sgens = Subgroup::from_trusted(ap, stab).generators();
  std::vector<Elem> bgens;
  for (Elem x : t.generator_elements()) bgens.push_back(embed[x]);

  FormalSum out;
  ElementSet visited(a.order());
  for (Elem x = 0; x < a.order(); ++x) {
    if (visited.contains(x)) continue;
    visited.insert(x);
    std::deque<Elem> queue{x};
    while (!queue.empty()) {
      Elem cur = queue.front();
      queue.pop_front();
      for (Elem b : bgens) {
        Elem nb = a.mul(b, cur);
        if (!visited.contains(nb)) {
          visited.insert(nb);
          queue.push_back(nb);
        }
      }
      for (Elem sg : sgens) {
        Elem nb = a.mul(cur, sg);
        if (!visited.contains(nb)) {
          visited.insert(nb);
          queue.push_back(nb);
        }
      }
    }
    // orbit representative x: (x H x^-1, x Y x^-1, beta^x) intersected with the image of T
    ElementSet kset(t.order()), yset(t.order());
    for (Elem e : s.h.elements()) {
      auto b = back[a.conj(x, e)];
      if (b >= 0) kset.insert(static_cast<Elem>(b));
    }
    for (Elem e : s.y.elements()) {
      auto b = back[a.conj(x, e)];
      if (b >= 0) yset.insert(static_cast<Elem>(b));
    }
    Subgroup k = Subgroup::from_trusted(target.group(), kset);
    if (k.is_trivial()) continue;
    Subgroup y = Subgroup::from_trusted(target.group(), yset);
    const Elem xi = a.inv(x);
    auto sym = target.canonicalize(k, y, *s.structure, s.beta, [&](Elem z) { return a.conj(xi, embed[z]); }, true);
    if (sym) out.add(*sym, 1);
  }
  return out;
}

FormalSum restrict_sum(const SymbolContext& from, const SymbolContext& to, const FormalSum& x) {
  const std::vector<Elem> embed = embedding(*to.group(), *from.group());
  FormalSum out;
  for (const auto& [s, c] : x.terms()) {
    if (s.pair_class == kUnitClass) {
      out.add(s, c);
      continue;
    }
    const PairClass& p = from.pair_class(s.pair_class);
    ConcreteSymbol cs{p.h, p.y, from.structure(s.pair_class), s.beta};
    out.add(restrict_concrete(cs, to, embed), c);
  }
  return out;
}

// ---------------------------------------------------------------- products

FormalSum product(const SymbolContext& ctx, const FormalSum& x, const FormalSum& y) {
  const GroupPtr& g = ctx.group();
  std::optional<DirectProduct> dp;
  std::vector<Elem> diag;
  FormalSum out;
  for (const auto& [s, cs] : x.terms())
    for (const auto& [t, ct] : y.terms()) {
      if (s.pair_class == kUnitClass) {
        out.add(t, cs * ct);
        continue;
      }
      if (t.pair_class == kUnitClass) {
        out.add(s, cs * ct);
        continue;
      }
      if (!dp) {
        dp = direct_product(g, g);
        diag.resize(g->order());
        for (Elem e = 0; e < g->order(); ++e) diag[e] = dp->group->mul(dp->embed_left[e], dp->embed_right[e]);
      }
      const PairClass& p = ctx.pair_class(s.pair_class);
      const PairClass& q = ctx.pair_class(t.pair_class);
      std::vector<Elem> hg, yg;
      for (Elem e : p.h.generators()) hg.push_back(dp->embed_left[e]);
      for (Elem e : q.h.generators()) hg.push_back(dp->embed_right[e]);
      for (Elem e : p.y.generators()) yg.push_back(dp->embed_left[e]);
      for (Elem e : q.y.generators()) yg.push_back(dp->embed_right[e]);
      Subgroup hh = Subgroup::generated_by(dp->group, hg);
      Subgroup yy = Subgroup::generated_by(dp->group, yg);
      StructurePtr st = AbelianStructure::of(hh);
      auto left = st->pullback_from(*ctx.structure(s.pair_class), [&](Elem z) { return dp->project_left[z]; });
      auto right = st->pullback_from(*ctx.structure(t.pair_class), [&](Elem z) { return dp->project_right[z]; });
      std::vector<CharId> beta;
      for (CharId b : s.beta) beta.push_back(left[b]);
      for (CharId b : t.beta) beta.push_back(right[b]);
      ConcreteSymbol c{hh, yy, st, beta};
      out.add(restrict_concrete(c, ctx, diag), cs * ct);
    }
  return out;
}

FormalSum product_prime_abelian(const SymbolContext& ctx, const FormalSum& x, const FormalSum& y) {
  const GroupPtr& g = ctx.group();
  if (!g->is_abelian()) throw std::invalid_argument("product_prime_abelian: group is not abelian");
  FormalSum out;
  for (const auto& [s, cs] : x.terms())
    for (const auto& [t, ct] : y.terms()) {
      if (s.pair_class == kUnitClass) {
        out.add(t, cs * ct);
        continue;
      }
      if (t.pair_class == kUnitClass) {
        out.add(s, cs * ct);
        continue;
      }
      const PairClass& p = ctx.pair_class(s.pair_class);
      const PairClass& q = ctx.pair_class(t.pair_class);
      if (!(p.h == q.h)) continue;
      Subgroup yy = p.y.intersect(q.y);
      auto loc = ctx.pairs().locate(p.h, yy);
      std::vector<CharId> beta = s.beta;
      beta.insert(beta.end(), t.beta.begin(), t.beta.end());
      out.add(ctx.canonical(loc->pair_class, std::move(beta)), cs * ct);
    }
  return out;
}

}  // namespace bcn
