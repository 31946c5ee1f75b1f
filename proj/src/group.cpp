#include "bcn/group.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <unordered_set>

namespace bcn {

// ---------------------------------------------------------------------------
// ElementSet

ElementSet::ElementSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

std::size_t ElementSet::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool ElementSet::subset_of(const ElementSet& other) const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~other.words_[i]) return false;
  return true;
}

ElementSet ElementSet::intersect(const ElementSet& other) const {
  ElementSet out(universe_);
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] = words_[i] & other.words_[i];
  return out;
}

std::vector<Elem> ElementSet::to_vector() const {
  std::vector<Elem> out;
  for (std::size_t i = 0; i < words_.size(); ++i) {
    std::uint64_t w = words_[i];
    while (w) {
      int b = std::countr_zero(w);
      out.push_back(static_cast<Elem>(i * 64 + static_cast<std::size_t>(b)));
      w &= w - 1;
    }
  }
  return out;
}

std::size_t ElementSet::hash() const {
  std::size_t h = 0x9e3779b97f4a7c15ull ^ universe_;
  for (auto w : words_) {
    h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

// ---------------------------------------------------------------------------
// PermutationGroup

GroupPtr PermutationGroup::generate(std::vector<Permutation> generators, const GroupLimits& limits,
                                    std::size_t degree) {
  for (const auto& g : generators) degree = std::max(degree, g.degree());
  degree = std::max<std::size_t>(degree, 1);
  if (degree > limits.max_degree)
    throw ResourceError("degree " + std::to_string(degree) + " exceeds cap " + std::to_string(limits.max_degree));

  std::shared_ptr<PermutationGroup> grp(new PermutationGroup());
  grp->degree_ = degree;
  grp->limits_ = limits;
  for (auto& g : generators) {
    Permutation p = g.extended(degree);
    if (p.is_identity()) continue;
    if (std::find(grp->generators_.begin(), grp->generators_.end(), p) != grp->generators_.end()) continue;
    grp->generators_.push_back(std::move(p));
  }

  std::vector<Permutation> elems{Permutation::identity(degree)};
  std::unordered_map<Permutation, Elem> seen{{elems[0], 0}};
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const auto& s : grp->generators_) {
      Permutation q = elems[i] * s;
      if (seen.emplace(q, static_cast<Elem>(elems.size())).second) {
        elems.push_back(std::move(q));
        if (elems.size() > limits.max_order)
          throw ResourceError("group order exceeds cap " + std::to_string(limits.max_order));
      }
    }
  }
  std::sort(elems.begin(), elems.end());
  grp->elements_ = std::move(elems);
  grp->index_.reserve(grp->elements_.size());
  for (std::size_t i = 0; i < grp->elements_.size(); ++i) grp->index_.emplace(grp->elements_[i], static_cast<Elem>(i));

  const std::size_t n = grp->elements_.size();
  grp->inverse_.resize(n);
  grp->element_order_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    grp->inverse_[i] = grp->index_.at(grp->elements_[i].inverse());
    grp->element_order_[i] = static_cast<std::uint32_t>(grp->elements_[i].order());
  }
  if (n <= limits.table_order) {
    grp->table_.resize(n * n);
    std::vector<Point> buf(degree);
    for (std::size_t a = 0; a < n; ++a) {
      const auto& pa = grp->elements_[a].images();
      for (std::size_t b = 0; b < n; ++b) {
        const auto& pb = grp->elements_[b].images();
        for (std::size_t x = 0; x < degree; ++x) buf[x] = pa[pb[x]];
        Permutation prod;
        prod = Permutation(buf);
        grp->table_[a * n + b] = grp->index_.at(prod);
      }
    }
  }
  for (const auto& s : grp->generators_) grp->generator_elements_.push_back(grp->index_.at(s));
  return grp;
}

std::optional<Elem> PermutationGroup::find(const Permutation& p) const {
  auto it = index_.find(p.extended(degree_));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Elem PermutationGroup::index_of(const Permutation& p) const {
  if (p.degree() > degree_) throw std::invalid_argument("permutation " + p.to_cycles() + " moves points outside the group");
  auto e = find(p);
  if (!e) throw std::invalid_argument("permutation " + p.to_cycles() + " is not in the group");
  return *e;
}

Elem PermutationGroup::mul_slow(Elem a, Elem b) const { return index_.at(elements_[a] * elements_[b]); }

std::size_t PermutationGroup::max_element_order() const {
  std::size_t m = 1;
  for (auto o : element_order_) m = std::max<std::size_t>(m, o);
  return m;
}

bool PermutationGroup::is_abelian() const {
  for (std::size_t i = 0; i < generator_elements_.size(); ++i)
    for (std::size_t j = i + 1; j < generator_elements_.size(); ++j)
      if (!commute(generator_elements_[i], generator_elements_[j])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Subgroup

namespace {

std::vector<Elem> closure(const PermutationGroup& g, std::span<const Elem> gens, ElementSet& members) {
  std::vector<Elem> list{PermutationGroup::identity()};
  members = ElementSet(g.order());
  members.insert(PermutationGroup::identity());
  for (std::size_t i = 0; i < list.size(); ++i) {
    for (Elem s : gens) {
      Elem m = g.mul(list[i], s);
      if (!members.contains(m)) {
        members.insert(m);
        list.push_back(m);
      }
    }
  }
  std::sort(list.begin(), list.end());
  return list;
}

std::vector<Elem> greedy_witnesses(const GroupPtr& parent, const std::vector<Elem>& elements) {
  std::vector<Elem> gens;
  ElementSet span(parent->order());
  span.insert(PermutationGroup::identity());
  for (Elem e : elements) {
    if (span.contains(e)) continue;
    gens.push_back(e);
    closure(*parent, gens, span);
  }
  return gens;
}

}  // namespace

Subgroup Subgroup::generated_by(GroupPtr parent, std::span<const Elem> generators) {
  Subgroup s;
  std::vector<Elem> gens;
  for (Elem e : generators) {
    if (e >= parent->order()) throw std::invalid_argument("generator index out of range");
    if (e == PermutationGroup::identity()) continue;
    if (std::find(gens.begin(), gens.end(), e) == gens.end()) gens.push_back(e);
  }
  s.elements_ = closure(*parent, gens, s.members_);
  s.generators_ = std::move(gens);
  s.parent_ = std::move(parent);
  return s;
}

Subgroup Subgroup::from_elements(GroupPtr parent, const ElementSet& members) {
  if (members.universe() != parent->order()) throw std::invalid_argument("element set has wrong universe");
  std::vector<Elem> elems = members.to_vector();
  if (elems.empty() || elems.front() != PermutationGroup::identity())
    throw std::invalid_argument("subset does not contain the identity");
  for (Elem a : elems)
    for (Elem b : elems)
      if (!members.contains(parent->mul(a, b))) throw std::invalid_argument("subset is not closed under multiplication");
  Subgroup s;
  s.generators_ = greedy_witnesses(parent, elems);
  s.elements_ = std::move(elems);
  s.members_ = members;
  s.parent_ = std::move(parent);
  return s;
}

Subgroup Subgroup::from_trusted(GroupPtr parent, const ElementSet& members) {
  if (members.universe() != parent->order()) throw std::invalid_argument("element set has wrong universe");
  Subgroup s;
  s.elements_ = members.to_vector();
  s.generators_ = greedy_witnesses(parent, s.elements_);
  s.members_ = members;
  s.parent_ = std::move(parent);
  return s;
}

Subgroup Subgroup::trivial(GroupPtr parent) { return generated_by(std::move(parent), {}); }

Subgroup Subgroup::whole(GroupPtr parent) {
  auto gens = parent->generator_elements();
  return generated_by(std::move(parent), gens);
}

bool Subgroup::is_abelian() const {
  for (std::size_t i = 0; i < generators_.size(); ++i)
    for (std::size_t j = i + 1; j < generators_.size(); ++j)
      if (!parent_->commute(generators_[i], generators_[j])) return false;
  return true;
}

bool Subgroup::is_subgroup_of(const Subgroup& other) const {
  return parent_ == other.parent_ && members_.subset_of(other.members_);
}

std::size_t Subgroup::local_index(Elem e) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), e);
  if (it == elements_.end() || *it != e) return static_cast<std::size_t>(-1);
  return static_cast<std::size_t>(it - elements_.begin());
}

Subgroup Subgroup::conjugate(Elem g) const {
  Subgroup s;
  s.parent_ = parent_;
  s.members_ = ElementSet(parent_->order());
  s.elements_.reserve(elements_.size());
  for (Elem e : elements_) {
    Elem c = parent_->conj(g, e);
    s.elements_.push_back(c);
    s.members_.insert(c);
  }
  std::sort(s.elements_.begin(), s.elements_.end());
  for (Elem e : generators_) s.generators_.push_back(parent_->conj(g, e));
  return s;
}

Subgroup Subgroup::intersect(const Subgroup& other) const {
  if (parent_ != other.parent_) throw std::invalid_argument("subgroups of different groups");
  Subgroup s;
  s.parent_ = parent_;
  s.members_ = members_.intersect(other.members_);
  s.elements_ = s.members_.to_vector();
  s.generators_ = greedy_witnesses(parent_, s.elements_);
  return s;
}

Subgroup Subgroup::extended_by(Elem x) const {
  if (contains(x)) return *this;
  std::vector<Elem> gens = generators_;
  gens.push_back(x);
  return generated_by(parent_, gens);
}

std::vector<Permutation> Subgroup::generator_permutations() const {
  std::vector<Permutation> out;
  for (Elem e : generators_) out.push_back(parent_->element(e));
  return out;
}

std::string Subgroup::to_string() const { return "<" + to_cycle_list(generator_permutations()) + ">"; }

bool operator<(const Subgroup& a, const Subgroup& b) {
  if (a.order() != b.order()) return a.order() < b.order();
  return a.elements_ < b.elements_;
}

// ---------------------------------------------------------------------------
// Algorithms

namespace {

void require_inside(const Subgroup& ambient, const Subgroup& h) {
  if (!h.is_subgroup_of(ambient)) throw std::invalid_argument("H is not a subgroup of the ambient group");
}

}  // namespace

Subgroup centralizer(const Subgroup& ambient, const Subgroup& h) {
  require_inside(ambient, h);
  const auto& g = *ambient.parent();
  ElementSet out(g.order());
  for (Elem x : ambient.elements()) {
    bool ok = true;
    for (Elem s : h.generators())
      if (!g.commute(x, s)) {
        ok = false;
        break;
      }
    if (ok) out.insert(x);
  }
  Subgroup r = Subgroup::from_trusted(ambient.parent(), out);
  return r;
}

Subgroup centralizer(const GroupPtr& g, const Subgroup& h) { return centralizer(Subgroup::whole(g), h); }

Subgroup normalizer(const Subgroup& ambient, const Subgroup& h) {
  require_inside(ambient, h);
  const auto& g = *ambient.parent();
  ElementSet out(g.order());
  for (Elem x : ambient.elements()) {
    bool ok = true;
    for (Elem s : h.generators())
      if (!h.contains(g.conj(x, s))) {
        ok = false;
        break;
      }
    if (ok) out.insert(x);
  }
  return Subgroup::from_trusted(ambient.parent(), out);
}

Subgroup normalizer(const GroupPtr& g, const Subgroup& h) { return normalizer(Subgroup::whole(g), h); }

std::vector<Subgroup> cyclic_subgroups(const Subgroup& ambient) {
  const auto& g = *ambient.parent();
  std::vector<Subgroup> out;
  ElementSet done(g.order());
  for (Elem e : ambient.elements()) {
    if (done.contains(e)) continue;
    std::vector<Elem> powers{PermutationGroup::identity()};
    for (Elem p = e; p != PermutationGroup::identity(); p = g.mul(p, e)) powers.push_back(p);
    const std::size_t ord = powers.size();
    for (std::size_t k = 1; k < ord; ++k)
      if (std::gcd(k, ord) == 1) done.insert(powers[k]);
    if (e == PermutationGroup::identity()) done.insert(e);
    Elem gen[1] = {e};
    out.push_back(Subgroup::generated_by(ambient.parent(), std::span<const Elem>(gen, e == 0 ? 0 : 1)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Subgroup> abelian_subgroups(const Subgroup& ambient) {
  const auto& g = *ambient.parent();
  const std::vector<Subgroup> cyclic = cyclic_subgroups(ambient);
  std::unordered_set<ElementSet, ElementSetHash> seen;
  std::vector<Subgroup> found;
  for (const auto& c : cyclic)
    if (seen.insert(c.members()).second) found.push_back(c);

  for (std::size_t i = 0; i < found.size(); ++i) {
    for (const auto& z : cyclic) {
      if (z.is_trivial()) continue;
      const Elem x = z.generators().front();
      if (found[i].contains(x)) continue;
      bool commutes = true;
      for (Elem s : found[i].generators())
        if (!g.commute(x, s)) {
          commutes = false;
          break;
        }
      if (!commutes) continue;
      // <H, x> = H * <x> since x centralizes H.
      ElementSet members(g.order());
      for (Elem h : found[i].elements())
        for (Elem p : z.elements()) members.insert(g.mul(h, p));
      if (!seen.insert(members).second) continue;
      std::vector<Elem> gens = found[i].generators();
      gens.push_back(x);
      found.push_back(Subgroup::generated_by(ambient.parent(), gens));
    }
  }
  std::sort(found.begin(), found.end());
  return found;
}

std::vector<Subgroup> abelian_subgroups(const GroupPtr& g) { return abelian_subgroups(Subgroup::whole(g)); }

std::vector<Subgroup> subgroups_between(const Subgroup& h, const Subgroup& c) {
  if (!h.is_subgroup_of(c)) throw std::invalid_argument("subgroups_between: H is not contained in C");
  const std::vector<Subgroup> cyclic = cyclic_subgroups(c);
  std::unordered_set<ElementSet, ElementSetHash> seen{h.members()};
  std::vector<Subgroup> found{h};
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (const auto& z : cyclic) {
      if (z.is_trivial()) continue;
      const Elem x = z.generators().front();
      if (found[i].contains(x)) continue;
      Subgroup ext = found[i].extended_by(x);
      if (seen.insert(ext.members()).second) found.push_back(std::move(ext));
    }
  }
  std::sort(found.begin(), found.end());
  return found;
}

DirectProduct direct_product(const GroupPtr& g1, const GroupPtr& g2) {
  const std::size_t d1 = g1->degree(), d2 = g2->degree();
  const std::size_t d = d1 + d2;
  GroupLimits lim = g1->limits();
  if (d > lim.max_degree) throw ResourceError("product degree exceeds cap");
  if (g1->order() * g2->order() > lim.max_order) throw ResourceError("product order exceeds cap");
  std::vector<Permutation> gens;
  for (const auto& p : g1->generators()) gens.push_back(p.shifted(0, d));
  for (const auto& p : g2->generators()) gens.push_back(p.shifted(d1, d));
  DirectProduct dp;
  dp.group = PermutationGroup::generate(std::move(gens), lim, d);
  dp.left = g1;
  dp.right = g2;
  for (std::size_t e = 0; e < g1->order(); ++e)
    dp.embed_left.push_back(dp.group->index_of(g1->element(static_cast<Elem>(e)).shifted(0, d)));
  for (std::size_t e = 0; e < g2->order(); ++e)
    dp.embed_right.push_back(dp.group->index_of(g2->element(static_cast<Elem>(e)).shifted(d1, d)));
  dp.project_left.resize(dp.group->order());
  dp.project_right.resize(dp.group->order());
  for (std::size_t e = 0; e < dp.group->order(); ++e) {
    const auto& img = dp.group->element(static_cast<Elem>(e)).images();
    std::vector<Point> a(img.begin(), img.begin() + static_cast<std::ptrdiff_t>(d1));
    std::vector<Point> b;
    for (std::size_t x = d1; x < d; ++x) b.push_back(static_cast<Point>(img[x] - d1));
    dp.project_left[e] = g1->index_of(Permutation(std::move(a)));
    dp.project_right[e] = g2->index_of(Permutation(std::move(b)));
  }
  return dp;
}

Subgroup DirectProduct::diagonal() const {
  if (left != right && left->generators() != right->generators())
    throw std::invalid_argument("diagonal requires equal factors");
  std::vector<Elem> gens;
  for (Elem s : left->generator_elements()) gens.push_back(group->mul(embed_left[s], embed_right[s]));
  return Subgroup::generated_by(group, gens);
}

}  // namespace bcn
