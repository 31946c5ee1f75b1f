#include "bcn/pairs.hpp"

#include <deque>
#include <stdexcept>

namespace bcn {

std::string PairClass::label() const { return "(" + h.to_string() + ", " + y.to_string() + ")"; }

ElementSet conjugate_set(const PermutationGroup& g, const std::vector<Elem>& elements, Elem x) {
  ElementSet out(g.order());
  for (Elem e : elements) out.insert(g.conj(x, e));
  return out;
}

namespace {

/// Orbits of `items` under conjugation by `gens`. For each item: (orbit id,
/// element a with item = a rep a^-1). Orbit representatives are the first
/// item met in canonical order.
struct Orbits {
  std::vector<std::uint32_t> orbit_of;
  std::vector<Elem> to_rep;  // conjugator taking the item to its representative
  std::vector<std::size_t> reps;
};

Orbits conjugation_orbits(const PermutationGroup& g, const std::vector<Subgroup>& items, const std::vector<Elem>& gens,
                          const std::unordered_map<ElementSet, std::size_t, ElementSetHash>& index) {
  Orbits o;
  const std::size_t none = static_cast<std::size_t>(-1);
  o.orbit_of.assign(items.size(), static_cast<std::uint32_t>(none));
  o.to_rep.assign(items.size(), PermutationGroup::identity());
  std::vector<Elem> from_rep(items.size(), PermutationGroup::identity());
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (o.orbit_of[i] != static_cast<std::uint32_t>(none)) continue;
    const auto id = static_cast<std::uint32_t>(o.reps.size());
    o.reps.push_back(i);
    o.orbit_of[i] = id;
    std::deque<std::size_t> queue{i};
    while (!queue.empty()) {
      std::size_t cur = queue.front();
      queue.pop_front();
      for (Elem s : gens) {
        ElementSet img = conjugate_set(g, items[cur].elements(), s);
        auto it = index.find(img);
        if (it == index.end()) throw std::logic_error("conjugate subgroup missing from enumeration");
        std::size_t j = it->second;
        if (o.orbit_of[j] != static_cast<std::uint32_t>(none)) continue;
        o.orbit_of[j] = id;
        from_rep[j] = g.mul(s, from_rep[cur]);
        queue.push_back(j);
      }
    }
  }
  for (std::size_t i = 0; i < items.size(); ++i) o.to_rep[i] = g.inv(from_rep[i]);
  return o;
}

}  // namespace

PairClassification::PairClassification(GroupPtr g) : g_(std::move(g)) {
  const auto& grp = *g_;
  abelian_ = bcn::abelian_subgroups(g_);
  std::unordered_map<ElementSet, std::size_t, ElementSetHash> index;
  for (std::size_t i = 0; i < abelian_.size(); ++i) index.emplace(abelian_[i].members(), i);
  Orbits horb = conjugation_orbits(grp, abelian_, grp.generator_elements(), index);

  std::vector<std::int64_t> class_of_orbit(horb.reps.size(), -1);
  for (std::size_t oi = 0; oi < horb.reps.size(); ++oi) {
    const Subgroup& rep = abelian_[horb.reps[oi]];
    if (rep.is_trivial()) continue;
    class_of_orbit[oi] = static_cast<std::int64_t>(h_classes_.size());
    AbelianClass hc;
    hc.rep = rep;
    hc.normalizer = normalizer(g_, rep);
    hc.centralizer = centralizer(g_, rep);
    hc.orbit_size = grp.order() / hc.normalizer.order();

    std::vector<Subgroup> ys = subgroups_between(rep, hc.centralizer);
    std::unordered_map<ElementSet, std::size_t, ElementSetHash> yindex;
    for (std::size_t i = 0; i < ys.size(); ++i) yindex.emplace(ys[i].members(), i);
    Orbits yorb = conjugation_orbits(grp, ys, hc.normalizer.generators(), yindex);
    std::vector<std::uint32_t> pc_of_orbit;
    for (std::size_t yo = 0; yo < yorb.reps.size(); ++yo) {
      PairClass pc;
      pc.index = static_cast<std::uint32_t>(classes_.size());
      pc.h_class = static_cast<std::uint32_t>(h_classes_.size());
      pc.h = rep;
      pc.y = ys[yorb.reps[yo]];
      pc.stabilizer = normalizer(hc.normalizer, pc.y);
      pc.orbit_size = grp.order() / pc.stabilizer.order();
      pc_of_orbit.push_back(pc.index);
      hc.pair_classes.push_back(pc.index);
      classes_.push_back(std::move(pc));
    }
    for (std::size_t i = 0; i < ys.size(); ++i) hc.y_lookup.emplace(ys[i].members(), std::make_pair(pc_of_orbit[yorb.orbit_of[i]], yorb.to_rep[i]));
    h_classes_.push_back(std::move(hc));
  }
  for (std::size_t i = 0; i < abelian_.size(); ++i) {
    auto c = class_of_orbit[horb.orbit_of[i]];
    if (c >= 0) h_lookup_.emplace(abelian_[i].members(), std::make_pair(static_cast<std::uint32_t>(c), horb.to_rep[i]));
  }
}

std::optional<std::pair<std::uint32_t, Elem>> PairClassification::locate_abelian(const ElementSet& h) const {
  auto it = h_lookup_.find(h);
  if (it == h_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<Located> PairClassification::locate(const Subgroup& h, const Subgroup& y) const {
  if (h.parent() != g_ && h.parent()->order() != g_->order()) throw std::invalid_argument("locate: subgroup of another group");
  if (h.is_trivial()) return std::nullopt;
  if (!h.is_abelian()) throw std::invalid_argument("locate: H is not abelian");
  if (!h.is_subgroup_of(y)) throw std::invalid_argument("locate: H is not contained in Y");
  for (Elem a : y.generators())
    for (Elem b : h.generators())
      if (!g_->commute(a, b)) throw std::invalid_argument("locate: Y does not centralize H");
  auto hl = locate_abelian(h.members());
  if (!hl) throw std::logic_error("locate: abelian subgroup missing from enumeration");
  const auto& hc = h_classes_[hl->first];
  ElementSet y1 = conjugate_set(*g_, y.elements(), hl->second);
  auto it = hc.y_lookup.find(y1);
  if (it == hc.y_lookup.end()) throw std::logic_error("locate: intermediate subgroup missing from enumeration");
  return Located{it->second.first, g_->mul(it->second.second, hl->second)};
}

std::vector<PairClass> pair_classes(const GroupPtr& g) { return PairClassification(g).classes(); }

}  // namespace bcn
