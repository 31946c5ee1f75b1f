#pragma once

#include <doctest.h>

#include <set>
#include <vector>

#include "bcn/burnside.hpp"
#include "bcn/catalog.hpp"

namespace testing {

using namespace bcn;

inline Subgroup sub(const GroupPtr& g, std::initializer_list<const char*> gens) {
  std::vector<Elem> e;
  for (const char* s : gens) {
    auto x = g->find(parse_cycles(s, g->degree()).extended(g->degree()));
    REQUIRE(x.has_value());
    e.push_back(*x);
  }
  return Subgroup::generated_by(g, e);
}

inline AbelianInvariants inv(const char* s) { return AbelianInvariants::parse(s); }

// every subgroup by brute force: closure of every subset is too much, so
// take closures of all pairs and triples of elements (enough for |G| <= 24
// abelian subgroups, which are generated by at most 3 elements there)
inline std::vector<ElementSet> brute_abelian_subgroups(const GroupPtr& g) {
  std::set<std::vector<Elem>> seen;
  std::vector<ElementSet> out;
  const auto n = g->order();
  auto add = [&](std::vector<Elem> gens) {
    Subgroup s = Subgroup::generated_by(g, gens);
    if (!s.is_abelian()) return;
    if (seen.insert(s.elements()).second) out.push_back(s.members());
  };
  add({});
  for (Elem a = 0; a < n; ++a)
    for (Elem b = a; b < n; ++b) {
      if (!g->commute(a, b)) continue;
      add({a, b});
      for (Elem c = b; c < n; ++c)
        if (g->commute(a, c) && g->commute(b, c)) add({a, b, c});
    }
  return out;
}

// groups used across property suites
inline std::vector<std::string> small_catalog() {
  return {"C2", "C3", "C4", "C5", "C6", "E(2,2)", "S3", "D4", "C8", "C2xC4", "E(2,3)", "D5", "A4", "D6", "C3xS3", "C12",
          "E(3,2)", "S4", "He3", "D12", "C2xA4", "A5"};
}

}  // namespace testing
