#include "bcn/serialize.hpp"

#include <sstream>

namespace bcn {

Subgroup subgroup_from_cycles(const GroupPtr& g, const std::vector<std::string>& gens) {
  std::vector<Elem> elems;
  for (const auto& s : gens) {
    Permutation p = parse_cycles(s, g->degree());
    if (p.degree() > g->degree()) throw ParseError("permutation " + s + " moves points outside the group");
    auto e = g->find(p.extended(g->degree()));
    if (!e) throw ParseError("permutation " + s + " is not in the group");
    elems.push_back(*e);
  }
  return Subgroup::generated_by(g, elems);
}

std::vector<std::string> cycles_of(const PermutationGroup& g, const std::vector<Elem>& elems) {
  std::vector<std::string> out;
  for (Elem e : elems) out.push_back(g.element(e).to_cycles());
  return out;
}

Json basis_json(const AbelianStructure& st) {
  const auto& g = *st.subgroup().parent();
  return Json{{"subgroup", cycles_of(g, st.subgroup().generators())},
              {"invariant_factors", st.invariant_factors()},
              {"basis", cycles_of(g, st.basis())}};
}

Json symbol_json(const SymbolContext& ctx, const Symbol& s) {
  if (s.pair_class == kUnitClass) return Json{{"unit", true}};
  const PairClass& p = ctx.pair_class(s.pair_class);
  const AbelianStructure& st = *ctx.structure(s.pair_class);
  const auto& g = *ctx.group();
  Json beta = Json::array();
  for (CharId b : s.beta) beta.push_back(st.char_coords(b));
  return Json{{"H", cycles_of(g, st.basis())}, {"Y", cycles_of(g, p.y.generators())}, {"beta", beta}};
}

std::optional<Symbol> symbol_from_json(const SymbolContext& ctx, const Json& j) {
  if (!j.is_object()) throw ParseError("symbol must be an object");
  if (j.value("unit", false)) return unit_symbol();
  if (!j.contains("H") || !j.contains("Y") || !j.contains("beta")) throw ParseError("symbol needs H, Y and beta");
  const GroupPtr& g = ctx.group();
  Subgroup h = subgroup_from_cycles(g, j.at("H").get<std::vector<std::string>>());
  Subgroup y = subgroup_from_cycles(g, j.at("Y").get<std::vector<std::string>>());
  if (!h.is_abelian()) throw ParseError("H is not abelian");
  if (!h.is_subgroup_of(y)) throw ParseError("H is not contained in Y");
  for (Elem a : y.generators())
    for (Elem b : h.generators())
      if (!g->commute(a, b)) throw ParseError("Y does not centralize H");
  if (h.is_trivial()) return std::nullopt;
  StructurePtr st = AbelianStructure::of(h);
  std::vector<Character> beta;
  for (const auto& c : j.at("beta")) {
    auto coords = c.get<std::vector<std::int64_t>>();
    if (coords.size() != st->rank()) throw ParseError("character has " + std::to_string(coords.size()) + " coordinates, basis has " + std::to_string(st->rank()));
    Character ch(st, coords);
    if (ch.is_trivial()) throw ParseError("trivial character in symbol");
    beta.emplace_back(std::move(ch));
  }
  if (beta.empty()) throw ParseError("empty character list");
  try {
    return ctx.canonicalize(h, y, beta);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

Json sum_json(const SymbolContext& ctx, const FormalSum& x) {
  Json out = Json::array();
  for (const auto& [s, c] : x.terms()) {
    Json t = symbol_json(ctx, s);
    t["coeff"] = c;
    out.push_back(std::move(t));
  }
  return out;
}

FormalSum sum_from_json(const SymbolContext& ctx, const Json& j) {
  if (!j.is_array()) throw ParseError("formal sum must be an array of terms");
  FormalSum out;
  for (const auto& t : j) {
    auto c = t.value("coeff", std::int64_t{1});
    auto s = symbol_from_json(ctx, t);
    if (s) out.add(*s, c);
  }
  return out;
}

std::string symbol_text(const SymbolContext& ctx, const Symbol& s) {
  if (s.pair_class == kUnitClass) return "1";
  const PairClass& p = ctx.pair_class(s.pair_class);
  const AbelianStructure& st = *ctx.structure(s.pair_class);
  std::ostringstream os;
  os << "(" << p.h.to_string() << ", " << p.y.to_string() << ", (";
  for (std::size_t i = 0; i < s.beta.size(); ++i) {
    if (i) os << ",";
    auto c = st.char_coords(s.beta[i]);
    if (c.size() == 1) {
      os << c[0];
    } else {
      os << "(";
      for (std::size_t k = 0; k < c.size(); ++k) os << (k ? "," : "") << c[k];
      os << ")";
    }
  }
  os << "))";
  return os.str();
}

std::string sum_text(const SymbolContext& ctx, const FormalSum& x) {
  if (x.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [s, c] : x.terms()) {
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    auto a = c < 0 ? -c : c;
    if (a != 1) os << a << " ";
    os << symbol_text(ctx, s);
    first = false;
  }
  return os.str();
}

Json invariants_json(const AbelianInvariants& a) {
  Json t = Json::array();
  for (const auto& d : a.torsion) {
    if (d.fits_slong_p())
      t.push_back(d.get_si());
    else
      t.push_back(d.get_str());
  }
  return Json{{"free_rank", a.free_rank}, {"torsion", t}, {"primary_display", a.primary_display()}, {"chain_display", a.chain_display()}};
}

AbelianInvariants invariants_from_json(const Json& j) {
  std::vector<Int> orders;
  for (const auto& d : j.at("torsion")) orders.push_back(d.is_string() ? Int(d.get<std::string>()) : Int(d.get<long>()));
  return AbelianInvariants::from_cyclic_orders(j.at("free_rank").get<std::size_t>(), orders);
}

}  // namespace bcn
