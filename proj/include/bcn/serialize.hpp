#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "bcn/burnside.hpp"

namespace bcn {

using Json = nlohmann::json;

/// Subgroup of g generated by cycle strings; ParseError if one is not in g.
Subgroup subgroup_from_cycles(const GroupPtr& g, const std::vector<std::string>& gens);
std::vector<std::string> cycles_of(const PermutationGroup& g, const std::vector<Elem>& elems);

/// {"subgroup", "invariant_factors", "basis"}: characters are written as
/// integer vectors against this basis (b(basis[i]) = c_i / d_i).
Json basis_json(const AbelianStructure& st);

/// {"H": basis cycles, "Y": generators, "beta": [[c_1..c_r], ...]};
/// the unit of BC_0 is {"unit": true}.
Json symbol_json(const SymbolContext& ctx, const Symbol& s);
/// Canonical symbol, nullopt when H is trivial. Tuple flavor is rejected.
std::optional<Symbol> symbol_from_json(const SymbolContext& ctx, const Json& j);

/// [{"coeff": c, ...symbol fields}, ...]
Json sum_json(const SymbolContext& ctx, const FormalSum& x);
FormalSum sum_from_json(const SymbolContext& ctx, const Json& j);

std::string symbol_text(const SymbolContext& ctx, const Symbol& s);
std::string sum_text(const SymbolContext& ctx, const FormalSum& x);

/// {"free_rank", "torsion", "primary_display", "chain_display"}
Json invariants_json(const AbelianInvariants& a);
AbelianInvariants invariants_from_json(const Json& j);

}  // namespace bcn
