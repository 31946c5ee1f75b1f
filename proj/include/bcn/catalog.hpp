#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bcn/group.hpp"

namespace bcn {

/// Named groups:
///   Sn, An, Cn, Dn (dihedral of order 2n), Hep (Heisenberg of order p^3,
///   p an odd prime), E(p,r) (elementary abelian p^r), ASL23, PSL27,
///   and direct products joined by 'x', e.g. "C2xS3".
/// A5, A6, D6, ASL23 and PSL27 use the classical generator lists from the
/// literature on primitive plane Cremona groups.
GroupPtr catalog_group(std::string_view name, const GroupLimits& limits = {});

/// Group generated by permutations in disjoint-cycle notation, one string per
/// generator.
GroupPtr parse_group(const std::vector<std::string>& generators, const GroupLimits& limits = {});

/// Either a catalog name or, when `spec` starts with '(', a generator list
/// such as "(1,2,3),(1,2)".
GroupPtr resolve_group(std::string_view spec, const GroupLimits& limits = {});

}  // namespace bcn
