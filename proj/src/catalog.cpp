#include "bcn/catalog.hpp"

#include <cctype>
#include <charconv>

namespace bcn {

namespace {

bool is_prime(std::size_t p) {
  if (p < 2) return false;
  for (std::size_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::size_t parse_count(std::string_view s, std::string_view whole) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw ParseError("malformed group parameter in \"" + std::string(whole) + "\"");
  return v;
}

Permutation cycle(std::size_t from, std::size_t to, std::size_t degree) {
  std::vector<Point> img(degree);
  for (std::size_t x = 0; x < degree; ++x) img[x] = static_cast<Point>(x);
  for (std::size_t x = from; x < to; ++x) img[x] = static_cast<Point>(x + 1 < to ? x + 1 : from);
  return Permutation(std::move(img));
}

GroupPtr from_cycle_strings(std::initializer_list<const char*> gens, std::size_t degree, const GroupLimits& limits) {
  std::vector<Permutation> perms;
  for (const char* g : gens) perms.push_back(parse_cycles(g, degree));
  return PermutationGroup::generate(std::move(perms), limits, degree);
}

GroupPtr symmetric(std::size_t n, const GroupLimits& limits) {
  if (n == 0) throw ParseError("S0 is not a group in the catalog");
  if (n == 1) return PermutationGroup::generate({}, limits, 1);
  std::vector<Permutation> gens{cycle(0, n, n)};
  if (n > 2) gens.push_back(cycle(0, 2, n));
  return PermutationGroup::generate(std::move(gens), limits, n);
}

GroupPtr alternating(std::size_t n, const GroupLimits& limits) {
  if (n == 0) throw ParseError("A0 is not a group in the catalog");
  if (n == 5) return from_cycle_strings({"(1,2,3)", "(3,4,5)"}, 5, limits);
  if (n == 6) return from_cycle_strings({"(1,2)(3,4,5,6)", "(1,2,3)"}, 6, limits);
  if (n < 3) return PermutationGroup::generate({}, limits, n);
  std::vector<Permutation> gens{cycle(0, 3, n)};
  if (n > 3) gens.push_back(n % 2 == 1 ? cycle(0, n, n) : cycle(1, n, n));
  return PermutationGroup::generate(std::move(gens), limits, n);
}

GroupPtr cyclic(std::size_t n, const GroupLimits& limits) {
  if (n == 0) throw ParseError("C0 is not a group in the catalog");
  return PermutationGroup::generate({cycle(0, n, n)}, limits, n);
}

GroupPtr dihedral(std::size_t n, const GroupLimits& limits) {
  if (n < 2) throw ParseError("dihedral groups need n >= 2 (Dn has order 2n)");
  if (n == 2) return from_cycle_strings({"(1,2)(3,4)", "(1,3)(2,4)"}, 4, limits);
  std::vector<Point> refl(n);
  for (std::size_t x = 0; x < n; ++x) refl[x] = static_cast<Point>(n - 1 - x);
  return PermutationGroup::generate({cycle(0, n, n), Permutation(std::move(refl))}, limits, n);
}

/// Maps (x, y) -> (x + a, y + b x + c) on F_p^2; order p^3, exponent p.
GroupPtr heisenberg(std::size_t p, const GroupLimits& limits) {
  if (p < 3 || !is_prime(p)) throw ParseError("Heisenberg groups need an odd prime p");
  const std::size_t deg = p * p;
  auto make = [&](std::size_t a, std::size_t b, std::size_t c) {
    std::vector<Point> img(deg);
    for (std::size_t x = 0; x < p; ++x)
      for (std::size_t y = 0; y < p; ++y) {
        std::size_t nx = (x + a) % p;
        std::size_t ny = (y + b * x + c) % p;
        img[x + p * y] = static_cast<Point>(nx + p * ny);
      }
    return Permutation(std::move(img));
  };
  return PermutationGroup::generate({make(1, 0, 0), make(0, 1, 0)}, limits, deg);
}

GroupPtr elementary_abelian(std::size_t p, std::size_t r, const GroupLimits& limits) {
  if (!is_prime(p)) throw ParseError("E(p,r) needs a prime p");
  if (r == 0) return PermutationGroup::generate({}, limits, 1);
  const std::size_t deg = p * r;
  std::vector<Permutation> gens;
  for (std::size_t i = 0; i < r; ++i) gens.push_back(cycle(i * p, (i + 1) * p, deg));
  return PermutationGroup::generate(std::move(gens), limits, deg);
}

GroupPtr single_factor(std::string_view name, const GroupLimits& limits) {
  if (name == "ASL23") return from_cycle_strings({"(2,5,8)(3,9,6)", "(2,4,3,7)(5,6,9,8)", "(1,2,3)(4,5,6)(7,8,9)"}, 9, limits);
  if (name == "PSL27") return from_cycle_strings({"(3,6,7)(4,5,8)", "(1,8,2)(4,5,6)"}, 8, limits);
  if (name.starts_with("E(")) {
    if (!name.ends_with(")")) throw ParseError("malformed group name \"" + std::string(name) + "\"");
    auto inner = name.substr(2, name.size() - 3);
    auto comma = inner.find(',');
    if (comma == std::string_view::npos) throw ParseError("E(p,r) needs two parameters");
    return elementary_abelian(parse_count(inner.substr(0, comma), name), parse_count(inner.substr(comma + 1), name), limits);
  }
  if (name.starts_with("He")) return heisenberg(parse_count(name.substr(2), name), limits);
  if (name.size() >= 2) {
    const std::size_t n = parse_count(name.substr(1), name);
    switch (name[0]) {
      case 'S': return symmetric(n, limits);
      case 'A': return alternating(n, limits);
      case 'C': return cyclic(n, limits);
      case 'D': return dihedral(n, limits);
      default: break;
    }
  }
  throw ParseError("unknown group \"" + std::string(name) + "\"");
}

}  // namespace

GroupPtr catalog_group(std::string_view name, const GroupLimits& limits) {
  std::vector<std::string_view> factors;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < name.size(); ++i) {
    if (name[i] == '(') ++depth;
    if (name[i] == ')') --depth;
    if (name[i] == 'x' && depth == 0) {
      factors.push_back(name.substr(start, i - start));
      start = i + 1;
    }
  }
  factors.push_back(name.substr(start));
  GroupPtr g;
  for (auto f : factors) {
    if (f.empty()) throw ParseError("empty factor in \"" + std::string(name) + "\"");
    GroupPtr h = single_factor(f, limits);
    g = g ? direct_product(g, h).group : h;
  }
  return g;
}

GroupPtr parse_group(const std::vector<std::string>& generators, const GroupLimits& limits) {
  std::vector<Permutation> perms;
  for (const auto& s : generators) perms.push_back(parse_cycles(s));
  return PermutationGroup::generate(std::move(perms), limits);
}

GroupPtr resolve_group(std::string_view spec, const GroupLimits& limits) {
  std::size_t i = 0;
  while (i < spec.size() && std::isspace(static_cast<unsigned char>(spec[i]))) ++i;
  if (i < spec.size() && spec[i] == '(') return parse_group(split_generator_list(spec), limits);
  return catalog_group(spec, limits);
}

}  // namespace bcn
