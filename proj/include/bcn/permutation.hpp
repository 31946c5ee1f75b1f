#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace bcn {

using Point = std::uint16_t;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Permutation of {0, ..., degree-1}. Composition is right-to-left:
/// (a * b)(x) = a(b(x)).
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<Point> images);

  static Permutation identity(std::size_t degree);

  std::size_t degree() const { return images_.size(); }
  Point operator()(Point x) const { return images_[x]; }
  const std::vector<Point>& images() const { return images_; }

  Permutation operator*(const Permutation& rhs) const;
  Permutation inverse() const;
  bool is_identity() const;
  std::size_t order() const;

  /// Pads with fixed points up to `degree`.
  Permutation extended(std::size_t degree) const;
  /// Relabels points by adding `offset`, padding to `degree`.
  Permutation shifted(std::size_t offset, std::size_t degree) const;

  /// Disjoint-cycle notation on points 1..degree, "()" for the identity.
  std::string to_cycles() const;

  auto operator<=>(const Permutation&) const = default;

 private:
  std::vector<Point> images_;
};

/// Parses one permutation in disjoint-cycle notation, e.g. "(1,2,3)(4,5)".
/// Cycles inside one string must be disjoint. `degree` of 0 means "smallest
/// degree containing every mentioned point".
Permutation parse_cycles(std::string_view text, std::size_t degree = 0);

/// Splits a generator list such as "(1,2,3),(1,2)" into per-generator strings.
/// Commas inside parentheses separate points; commas between cycles separate
/// generators.
std::vector<std::string> split_generator_list(std::string_view text);

std::string to_cycle_list(const std::vector<Permutation>& perms);

}  // namespace bcn

template <>
struct std::hash<bcn::Permutation> {
  std::size_t operator()(const bcn::Permutation& p) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto x : p.images()) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return h;
  }
};
