#include "bcn/permutation.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace bcn {

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (auto x : images_) {
    if (x >= images_.size() || seen[x])
      throw std::invalid_argument("image list is not a permutation");
    seen[x] = true;
  }
}

Permutation Permutation::identity(std::size_t degree) {
  std::vector<Point> img(degree);
  std::iota(img.begin(), img.end(), Point{0});
  Permutation p;
  p.images_ = std::move(img);
  return p;
}

Permutation Permutation::operator*(const Permutation& rhs) const {
  const std::size_t d = std::max(degree(), rhs.degree());
  const Permutation a = extended(d);
  const Permutation b = rhs.extended(d);
  Permutation out;
  out.images_.resize(d);
  for (std::size_t x = 0; x < d; ++x) out.images_[x] = a.images_[b.images_[x]];
  return out;
}

Permutation Permutation::inverse() const {
  Permutation out;
  out.images_.resize(images_.size());
  for (std::size_t x = 0; x < images_.size(); ++x) out.images_[images_[x]] = static_cast<Point>(x);
  return out;
}

bool Permutation::is_identity() const {
  for (std::size_t x = 0; x < images_.size(); ++x)
    if (images_[x] != x) return false;
  return true;
}

std::size_t Permutation::order() const {
  std::size_t ord = 1;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t x = 0; x < images_.size(); ++x) {
    if (seen[x]) continue;
    std::size_t len = 0;
    for (std::size_t y = x; !seen[y]; y = images_[y]) {
      seen[y] = true;
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return ord;
}

Permutation Permutation::extended(std::size_t degree) const {
  if (degree <= images_.size()) return *this;
  Permutation out = *this;
  for (std::size_t x = images_.size(); x < degree; ++x) out.images_.push_back(static_cast<Point>(x));
  return out;
}

Permutation Permutation::shifted(std::size_t offset, std::size_t degree) const {
  if (offset + images_.size() > degree) throw std::invalid_argument("shift exceeds degree");
  Permutation out = identity(degree);
  for (std::size_t x = 0; x < images_.size(); ++x)
    out.images_[x + offset] = static_cast<Point>(images_[x] + offset);
  return out;
}

std::string Permutation::to_cycles() const {
  std::ostringstream os;
  std::vector<bool> seen(images_.size(), false);
  bool any = false;
  for (std::size_t x = 0; x < images_.size(); ++x) {
    if (seen[x] || images_[x] == x) continue;
    any = true;
    os << '(';
    bool first = true;
    for (std::size_t y = x; !seen[y]; y = images_[y]) {
      seen[y] = true;
      if (!first) os << ',';
      os << (y + 1);
      first = false;
    }
    os << ')';
  }
  if (!any) return "()";
  return os.str();
}

Permutation parse_cycles(std::string_view text, std::size_t degree) {
  std::vector<std::vector<std::size_t>> cycles;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw ParseError("expected '(' in cycle string \"" + std::string(text) + "\"");
    ++i;
    std::vector<std::size_t> cyc;
    skip_ws();
    if (i < text.size() && text[i] == ')') {
      ++i;  // "()" is the identity
      skip_ws();
      continue;
    }
    while (true) {
      skip_ws();
      std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (start == i) throw ParseError("expected a point in \"" + std::string(text) + "\"");
      std::size_t pt = std::stoul(std::string(text.substr(start, i - start)));
      if (pt == 0) throw ParseError("points are numbered from 1");
      cyc.push_back(pt - 1);
      skip_ws();
      if (i >= text.size()) throw ParseError("unterminated cycle in \"" + std::string(text) + "\"");
      if (text[i] == ',') {
        ++i;
        continue;
      }
      if (text[i] == ')') {
        ++i;
        break;
      }
      throw ParseError("unexpected character in \"" + std::string(text) + "\"");
    }
    cycles.push_back(std::move(cyc));
    skip_ws();
  }

  std::size_t needed = 0;
  for (const auto& c : cycles)
    for (auto p : c) needed = std::max(needed, p + 1);
  if (degree == 0) degree = std::max<std::size_t>(needed, 1);
  if (needed > degree) throw ParseError("point exceeds degree " + std::to_string(degree));
  if (degree > 0xFFFF) throw ParseError("degree too large");

  std::vector<bool> used(degree, false);
  Permutation p = Permutation::identity(degree);
  std::vector<Point> img = p.images();
  for (const auto& c : cycles) {
    for (auto x : c) {
      if (used[x])
        throw ParseError("point " + std::to_string(x + 1) + " repeated in \"" + std::string(text) +
                         "\" (cycles must be disjoint)");
      used[x] = true;
    }
    for (std::size_t k = 0; k < c.size(); ++k) img[c[k]] = static_cast<Point>(c[(k + 1) % c.size()]);
  }
  return Permutation(std::move(img));
}

std::vector<std::string> split_generator_list(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : text) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (depth < 0) throw ParseError("unbalanced parentheses in \"" + std::string(text) + "\"");
    if (depth == 0 && (ch == ',' || ch == ';')) {
      out.push_back(cur);
      cur.clear();
      continue;
    }
    if (depth == 0 && std::isspace(static_cast<unsigned char>(ch))) continue;
    cur.push_back(ch);
  }
  if (depth != 0) throw ParseError("unbalanced parentheses in \"" + std::string(text) + "\"");
  out.push_back(cur);
  std::erase_if(out, [](const std::string& s) { return s.empty(); });
  return out;
}

std::string to_cycle_list(const std::vector<Permutation>& perms) {
  std::string s;
  for (std::size_t i = 0; i < perms.size(); ++i) {
    if (i) s += ",";
    s += perms[i].to_cycles();
  }
  return s.empty() ? "()" : s;
}

}  // namespace bcn
