#pragma once

// Permutations of {0, ..., degree-1}.
//
// Product convention is left-to-right throughout the library:
// (a * b)(x) = b(a(x)), i.e. apply a first, then b. Conjugation
// A^g = { g^-1 a g } therefore maps the stabiliser of x onto the
// stabiliser of g(x).

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fwlab/error.hpp"

namespace fwlab {

using Point = std::uint32_t;

class Permutation {
 public:
  Permutation() = default;

  // Throws InputError unless `images` is a bijection on {0..size-1}.
  explicit Permutation(std::vector<Point> images) : images_(std::move(images)) {
    std::vector<char> seen(images_.size(), 0);
    for (Point p : images_) {
      if (p >= images_.size() || seen[p])
        throw InputError("image list is not a bijection on {0.." +
                         std::to_string(images_.size()) + "-1}");
      seen[p] = 1;
    }
  }

  static Permutation identity(std::size_t degree) {
    Permutation p;
    p.images_.resize(degree);
    std::iota(p.images_.begin(), p.images_.end(), Point{0});
    return p;
  }

  std::size_t degree() const noexcept { return images_.size(); }
  Point operator()(Point x) const { return images_[x]; }
  Point operator[](Point x) const { return images_[x]; }
  std::span<const Point> images() const noexcept { return images_; }

  bool is_identity() const noexcept {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i) return false;
    return true;
  }

  Permutation inverse() const {
    Permutation r;
    r.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) r.images_[images_[i]] = static_cast<Point>(i);
    return r;
  }

  // Lexicographic by image tuple; this is the canonical element order.
  auto operator<=>(const Permutation&) const = default;
  bool operator==(const Permutation&) const = default;

  friend Permutation compose(const Permutation& a, const Permutation& b);

 private:
  std::vector<Point> images_;
};

// a then b.
inline Permutation compose(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree())
    throw InputError("degree mismatch in compose: " + std::to_string(a.degree()) + " vs " +
                     std::to_string(b.degree()));
  Permutation r;
  r.images_.resize(a.degree());
  for (std::size_t i = 0; i < a.images_.size(); ++i) r.images_[i] = b.images_[a.images_[i]];
  return r;
}

inline Permutation operator*(const Permutation& a, const Permutation& b) { return compose(a, b); }

// g^-1 a g
inline Permutation conjugate(const Permutation& a, const Permutation& g) {
  return compose(compose(g.inverse(), a), g);
}

inline Permutation power(const Permutation& a, std::int64_t k) {
  Permutation base = k < 0 ? a.inverse() : a;
  std::uint64_t e = k < 0 ? static_cast<std::uint64_t>(-k) : static_cast<std::uint64_t>(k);
  Permutation result = Permutation::identity(a.degree());
  while (e) {
    if (e & 1u) result = compose(result, base);
    base = compose(base, base);
    e >>= 1u;
  }
  return result;
}

inline std::vector<Point> fixed_points(const Permutation& a) {
  std::vector<Point> out;
  for (Point x = 0; x < a.degree(); ++x)
    if (a(x) == x) out.push_back(x);
  return out;
}

inline bool is_derangement(const Permutation& a) {
  for (Point x = 0; x < a.degree(); ++x)
    if (a(x) == x) return false;
  return true;
}

// Non-trivial cycles, each starting at its least point, ordered by that point.
inline std::vector<std::vector<Point>> cycle_decomposition(const Permutation& a) {
  std::vector<std::vector<Point>> cycles;
  std::vector<char> seen(a.degree(), 0);
  for (Point s = 0; s < a.degree(); ++s) {
    if (seen[s] || a(s) == s) continue;
    std::vector<Point> c;
    for (Point x = s; !seen[x]; x = a(x)) {
      seen[x] = 1;
      c.push_back(x);
    }
    cycles.push_back(std::move(c));
  }
  return cycles;
}

// lcm of the cycle lengths.
inline std::uint64_t element_order(const Permutation& a) {
  std::uint64_t ord = 1;
  for (const auto& c : cycle_decomposition(a)) ord = std::lcm(ord, static_cast<std::uint64_t>(c.size()));
  return ord;
}

inline std::string format_cycles(const Permutation& a) {
  std::string out;
  for (const auto& c : cycle_decomposition(a)) {
    out += '(';
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(c[i]);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

// Parses "(0 1 2)(3 4)". Points are 0-based, separated by whitespace (commas
// are tolerated). Cycles in one expression must be disjoint.
inline Permutation parse_cycles(std::string_view text, std::size_t degree) {
  if (degree == 0) throw InputError("degree must be positive");
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  std::vector<char> used(degree, 0);

  auto fail = [&](const std::string& why) {
    throw InputError("bad cycle notation '" + std::string(text) + "': " + why);
  };
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == ','; };

  std::size_t i = 0;
  while (i < text.size()) {
    if (is_space(text[i])) {
      ++i;
      continue;
    }
    if (text[i] != '(') fail("expected '(' at offset " + std::to_string(i));
    ++i;
    std::vector<Point> cycle;
    bool closed = false;
    while (i < text.size()) {
      char c = text[i];
      if (is_space(c)) {
        ++i;
      } else if (c == ')') {
        ++i;
        closed = true;
        break;
      } else if (c >= '0' && c <= '9') {
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(text.data() + i, text.data() + text.size(), v);
        if (ec != std::errc{}) fail("integer out of range");
        i = static_cast<std::size_t>(ptr - text.data());
        if (v >= degree) fail("point " + std::to_string(v) + " out of range for degree " + std::to_string(degree));
        if (used[v]) fail("point " + std::to_string(v) + " repeated");
        used[v] = 1;
        cycle.push_back(static_cast<Point>(v));
      } else {
        fail(std::string("unexpected character '") + c + "'");
      }
    }
    if (!closed) fail("unbalanced parentheses");
    for (std::size_t k = 0; k < cycle.size(); ++k) images[cycle[k]] = cycle[(k + 1) % cycle.size()];
  }
  return Permutation(std::move(images));
}

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (Point x : p.images()) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

}  // namespace fwlab
