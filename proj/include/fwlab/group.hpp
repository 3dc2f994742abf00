#pragma once

// Finite permutation groups held as an explicit, sorted element list.
//
// Elements are addressed by ElementId, the position in the lexicographic
// (image tuple) order. The identity is always id 0.

#include <cstddef>
#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "fwlab/error.hpp"
#include "fwlab/permutation.hpp"

namespace fwlab {

using ElementId = std::uint32_t;
using ElementSet = std::vector<ElementId>;  // sorted, duplicate-free

struct GenerateOptions {
  std::size_t max_order = 1'000'000;
};

class GeneratedGroup;
using GroupPtr = std::shared_ptr<const GeneratedGroup>;

class GeneratedGroup {
 public:
  // Breadth-first product closure. Throws CapExceededError (with the partial
  // size reached) when the closure grows past `opts.max_order`.
  static GroupPtr generate(std::size_t degree, std::vector<Permutation> gens,
                           GenerateOptions opts = {}) {
    if (degree == 0) throw InputError("degree must be positive");
    for (const auto& g : gens)
      if (g.degree() != degree)
        throw InputError("generator " + format_cycles(g) + " has degree " +
                         std::to_string(g.degree()) + ", expected " + std::to_string(degree));

    std::unordered_map<Permutation, ElementId, PermutationHash> seen;
    std::vector<Permutation> elems;
    elems.push_back(Permutation::identity(degree));
    seen.emplace(elems.back(), 0);
    for (std::size_t head = 0; head < elems.size(); ++head) {
      for (const auto& g : gens) {
        Permutation p = compose(elems[head], g);
        if (seen.contains(p)) continue;
        if (elems.size() >= opts.max_order)
          throw CapExceededError("group order exceeds cap " + std::to_string(opts.max_order),
                                 elems.size());
        seen.emplace(p, static_cast<ElementId>(elems.size()));
        elems.push_back(std::move(p));
      }
    }
    return std::shared_ptr<const GeneratedGroup>(
        new GeneratedGroup(degree, std::move(gens), std::move(elems)));
  }

  std::size_t degree() const noexcept { return degree_; }
  std::size_t order() const noexcept { return elements_.size(); }
  const std::vector<Permutation>& generators() const noexcept { return generators_; }
  std::span<const ElementId> generator_ids() const noexcept { return generator_ids_; }
  const std::vector<Permutation>& elements() const noexcept { return elements_; }
  const Permutation& element(ElementId id) const { return elements_[id]; }
  static constexpr ElementId identity_id() noexcept { return 0; }

  std::optional<ElementId> find(const Permutation& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool contains(const Permutation& p) const { return index_.contains(p); }

  ElementId id_of(const Permutation& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) throw InputError("permutation " + format_cycles(p) + " is not in the group");
    return it->second;
  }

  ElementId multiply(ElementId a, ElementId b) const {
    return index_.at(compose(elements_[a], elements_[b]));
  }

  ElementId inverse(ElementId a) const { return inverses_[a]; }

  // g^-1 a g
  ElementId conjugate(ElementId a, ElementId g) const {
    return multiply(multiply(inverses_[g], a), g);
  }

  ElementId power(ElementId a, std::int64_t k) const { return id_of(fwlab::power(elements_[a], k)); }

  std::vector<Point> orbit(Point x) const {
    if (x >= degree_) throw InputError("point " + std::to_string(x) + " out of range");
    std::vector<char> in(degree_, 0);
    std::vector<Point> out{x};
    in[x] = 1;
    for (std::size_t head = 0; head < out.size(); ++head)
      for (const auto& g : generators_) {
        Point y = g(out[head]);
        if (!in[y]) {
          in[y] = 1;
          out.push_back(y);
        }
      }
    std::sort(out.begin(), out.end());
    return out;
  }

  bool is_transitive() const { return orbit(0).size() == degree_; }

 private:
  GeneratedGroup(std::size_t degree, std::vector<Permutation> gens, std::vector<Permutation> elems)
      : degree_(degree), generators_(std::move(gens)), elements_(std::move(elems)) {
    std::sort(elements_.begin(), elements_.end());
    index_.reserve(elements_.size());
    for (std::size_t i = 0; i < elements_.size(); ++i)
      index_.emplace(elements_[i], static_cast<ElementId>(i));
    inverses_.resize(elements_.size());
    for (std::size_t i = 0; i < elements_.size(); ++i)
      inverses_[i] = index_.at(elements_[i].inverse());
    for (const auto& g : generators_) generator_ids_.push_back(index_.at(g));
  }

  std::size_t degree_;
  std::vector<Permutation> generators_;
  std::vector<ElementId> generator_ids_;
  std::vector<Permutation> elements_;
  std::unordered_map<Permutation, ElementId, PermutationHash> index_;
  std::vector<ElementId> inverses_;
};

inline GroupPtr generate(std::size_t degree, std::vector<Permutation> gens, GenerateOptions opts = {}) {
  return GeneratedGroup::generate(degree, std::move(gens), opts);
}

// Convenience: generators given in cycle notation.
inline GroupPtr generate_from_cycles(std::size_t degree, const std::vector<std::string>& gens,
                                     GenerateOptions opts = {}) {
  std::vector<Permutation> perms;
  for (const auto& s : gens) perms.push_back(parse_cycles(s, degree));
  return generate(degree, std::move(perms), opts);
}

}  // namespace fwlab
