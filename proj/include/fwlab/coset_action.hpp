#pragma once

// Actions on right cosets and the quotient-level questions answered through
// them: cores, cyclic sections, nilpotency.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <set>
#include <utility>
#include <vector>

#include "fwlab/group.hpp"
#include "fwlab/subgroup.hpp"

namespace fwlab {

// Action of `acting` by right multiplication on the right cosets B*a of
// B <= acting. Cosets are numbered by their least member; coset 0 is B.
class CosetActionResult {
 public:
  CosetActionResult(const Subgroup& acting, const Subgroup& B)
      : acting_(acting), stabilizer_(B), coset_of_(acting.parent().order(), kNone) {
    require_same_parent(acting, B);
    if (!B.is_subset_of(acting)) throw InputError("coset_action: H is not a subgroup of G");
    const auto& G = acting.parent();
    for (ElementId a : acting.members()) {
      if (coset_of_[a] != kNone) continue;
      auto idx = static_cast<Point>(reps_.size());
      reps_.push_back(a);
      for (ElementId b : B.members()) coset_of_[G.multiply(b, a)] = idx;
    }

    std::vector<Permutation> images;
    for (ElementId g : acting.generators()) {
      images.push_back(image(g));
      generator_images_.emplace_back(g, images.back());
    }
    image_group_ = generate(reps_.size(), std::move(images));

    ElementSet ker;
    for (ElementId a : acting.members())
      if (fixes_all(a)) ker.push_back(a);
    kernel_.emplace(Subgroup::from_closed_set(acting.parent_ptr(), std::move(ker)));
  }

  std::size_t n() const noexcept { return reps_.size(); }
  const GroupPtr& image_group() const noexcept { return image_group_; }
  const std::vector<std::pair<ElementId, Permutation>>& generator_images() const noexcept {
    return generator_images_;
  }
  // The core of B in the acting group.
  const Subgroup& kernel() const { return *kernel_; }
  bool faithful() const { return kernel_->is_trivial(); }
  std::span<const ElementId> representatives() const noexcept { return reps_; }

  // Index of the coset containing x (x must lie in the acting group).
  Point coset_of(ElementId x) const { return coset_of_[x]; }

  Permutation image(ElementId x) const {
    const auto& G = acting_.parent();
    std::vector<Point> img(reps_.size());
    for (std::size_t i = 0; i < reps_.size(); ++i) img[i] = coset_of_[G.multiply(reps_[i], x)];
    return Permutation(std::move(img));
  }

  std::size_t fixed_point_count(ElementId x) const {
    const auto& G = acting_.parent();
    std::size_t count = 0;
    for (std::size_t i = 0; i < reps_.size(); ++i)
      if (coset_of_[G.multiply(reps_[i], x)] == i) ++count;
    return count;
  }

 private:
  static constexpr Point kNone = std::numeric_limits<Point>::max();

  bool fixes_all(ElementId x) const {
    const auto& G = acting_.parent();
    for (std::size_t i = 0; i < reps_.size(); ++i)
      if (coset_of_[G.multiply(reps_[i], x)] != i) return false;
    return true;
  }

  Subgroup acting_;
  Subgroup stabilizer_;
  std::vector<Point> coset_of_;
  std::vector<ElementId> reps_;
  std::vector<std::pair<ElementId, Permutation>> generator_images_;
  GroupPtr image_group_;
  std::optional<Subgroup> kernel_;
};

inline CosetActionResult coset_action(const Subgroup& acting, const Subgroup& H) {
  return CosetActionResult(acting, H);
}

inline CosetActionResult coset_action(const Subgroup& H) {
  return CosetActionResult(Subgroup::whole(H.parent_ptr()), H);
}

// Intersection of all conjugates H^g, g in the parent, computed directly.
inline Subgroup core_by_conjugates(const Subgroup& H) {
  Subgroup core = H;
  for (ElementId g = 0; g < H.parent().order(); ++g) core = intersect(core, conjugate(H, g));
  return core;
}

// Order of xE in C/E, read off the coset-action image. E must be normal in C.
inline std::uint64_t quotient_element_order(const CosetActionResult& action, ElementId x) {
  return element_order(action.image(x));
}

// C/E cyclic (E normal in C): some coset cE has order |C:E| in the quotient.
inline std::optional<ElementId> cyclic_quotient_generator(const Subgroup& C, const Subgroup& E) {
  auto action = coset_action(C, E);
  for (ElementId c : C.members())
    if (quotient_element_order(action, c) == action.n()) return c;
  return std::nullopt;
}

namespace detail {

// Every subgroup of A, in canonical order. Each subgroup is a join of cyclic
// subgroups, so closing {1} under "join with a cyclic subgroup" finds all.
inline std::vector<Subgroup> subgroups_of(const Subgroup& A) {
  const auto& parent = A.parent_ptr();
  std::vector<Subgroup> cyclics;
  std::set<ElementSet> cyclic_seen;
  for (ElementId x : A.members()) {
    Subgroup z = cyclic_subgroup(parent, x);
    if (cyclic_seen.insert(z.members()).second) cyclics.push_back(std::move(z));
  }
  std::vector<Subgroup> all{Subgroup::trivial(parent)};
  std::set<ElementSet> seen{all.front().members()};
  for (std::size_t head = 0; head < all.size(); ++head) {
    for (const auto& z : cyclics) {
      if (z.is_subset_of(all[head])) continue;
      Subgroup j = join(all[head], z);
      if (seen.insert(j.members()).second) all.push_back(std::move(j));
    }
  }
  std::sort(all.begin(), all.end(), [](const Subgroup& a, const Subgroup& b) { return canonical_less(a, b); });
  return all;
}

}  // namespace detail

// Normal subgroups of A (as subgroups of A's parent), canonical order.
// Every normal subgroup is a join of normal closures of single elements.
inline std::vector<Subgroup> normal_subgroups(const Subgroup& A) {
  const auto& G = A.parent();
  auto closure_in_A = [&](ElementId x) {
    Subgroup N = cyclic_subgroup(A.parent_ptr(), x);
    for (bool changed = true; changed;) {
      changed = false;
      std::vector<ElementId> gens(N.generators().begin(), N.generators().end());
      for (ElementId y : gens)
        for (ElementId a : A.generators()) {
          ElementId c = G.conjugate(y, a);
          if (!N.contains(c)) {
            ElementId one[] = {c};
            N.add_seeds(one);
            changed = true;
          }
        }
    }
    return N;
  };
  std::vector<Subgroup> minimal;
  std::set<ElementSet> minimal_seen;
  for (ElementId x : A.members()) {
    Subgroup n = closure_in_A(x);
    if (minimal_seen.insert(n.members()).second) minimal.push_back(std::move(n));
  }
  std::vector<Subgroup> all{Subgroup::trivial(A.parent_ptr())};
  std::set<ElementSet> seen{all.front().members()};
  for (std::size_t head = 0; head < all.size(); ++head)
    for (const auto& n : minimal) {
      if (n.is_subset_of(all[head])) continue;
      Subgroup j = join(all[head], n);
      if (seen.insert(j.members()).second) all.push_back(std::move(j));
    }
  std::sort(all.begin(), all.end(), [](const Subgroup& a, const Subgroup& b) { return canonical_less(a, b); });
  return all;
}

struct SectionPair {
  Subgroup C;
  Subgroup E;
};

// All (C, E) with E normal in C <= H, E != C and C/E cyclic, ordered by C
// then E in canonical subgroup order.
inline std::vector<SectionPair> cyclic_sections(const Subgroup& H) {
  auto subs = detail::subgroups_of(H);
  std::vector<SectionPair> out;
  for (const auto& C : subs) {
    if (C.is_trivial()) continue;
    for (const auto& E : subs) {
      if (E.order() >= C.order() || C.order() % E.order() != 0) continue;
      if (!is_normal_in(E, C)) continue;
      if (cyclic_quotient_generator(C, E)) out.push_back({C, E});
    }
  }
  return out;
}

// Ascending central series: Z_{i+1}/Z_i is the centre of A/Z_i, read off the
// (regular) image of A acting on cosets of Z_i.
inline bool is_nilpotent(const Subgroup& A) {
  Subgroup Z = Subgroup::trivial(A.parent_ptr());
  while (Z.order() < A.order()) {
    auto action = coset_action(A, Z);
    std::vector<Permutation> gen_images;
    for (const auto& [g, img] : action.generator_images()) gen_images.push_back(img);
    ElementSet next;
    for (ElementId a : A.members()) {
      Permutation ia = action.image(a);
      bool central = std::all_of(gen_images.begin(), gen_images.end(), [&](const Permutation& g) {
        return compose(ia, g) == compose(g, ia);
      });
      if (central) next.push_back(a);
    }
    if (next.size() == Z.order()) return false;
    Z = Subgroup::from_closed_set(A.parent_ptr(), std::move(next));
  }
  return true;
}

}  // namespace fwlab
