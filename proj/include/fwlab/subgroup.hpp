#pragma once

// Subgroups of a fixed parent group, stored as explicit member sets.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fwlab/error.hpp"
#include "fwlab/group.hpp"

namespace fwlab {

class Subgroup {
 public:
  const GroupPtr& parent_ptr() const noexcept { return parent_; }
  const GeneratedGroup& parent() const noexcept { return *parent_; }

  std::size_t order() const noexcept { return members_.size(); }
  const ElementSet& members() const noexcept { return members_; }
  std::span<const ElementId> generators() const noexcept { return generators_; }
  bool contains(ElementId x) const { return mask_[x] != 0; }
  bool is_trivial() const noexcept { return members_.size() == 1; }
  bool is_whole() const noexcept { return members_.size() == parent_->order(); }

  std::vector<Permutation> generator_permutations() const {
    std::vector<Permutation> out;
    for (ElementId g : generators_) out.push_back(parent_->element(g));
    return out;
  }

  bool same_parent(const Subgroup& other) const noexcept { return parent_ == other.parent_; }

  bool operator==(const Subgroup& o) const { return parent_ == o.parent_ && members_ == o.members_; }

  // Ordering used for canonical listings: by order, then by member ids.
  friend bool canonical_less(const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.members_ < b.members_;
  }

  bool is_subset_of(const Subgroup& o) const {
    for (ElementId x : members_)
      if (!o.contains(x)) return false;
    return true;
  }

  // Closure of `seeds` inside `parent`. Generators are picked greedily in
  // ascending id order, so the generating list is deterministic.
  static Subgroup closure(GroupPtr parent, std::span<const ElementId> seeds) {
    Subgroup s(std::move(parent));
    s.add_seeds(seeds);
    return s;
  }

  static Subgroup trivial(GroupPtr parent) { return Subgroup(std::move(parent)); }

  static Subgroup whole(GroupPtr parent) {
    Subgroup s(parent);
    s.members_.resize(parent->order());
    std::iota(s.members_.begin(), s.members_.end(), ElementId{0});
    std::fill(s.mask_.begin(), s.mask_.end(), 1);
    s.generators_.assign(parent->generator_ids().begin(), parent->generator_ids().end());
    return s;
  }

  // `members` must already be closed; only used where that is known.
  static Subgroup from_closed_set(GroupPtr parent, ElementSet members) {
    Subgroup s(std::move(parent));
    s.members_.clear();
    std::fill(s.mask_.begin(), s.mask_.end(), 0);
    for (ElementId x : members) s.mask_[x] = 1;
    s.members_ = std::move(members);
    s.generators_ = greedy_generators(*s.parent_, s.members_);
    return s;
  }

  // Extends this subgroup by further elements.
  void add_seeds(std::span<const ElementId> seeds) {
    const auto& G = *parent_;
    for (ElementId x : seeds) {
      if (mask_[x]) continue;
      generators_.push_back(x);
      // Right-multiply every member by every generator until stable.
      std::vector<ElementId> queue = members_;
      for (std::size_t head = 0; head < queue.size(); ++head) {
        for (ElementId g : generators_) {
          ElementId y = G.multiply(queue[head], g);
          if (!mask_[y]) {
            mask_[y] = 1;
            members_.push_back(y);
            queue.push_back(y);
          }
        }
      }
      std::sort(members_.begin(), members_.end());
    }
  }

 private:
  explicit Subgroup(GroupPtr parent) : parent_(std::move(parent)), mask_(parent_->order(), 0) {
    members_.push_back(GeneratedGroup::identity_id());
    mask_[GeneratedGroup::identity_id()] = 1;
  }

  static std::vector<ElementId> greedy_generators(const GeneratedGroup& G, const ElementSet& set) {
    std::vector<char> in(G.order(), 0);
    in[0] = 1;
    std::vector<ElementId> mem{0}, gens;
    for (ElementId x : set) {
      if (in[x]) continue;
      gens.push_back(x);
      std::vector<ElementId> queue = mem;
      for (std::size_t head = 0; head < queue.size(); ++head)
        for (ElementId g : gens) {
          ElementId y = G.multiply(queue[head], g);
          if (!in[y]) {
            in[y] = 1;
            mem.push_back(y);
            queue.push_back(y);
          }
        }
    }
    return gens;
  }

  GroupPtr parent_;
  ElementSet members_;
  std::vector<char> mask_;
  std::vector<ElementId> generators_;
};

inline void require_same_parent(const Subgroup& a, const Subgroup& b) {
  if (!a.same_parent(b)) throw InputError("subgroups belong to different parent groups");
}

inline Subgroup subgroup(const GroupPtr& parent, const std::vector<Permutation>& gens) {
  std::vector<ElementId> ids;
  for (const auto& g : gens) {
    auto id = parent->find(g);
    if (!id) throw InputError("generator " + format_cycles(g) + " is not in the parent group");
    ids.push_back(*id);
  }
  return Subgroup::closure(parent, ids);
}

inline Subgroup subgroup_from_cycles(const GroupPtr& parent, const std::vector<std::string>& gens) {
  std::vector<Permutation> perms;
  for (const auto& s : gens) perms.push_back(parse_cycles(s, parent->degree()));
  return subgroup(parent, perms);
}

inline Subgroup point_stabilizer(const GroupPtr& parent, Point x) {
  if (x >= parent->degree()) throw InputError("point " + std::to_string(x) + " out of range");
  ElementSet members;
  for (ElementId i = 0; i < parent->order(); ++i)
    if (parent->element(i)(x) == x) members.push_back(i);
  return Subgroup::from_closed_set(parent, std::move(members));
}

inline Subgroup normal_closure(const GroupPtr& parent, std::span<const ElementId> seeds) {
  Subgroup N = Subgroup::closure(parent, seeds);
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<ElementId> gens(N.generators().begin(), N.generators().end());
    for (ElementId x : gens)
      for (ElementId g : parent->generator_ids()) {
        ElementId c = parent->conjugate(x, g);
        if (!N.contains(c)) {
          ElementId one[] = {c};
          N.add_seeds(one);
          changed = true;
        }
      }
  }
  return N;
}

// A^g = { g^-1 a g }
inline Subgroup conjugate(const Subgroup& A, ElementId g) {
  const auto& G = A.parent();
  ElementSet members;
  members.reserve(A.order());
  for (ElementId a : A.members()) members.push_back(G.conjugate(a, g));
  std::sort(members.begin(), members.end());
  return Subgroup::from_closed_set(A.parent_ptr(), std::move(members));
}

inline Subgroup intersect(const Subgroup& A, const Subgroup& B) {
  require_same_parent(A, B);
  ElementSet members;
  for (ElementId x : A.members())
    if (B.contains(x)) members.push_back(x);
  return Subgroup::from_closed_set(A.parent_ptr(), std::move(members));
}

// Subgroup generated by A and B together.
inline Subgroup join(const Subgroup& A, const Subgroup& B) {
  require_same_parent(A, B);
  Subgroup J = A;
  J.add_seeds(B.generators());
  return J;
}

// Is A normal in B? (A need not be known to lie in B; returns false if not.)
inline bool is_normal_in(const Subgroup& A, const Subgroup& B) {
  require_same_parent(A, B);
  if (!A.is_subset_of(B)) return false;
  const auto& G = A.parent();
  for (ElementId a : A.generators())
    for (ElementId b : B.generators())
      if (!A.contains(G.conjugate(a, b))) return false;
  return true;
}

inline bool is_normal(const Subgroup& A) { return is_normal_in(A, Subgroup::whole(A.parent_ptr())); }

inline std::size_t index_in(const Subgroup& A, const Subgroup& B) { return B.order() / A.order(); }

// True iff `set` (sorted) is closed under products, i.e. equals the
// subgroup it generates.
inline bool is_subgroup_set(const GroupPtr& parent, const ElementSet& set) {
  if (set.empty() || set.front() != GeneratedGroup::identity_id()) return false;
  Subgroup S = Subgroup::closure(parent, set);
  return S.members() == set;
}

struct DoubleCoset {
  ElementId representative;  // least member
  std::size_t size;
};

// Double cosets A y B inside `ambient` (A, B <= ambient), ordered by their
// least member, which is also the representative.
inline std::vector<DoubleCoset> double_cosets(const Subgroup& ambient, const Subgroup& A,
                                              const Subgroup& B) {
  require_same_parent(ambient, A);
  require_same_parent(ambient, B);
  if (!A.is_subset_of(ambient) || !B.is_subset_of(ambient))
    throw InputError("double_cosets: subgroups must lie in the ambient group");
  const auto& G = ambient.parent();
  std::vector<char> covered(G.order(), 0);
  std::vector<DoubleCoset> out;
  for (ElementId y : ambient.members()) {
    if (covered[y]) continue;
    std::size_t size = 0;
    for (ElementId a : A.members()) {
      ElementId ay = G.multiply(a, y);
      for (ElementId b : B.members()) {
        ElementId z = G.multiply(ay, b);
        if (!covered[z]) {
          covered[z] = 1;
          ++size;
        }
      }
    }
    out.push_back({y, size});
  }
  return out;
}

inline std::vector<DoubleCoset> double_cosets(const Subgroup& A, const Subgroup& B) {
  return double_cosets(Subgroup::whole(A.parent_ptr()), A, B);
}

inline Subgroup cyclic_subgroup(const GroupPtr& parent, ElementId x) {
  ElementId one[] = {x};
  return Subgroup::closure(parent, one);
}

}  // namespace fwlab
