#pragma once

// The derangement apparatus of a pair (G, H): the set of derangements and
// the subgroups D, U, W together with the Wielandt set K, plus the checks
// that tie them together.

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fwlab/coset_action.hpp"
#include "fwlab/error.hpp"
#include "fwlab/group.hpp"
#include "fwlab/subgroup.hpp"

namespace fwlab {

enum class Classification { NotProper, FrobeniusProper, ProperFW };

inline std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::NotProper: return "not_proper";
    case Classification::FrobeniusProper: return "frobenius_proper";
    case Classification::ProperFW: return "proper_fw";
  }
  return "?";
}

struct CheckResult {
  std::string name;
  bool applicable = true;
  bool passed = true;
  std::string detail;
};

inline bool all_passed(const std::vector<CheckResult>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

struct DerangementReport {
  Subgroup H;
  std::size_t n = 0;
  ElementSet delta;
  Subgroup D;
  Subgroup U;
  Subgroup W;
  ElementSet K;
  Classification classification = Classification::NotProper;
  bool faithful = true;
  std::size_t core_order = 1;
  bool cameron_cohen_equality = false;
  std::vector<CheckResult> checks;
  std::vector<std::string> notes;

  const GeneratedGroup& G() const { return H.parent(); }
  std::size_t group_order() const { return H.parent().order(); }
  bool all_checks_passed() const { return all_passed(checks); }
};

namespace detail {

// Marks every element of the conjugates S^g, g over right-coset reps of H.
// S must be closed under conjugation by H, so S^(hg) = S^g.
inline std::vector<char> mark_conjugates(const Subgroup& H, const ElementSet& S,
                                         std::span<const ElementId> coset_reps) {
  const auto& G = H.parent();
  std::vector<char> mark(G.order(), 0);
  for (ElementId g : coset_reps)
    for (ElementId s : S) mark[G.conjugate(s, g)] = 1;
  return mark;
}

inline ElementSet unmarked(const std::vector<char>& mark) {
  ElementSet out;
  for (ElementId i = 0; i < mark.size(); ++i)
    if (!mark[i]) out.push_back(i);
  return out;
}

inline bool subset(const ElementSet& a, const ElementSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace detail

// Elements of G lying in no conjugate of H. Computed abstractly from the
// conjugates of H and, independently, as the elements whose coset-action
// image has no fixed point; a mismatch throws.
inline ElementSet derangement_set(const Subgroup& H) {
  auto action = coset_action(H);
  auto mark = detail::mark_conjugates(H, H.members(), action.representatives());
  ElementSet abstract_side = detail::unmarked(mark);
  ElementSet image_side;
  for (ElementId g = 0; g < H.parent().order(); ++g)
    if (action.fixed_point_count(g) == 0) image_side.push_back(g);
  if (abstract_side != image_side)
    throw Error("derangement set mismatch between conjugate and coset-action computations");
  return abstract_side;
}

inline std::vector<CheckResult> verify_report(const DerangementReport& report);

// Computes Δ, D, U, W, K for 1 < H < G and runs verify_report.
inline DerangementReport analyze(const Subgroup& H) {
  if (H.is_trivial()) throw DegenerateInputError("degenerate input: H is trivial (need 1 < H < G)");
  if (H.is_whole()) throw DegenerateInputError("degenerate input: H = G (need 1 < H < G)");

  const GroupPtr& Gp = H.parent_ptr();
  const auto& G = *Gp;
  auto action = coset_action(H);
  auto reps = action.representatives();

  auto h_mark = detail::mark_conjugates(H, H.members(), reps);
  ElementSet delta = detail::unmarked(h_mark);

  // U from H ∩ H^g, one g per right coset other than H itself.
  Subgroup U = Subgroup::trivial(Gp);
  for (std::size_t i = 1; i < reps.size(); ++i) U.add_seeds(intersect(H, conjugate(H, reps[i])).members());

  ElementSet h_minus_u;
  for (ElementId h : H.members())
    if (!U.contains(h)) h_minus_u.push_back(h);
  ElementSet K = detail::unmarked(detail::mark_conjugates(H, h_minus_u, reps));

  DerangementReport r{
      .H = H,
      .n = action.n(),
      .delta = std::move(delta),
      .D = Subgroup::closure(Gp, {}),
      .U = U,
      .W = normal_closure(Gp, U.members()),
      .K = std::move(K),
      .checks = {},
      .notes = {},
  };
  r.D = Subgroup::closure(Gp, r.delta);
  if (U.order() == H.order())
    r.classification = Classification::NotProper;
  else if (U.is_trivial())
    r.classification = Classification::FrobeniusProper;
  else
    r.classification = Classification::ProperFW;
  r.faithful = action.faithful();
  r.core_order = action.kernel().order();
  r.cameron_cohen_equality = r.delta.size() * r.n == G.order();
  if (!r.faithful)
    r.notes.push_back("coset action is not faithful: core of H has order " + std::to_string(r.core_order));
  r.checks = verify_report(r);
  if (r.classification == Classification::FrobeniusProper && all_passed(r.checks))
    r.notes.push_back("Maillet hypothesis (trivial two-point stabilisers) and Frobenius conclusion "
                      "(regular normal kernel D) both hold");
  return r;
}

inline std::vector<CheckResult> verify_report(const DerangementReport& r) {
  const GroupPtr& Gp = r.H.parent_ptr();
  const auto& G = *Gp;
  const Subgroup& H = r.H;
  const std::size_t order = G.order();
  std::vector<CheckResult> out;
  auto add = [&](std::string name, bool applicable, bool passed, std::string detail = {}) {
    out.push_back({std::move(name), applicable, !applicable || passed, std::move(detail)});
  };
  auto action = coset_action(H);

  add("J", true, !r.delta.empty(), "|delta| = " + std::to_string(r.delta.size()));

  add("CC", true, r.delta.size() * r.n >= order,
      std::to_string(r.delta.size()) + (r.cameron_cohen_equality ? " = " : " vs ") + std::to_string(order) +
          "/" + std::to_string(r.n) + (r.cameron_cohen_equality ? " (equality)" : ""));

  std::vector<char> hit(r.n, 0);
  std::size_t reached = 0;
  for (ElementId d : r.D.members())
    if (!hit[action.coset_of(d)]) {
      hit[action.coset_of(d)] = 1;
      ++reached;
    }
  bool d_transitive = reached == r.n;
  add("L-a", true, d_transitive, "D reaches " + std::to_string(reached) + " of " + std::to_string(r.n) + " cosets");
  add("D-normal", true, is_normal(r.D));
  add("U-normal", true, is_normal_in(r.U, H));
  add("W-normal", true, is_normal(r.W));

  add("L-b", true, r.W.is_subset_of(r.D));

  bool strict = r.delta.size() < r.K.size() && detail::subset(r.delta, r.K);
  add("L-c", true, strict && detail::subset(r.K, r.D.members()));

  Subgroup WH = intersect(r.W, H);
  Subgroup DH = intersect(r.D, H);
  add("L-d", true, r.U.is_subset_of(WH) && WH.is_subset_of(DH));

  add("C1", true, r.K == r.D.members(), "|K| = " + std::to_string(r.K.size()) + ", |D| = " + std::to_string(r.D.order()));
  add("C2", true, r.U == WH && WH == DH);

  bool d_proper = r.D.order() < order;
  add("IB", d_proper, order / r.D.order() <= r.n - 1,
      "|G:D| = " + std::to_string(order / r.D.order()) + ", n-1 = " + std::to_string(r.n - 1));

  bool u_proper = r.U.order() < H.order();
  std::size_t predicted_k = order - r.n * (H.order() - r.U.order());
  add("SZ", u_proper, r.K.size() == predicted_k,
      "|K| = " + std::to_string(r.K.size()) + ", formula = " + std::to_string(predicted_k));

  ElementSet image_delta;
  for (ElementId g = 0; g < order; ++g)
    if (action.fixed_point_count(g) == 0) image_delta.push_back(g);
  add("X-delta", true, image_delta == r.delta);

  // U again, as the subgroup of H generated by elements fixing >= 2 cosets.
  ElementSet multi_fixed;
  for (ElementId h : H.members())
    if (action.fixed_point_count(h) >= 2) multi_fixed.push_back(h);
  add("X-U", true, Subgroup::closure(Gp, multi_fixed) == r.U);

  if (r.classification == Classification::FrobeniusProper) {
    bool regular = d_transitive && r.D.order() == r.n && r.faithful;
    bool nilpotent = is_nilpotent(r.D);
    bool fpf = true;
    for (ElementId h : H.members()) {
      if (h == GeneratedGroup::identity_id()) continue;
      for (ElementId d : r.D.members())
        if (d != GeneratedGroup::identity_id() && G.conjugate(d, h) == d) {
          fpf = false;
          break;
        }
      if (!fpf) break;
    }
    add("FR", true, regular && nilpotent && fpf,
        std::string("regular=") + (regular ? "yes" : "no") + " nilpotent=" + (nilpotent ? "yes" : "no") +
            " fixed-point-free=" + (fpf ? "yes" : "no"));
  } else {
    add("FR", false, true);
  }
  return out;
}

struct WielandtData {
  Subgroup Hstar;
  ElementSet Kstar;
  bool is_subgroup = false;
  bool is_normal = false;
  bool intersection_ok = false;
  bool product_ok = false;
  bool size_formula_ok = false;

  bool all_ok() const { return is_subgroup && is_normal && intersection_ok && product_ok && size_formula_ok; }
};

// K* = G \ ⋃ (H \ H*)^g for H* normal and proper in H with every H ∩ H^g
// (g ∉ H) inside H*. Throws HypothesisError naming a witness g otherwise.
inline WielandtData wielandt_kernel(const Subgroup& H, const Subgroup& Hstar) {
  require_same_parent(H, Hstar);
  if (!is_normal_in(Hstar, H)) throw HypothesisError("H* is not a normal subgroup of H", "");
  if (Hstar.order() == H.order()) throw HypothesisError("H* must be a proper subgroup of H", "");
  if (H.is_whole()) throw DegenerateInputError("degenerate input: H = G");

  const GroupPtr& Gp = H.parent_ptr();
  const auto& G = *Gp;
  auto action = coset_action(H);
  auto reps = action.representatives();
  for (std::size_t i = 1; i < reps.size(); ++i) {
    Subgroup X = intersect(H, conjugate(H, reps[i]));
    if (!X.is_subset_of(Hstar))
      throw HypothesisError("hypothesis fails: H ∩ H^g is not contained in H*", format_cycles(G.element(reps[i])));
  }

  ElementSet outside;
  for (ElementId h : H.members())
    if (!Hstar.contains(h)) outside.push_back(h);
  WielandtData w{.Hstar = Hstar, .Kstar = detail::unmarked(detail::mark_conjugates(H, outside, reps))};

  w.is_subgroup = is_subgroup_set(Gp, w.Kstar);
  if (w.is_subgroup) {
    Subgroup K = Subgroup::from_closed_set(Gp, w.Kstar);
    w.is_normal = is_normal(K);
    w.intersection_ok = intersect(K, H) == Hstar;
  }
  std::vector<char> covered(G.order(), 0);
  std::size_t count = 0;
  for (ElementId h : H.members())
    for (ElementId k : w.Kstar) {
      ElementId x = G.multiply(h, k);
      if (!covered[x]) {
        covered[x] = 1;
        ++count;
      }
    }
  w.product_ok = count == G.order();
  w.size_formula_ok = w.Kstar.size() == G.order() - action.n() * (H.order() - Hstar.order());
  return w;
}

}  // namespace fwlab
