#pragma once

// Converts library objects to the raw form used by brute_force.hpp. Only
// image tuples cross this boundary.

#include "fwlab/fwlab.hpp"
#include "support/brute_force.hpp"

namespace bridge {

inline brute::Perm raw(const fwlab::Permutation& p) {
  auto im = p.images();
  return brute::Perm(im.begin(), im.end());
}

inline brute::PermSet raw(const fwlab::GeneratedGroup& G, const fwlab::ElementSet& s) {
  brute::PermSet out;
  for (fwlab::ElementId x : s) out.insert(raw(G.element(x)));
  return out;
}

inline brute::PermSet raw(const fwlab::Subgroup& S) { return raw(S.parent(), S.members()); }

inline brute::PermSet raw_group(const fwlab::GroupPtr& G) { return raw(fwlab::Subgroup::whole(G)); }

// Group and H rebuilt from generator images alone, without the library.
inline std::pair<brute::PermSet, brute::PermSet> rebuild(const fwlab::Subgroup& H) {
  const auto& G = H.parent();
  std::vector<brute::Perm> gg, hg;
  for (const auto& g : G.generators()) gg.push_back(raw(g));
  for (const auto& h : H.generator_permutations()) hg.push_back(raw(h));
  return {brute::generate(gg, G.degree()), brute::generate(hg, G.degree())};
}

}  // namespace bridge
