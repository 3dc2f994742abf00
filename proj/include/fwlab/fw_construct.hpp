#pragma once

// Cyclic-section criterion for p-group complements, the double-coset
// fixed-point count, monomial induced modules over F_q and the affine groups
// Q ⋊ ρ(H) built from them.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fwlab/coset_action.hpp"
#include "fwlab/derangements.hpp"
#include "fwlab/error.hpp"
#include "fwlab/group.hpp"
#include "fwlab/prime_field.hpp"
#include "fwlab/subgroup.hpp"

namespace fwlab {

// E normal in C, C/E cyclic of order m >= 2. `generator` is the least c in C
// whose coset cE generates C/E.
struct CyclicSection {
  Subgroup C;
  Subgroup E;
  std::size_t m = 0;
  ElementId generator = 0;
};

inline std::string format_generators(const Subgroup& S) {
  std::string out;
  for (const auto& g : S.generator_permutations()) {
    if (!out.empty()) out += ',';
    out += format_cycles(g);
  }
  return out;
}

inline std::string describe(const CyclicSection& s) {
  return "C=<" + format_generators(s.C) + "> E=<" + format_generators(s.E) + "> m=" + std::to_string(s.m);
}

inline CyclicSection make_section(const Subgroup& C, const Subgroup& E) {
  require_same_parent(C, E);
  if (E.order() == C.order()) throw InputError("section: E must be a proper subgroup of C");
  if (!is_normal_in(E, C)) throw InputError("section: E is not normal in C");
  auto gen = cyclic_quotient_generator(C, E);
  if (!gen) throw InputError("section: C/E is not cyclic");
  return {C, E, C.order() / E.order(), *gen};
}

inline bool is_prime_power(std::uint64_t n) {
  if (n < 2) return false;
  return prime_factors(n).size() == 1;
}

inline void require_normal_proper(const Subgroup& H, const Subgroup& Hstar) {
  if (!is_normal_in(Hstar, H)) throw HypothesisError("H* is not a normal subgroup of H", format_generators(Hstar));
  if (Hstar.order() == H.order()) throw HypothesisError("H* must be proper in H", format_generators(Hstar));
}

// Least x in H \ H* with no power in C \ E, if any.
inline std::optional<ElementId> power_condition_witness(const Subgroup& H, const Subgroup& Hstar,
                                                        const CyclicSection& sec) {
  require_normal_proper(H, Hstar);
  if (!sec.C.is_subset_of(H)) throw InputError("section does not lie in H");
  const auto& G = H.parent();
  for (ElementId x : H.members()) {
    if (Hstar.contains(x)) continue;
    bool found = false;
    ElementId y = x;
    do {
      if (sec.C.contains(y) && !sec.E.contains(y)) {
        found = true;
        break;
      }
      y = G.multiply(y, x);
    } while (y != x);
    if (!found) return x;
  }
  return std::nullopt;
}

// Every x in H \ H* has a power x^k, 1 <= k <= o(x), in C \ E.
inline bool check_power_condition(const Subgroup& H, const Subgroup& Hstar, const CyclicSection& sec) {
  return !power_condition_witness(H, Hstar, sec).has_value();
}

inline std::vector<CyclicSection> all_cyclic_sections(const Subgroup& H) {
  std::vector<CyclicSection> out;
  for (auto& [C, E] : cyclic_sections(H)) out.push_back(make_section(C, E));
  return out;
}

// Sections of the p-group H satisfying the power condition for H*. An empty
// result means H/H* cannot be realised with H as a point stabiliser.
inline std::vector<CyclicSection> find_cyclic_sections(const Subgroup& H, const Subgroup& Hstar) {
  if (!is_prime_power(H.order()))
    throw HypothesisError("H is not a p-group (order " + std::to_string(H.order()) + ")", "");
  require_normal_proper(H, Hstar);
  std::vector<CyclicSection> out;
  for (auto& s : all_cyclic_sections(H))
    if (check_power_condition(H, Hstar, s)) out.push_back(std::move(s));
  return out;
}

// Number of double cosets C y <x> in H with <x> ∩ C^y <= E^y. This is the
// multiplicity of the trivial character of <x> in the induced character,
// i.e. the dimension of the x-fixed space of the induced module.
inline std::size_t mackey_fixed_dim(const Subgroup& H, const CyclicSection& sec, ElementId x) {
  if (!H.contains(x)) throw InputError("mackey_fixed_dim: x is not in H");
  Subgroup X = cyclic_subgroup(H.parent_ptr(), x);
  std::size_t count = 0;
  for (const auto& dc : double_cosets(H, sec.C, X)) {
    Subgroup meet = intersect(X, conjugate(sec.C, dc.representative));
    if (meet.is_subset_of(conjugate(sec.E, dc.representative))) ++count;
  }
  return count;
}

// Elements of H fixing a nonzero vector of the direct sum of the modules
// induced from `sections`.
inline ElementSet predicted_fixed_elements(const Subgroup& H, std::span<const CyclicSection> sections) {
  if (sections.empty()) throw InputError("predicted_fixed_elements: no sections given");
  ElementSet out;
  for (ElementId x : H.members())
    for (const auto& s : sections)
      if (mackey_fixed_dim(H, s, x) > 0) {
        out.push_back(x);
        break;
      }
  return out;
}

// Smallest prime q with q ≡ 1 (mod m) and q not dividing group_order.
inline std::uint32_t choose_prime(std::uint64_t m, std::uint64_t group_order, std::uint64_t cap = 1'000'000) {
  if (m == 0) throw InputError("choose_prime: m must be positive");
  for (std::uint64_t q = m + 1; q <= cap; q += m)
    if (is_prime(q) && group_order % q != 0) return static_cast<std::uint32_t>(q);
  throw CapExceededError("choose_prime: no admissible prime below cap", cap);
}

// A homomorphism C -> Z/m with kernel exactly E.
struct LinearCharacterData {
  CyclicSection section;
  std::map<ElementId, std::uint32_t> exponent;

  std::uint32_t operator()(ElementId c) const { return exponent.at(c); }
};

// generator^k E  ->  k.
inline LinearCharacterData linear_character(const CyclicSection& sec) {
  const auto& G = sec.C.parent();
  LinearCharacterData lc{sec, {}};
  ElementId ck = GeneratedGroup::identity_id();
  for (std::uint32_t k = 0; k < sec.m; ++k) {
    for (ElementId e : sec.E.members()) lc.exponent[G.multiply(ck, e)] = k;
    ck = G.multiply(ck, sec.generator);
  }
  if (lc.exponent.size() != sec.C.order()) throw Error("linear character does not cover C");
  return lc;
}

struct ModuleSummand {
  std::optional<LinearCharacterData> character;  // empty for hand-specified summands
  CyclicSection reference;                       // section whose fixed-point count this summand realises
  std::size_t offset = 0;
  std::size_t dim = 0;
  std::vector<ElementId> transversal;            // right transversal of C in H (induced summands)
};

// A representation ρ: H -> GL(d, q), acting on row vectors (v ↦ v·ρ(x)), so
// that ρ(xy) = ρ(x)ρ(y) under the left-to-right product.
class InducedModule {
 public:
  const Subgroup& H() const noexcept { return H_; }
  std::uint32_t q() const noexcept { return q_; }
  std::uint64_t m() const noexcept { return m_; }
  std::size_t d() const noexcept { return d_; }
  const std::vector<ModuleSummand>& summands() const noexcept { return summands_; }
  const std::vector<ElementId>& transversal() const { return summands_.front().transversal; }

  const FpMatrix& matrix(ElementId x) const {
    auto pos = std::lower_bound(H_.members().begin(), H_.members().end(), x);
    if (pos == H_.members().end() || *pos != x) throw InputError("element is not in H");
    return matrices_[static_cast<std::size_t>(pos - H_.members().begin())];
  }

  std::vector<FpMatrix> generator_matrices() const {
    std::vector<FpMatrix> out;
    for (ElementId g : H_.generators()) out.push_back(matrix(g));
    return out;
  }

  // ρ(xg) = ρ(x)ρ(g) for every x and generator g (which makes ρ a
  // homomorphism), plus every pair when |H| <= 256.
  void verify_homomorphism() const {
    const auto& G = H_.parent();
    if (!(matrix(GeneratedGroup::identity_id()) == FpMatrix::identity(d_, q_)))
      throw Error("module does not send the identity to the identity matrix");
    for (ElementId x : H_.members())
      for (ElementId g : H_.generators())
        if (!(matrix(G.multiply(x, g)) == matrix(x) * matrix(g)))
          throw InputError("module matrices do not respect the group relations at " +
                           format_cycles(G.element(x)) + " * " + format_cycles(G.element(g)));
    if (H_.order() <= 256)
      for (ElementId x : H_.members())
        for (ElementId y : H_.members())
          if (!(matrix(G.multiply(x, y)) == matrix(x) * matrix(y)))
            throw Error("module is not a homomorphism");
  }

 private:
  InducedModule(Subgroup H, std::uint32_t q) : H_(std::move(H)), q_(q) {}

  friend InducedModule induce_module(const Subgroup&, const LinearCharacterData&, std::uint32_t);
  friend InducedModule explicit_module(const Subgroup&, std::uint32_t, const std::vector<FpMatrix>&,
                                       const CyclicSection&);
  friend InducedModule direct_sum(std::span<const InducedModule>);

  Subgroup H_;
  std::uint32_t q_;
  std::uint64_t m_ = 1;
  std::size_t d_ = 0;
  std::vector<ModuleSummand> summands_;
  std::vector<FpMatrix> matrices_;  // by position in H.members()
};

// Monomial module induced from the linear character of C with kernel E:
// basis indexed by the canonical right transversal t_1..t_d of C in H, and
// ρ(x)[i][j] = ω^λ(c) where t_i x = c t_j.
inline InducedModule induce_module(const Subgroup& H, const LinearCharacterData& lc, std::uint32_t q) {
  const auto& sec = lc.section;
  require_same_parent(H, sec.C);
  if (!sec.C.is_subset_of(H)) throw InputError("induce_module: C is not a subgroup of H");
  PrimeField F(q);
  if ((q - 1) % sec.m != 0)
    throw InputError("induce_module: q = " + std::to_string(q) + " is not 1 mod " + std::to_string(sec.m));
  if (H.order() % q == 0) throw InputError("induce_module: q divides |H|");
  const auto omega = F.root_of_unity(sec.m);

  const auto& G = H.parent();
  auto action = coset_action(H, sec.C);
  std::vector<ElementId> transversal(action.representatives().begin(), action.representatives().end());
  const std::size_t d = transversal.size();

  InducedModule mod(H, q);
  mod.m_ = sec.m;
  mod.d_ = d;
  mod.summands_.push_back({lc, sec, 0, d, transversal});
  for (ElementId x : H.members()) {
    FpMatrix M(d, d, q);
    for (std::size_t i = 0; i < d; ++i) {
      ElementId tx = G.multiply(transversal[i], x);
      std::size_t j = action.coset_of(tx);
      ElementId c = G.multiply(tx, G.inverse(transversal[j]));
      M.at(i, j) = F.pow(omega, lc(c));
    }
    mod.matrices_.push_back(std::move(M));
  }
  mod.verify_homomorphism();
  return mod;
}

// A hand-specified representation: one matrix per generator of H (in the
// order of H.generators()), extended to all of H by products. `reference`
// is the section whose induced character the matrices are meant to afford;
// fixed-space dimensions are checked against its double-coset count.
inline InducedModule explicit_module(const Subgroup& H, std::uint32_t q, const std::vector<FpMatrix>& gens,
                                     const CyclicSection& reference) {
  PrimeField F(q);
  if (gens.size() != H.generators().size())
    throw InputError("explicit module: expected " + std::to_string(H.generators().size()) +
                     " generator matrices, got " + std::to_string(gens.size()));
  if (gens.empty()) throw InputError("explicit module: H has no generators");
  const std::size_t d = gens.front().rows();
  for (const auto& M : gens)
    if (M.rows() != d || M.cols() != d || M.modulus() != q)
      throw InputError("explicit module: generator matrices must be " + std::to_string(d) + "x" +
                       std::to_string(d) + " over F_" + std::to_string(q));
  if (H.order() % q == 0) throw InputError("explicit module: q divides |H|");

  const auto& G = H.parent();
  InducedModule mod(H, q);
  mod.m_ = reference.m;
  mod.d_ = d;
  mod.summands_.push_back({std::nullopt, reference, 0, d, {}});
  mod.matrices_.assign(H.order(), FpMatrix());
  std::vector<char> set(H.order(), 0);
  auto pos = [&](ElementId x) {
    return static_cast<std::size_t>(std::lower_bound(H.members().begin(), H.members().end(), x) - H.members().begin());
  };
  std::vector<ElementId> queue{GeneratedGroup::identity_id()};
  mod.matrices_[0] = FpMatrix::identity(d, q);
  set[0] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    ElementId x = queue[head];
    for (std::size_t k = 0; k < gens.size(); ++k) {
      ElementId y = G.multiply(x, H.generators()[k]);
      std::size_t p = pos(y);
      if (set[p]) continue;
      set[p] = 1;
      mod.matrices_[p] = mod.matrices_[pos(x)] * gens[k];
      queue.push_back(y);
    }
  }
  mod.verify_homomorphism();
  return mod;
}

// Block-diagonal sum.
inline InducedModule direct_sum(std::span<const InducedModule> mods) {
  if (mods.empty()) throw InputError("direct_sum: empty list");
  const auto& first = mods.front();
  InducedModule out(first.H(), first.q());
  for (const auto& m : mods) {
    if (m.q() != first.q()) throw InputError("direct_sum: summands over different fields");
    if (!(m.H() == first.H())) throw InputError("direct_sum: summands for different groups");
  }
  std::size_t d = 0;
  for (const auto& m : mods) {
    for (auto s : m.summands()) {
      s.offset += d;
      out.summands_.push_back(std::move(s));
    }
    d += m.d();
    out.m_ = std::lcm(out.m_, m.m());
  }
  out.d_ = d;
  for (std::size_t p = 0; p < first.H().order(); ++p) {
    FpMatrix M(d, d, first.q());
    std::size_t off = 0;
    for (const auto& m : mods) {
      M.set_block(off, m.matrices_[p]);
      off += m.d();
    }
    out.matrices_.push_back(std::move(M));
  }
  return out;
}

// d - rank(ρ(x) - I).
inline std::size_t fixed_space_dim(const InducedModule& mod, ElementId x) {
  return mod.d() - rank(mod.matrix(x) - FpMatrix::identity(mod.d(), mod.q()));
}

// Sum of the double-coset counts over the module's summands.
inline std::size_t predicted_fixed_dim(const InducedModule& mod, ElementId x) {
  std::size_t total = 0;
  for (const auto& s : mod.summands()) total += mackey_fixed_dim(mod.H(), s.reference, x);
  return total;
}

// Points are vectors of F_q^d, indexed mixed-radix with coordinate 0 least
// significant; index 0 is the zero vector.
class AffineFWGroup {
 public:
  std::uint32_t q() const noexcept { return q_; }
  std::size_t d() const noexcept { return d_; }
  std::size_t degree() const noexcept { return degree_; }
  const GroupPtr& G() const noexcept { return G_; }
  const Subgroup& stabiliser() const { return *stabiliser_; }
  const Subgroup& translations() const { return *translations_; }
  const Subgroup& rho_kernel() const { return *rho_kernel_; }
  const InducedModule& module() const { return *module_; }

  std::vector<std::uint32_t> vector_of(Point p) const {
    std::vector<std::uint32_t> v(d_);
    for (std::size_t i = 0; i < d_; ++i) {
      v[i] = p % q_;
      p /= q_;
    }
    return v;
  }

  Point point_of(const std::vector<std::uint32_t>& v) const {
    Point p = 0;
    for (std::size_t i = d_; i-- > 0;) p = p * q_ + v[i];
    return p;
  }

  Permutation linear_permutation(const FpMatrix& M) const {
    std::vector<Point> img(degree());
    for (Point p = 0; p < degree(); ++p) img[p] = point_of(M.apply(vector_of(p)));
    return Permutation(std::move(img));
  }

  // ρ(x) as an element of G.
  ElementId rho(ElementId x) const { return G_->id_of(linear_permutation(module_->matrix(x))); }

  friend AffineFWGroup build_affine_group(const InducedModule&, std::size_t);

 private:
  std::uint32_t q_ = 0;
  std::size_t d_ = 0;
  std::size_t degree_ = 0;
  GroupPtr G_;
  std::optional<Subgroup> stabiliser_, translations_, rho_kernel_;
  std::optional<InducedModule> module_;
};

// Q ⋊ ρ(H) on q^d points: translations by basis vectors plus v ↦ v·ρ(g)
// for each generator g of H.
inline AffineFWGroup build_affine_group(const InducedModule& mod, std::size_t degree_cap = 100'000) {
  std::uint64_t degree = 1;
  for (std::size_t i = 0; i < mod.d(); ++i) {
    degree *= mod.q();
    if (degree > degree_cap) throw CapExceededError("q^d exceeds the degree cap " + std::to_string(degree_cap), degree);
  }
  AffineFWGroup A;
  A.q_ = mod.q();
  A.d_ = mod.d();
  A.degree_ = degree;
  A.module_.emplace(mod);

  std::vector<Permutation> translation_gens;
  for (std::size_t i = 0; i < A.d_; ++i) {
    std::vector<Point> img(degree);
    for (Point p = 0; p < degree; ++p) {
      auto v = A.vector_of(p);
      v[i] = (v[i] + 1) % A.q_;
      img[p] = A.point_of(v);
    }
    translation_gens.emplace_back(std::move(img));
  }
  std::vector<Permutation> linear_gens;
  for (const auto& M : mod.generator_matrices()) linear_gens.push_back(A.linear_permutation(M));

  std::vector<Permutation> gens = translation_gens;
  gens.insert(gens.end(), linear_gens.begin(), linear_gens.end());
  A.G_ = generate(degree, std::move(gens));
  A.translations_.emplace(subgroup(A.G_, translation_gens));
  A.stabiliser_.emplace(subgroup(A.G_, linear_gens));

  ElementSet ker;
  const auto I = FpMatrix::identity(mod.d(), mod.q());
  for (ElementId x : mod.H().members())
    if (mod.matrix(x) == I) ker.push_back(x);
  A.rho_kernel_.emplace(Subgroup::from_closed_set(mod.H().parent_ptr(), std::move(ker)));

  const std::size_t expected = degree * (mod.H().order() / A.rho_kernel_->order());
  if (A.G_->order() != expected)
    throw Error("affine group has order " + std::to_string(A.G_->order()) + ", expected " + std::to_string(expected));
  if (A.translations_->order() != degree || !is_normal(*A.translations_))
    throw Error("translations do not form a regular normal subgroup");
  if (!(point_stabilizer(A.G_, 0) == *A.stabiliser_)) throw Error("stabiliser of 0 differs from ρ(H)");
  return A;
}

// Module over F_q afforded by an explicit matrix list.
struct ExplicitSummandSpec {
  std::vector<FpMatrix> generator_matrices;
  CyclicSection reference;
};

struct ConstructOptions {
  std::optional<std::uint32_t> q;
  std::vector<ExplicitSummandSpec> explicit_summands;
  std::size_t degree_cap = 100'000;
};

struct ConstructionResult {
  Subgroup Hstar;
  std::vector<CyclicSection> sections;  // induced sections followed by explicit-summand references
  ElementSet predicted;                 // elements of H with a nonzero fixed vector
  AffineFWGroup group;
  DerangementReport report;
  bool faithful = true;
  std::vector<CheckResult> checks;

  const InducedModule& module() const { return group.module(); }
  bool all_checks_passed() const { return all_passed(checks) && report.all_checks_passed(); }
};

// Builds Q ⋊ ρ(H) from the direct sum of the modules for `sections` (plus any
// explicit summands), analyses (G, ρ(H)) and checks the outcome against the
// double-coset prediction. Precondition failures throw HypothesisError.
inline ConstructionResult end_to_end(const Subgroup& H, const Subgroup& Hstar,
                                     const std::vector<CyclicSection>& sections, const ConstructOptions& opts = {}) {
  require_same_parent(H, Hstar);
  require_normal_proper(H, Hstar);
  if (sections.empty() && opts.explicit_summands.empty()) throw InputError("end_to_end: no sections given");

  std::vector<CyclicSection> all = sections;
  for (const auto& e : opts.explicit_summands) all.push_back(e.reference);
  const auto& Hp = H.parent();
  for (const auto& s : all) {
    require_same_parent(H, s.C);
    if (!s.C.is_subset_of(H)) throw InputError("section " + describe(s) + " does not lie in H");
    if (auto w = power_condition_witness(H, Hstar, s))
      throw HypothesisError("power condition fails for section " + describe(s), format_cycles(Hp.element(*w)));
  }
  ElementSet predicted = predicted_fixed_elements(H, all);
  for (ElementId x : predicted)
    if (!Hstar.contains(x))
      throw HypothesisError("an element outside H* fixes a nonzero vector", format_cycles(Hp.element(x)));

  std::uint32_t q = 0;
  if (opts.q) {
    q = *opts.q;
  } else {
    std::uint64_t m = 1;
    for (const auto& s : sections) m = std::lcm(m, static_cast<std::uint64_t>(s.m));
    q = opts.explicit_summands.empty() ? choose_prime(m, H.order())
                                       : opts.explicit_summands.front().generator_matrices.front().modulus();
    if (!opts.explicit_summands.empty() && (q - 1) % m != 0)
      throw InputError("explicit summands are over F_" + std::to_string(q) + " but sections need q ≡ 1 mod " +
                       std::to_string(m));
  }

  std::vector<InducedModule> parts;
  for (const auto& s : sections) parts.push_back(induce_module(H, linear_character(s), q));
  for (const auto& e : opts.explicit_summands) parts.push_back(explicit_module(H, q, e.generator_matrices, e.reference));
  InducedModule mod = direct_sum(parts);

  AffineFWGroup A = build_affine_group(mod, opts.degree_cap);
  const GroupPtr& Gp = A.G();
  DerangementReport report = analyze(A.stabiliser());

  std::vector<CheckResult> checks;
  auto add = [&](std::string name, bool ok, std::string detail = {}) {
    checks.push_back({std::move(name), true, ok, std::move(detail)});
  };

  bool oracle = true, fpf = true;
  for (ElementId x : H.members()) {
    std::size_t dim = fixed_space_dim(mod, x);
    if (dim != predicted_fixed_dim(mod, x)) oracle = false;
    if (!Hstar.contains(x) && dim != 0) fpf = false;
  }
  add("mackey-rank", oracle, "fixed-space dimension equals the double-coset count for every x in H");
  add("fixed-point-free", fpf, "every x in H \\ H* fixes only the zero vector");

  std::vector<ElementId> rho_predicted;
  for (ElementId x : predicted) rho_predicted.push_back(A.rho(x));
  std::sort(rho_predicted.begin(), rho_predicted.end());
  Subgroup U_pred = Subgroup::closure(Gp, rho_predicted);
  add("U-predicted", report.U == U_pred,
      "|U| = " + std::to_string(report.U.order()) + ", |ρ(<predicted>)| = " + std::to_string(U_pred.order()));

  const std::size_t index_GD = Gp->order() / report.D.order();
  const std::size_t index_HU = A.stabiliser().order() / report.U.order();
  add("index", index_GD == index_HU,
      "|G:D| = " + std::to_string(index_GD) + ", |ρ(H):U| = " + std::to_string(index_HU));

  bool translations_derange = true;
  for (ElementId t : A.translations().members())
    if (t != GeneratedGroup::identity_id() && !std::binary_search(report.delta.begin(), report.delta.end(), t))
      translations_derange = false;
  add("translations", translations_derange && A.translations().is_subset_of(report.D),
      "nonzero translations are derangements and Q <= D");

  bool faithful = A.rho_kernel().is_trivial();

  return ConstructionResult{Hstar, std::move(all), std::move(predicted), std::move(A), std::move(report), faithful,
                            std::move(checks)};
}

}  // namespace fwlab
