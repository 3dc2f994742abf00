#include <gtest/gtest.h>

#include "fwlab/fwlab.hpp"
#include "support/bridge.hpp"

using namespace fwlab;

namespace {

GroupPtr q8() { return quaternion_group_file().build(); }

Subgroup sub(const GroupPtr& G, std::vector<std::string> gens) { return subgroup_from_cycles(G, gens); }

ElementId el(const GroupPtr& G, const std::string& cycles) { return G->id_of(parse_cycles(cycles, G->degree())); }

const std::string kI = gallery_data::kQuaternion[0];
const std::string kJ = gallery_data::kQuaternion[1];

// Fixed vectors counted by enumerating all of F_q^d.
std::size_t fixed_dim_by_enumeration(const InducedModule& mod, ElementId x) {
  const FpMatrix& M = mod.matrix(x);
  std::vector<std::uint32_t> v(mod.d(), 0);
  std::size_t fixed = 0;
  for (;;) {
    if (M.apply(v) == v) ++fixed;
    std::size_t k = 0;
    while (k < v.size() && ++v[k] == mod.q()) v[k++] = 0;
    if (k == v.size()) break;
  }
  std::size_t dim = 0;
  for (std::size_t s = 1; s < fixed; s *= mod.q()) ++dim;
  return dim;
}

}  // namespace

TEST(Sections, MakeSectionValidates) {
  GroupPtr G = q8();
  Subgroup H = Subgroup::whole(G), I = sub(G, {kI}), one = Subgroup::trivial(G);
  EXPECT_EQ(make_section(H, I).m, 2u);
  EXPECT_EQ(make_section(I, one).m, 4u);
  EXPECT_THROW(make_section(H, one), InputError);  // Q8 is not cyclic
  EXPECT_THROW(make_section(I, I), InputError);
  GroupPtr S = generate_from_cycles(4, {"(0 1 2 3)", "(0 1)"});
  EXPECT_THROW(make_section(Subgroup::whole(S), sub(S, {"(0 1)"})), InputError);  // not normal
}

TEST(Sections, PowerCondition) {
  GroupPtr G = q8();
  Subgroup H = Subgroup::whole(G), I = sub(G, {kI}), one = Subgroup::trivial(G);
  EXPECT_TRUE(check_power_condition(H, I, make_section(H, I)));
  // every x != 1 in Q8 has -1 among its powers
  EXPECT_TRUE(check_power_condition(H, one, make_section(I, one)));
  // i lies in E = <i>, so no power of i is in C \ E
  auto w = power_condition_witness(H, one, make_section(H, I));
  ASSERT_TRUE(w.has_value());
  EXPECT_TRUE(I.contains(*w));

  GroupPtr V = generate_from_cycles(4, {"(0 1)(2 3)", "(0 2)(1 3)"});
  Subgroup HV = Subgroup::whole(V), a = sub(V, {"(0 1)(2 3)"});
  auto wv = power_condition_witness(HV, Subgroup::trivial(V), make_section(a, Subgroup::trivial(V)));
  ASSERT_TRUE(wv.has_value());
  EXPECT_FALSE(a.contains(*wv));
}

TEST(Sections, QuaternionOverI) {
  GroupPtr G = q8();
  Subgroup H = Subgroup::whole(G), I = sub(G, {kI});
  auto secs = find_cyclic_sections(H, I);
  bool has_whole = false;
  for (const auto& s : secs) has_whole = has_whole || (s.C == H && s.E == I);
  EXPECT_TRUE(has_whole);
  for (const auto& s : secs) EXPECT_TRUE(check_power_condition(H, I, s));
}

TEST(Sections, KleinFourOverTrivialHasNone) {
  GroupPtr V = generate_from_cycles(4, {"(0 1)(2 3)", "(0 2)(1 3)"});
  EXPECT_TRUE(find_cyclic_sections(Subgroup::whole(V), Subgroup::trivial(V)).empty());
}

TEST(Sections, CyclicFourOverTrivial) {
  GroupPtr C = generate_from_cycles(4, {"(0 1 2 3)"});
  Subgroup H = Subgroup::whole(C);
  auto secs = find_cyclic_sections(H, Subgroup::trivial(C));
  ASSERT_FALSE(secs.empty());
  bool found = false;
  for (const auto& s : secs) found = found || (s.C == H && s.E.is_trivial());
  EXPECT_TRUE(found);
}

TEST(Sections, RejectsNonPGroup) {
  GroupPtr S = generate_from_cycles(3, {"(0 1 2)", "(0 1)"});
  EXPECT_THROW(find_cyclic_sections(Subgroup::whole(S), Subgroup::trivial(S)), HypothesisError);
}

TEST(Mackey, QuaternionExamples) {
  GroupPtr G = q8();
  Subgroup H = Subgroup::whole(G), I = sub(G, {kI}), one = Subgroup::trivial(G);
  CyclicSection induced_from_i = make_section(I, one);
  EXPECT_EQ(mackey_fixed_dim(H, induced_from_i, el(G, kJ)), 0u);
  EXPECT_EQ(mackey_fixed_dim(H, induced_from_i, GeneratedGroup::identity_id()), 2u);
  CyclicSection sign = make_section(H, I);
  EXPECT_EQ(mackey_fixed_dim(H, sign, el(G, kI)), 1u);
  EXPECT_EQ(mackey_fixed_dim(H, sign, el(G, kJ)), 0u);
}

TEST(Mackey, PredictedFixedElements) {
  GroupPtr G = q8();
  Subgroup H = Subgroup::whole(G), I = sub(G, {kI}), one = Subgroup::trivial(G);
  std::vector<CyclicSection> s1{make_section(I, one)};
  EXPECT_EQ(predicted_fixed_elements(H, s1), ElementSet{GeneratedGroup::identity_id()});
  std::vector<CyclicSection> s2{make_section(H, I)};
  EXPECT_EQ(predicted_fixed_elements(H, s2), I.members());
  EXPECT_THROW(predicted_fixed_elements(H, std::vector<CyclicSection>{}), InputError);
}

TEST(ChoosePrime, SmallestAdmissible) {
  EXPECT_EQ(choose_prime(4, 8), 5u);
  EXPECT_EQ(choose_prime(2, 4), 3u);
  EXPECT_EQ(choose_prime(2, 6), 5u);  // 3 divides 6
  EXPECT_EQ(choose_prime(3, 9), 7u);
  EXPECT_EQ(choose_prime(8, 8), 17u);
  EXPECT_EQ(choose_prime(1, 2), 3u);
  EXPECT_THROW(choose_prime(0, 8), InputError);
}

TEST(InducedModule, QuaternionFromI) {
  GroupPtr G = q8();
  Subgroup H = Subgroup::whole(G), I = sub(G, {kI}), one = Subgroup::trivial(G);
  InducedModule mod = induce_module(H, linear_character(make_section(I, one)), 5);
  EXPECT_EQ(mod.d(), 2u);
  EXPECT_EQ(mod.q(), 5u);
  for (ElementId x : H.members()) {
    EXPECT_TRUE(mod.matrix(x).is_monomial());
    EXPECT_EQ(fixed_space_dim(mod, x), fixed_dim_by_enumeration(mod, x));
    EXPECT_EQ(fixed_space_dim(mod, x), predicted_fixed_dim(mod, x));
  }
  EXPECT_EQ(fixed_space_dim(mod, el(G, kJ)), 0u);
  EXPECT_EQ(fixed_space_dim(mod, GeneratedGroup::identity_id()), 2u);
  EXPECT_NO_THROW(mod.verify_homomorphism());
}

TEST(InducedModule, OneDimensional) {
  GroupPtr C = generate_from_cycles(4, {"(0 1 2 3)"});
  Subgroup H = Subgroup::whole(C);
  InducedModule mod = induce_module(H, linear_character(make_section(H, Subgroup::trivial(C))), 5);
  EXPECT_EQ(mod.d(), 1u);
  // ω = 2 (least primitive root of 5) raised to (5-1)/4
  EXPECT_EQ(mod.matrix(el(C, "(0 1 2 3)")).at(0, 0), 2u);
}

TEST(InducedModule, RejectsBadPrime) {
  GroupPtr C = generate_from_cycles(4, {"(0 1 2 3)"});
  Subgroup H = Subgroup::whole(C);
  auto lc = linear_character(make_section(H, Subgroup::trivial(C)));
  EXPECT_THROW(induce_module(H, lc, 7), InputError);  // 7 is not 1 mod 4
  GroupPtr S = generate_from_cycles(3, {"(0 1 2)", "(0 1)"});
  Subgroup HS = Subgroup::whole(S);
  auto sign = linear_character(make_section(HS, sub(S, {"(0 1 2)"})));
  EXPECT_THROW(induce_module(HS, sign, 3), InputError);  // 3 divides |S3|
  EXPECT_NO_THROW(induce_module(HS, sign, 5));
}

TEST(ExplicitModule, QuaternionIntoSL23) {
  GroupPtr G = q8();
  Subgroup H = Subgroup::whole(G), I = sub(G, {kI}), one = Subgroup::trivial(G);
  std::vector<FpMatrix> mats;
  for (const auto& rows : gallery_data::kQuaternionSL23) mats.push_back(FpMatrix::from_rows(rows, 3));
  InducedModule mod = explicit_module(H, 3, mats, make_section(I, one));
  EXPECT_EQ(mod.d(), 2u);
  for (ElementId x : H.members()) {
    EXPECT_EQ(fixed_space_dim(mod, x), fixed_dim_by_enumeration(mod, x));
    EXPECT_EQ(fixed_space_dim(mod, x), predicted_fixed_dim(mod, x));
  }
  std::vector<FpMatrix> bad{FpMatrix::from_rows({{0, 1}, {2, 0}}, 3), FpMatrix::from_rows({{1, 0}, {0, 2}}, 3)};
  EXPECT_THROW(explicit_module(H, 3, bad, make_section(I, one)), InputError);
}

TEST(DirectSum, FlagshipModule) {
  ConstructionResult c = construct_proper_fw_216();
  const InducedModule& mod = c.module();
  EXPECT_EQ(mod.d(), 3u);
  GroupPtr G = mod.H().parent_ptr();
  EXPECT_EQ(fixed_space_dim(mod, el(G, kI)), 1u);
  EXPECT_EQ(fixed_space_dim(mod, el(G, kJ)), 0u);
  EXPECT_THROW(direct_sum(std::vector<InducedModule>{}), InputError);
}

TEST(AffineGroup, CyclicFourOverF5) {
  GroupPtr C = generate_from_cycles(4, {"(0 1 2 3)"});
  Subgroup H = Subgroup::whole(C);
  AffineFWGroup A = build_affine_group(induce_module(H, linear_character(make_section(H, Subgroup::trivial(C))), 5));
  EXPECT_EQ(A.degree(), 5u);
  EXPECT_EQ(A.G()->order(), 20u);
  EXPECT_EQ(A.translations().order(), 5u);
  EXPECT_EQ(A.stabiliser(), point_stabilizer(A.G(), 0));
  EXPECT_TRUE(A.rho_kernel().is_trivial());
}

TEST(AffineGroup, CyclicTwoOverF3IsS3) {
  GroupPtr C = generate_from_cycles(2, {"(0 1)"});
  Subgroup H = Subgroup::whole(C);
  AffineFWGroup A = build_affine_group(induce_module(H, linear_character(make_section(H, Subgroup::trivial(C))), 3));
  EXPECT_EQ(A.degree(), 3u);
  EXPECT_EQ(A.G()->order(), 6u);
}

TEST(AffineGroup, PointIndexing) {
  ConstructionResult c = construct_proper_fw_216();
  const AffineFWGroup& A = c.group;
  EXPECT_EQ(A.degree(), 27u);
  EXPECT_EQ(A.G()->order(), 216u);
  EXPECT_EQ(A.vector_of(5), (std::vector<std::uint32_t>{2, 1, 0}));
  for (Point p = 0; p < A.degree(); ++p) EXPECT_EQ(A.point_of(A.vector_of(p)), p);
}

TEST(AffineGroup, DegreeCap) {
  ConstructionResult c = construct_proper_fw_216();
  EXPECT_THROW(build_affine_group(c.module(), 26), CapExceededError);
}

TEST(EndToEnd, Frobenius200) {
  ConstructionResult c = construct_frobenius_200();
  EXPECT_EQ(c.group.degree(), 25u);
  EXPECT_EQ(c.group.G()->order(), 200u);
  EXPECT_EQ(c.report.classification, Classification::FrobeniusProper);
  EXPECT_TRUE(c.report.U.is_trivial());
  EXPECT_EQ(c.report.D, c.group.translations());
  EXPECT_TRUE(is_nilpotent(c.report.D));
  EXPECT_TRUE(c.all_checks_passed());
  EXPECT_TRUE(c.faithful);
}

TEST(EndToEnd, Flagship216) {
  ConstructionResult c = construct_proper_fw_216();
  EXPECT_EQ(c.report.U.order(), 4u);
  EXPECT_EQ(c.report.D.order(), 108u);
  EXPECT_EQ(c.report.classification, Classification::ProperFW);
  EXPECT_TRUE(c.all_checks_passed());
}

TEST(EndToEnd, KleinFourUnfaithful) {
  GroupPtr V = generate_from_cycles(4, {"(0 1)(2 3)", "(0 2)(1 3)"});
  Subgroup H = Subgroup::whole(V), a = sub(V, {"(0 1)(2 3)"});
  ConstructOptions opts;
  opts.q = 3;
  ConstructionResult c = end_to_end(H, a, {make_section(H, a)}, opts);
  EXPECT_FALSE(c.faithful);
  EXPECT_EQ(c.group.rho_kernel(), a);
  EXPECT_EQ(c.group.degree(), 3u);
  EXPECT_EQ(c.group.G()->order(), 6u);
  EXPECT_TRUE(c.all_checks_passed());
}

TEST(EndToEnd, PreconditionFailuresNameTheCulprit) {
  GroupPtr G = q8();
  Subgroup H = Subgroup::whole(G), I = sub(G, {kI}), one = Subgroup::trivial(G);
  try {
    end_to_end(H, one, {make_section(H, I)});
    FAIL() << "expected HypothesisError";
  } catch (const HypothesisError& e) {
    EXPECT_FALSE(e.witness().empty());
  }
  EXPECT_THROW(end_to_end(H, one, {}), InputError);
}

// Every section of every small 2-group: rank side = double-coset side, and
// the fixed dimension is a class function.
TEST(Mackey, OracleAgreesAndIsClassFunction) {
  const std::vector<std::pair<std::size_t, std::vector<std::string>>> groups{
      {8, gallery_data::kQuaternion}, {4, {"(0 1 2 3)"}}, {8, {"(0 1 2 3 4 5 6 7)"}}, {4, {"(0 1 2 3)", "(1 3)"}},
      {4, {"(0 1)(2 3)", "(0 2)(1 3)"}}};
  for (const auto& [degree, gens] : groups) {
    GroupPtr G = generate_from_cycles(degree, gens);
    Subgroup H = Subgroup::whole(G);
    for (const auto& sec : all_cyclic_sections(H)) {
      std::uint32_t q = choose_prime(sec.m, H.order());
      InducedModule mod = induce_module(H, linear_character(sec), q);
      for (ElementId x : H.members()) {
        std::size_t dim = fixed_space_dim(mod, x);
        EXPECT_EQ(dim, mackey_fixed_dim(H, sec, x)) << describe(sec);
        for (ElementId g : H.members()) EXPECT_EQ(fixed_space_dim(mod, G->conjugate(x, g)), dim);
      }
      EXPECT_EQ(fixed_space_dim(mod, GeneratedGroup::identity_id()), mod.d());
    }
  }
}
