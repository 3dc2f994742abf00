#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "fwlab/fwlab.hpp"

using namespace fwlab;

namespace {

const std::string kData = FWLAB_DATA_DIR;

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("fwlab-test-" + name)).string();
}

ReportDocument analyze_file(const GroupFile& f, std::optional<Point> point) {
  GroupPtr G = f.build();
  Subgroup H = point ? point_stabilizer(G, *point) : subgroup_from_cycles(G, *f.stabilizer_generators);
  return make_report(analyze(H), Json{{"group", f.name}});
}

}  // namespace

TEST(GroupFile, LoadAndValidate) {
  GroupFile f = GroupFile::load(kData + "/gallery/affine-20.json");
  EXPECT_EQ(f.name, "affine-20");
  EXPECT_EQ(f.degree, 5u);
  EXPECT_EQ(f.build()->order(), 20u);
  EXPECT_THROW(GroupFile::load(kData + "/no-such-file.json"), InputError);
  EXPECT_THROW(GroupFile::from_json(Json::parse(R"j({"degree": 3})j")), InputError);
  EXPECT_THROW(GroupFile::from_json(Json::parse(R"j({"degree": 0, "generators": []})j")), InputError);
  EXPECT_THROW(GroupFile::from_json(Json::parse(R"j({"degree": 3, "generators": ["(0 3)"]})j")), InputError);
  EXPECT_THROW(GroupFile::from_json(Json::parse(R"j({"degree": 3, "generators": [7]})j")), InputError);
  EXPECT_THROW(GroupFile::from_json(Json::parse(R"j([1, 2])j")), InputError);
}

TEST(GroupFile, DataFilesMatchBuiltinGallery) {
  for (const auto& e : builtin_gallery()) {
    GroupFile f = GroupFile::load(kData + "/gallery/" + e.file.name + ".json");
    EXPECT_EQ(f.to_json(), e.file.to_json()) << e.file.name;
  }
}

TEST(Selectors, SplitGeneratorList) {
  EXPECT_EQ(split_generator_list("(0 1 2),(3 4)"), (std::vector<std::string>{"(0 1 2)", "(3 4)"}));
  EXPECT_EQ(split_generator_list("(0, 1), (2 3)"), (std::vector<std::string>{"(0, 1)", "(2 3)"}));
  EXPECT_TRUE(split_generator_list("").empty());
}

TEST(Selectors, SubgroupAndSection) {
  GroupPtr Q = quaternion_group_file().build();
  EXPECT_TRUE(parse_subgroup_selector(Q, "1").is_trivial());
  EXPECT_TRUE(parse_subgroup_selector(Q, "").is_trivial());
  EXPECT_EQ(parse_subgroup_selector(Q, gallery_data::kQuaternionI).order(), 4u);
  CyclicSection s = parse_section_selector(Q, gallery_data::kQuaternion[0] + "," + gallery_data::kQuaternion[1] +
                                                  ";" + gallery_data::kQuaternionI);
  EXPECT_EQ(s.m, 2u);
  EXPECT_THROW(parse_section_selector(Q, "1"), InputError);
  EXPECT_THROW(parse_section_selector(Q, "1;" + gallery_data::kQuaternionI), InputError);
}

TEST(Selectors, ExplicitSummandFile) {
  GroupPtr Q = quaternion_group_file().build();
  ExplicitSummandSpec spec = load_explicit_summand(Q, kData + "/modules/q8-sl23.json");
  ASSERT_EQ(spec.generator_matrices.size(), 2u);
  EXPECT_EQ(spec.generator_matrices[0].modulus(), 3u);
  EXPECT_EQ(spec.reference.m, 4u);
}

TEST(ReportDocument, JsonRoundTripIsByteIdentical) {
  std::vector<ReportDocument> docs;
  docs.push_back(analyze_file(GroupFile::load(kData + "/gallery/s4-natural.json"), 3));
  docs.push_back(make_construction_report(construct_proper_fw_216(), Json{{"example", "216"}}));
  {
    GroupFile f = GroupFile::load(kData + "/gallery/affine-20.json");
    GroupPtr G = f.build();
    Subgroup H = point_stabilizer(G, 0);
    DerangementReport r = analyze(H);
    ReportDocument d = make_report(r);
    d.wielandt = make_wielandt_section(wielandt_kernel(H, r.U));
    docs.push_back(d);
  }
  for (const auto& d : docs) {
    std::string first = d.to_json().dump(2);
    ReportDocument back = ReportDocument::from_json(Json::parse(first));
    EXPECT_EQ(back.to_json().dump(2), first);
    EXPECT_EQ(back.all_passed(), d.all_passed());
  }
}

TEST(ReportDocument, DivisibilityRelations) {
  for (const auto& row : run_gallery()) {
    ASSERT_TRUE(row.error.empty()) << row.name << ": " << row.error;
    const auto& d = row.report;
    EXPECT_EQ(d.order_G, d.n * d.order_H) << row.name;
    EXPECT_EQ(d.order_G % d.D, 0u);
    EXPECT_EQ(d.order_H % d.U, 0u);
    EXPECT_EQ(d.order_G % d.W, 0u);
    EXPECT_EQ(d.index_G_D * d.D, d.order_G);
    EXPECT_EQ(d.index_H_U * d.U, d.order_H);
    EXPECT_EQ(d.order_H % d.core_order, 0u);
  }
}

TEST(ReportDocument, EmittedGroupReanalysesIdentically) {
  for (auto build : {construct_proper_fw_216, construct_frobenius_200}) {
    ConstructionResult c = build();
    GroupFile f = emit_group_file(c, "emitted");
    std::string path = temp_path(f.name + std::to_string(c.group.G()->order()) + ".json");
    {
      std::ofstream out(path);
      out << f.to_json().dump(2) << "\n";
    }
    GroupFile back = GroupFile::load(path);
    std::remove(path.c_str());
    ReportDocument original = make_report(c.report, Json{{"source", "construction"}});
    ReportDocument again = analyze_file(back, std::nullopt);
    EXPECT_EQ(again.analysis_json(), original.analysis_json());
    EXPECT_EQ(again.to_json().dump(), [&] {
      ReportDocument o = original;
      o.input = again.input;
      return o.to_json().dump();
    }());
  }
}

TEST(ReportDocument, ReconstructedAffine20MatchesGalleryFile) {
  GroupPtr C = generate_from_cycles(4, {"(0 1 2 3)"});
  Subgroup H = Subgroup::whole(C);
  ConstructOptions opts;
  opts.q = 5;
  ConstructionResult c = end_to_end(H, Subgroup::trivial(C), {make_section(H, Subgroup::trivial(C))}, opts);
  ReportDocument built = make_construction_report(c);
  ReportDocument gallery = analyze_file(GroupFile::load(kData + "/gallery/affine-20.json"), 0);
  EXPECT_EQ(built.analysis_json(), gallery.analysis_json());
}

TEST(Gallery, AllRowsPass) {
  auto rows = run_gallery();
  EXPECT_GE(rows.size(), 10u);
  for (const auto& r : rows) EXPECT_TRUE(r.passed()) << r.name << " " << r.error;
}

TEST(Gallery, FilterByClassification) {
  auto rows = run_gallery("frobenius");
  ASSERT_FALSE(rows.empty());
  for (const auto& r : rows) EXPECT_EQ(r.report.classification, "frobenius_proper");
  auto proper = run_gallery("proper_fw");
  ASSERT_EQ(proper.size(), 1u);
  EXPECT_EQ(proper[0].name, "constructed-216");
}
