#pragma once

// Built-in example pairs (G, H) and the runner behind `fwlab gallery`.

#include <cstddef>
#include <functional>
#include <future>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fwlab/derangements.hpp"
#include "fwlab/fw_construct.hpp"
#include "fwlab/report.hpp"
#include "fwlab/subgroup.hpp"

namespace fwlab {

struct GalleryEntry {
  GroupFile file;                 // stabilizer_generators set when H is given by generators
  std::optional<Point> point;     // otherwise H is the stabiliser of this point
  bool doubly_transitive_frobenius = false;
};

namespace gallery_data {

inline const std::vector<std::string> kQuaternion{"(0 1 2 3)(4 7 6 5)", "(0 4 2 6)(1 5 3 7)"};
inline const std::string kQuaternionI = "(0 1 2 3)(4 7 6 5)";

// Q8 -> SL(2,3) on the generators i, j above, acting on row vectors.
inline const std::vector<std::vector<std::vector<std::int64_t>>> kQuaternionSL23{{{0, 1}, {2, 0}}, {{1, 1}, {1, 2}}};

}  // namespace gallery_data

inline const std::vector<GalleryEntry>& builtin_gallery() {
  static const std::vector<GalleryEntry> entries = [] {
    auto point = [](std::string name, std::size_t degree, std::vector<std::string> gens, Point p, bool dtf = false) {
      return GalleryEntry{GroupFile{std::move(name), degree, std::move(gens), std::nullopt}, p, dtf};
    };
    std::vector<GalleryEntry> v;
    v.push_back(point("affine-20", 5, {"(0 1 2 3 4)", "(1 2 4 3)"}, 0, true));
    v.push_back(point("affine-42", 7, {"(0 1 2 3 4 5 6)", "(1 3 2 6 4 5)"}, 0, true));
    v.push_back(point("affine-56", 8, {"(0 1)(2 3)(4 5)(6 7)", "(1 2 4 3 6 7 5)"}, 0, true));
    v.push_back(point("s3-natural", 3, {"(0 1 2)", "(0 1)"}, 2, true));
    v.push_back(point("s4-natural", 4, {"(0 1 2 3)", "(0 1)"}, 3));
    v.push_back(point("a4-c3", 4, {"(0 1 2)", "(1 2 3)"}, 3, true));
    v.push_back(point("dihedral-10", 5, {"(0 1 2 3 4)", "(1 4)(2 3)"}, 0));
    v.push_back(point("dihedral-14", 7, {"(0 1 2 3 4 5 6)", "(1 6)(2 5)(3 4)"}, 0));
    v.push_back(point("frobenius-21", 7, {"(0 1 2 3 4 5 6)", "(1 2 4)(3 6 5)"}, 0));
    v.push_back(point("frobenius-55", 11, {"(0 1 2 3 4 5 6 7 8 9 10)", "(1 3 9 5 4)(2 6 7 10 8)"}, 0));
    v.push_back(point("dihedral-8", 4, {"(0 1 2 3)", "(1 3)"}, 0));
    v.push_back(point("s5-natural", 5, {"(0 1 2 3 4)", "(0 1)"}, 4));
    v.push_back(point("a5-natural", 5, {"(0 1 2 3 4)", "(0 1 2)"}, 4));
    v.push_back(GalleryEntry{
        GroupFile{"quaternion-c4", 8, gallery_data::kQuaternion, std::vector<std::string>{gallery_data::kQuaternionI}},
        std::nullopt, false});
    return v;
  }();
  return entries;
}

inline GroupFile quaternion_group_file() { return GroupFile{"quaternion", 8, gallery_data::kQuaternion, std::nullopt}; }

// Q8 acting on F_5^2 through the module induced from a faithful character
// of <i>: a Frobenius group of order 200.
inline ConstructionResult construct_frobenius_200() {
  GroupPtr Q = quaternion_group_file().build();
  Subgroup H = Subgroup::whole(Q);
  Subgroup i = subgroup_from_cycles(Q, {gallery_data::kQuaternionI});
  ConstructOptions opts;
  opts.q = 5;
  return end_to_end(H, Subgroup::trivial(Q), {make_section(i, Subgroup::trivial(Q))}, opts);
}

// Q8 on F_3^3 = (1-dim, kernel <i>) ⊕ (2-dim faithful, via SL(2,3)):
// order 216, with H/U of order 2.
inline ConstructionResult construct_proper_fw_216() {
  GroupPtr Q = quaternion_group_file().build();
  Subgroup H = Subgroup::whole(Q);
  Subgroup i = subgroup_from_cycles(Q, {gallery_data::kQuaternionI});
  ConstructOptions opts;
  std::vector<FpMatrix> mats;
  for (const auto& rows : gallery_data::kQuaternionSL23) mats.push_back(FpMatrix::from_rows(rows, 3));
  opts.explicit_summands.push_back({std::move(mats), make_section(i, Subgroup::trivial(Q))});
  return end_to_end(H, i, {make_section(H, i)}, opts);
}

struct GalleryPair {
  std::string name;
  Subgroup H;
  bool doubly_transitive_frobenius = false;
};

inline Subgroup stabiliser_of(const GalleryEntry& e, const GroupPtr& G) {
  if (e.point) return point_stabilizer(G, *e.point);
  return subgroup_from_cycles(G, *e.file.stabilizer_generators);
}

using GalleryBuilder = std::pair<std::string, std::function<GalleryPair()>>;

inline std::vector<GalleryBuilder> gallery_builders() {
  std::vector<GalleryBuilder> out;
  for (const auto& e : builtin_gallery())
    out.emplace_back(e.file.name, [&e] {
      GroupPtr G = e.file.build();
      return GalleryPair{e.file.name, stabiliser_of(e, G), e.doubly_transitive_frobenius};
    });
  out.emplace_back("constructed-200", [] {
    return GalleryPair{"constructed-200", construct_frobenius_200().group.stabiliser(), false};
  });
  out.emplace_back("constructed-216", [] {
    return GalleryPair{"constructed-216", construct_proper_fw_216().group.stabiliser(), false};
  });
  return out;
}

struct GalleryRow {
  std::string name;
  std::size_t order = 0;
  std::size_t degree = 0;
  bool doubly_transitive_frobenius = false;
  ReportDocument report;
  std::string error;  // non-empty if the pipeline threw

  bool passed() const { return error.empty() && report.all_passed(); }
};

// Runs analyze + verify on every gallery pair, in parallel. Rows keep the
// gallery order. `filter` keeps rows whose classification starts with it.
inline std::vector<GalleryRow> run_gallery(std::string_view filter = {}) {
  std::vector<std::future<GalleryRow>> jobs;
  for (auto& [name, build] : gallery_builders())
    jobs.push_back(std::async(std::launch::async, [name, build] {
      GalleryRow row;
      row.name = name;
      try {
        GalleryPair p = build();
        row.order = p.H.parent().order();
        row.degree = p.H.parent().order() / p.H.order();
        row.doubly_transitive_frobenius = p.doubly_transitive_frobenius;
        row.report = make_report(analyze(p.H), Json{{"gallery", p.name}});
      } catch (const std::exception& ex) {
        row.error = ex.what();
      }
      return row;
    }));
  std::vector<GalleryRow> rows;
  for (auto& j : jobs) {
    GalleryRow row = j.get();
    if (!filter.empty() && row.error.empty() && !row.report.classification.starts_with(filter)) continue;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace fwlab
