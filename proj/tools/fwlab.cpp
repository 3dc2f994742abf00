// fwlab: derangement subgroups, Wielandt kernels and affine FW constructions
// from the command line.
//
// Exit codes: 0 all checks pass, 1 usage or input error, 2 a check failed.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fwlab/fwlab.hpp"

namespace {

using namespace fwlab;

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kCheckFailed = 2;

void print_failed_checks(const ReportDocument& doc) {
  for (const auto& c : doc.checks)
    if (!c.passed) std::cerr << "check " << c.name << " FAILED: " << c.detail << "\n";
  if (doc.wielandt && !doc.wielandt->all_ok()) std::cerr << "Wielandt kernel checks FAILED\n";
  if (doc.construction)
    for (const auto& c : doc.construction->checks)
      if (!c.passed) std::cerr << "construction check " << c.name << " FAILED: " << c.detail << "\n";
}

void print_text_report(const ReportDocument& d, std::ostream& out) {
  out << "classification  " << d.classification << "\n"
      << "|G| = " << d.order_G << "  |H| = " << d.order_H << "  n = " << d.n << "\n"
      << "|Delta| = " << d.delta << "  |D| = " << d.D << "  |U| = " << d.U << "  |W| = " << d.W
      << "  |K| = " << d.K << "\n"
      << "|G:D| = " << d.index_G_D << "  |H:U| = " << d.index_H_U << "  faithful = " << (d.faithful ? "yes" : "no")
      << "\n";
  for (const auto& c : d.checks) {
    if (!c.applicable) continue;
    out << "  " << std::left << std::setw(9) << c.name << (c.passed ? "pass" : "FAIL");
    if (!c.detail.empty()) out << "  " << c.detail;
    out << "\n";
  }
  if (d.wielandt) {
    const auto& w = *d.wielandt;
    out << "Wielandt: |H*| = " << w.hstar_order << "  |K*| = " << w.kstar_order << "  "
        << (w.all_ok() ? "pass" : "FAIL") << "\n";
  }
  for (const auto& n : d.notes) out << "note: " << n << "\n";
}

int finish(const ReportDocument& doc, bool json) {
  if (json)
    std::cout << doc.to_json().dump(2) << "\n";
  else
    print_text_report(doc, std::cout);
  if (!doc.all_passed()) {
    print_failed_checks(doc);
    return kCheckFailed;
  }
  return kOk;
}

struct AnalyzeArgs {
  std::string group;
  std::optional<unsigned> point;
  bool use_subgroup = false;
  std::optional<std::string> wielandt;
  bool json = false;
};

int cmd_analyze(const AnalyzeArgs& a) {
  GroupFile file = GroupFile::load(a.group);
  GroupPtr G = file.build();
  Json input{{"group", file.name}, {"file", a.group}};
  std::optional<Subgroup> H;
  if (a.point) {
    if (!G->is_transitive()) throw InputError("--point needs a transitive group");
    H = point_stabilizer(G, *a.point);
    input["point"] = *a.point;
  } else {
    if (!file.stabilizer_generators) throw InputError("--subgroup needs 'stabilizer_generators' in the group file");
    H = subgroup_from_cycles(G, *file.stabilizer_generators);
    input["subgroup"] = *file.stabilizer_generators;
  }
  DerangementReport report = analyze(*H);
  ReportDocument doc = make_report(report, input);
  if (a.wielandt) {
    Subgroup Hstar = *a.wielandt == "U" ? report.U : parse_subgroup_selector(G, *a.wielandt);
    doc.input["wielandt"] = *a.wielandt;
    doc.wielandt = make_wielandt_section(wielandt_kernel(*H, Hstar));
  }
  return finish(doc, a.json);
}

int cmd_sections(const std::string& group, const std::string& hstar) {
  GroupFile file = GroupFile::load(group);
  GroupPtr H = file.build();
  Subgroup Hstar = parse_subgroup_selector(H, hstar);
  auto sections = find_cyclic_sections(Subgroup::whole(H), Hstar);
  Json list = Json::array();
  for (const auto& s : sections)
    list.push_back({{"C", generator_strings(s.C)},
                    {"E", generator_strings(s.E)},
                    {"order_C", s.C.order()},
                    {"order_E", s.E.order()},
                    {"m", s.m}});
  Json out{{"group", file.name},
           {"order", H->order()},
           {"hstar", generator_strings(Hstar)},
           {"hstar_order", Hstar.order()},
           {"realisable", !sections.empty()},
           {"sections", list}};
  std::cout << out.dump(2) << "\n";
  return kOk;
}

struct ConstructArgs {
  std::string group;
  std::string hstar;
  std::vector<std::string> sections;
  std::vector<std::string> summands;
  std::optional<unsigned> q;
  std::optional<std::string> emit;
};

int cmd_construct(const ConstructArgs& a) {
  GroupFile file = GroupFile::load(a.group);
  GroupPtr Hg = file.build();
  Subgroup H = Subgroup::whole(Hg);
  Subgroup Hstar = parse_subgroup_selector(Hg, a.hstar);
  std::vector<CyclicSection> sections;
  for (const auto& s : a.sections) sections.push_back(parse_section_selector(Hg, s));
  ConstructOptions opts;
  if (a.q) opts.q = *a.q;
  for (const auto& path : a.summands) opts.explicit_summands.push_back(load_explicit_summand(Hg, path));

  ConstructionResult result = end_to_end(H, Hstar, sections, opts);
  Json input{{"group", file.name}, {"file", a.group}, {"hstar", a.hstar}, {"sections", a.sections}};
  if (!a.summands.empty()) input["summands"] = a.summands;
  if (a.q) input["q"] = *a.q;
  ReportDocument doc = make_construction_report(result, input);
  if (a.emit) {
    std::ofstream out(*a.emit);
    if (!out) throw InputError("cannot write '" + *a.emit + "'");
    std::string name = (file.name.empty() ? std::string("group") : file.name) + "-affine-" +
                       std::to_string(result.group.G()->order());
    out << emit_group_file(result, name).to_json().dump(2) << "\n";
  }
  return finish(doc, true);
}

int cmd_gallery(const std::string& filter, bool json) {
  auto rows = run_gallery(filter);
  bool ok = true;
  for (const auto& r : rows) ok = ok && r.passed();
  if (json) {
    Json out = Json::array();
    for (const auto& r : rows) {
      Json j{{"name", r.name}, {"passed", r.passed()}};
      if (!r.error.empty())
        j["error"] = r.error;
      else
        j["report"] = r.report.to_json();
      out.push_back(std::move(j));
    }
    std::cout << Json{{"all_passed", ok}, {"rows", out}}.dump(2) << "\n";
  } else {
    std::cout << std::left << std::setw(18) << "group" << std::setw(18) << "class" << std::right << std::setw(6)
              << "|G|" << std::setw(5) << "n" << std::setw(6) << "|D|" << std::setw(5) << "|U|" << std::setw(7)
              << "|Del|" << "  CC=  checks\n";
    for (const auto& r : rows) {
      if (!r.error.empty()) {
        std::cout << std::left << std::setw(18) << r.name << "ERROR " << r.error << "\n";
        continue;
      }
      const auto& d = r.report;
      std::cout << std::left << std::setw(18) << r.name << std::setw(18) << d.classification << std::right
                << std::setw(6) << d.order_G << std::setw(5) << d.n << std::setw(6) << d.D << std::setw(5) << d.U
                << std::setw(7) << d.delta << "  " << (d.cameron_cohen_equality ? "yes" : "no ") << "  ";
      for (const auto& c : d.checks)
        if (c.applicable) std::cout << c.name << (c.passed ? "+" : "!") << " ";
      std::cout << "\n";
    }
    std::cout << (ok ? "all gallery checks pass" : "GALLERY FAILURES") << " (" << rows.size() << " rows)\n";
  }
  return ok ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fwlab: derangement subgroups and Frobenius-Wielandt groups"};
  app.require_subcommand(1);

  AnalyzeArgs analyze_args;
  auto* analyze = app.add_subcommand("analyze", "Compute Delta, D, U, W, K for (G, H) and verify them");
  analyze->add_option("--group", analyze_args.group, "group file (JSON)")->required();
  auto* point_opt = analyze->add_option("--point", analyze_args.point, "H = stabiliser of this point");
  auto* sub_opt = analyze->add_flag("--subgroup", analyze_args.use_subgroup, "H = <stabilizer_generators>");
  point_opt->excludes(sub_opt);
  analyze->add_option("--wielandt", analyze_args.wielandt, "H* as generator list, '1', or 'U'");
  analyze->add_flag("--json", analyze_args.json, "print the JSON report");

  std::string sections_group, sections_hstar;
  auto* sections = app.add_subcommand("sections", "List cyclic sections certifying H/H*");
  sections->add_option("--group", sections_group, "group file for H")->required();
  sections->add_option("--hstar", sections_hstar, "H* as generator list or '1'")->required();

  ConstructArgs construct_args;
  auto* construct = app.add_subcommand("construct", "Build the affine FW group Q x| rho(H) and analyse it");
  construct->add_option("--group", construct_args.group, "group file for H")->required();
  construct->add_option("--hstar", construct_args.hstar, "H* as generator list or '1'")->required();
  construct->add_option("--section", construct_args.sections, "'<C-gens>;<E-gens>' (repeatable)");
  construct->add_option("--summand", construct_args.summands, "explicit summand file (repeatable)");
  construct->add_option("--q", construct_args.q, "prime field size");
  construct->add_option("--emit", construct_args.emit, "write the constructed group file here");

  std::string gallery_filter;
  bool gallery_json = false;
  auto* gallery = app.add_subcommand("gallery", "Analyse every built-in example");
  gallery->add_option("--filter", gallery_filter, "keep rows whose classification starts with this");
  gallery->add_flag("--json", gallery_json, "aggregate JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kInputError;
  }

  try {
    if (*analyze) {
      if (!analyze_args.point && !analyze_args.use_subgroup) throw InputError("analyze needs --point or --subgroup");
      return cmd_analyze(analyze_args);
    }
    if (*sections) return cmd_sections(sections_group, sections_hstar);
    if (*construct) {
      if (construct_args.sections.empty() && construct_args.summands.empty())
        throw InputError("construct needs at least one --section or --summand");
      return cmd_construct(construct_args);
    }
    if (*gallery) return cmd_gallery(gallery_filter, gallery_json);
  } catch (const CapExceededError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    std::cerr << "internal check failed: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kInputError;
}
