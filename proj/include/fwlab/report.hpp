#pragma once

// Group definition files and the JSON report document.
//
// Group file: {"name": str, "degree": int, "generators": [str],
//              "stabilizer_generators": [str]?}
// with generators in 0-based cycle notation.

#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "fwlab/derangements.hpp"
#include "fwlab/error.hpp"
#include "fwlab/fw_construct.hpp"
#include "fwlab/group.hpp"
#include "fwlab/subgroup.hpp"

namespace fwlab {

using Json = nlohmann::ordered_json;

struct GroupFile {
  std::string name;
  std::size_t degree = 0;
  std::vector<std::string> generators;
  std::optional<std::vector<std::string>> stabilizer_generators;

  GroupPtr build(GenerateOptions opts = {}) const { return generate_from_cycles(degree, generators, opts); }

  Json to_json() const {
    Json j;
    j["name"] = name;
    j["degree"] = degree;
    j["generators"] = generators;
    if (stabilizer_generators) j["stabilizer_generators"] = *stabilizer_generators;
    return j;
  }

  static GroupFile from_json(const Json& j) {
    try {
      if (!j.is_object()) throw InputError("group file must be a JSON object");
      GroupFile f;
      f.name = j.value("name", std::string{});
      if (!j.contains("degree") || !j["degree"].is_number_integer() || j["degree"].get<long long>() <= 0)
        throw InputError("group file needs a positive integer 'degree'");
      f.degree = j["degree"].get<std::size_t>();
      if (!j.contains("generators") || !j["generators"].is_array())
        throw InputError("group file needs a 'generators' array");
      f.generators = j["generators"].get<std::vector<std::string>>();
      if (j.contains("stabilizer_generators"))
        f.stabilizer_generators = j["stabilizer_generators"].get<std::vector<std::string>>();
      for (const auto& g : f.generators) parse_cycles(g, f.degree);
      if (f.stabilizer_generators)
        for (const auto& g : *f.stabilizer_generators) parse_cycles(g, f.degree);
      return f;
    } catch (const nlohmann::json::exception& e) {
      throw InputError(std::string("malformed group file: ") + e.what());
    }
  }

  static GroupFile load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read group file '" + path + "'");
    try {
      return from_json(Json::parse(in));
    } catch (const nlohmann::json::parse_error& e) {
      throw InputError("'" + path + "' is not valid JSON: " + e.what());
    }
  }
};

// Splits "g1,g2,..." at commas outside parentheses.
inline std::vector<std::string> split_generator_list(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  std::vector<std::string> trimmed;
  for (auto& s : out) {
    auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    trimmed.push_back(s.substr(b, s.find_last_not_of(" \t") - b + 1));
  }
  return trimmed;
}

// "1" or "" is the trivial subgroup; otherwise a generator list.
inline Subgroup parse_subgroup_selector(const GroupPtr& G, std::string_view sel) {
  if (sel == "1") return Subgroup::trivial(G);
  return subgroup_from_cycles(G, split_generator_list(sel));
}

// "C-gens;E-gens"
inline CyclicSection parse_section_selector(const GroupPtr& G, std::string_view sel) {
  auto semi = sel.find(';');
  if (semi == std::string_view::npos) throw InputError("section selector needs the form '<C-gens>;<E-gens>'");
  Subgroup C = parse_subgroup_selector(G, sel.substr(0, semi));
  Subgroup E = parse_subgroup_selector(G, sel.substr(semi + 1));
  if (!E.is_subset_of(C)) throw InputError("section selector: E is not contained in C");
  return make_section(C, E);
}

// {"q": 3, "matrices": [[[..]]], "section": "C;E"} with one matrix per
// generator of the group file, in file order.
inline ExplicitSummandSpec load_explicit_summand(const GroupPtr& H, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read summand file '" + path + "'");
  try {
    Json j = Json::parse(in);
    auto q = j.at("q").get<std::uint32_t>();
    ExplicitSummandSpec spec{{}, parse_section_selector(H, j.at("section").get<std::string>())};
    for (const auto& M : j.at("matrices"))
      spec.generator_matrices.push_back(FpMatrix::from_rows(M.get<std::vector<std::vector<std::int64_t>>>(), q));
    return spec;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("malformed summand file '" + path + "': " + e.what());
  }
}

inline std::vector<std::string> generator_strings(const Subgroup& S) {
  std::vector<std::string> out;
  for (const auto& g : S.generator_permutations()) out.push_back(format_cycles(g));
  return out;
}

struct WielandtSection {
  std::vector<std::string> hstar_generators;
  std::size_t hstar_order = 0;
  std::size_t kstar_order = 0;
  bool is_subgroup = false;
  bool is_normal = false;
  bool intersection_ok = false;
  bool product_ok = false;
  bool size_formula_ok = false;

  bool all_ok() const { return is_subgroup && is_normal && intersection_ok && product_ok && size_formula_ok; }
};

struct SectionRecord {
  std::vector<std::string> C;
  std::vector<std::string> E;
  std::size_t order_C = 0;
  std::size_t order_E = 0;
  std::size_t m = 0;
  std::string kind;  // "induced" or "explicit"
};

struct ConstructionSection {
  std::uint32_t q = 0;
  std::size_t d = 0;
  std::size_t degree = 0;
  std::vector<std::string> hstar_generators;
  std::vector<SectionRecord> sections;
  bool faithful = true;
  std::size_t rho_kernel_order = 1;
  std::vector<std::string> rho_kernel_generators;
  std::vector<CheckResult> checks;
};

struct ReportDocument {
  Json input;
  std::size_t degree = 0;
  std::size_t n = 0;
  std::size_t order_G = 0;
  std::size_t order_H = 0;
  std::size_t delta = 0;
  std::size_t D = 0;
  std::size_t U = 0;
  std::size_t W = 0;
  std::size_t K = 0;
  std::size_t index_G_D = 0;
  std::size_t index_H_U = 0;
  std::string classification;
  bool faithful = true;
  std::size_t core_order = 1;
  bool cameron_cohen_equality = false;
  std::vector<CheckResult> checks;
  std::vector<std::string> notes;
  std::optional<WielandtSection> wielandt;
  std::optional<ConstructionSection> construction;

  bool all_passed() const {
    return all_passed_checks(checks) && (!wielandt || wielandt->all_ok()) &&
           (!construction || all_passed_checks(construction->checks));
  }

  // Everything except the input echo and the construction section: the
  // part that must agree between isomorphic inputs.
  Json analysis_json() const {
    Json j = to_json();
    j.erase("input");
    j.erase("construction");
    return j;
  }

  Json to_json() const {
    Json j;
    j["input"] = input;
    j["degree"] = degree;
    j["n"] = n;
    j["order_G"] = order_G;
    j["order_H"] = order_H;
    j["delta"] = delta;
    j["D"] = D;
    j["U"] = U;
    j["W"] = W;
    j["K"] = K;
    j["index_G_D"] = index_G_D;
    j["index_H_U"] = index_H_U;
    j["classification"] = classification;
    j["faithful"] = faithful;
    j["core_order"] = core_order;
    j["cameron_cohen_equality"] = cameron_cohen_equality;
    j["checks"] = checks_to_json(checks);
    j["notes"] = notes;
    if (wielandt) {
      const auto& w = *wielandt;
      j["wielandt"] = {{"hstar_generators", w.hstar_generators}, {"hstar_order", w.hstar_order},
                       {"kstar_order", w.kstar_order},           {"is_subgroup", w.is_subgroup},
                       {"is_normal", w.is_normal},               {"intersection_ok", w.intersection_ok},
                       {"product_ok", w.product_ok},             {"size_formula_ok", w.size_formula_ok}};
    }
    if (construction) {
      const auto& c = *construction;
      Json secs = Json::array();
      for (const auto& s : c.sections)
        secs.push_back({{"C", s.C}, {"E", s.E}, {"order_C", s.order_C}, {"order_E", s.order_E}, {"m", s.m},
                        {"kind", s.kind}});
      j["construction"] = {{"q", c.q},
                           {"d", c.d},
                           {"degree", c.degree},
                           {"hstar_generators", c.hstar_generators},
                           {"sections", secs},
                           {"faithful", c.faithful},
                           {"rho_kernel_order", c.rho_kernel_order},
                           {"rho_kernel_generators", c.rho_kernel_generators},
                           {"checks", checks_to_json(c.checks)}};
    }
    return j;
  }

  static ReportDocument from_json(const Json& j) {
    ReportDocument r;
    r.input = j.at("input");
    r.degree = j.at("degree").get<std::size_t>();
    r.n = j.at("n").get<std::size_t>();
    r.order_G = j.at("order_G").get<std::size_t>();
    r.order_H = j.at("order_H").get<std::size_t>();
    r.delta = j.at("delta").get<std::size_t>();
    r.D = j.at("D").get<std::size_t>();
    r.U = j.at("U").get<std::size_t>();
    r.W = j.at("W").get<std::size_t>();
    r.K = j.at("K").get<std::size_t>();
    r.index_G_D = j.at("index_G_D").get<std::size_t>();
    r.index_H_U = j.at("index_H_U").get<std::size_t>();
    r.classification = j.at("classification").get<std::string>();
    r.faithful = j.at("faithful").get<bool>();
    r.core_order = j.at("core_order").get<std::size_t>();
    r.cameron_cohen_equality = j.at("cameron_cohen_equality").get<bool>();
    r.checks = checks_from_json(j.at("checks"));
    r.notes = j.at("notes").get<std::vector<std::string>>();
    if (j.contains("wielandt")) {
      const auto& w = j["wielandt"];
      r.wielandt = WielandtSection{w.at("hstar_generators").get<std::vector<std::string>>(),
                                   w.at("hstar_order").get<std::size_t>(),
                                   w.at("kstar_order").get<std::size_t>(),
                                   w.at("is_subgroup").get<bool>(),
                                   w.at("is_normal").get<bool>(),
                                   w.at("intersection_ok").get<bool>(),
                                   w.at("product_ok").get<bool>(),
                                   w.at("size_formula_ok").get<bool>()};
    }
    if (j.contains("construction")) {
      const auto& c = j["construction"];
      ConstructionSection cs;
      cs.q = c.at("q").get<std::uint32_t>();
      cs.d = c.at("d").get<std::size_t>();
      cs.degree = c.at("degree").get<std::size_t>();
      cs.hstar_generators = c.at("hstar_generators").get<std::vector<std::string>>();
      for (const auto& s : c.at("sections"))
        cs.sections.push_back({s.at("C").get<std::vector<std::string>>(), s.at("E").get<std::vector<std::string>>(),
                               s.at("order_C").get<std::size_t>(), s.at("order_E").get<std::size_t>(),
                               s.at("m").get<std::size_t>(), s.at("kind").get<std::string>()});
      cs.faithful = c.at("faithful").get<bool>();
      cs.rho_kernel_order = c.at("rho_kernel_order").get<std::size_t>();
      cs.rho_kernel_generators = c.at("rho_kernel_generators").get<std::vector<std::string>>();
      cs.checks = checks_from_json(c.at("checks"));
      r.construction = std::move(cs);
    }
    return r;
  }

 private:
  static bool all_passed_checks(const std::vector<CheckResult>& cs) { return fwlab::all_passed(cs); }

  static Json checks_to_json(const std::vector<CheckResult>& cs) {
    Json arr = Json::array();
    for (const auto& c : cs)
      arr.push_back({{"name", c.name}, {"applicable", c.applicable}, {"passed", c.passed}, {"detail", c.detail}});
    return arr;
  }

  static std::vector<CheckResult> checks_from_json(const Json& arr) {
    std::vector<CheckResult> out;
    for (const auto& c : arr)
      out.push_back({c.at("name").get<std::string>(), c.at("applicable").get<bool>(), c.at("passed").get<bool>(),
                     c.at("detail").get<std::string>()});
    return out;
  }
};

inline ReportDocument make_report(const DerangementReport& r, Json input = Json::object()) {
  ReportDocument doc;
  doc.input = std::move(input);
  doc.degree = r.G().degree();
  doc.n = r.n;
  doc.order_G = r.group_order();
  doc.order_H = r.H.order();
  doc.delta = r.delta.size();
  doc.D = r.D.order();
  doc.U = r.U.order();
  doc.W = r.W.order();
  doc.K = r.K.size();
  doc.index_G_D = doc.order_G / doc.D;
  doc.index_H_U = doc.order_H / doc.U;
  doc.classification = std::string(to_string(r.classification));
  doc.faithful = r.faithful;
  doc.core_order = r.core_order;
  doc.cameron_cohen_equality = r.cameron_cohen_equality;
  doc.checks = r.checks;
  doc.notes = r.notes;
  return doc;
}

inline WielandtSection make_wielandt_section(const WielandtData& w) {
  return {generator_strings(w.Hstar), w.Hstar.order(), w.Kstar.size(), w.is_subgroup, w.is_normal,
          w.intersection_ok, w.product_ok, w.size_formula_ok};
}

inline ConstructionSection make_construction_section(const ConstructionResult& c) {
  ConstructionSection s;
  s.q = c.module().q();
  s.d = c.module().d();
  s.degree = c.group.degree();
  s.hstar_generators = generator_strings(c.Hstar);
  for (const auto& summand : c.module().summands()) {
    const auto& sec = summand.reference;
    s.sections.push_back({generator_strings(sec.C), generator_strings(sec.E), sec.C.order(), sec.E.order(), sec.m,
                          summand.character ? "induced" : "explicit"});
  }
  s.faithful = c.faithful;
  s.rho_kernel_order = c.group.rho_kernel().order();
  s.rho_kernel_generators = generator_strings(c.group.rho_kernel());
  s.checks = c.checks;
  return s;
}

inline ReportDocument make_construction_report(const ConstructionResult& c, Json input = Json::object()) {
  ReportDocument doc = make_report(c.report, std::move(input));
  doc.construction = make_construction_section(c);
  return doc;
}

// The constructed group as a group file: translations and ρ(H) generators,
// with ρ(H) as the stabiliser.
inline GroupFile emit_group_file(const ConstructionResult& c, std::string name) {
  GroupFile f;
  f.name = std::move(name);
  f.degree = c.group.degree();
  for (const auto& g : c.group.G()->generators()) f.generators.push_back(format_cycles(g));
  f.stabilizer_generators = generator_strings(c.group.stabiliser());
  return f;
}

}  // namespace fwlab
