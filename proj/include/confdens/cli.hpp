#pragma once

// Command-line surface: verification batteries, degeneration scans, weight
// classification, invariant-form reports, and a grid runner that compares the
// engine's case labels against an independently coded expected-case oracle.
//
// Exit codes: 0 success; 2 a check or case comparison failed; 3 the requested
// conclusion needs a larger truncation degree; 64 usage error.
//
// JSON output carries schema_version "1" and is byte-deterministic: key order
// is fixed, all exact numbers are rendered as canonical strings, and parallel
// grid cells are merged by input position.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "confdens/analysis.hpp"
#include "confdens/cone_rep.hpp"
#include "confdens/generators.hpp"
#include "confdens/harmonic.hpp"

namespace confdens::cli {

using ordered_json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 2;
inline constexpr int kExitTruncation = 3;
inline constexpr int kExitUsage = 64;

// ---------------------------------------------------------------------------
// Small rendering helpers.

inline std::string case_label(const Taxonomy& t) {
  std::string s = to_string(t.kind);
  if (t.kind != ModuleCase::Simple) s += "(" + std::to_string(t.parameter) + ")";
  return s;
}

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (size_t k = 0; k < parts.size(); ++k) {
    if (k) out += sep;
    out += parts[k];
  }
  return out;
}

inline std::vector<std::string> node_names(const NodeSystem& ns, const std::vector<size_t>& set) {
  std::vector<std::string> out;
  out.reserve(set.size());
  for (size_t k : set) out.push_back(ns.labels[k].name());
  return out;
}

inline std::vector<std::string> weight_strings(const UnitarityResult& r) {
  std::vector<std::string> out;
  out.reserve(r.weights.size());
  for (const auto& w : r.weights) out.push_back(w.to_string());
  return out;
}

inline ordered_json unitarity_json(const UnitarityResult& r) {
  ordered_json j;
  ordered_json names = ordered_json::array();
  for (const auto& label : r.nodes) names.push_back(label.name());
  j["nodes"] = std::move(names);
  j["verdict"] = to_string(r.verdict);
  j["weights"] = weight_strings(r);
  j["detail"] = r.detail;
  return j;
}

inline void print_unitarity_line(std::ostream& out, const std::string& title,
                                 const UnitarityResult& r) {
  out << "  " << title << ": " << to_string(r.verdict);
  if (!r.weights.empty()) out << "  weights: " << join(weight_strings(r), ", ");
  if (!r.detail.empty()) out << "  (" << r.detail << ")";
  out << "\n";
}

inline void emit_json(std::ostream& out, const ordered_json& j) { out << j.dump(2) << "\n"; }

// ---------------------------------------------------------------------------
// verify: structural identity battery for one n.

inline int cmd_verify(int n, int max_degree, bool json, std::ostream& out) {
  int chart_degree = std::min(max_degree, 4);
  int stereo_degree = std::min(max_degree, 3);

  std::vector<std::pair<std::string, bool>> checks;
  std::vector<std::string> details;
  auto add = [&](const std::string& name, bool pass, const std::string& detail = "") {
    checks.emplace_back(name, pass);
    details.push_back(pass ? "" : detail);
  };

  size_t expected_count = static_cast<size_t>((n + 1) * (n + 2) / 2);
  add("generator_count", conformal_basis(n).size() == expected_count);

  ClosureCertificate cert = closure_certificate(n);
  add("bracket_closure", cert.fields_close && cert.matrices_close);
  add("matrix_correspondence", cert.tables_agree);
  add("antisymmetry", cert.antisymmetric);
  add("jacobi", cert.jacobi);

  ChartIdentityReport chart = chart_identity_check(n, chart_degree);
  add("chart_representation", chart.morphism_ok, chart.failure);
  add("divergence_cocycle", chart.cocycle_ok, chart.failure);
  add("weight_decomposition", chart.decomposition_ok, chart.failure);

  DimensionReport dims = harmonic_dimension_check(n, max_degree);
  add("harmonic_dimensions", dims.ok, dims.failure);

  MorphismReport morphism = matrix_morphism_check(n, max_degree);
  add("block_representation", morphism.ok, morphism.failure);

  CasimirBlocksReport casimir = casimir_blocks_check(n, max_degree);
  add("casimir_blocks", casimir.ok());

  CasimirStereoReport stereo = casimir_stereo_check(n, stereo_degree);
  add("casimir_chart", stereo.ok);

  DualityReport duality = duality_check(n, max_degree);
  add("duality", duality.ok, duality.failure);

  bool all_pass = true;
  for (const auto& [name, pass] : checks)
    if (!pass) all_pass = false;

  if (json) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "verify";
    j["n"] = n;
    j["max_degree"] = max_degree;
    j["chart_degree"] = chart_degree;
    ordered_json arr = ordered_json::array();
    for (size_t k = 0; k < checks.size(); ++k) {
      ordered_json c;
      c["name"] = checks[k].first;
      c["pass"] = checks[k].second;
      c["detail"] = details[k];
      arr.push_back(std::move(c));
    }
    j["checks"] = std::move(arr);
    j["all_pass"] = all_pass;
    emit_json(out, j);
  } else {
    out << "verify n=" << n << " max-degree=" << max_degree << "\n";
    for (size_t k = 0; k < checks.size(); ++k) {
      out << (checks[k].second ? "  ok    " : "  FAIL  ") << checks[k].first;
      if (!checks[k].second && !details[k].empty()) out << "  (" << details[k] << ")";
      out << "\n";
    }
    out << (all_pass ? "all checks passed" : "CHECKS FAILED") << "\n";
  }
  return all_pass ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------------------
// scan: formal degeneration thresholds per edge.

inline int cmd_scan(int n, int max_degree, bool json, std::ostream& out) {
  ScanReport report = vanishing_scan(n, max_degree - 2);

  auto roots_to_strings = [](const std::vector<GaussianRational>& roots) {
    std::vector<std::string> out_strings;
    for (const auto& r : roots) out_strings.push_back(r.to_string());
    return out_strings;
  };

  if (json) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "scan";
    j["n"] = n;
    j["max_degree"] = max_degree;
    ordered_json edges = ordered_json::array();
    for (const auto& row : report.rows) {
      ordered_json raise;
      raise["from"] = row.m;
      raise["to"] = row.m + 1;
      raise["direction"] = "raise";
      raise["lambda_roots"] = roots_to_strings(row.raise_roots);
      raise["expected_root"] = row.expected_raise_root.to_string();
      raise["match"] = row.raise_matches;
      edges.push_back(std::move(raise));
      ordered_json lower;
      lower["from"] = row.m + 1;
      lower["to"] = row.m;
      lower["direction"] = "lower";
      lower["lambda_roots"] = roots_to_strings(row.lower_roots);
      lower["expected_root"] = row.expected_lower_root.to_string();
      lower["match"] = row.lower_matches;
      edges.push_back(std::move(lower));
    }
    j["edges"] = std::move(edges);
    j["all_match"] = report.all_match;
    emit_json(out, j);
  } else {
    out << "scan n=" << n << " max-degree=" << max_degree << "\n";
    out << "  edge        raising roots    lowering roots\n";
    for (const auto& row : report.rows) {
      std::string raise = join(roots_to_strings(row.raise_roots), ",");
      std::string lower = join(roots_to_strings(row.lower_roots), ",");
      out << "  " << row.m << " <-> " << row.m + 1 << "    {" << raise << "}"
          << (row.raise_matches ? "" : " MISMATCH") << "    {" << lower << "}"
          << (row.lower_matches ? "" : " MISMATCH") << "\n";
    }
    out << (report.all_match ? "all thresholds match the closed forms"
                             : "THRESHOLD MISMATCH")
        << "\n";
  }
  return report.all_match ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------------------
// classify / unitarity: structure and invariant forms at one exact weight.

inline ordered_json classification_json(const Classification& c, const char* command) {
  ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = command;
  j["n"] = c.n;
  j["max_degree"] = c.M;
  j["lambda"] = c.params.lambda.to_string();
  ordered_json params;
  params["lambda"] = c.params.lambda.to_string();
  params["nu"] = c.params.nu.to_string();
  params["nu_e"] = c.params.nu_e.to_string();
  j["parameters"] = std::move(params);
  j["case"] = to_string(c.taxonomy.kind);
  if (c.taxonomy.kind == ModuleCase::Simple) {
    j["case_parameter"] = nullptr;
    j["threshold_degree"] = nullptr;
  } else {
    j["case_parameter"] = c.taxonomy.parameter;
    j["threshold_degree"] = c.taxonomy.threshold_degree;
  }
  j["truncation_reliable_up_to"] = c.truncation_reliable_up_to;
  j["truncation_sufficient"] = c.truncation_sufficient;
  j["boundary_warning"] = c.detection.boundary_warning;

  const NodeSystem& ns = c.detection.nodes;
  ordered_json nodes = ordered_json::array();
  for (size_t k = 0; k < ns.labels.size(); ++k) {
    ordered_json node;
    node["name"] = ns.labels[k].name();
    node["degree"] = ns.labels[k].m;
    node["dim"] = ns.node_dim(k);
    nodes.push_back(std::move(node));
  }
  j["nodes"] = std::move(nodes);

  ordered_json vanished = ordered_json::array();
  for (const auto& e : c.detection.edges)
    if (!e.present && !e.formally_zero) {
      ordered_json edge;
      edge["from"] = ns.labels[e.from].name();
      edge["to"] = ns.labels[e.to].name();
      vanished.push_back(std::move(edge));
    }
  j["vanished_edges"] = std::move(vanished);

  ordered_json sets = ordered_json::array();
  for (size_t s = 0; s < c.detection.proper_closed_sets.size(); ++s) {
    const auto& nodes_in_set = c.detection.proper_closed_sets[s];
    ordered_json set_json;
    set_json["nodes"] = node_names(ns, nodes_in_set);
    set_json["dimension"] = c.detection.closed_set_dims[s];
    bool minimal = std::find(c.detection.minimal_closed_sets.begin(),
                             c.detection.minimal_closed_sets.end(),
                             nodes_in_set) != c.detection.minimal_closed_sets.end();
    set_json["minimal"] = minimal;
    sets.push_back(std::move(set_json));
  }
  j["proper_closed_sets"] = std::move(sets);
  j["detection_matches_taxonomy"] = c.detection_matches_taxonomy;

  ordered_json unit;
  unit["full_module"] = unitarity_json(c.full_module);
  ordered_json subs = ordered_json::array();
  for (const auto& sub : c.submodules) subs.push_back(unitarity_json(sub));
  unit["submodules"] = std::move(subs);
  j["unitarity"] = std::move(unit);
  return j;
}

inline void classification_text(const Classification& c, bool detection_section,
                                std::ostream& out) {
  out << "n=" << c.n << " lambda=" << c.params.lambda.to_string()
      << "  (nu=" << c.params.nu.to_string() << ", nu_e=" << c.params.nu_e.to_string() << ")\n";
  out << "case: " << case_label(c.taxonomy) << "\n";
  out << "truncation: degrees <= " << c.M << ", conclusions reliable up to degree "
      << c.truncation_reliable_up_to << (c.truncation_sufficient ? "" : "  INSUFFICIENT")
      << "\n";
  if (c.detection.boundary_warning)
    out << "warning: a degenerate edge touches the truncation boundary\n";

  const NodeSystem& ns = c.detection.nodes;
  if (detection_section) {
    if (c.detection.proper_closed_sets.empty()) {
      out << "no proper invariant node set (simple at this truncation)\n";
    } else {
      out << "proper invariant node sets:\n";
      for (size_t s = 0; s < c.detection.proper_closed_sets.size(); ++s) {
        const auto& set = c.detection.proper_closed_sets[s];
        bool minimal = std::find(c.detection.minimal_closed_sets.begin(),
                                 c.detection.minimal_closed_sets.end(),
                                 set) != c.detection.minimal_closed_sets.end();
        out << "  {" << join(node_names(ns, set), ",") << "}  dim "
            << c.detection.closed_set_dims[s] << (minimal ? "  (minimal)" : "") << "\n";
      }
    }
    out << "detection matches taxonomy: " << (c.detection_matches_taxonomy ? "yes" : "NO")
        << "\n";
  }

  out << "invariant Hermitian forms:\n";
  print_unitarity_line(out, "full module", c.full_module);
  for (size_t s = 0; s < c.submodules.size(); ++s) {
    std::string title =
        "{" + join(node_names(ns, c.detection.proper_closed_sets[s]), ",") + "}";
    print_unitarity_line(out, title, c.submodules[s]);
  }
}

inline int classification_exit(const Classification& c) {
  if (!c.truncation_sufficient) return kExitTruncation;
  if (!c.detection_matches_taxonomy) return kExitCheckFailed;
  return kExitOk;
}

inline int cmd_classify(int n, const GaussianRational& lambda0, int max_degree, bool json,
                        std::ostream& out) {
  Classification c = classify(n, lambda0, max_degree);
  if (json)
    emit_json(out, classification_json(c, "classify"));
  else
    classification_text(c, /*detection_section=*/true, out);
  return classification_exit(c);
}

inline int cmd_unitarity(int n, const GaussianRational& lambda0, int max_degree, bool json,
                         std::ostream& out) {
  Classification c = classify(n, lambda0, max_degree);
  if (json) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "unitarity";
    j["n"] = c.n;
    j["max_degree"] = c.M;
    j["lambda"] = c.params.lambda.to_string();
    j["truncation_reliable_up_to"] = c.truncation_reliable_up_to;
    j["truncation_sufficient"] = c.truncation_sufficient;
    j["full_module"] = unitarity_json(c.full_module);
    ordered_json subs = ordered_json::array();
    for (size_t s = 0; s < c.submodules.size(); ++s) {
      ordered_json sub = unitarity_json(c.submodules[s]);
      sub["dimension"] = c.detection.closed_set_dims[s];
      subs.push_back(std::move(sub));
    }
    j["submodules"] = std::move(subs);
    emit_json(out, j);
  } else {
    classification_text(c, /*detection_section=*/false, out);
  }
  return c.truncation_sufficient ? kExitOk : kExitTruncation;
}

// ---------------------------------------------------------------------------
// grid: many cells compared against an independent expected-case oracle.

struct GridCell {
  int n = 0;
  GaussianRational lambda0;
};

// Expected-case oracle, coded independently of the engine taxonomy: decides
// from the integer arithmetic of nu = n*lambda alone.
struct ExpectedCase {
  std::string kind = "Simple";
  long parameter = -1;
};

inline ExpectedCase grid_expected(int n, const GaussianRational& lambda0) {
  if (!lambda0.is_real()) return {};
  mpq_class nu = mpq_class(n) * lambda0.re();
  if (nu.get_den() != 1) return {};
  CONFDENS_CHECK(nu.get_num().fits_slong_p(), "grid weight out of range");
  long k = nu.get_num().get_si();
  if (k <= 0) return {"FiniteDimSub", -k};
  if (k >= n) return {(n == 1) ? "TwoHalfSubs" : "TailSub", k - n + 1};
  return {};  // 0 < nu < n: strictly fractional lambda in (0,1)
}

// The built-in acceptance cells (the lambda = 0 row is instantiated at n = 2).
inline std::vector<GridCell> builtin_grid_cells() {
  auto parse = [](const char* text) {
    auto v = GaussianRational::parse(text);
    CONFDENS_CHECK(v.has_value(), "built-in grid literal");
    return *v;
  };
  std::vector<GridCell> cells;
  for (const char* lit : {"5/7", "-2", "1", "2"}) cells.push_back({1, parse(lit)});
  for (const char* lit : {"1/3", "1/2+i", "5/7", "-1", "0", "1", "3/2", "2"})
    cells.push_back({2, parse(lit)});
  for (const char* lit : {"2/3", "4/3"}) cells.push_back({3, parse(lit)});
  return cells;
}

struct GridOutcome {
  GridCell cell;
  ExpectedCase expected;
  std::string computed_kind;
  long computed_parameter = -1;
  bool case_match = false;
  bool truncation_sufficient = false;
  bool detection_matches = false;
  std::string full_verdict;
  std::vector<std::vector<std::string>> submodule_nodes;
  std::vector<std::string> submodule_verdicts;
  std::vector<std::vector<std::string>> submodule_weights;
  std::vector<long> submodule_dims;
};

inline GridOutcome run_grid_cell(const GridCell& cell, int max_degree) {
  GridOutcome o;
  o.cell = cell;
  o.expected = grid_expected(cell.n, cell.lambda0);
  Classification c = classify(cell.n, cell.lambda0, max_degree);
  o.computed_kind = to_string(c.taxonomy.kind);
  o.computed_parameter = (c.taxonomy.kind == ModuleCase::Simple) ? -1 : c.taxonomy.parameter;
  o.truncation_sufficient = c.truncation_sufficient;
  o.detection_matches = c.detection_matches_taxonomy;
  o.case_match = o.truncation_sufficient && o.detection_matches &&
                 o.computed_kind == o.expected.kind &&
                 o.computed_parameter == o.expected.parameter;
  o.full_verdict = to_string(c.full_module.verdict);
  for (size_t s = 0; s < c.submodules.size(); ++s) {
    o.submodule_nodes.push_back(
        node_names(c.detection.nodes, c.detection.proper_closed_sets[s]));
    o.submodule_verdicts.push_back(to_string(c.submodules[s].verdict));
    o.submodule_weights.push_back(weight_strings(c.submodules[s]));
    o.submodule_dims.push_back(c.detection.closed_set_dims[s]);
  }
  return o;
}

inline int cmd_grid(const std::vector<GridCell>& cells, int max_degree, int jobs, bool json,
                    std::ostream& out) {
  // Warm the block caches once per distinct n so parallel cells never build
  // the same assembly twice.
  std::set<int> distinct;
  for (const auto& cell : cells) distinct.insert(cell.n);
  for (int n : distinct) cone_blocks(n, max_degree);

  std::vector<GridOutcome> outcomes(cells.size());
  size_t worker_count = static_cast<size_t>(std::max(1, jobs));
  worker_count = std::min(worker_count, cells.size());
  if (worker_count <= 1) {
    for (size_t k = 0; k < cells.size(); ++k) outcomes[k] = run_grid_cell(cells[k], max_degree);
  } else {
    std::atomic<size_t> next{0};
    auto work = [&]() {
      for (;;) {
        size_t k = next.fetch_add(1);
        if (k >= cells.size()) return;
        outcomes[k] = run_grid_cell(cells[k], max_degree);
      }
    };
    std::vector<std::thread> pool;
    for (size_t t = 0; t < worker_count; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  bool all_match = true;
  for (const auto& o : outcomes)
    if (!o.case_match) all_match = false;

  auto expected_label = [](const ExpectedCase& e) {
    return e.kind + (e.parameter >= 0 ? "(" + std::to_string(e.parameter) + ")" : "");
  };
  auto computed_label = [](const GridOutcome& o) {
    return o.computed_kind +
           (o.computed_parameter >= 0 ? "(" + std::to_string(o.computed_parameter) + ")" : "");
  };

  if (json) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = "grid";
    j["max_degree"] = max_degree;
    ordered_json rows = ordered_json::array();
    for (const auto& o : outcomes) {
      ordered_json row;
      row["n"] = o.cell.n;
      row["lambda"] = o.cell.lambda0.to_string();
      row["expected_case"] = o.expected.kind;
      row["expected_parameter"] =
          o.expected.parameter >= 0 ? ordered_json(o.expected.parameter) : ordered_json(nullptr);
      row["computed_case"] = o.computed_kind;
      row["computed_parameter"] =
          o.computed_parameter >= 0 ? ordered_json(o.computed_parameter) : ordered_json(nullptr);
      row["case_match"] = o.case_match;
      row["truncation_sufficient"] = o.truncation_sufficient;
      row["detection_matches_taxonomy"] = o.detection_matches;
      row["full_module_verdict"] = o.full_verdict;
      ordered_json subs = ordered_json::array();
      for (size_t s = 0; s < o.submodule_verdicts.size(); ++s) {
        ordered_json sub;
        sub["nodes"] = o.submodule_nodes[s];
        sub["dimension"] = o.submodule_dims[s];
        sub["verdict"] = o.submodule_verdicts[s];
        sub["weights"] = o.submodule_weights[s];
        subs.push_back(std::move(sub));
      }
      row["submodules"] = std::move(subs);
      rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    j["all_match"] = all_match;
    emit_json(out, j);
  } else {
    out << "grid max-degree=" << max_degree << "\n";
    for (const auto& o : outcomes) {
      out << "  n=" << o.cell.n << " lambda=" << o.cell.lambda0.to_string() << "  expected "
          << expected_label(o.expected) << ", computed " << computed_label(o)
          << (o.case_match ? "  match" : "  MISMATCH") << "; full module " << o.full_verdict;
      if (!o.submodule_verdicts.empty()) {
        std::vector<std::string> subs;
        for (size_t s = 0; s < o.submodule_verdicts.size(); ++s)
          subs.push_back("{" + join(o.submodule_nodes[s], ",") + "} " + o.submodule_verdicts[s]);
        out << "; submodules " << join(subs, ", ");
      }
      out << "\n";
    }
    out << (all_match ? "all cases match" : "CASE MISMATCH") << "\n";
  }
  return all_match ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------------------
// Argument plumbing.

inline std::optional<GaussianRational> parse_weight(const std::string& text, std::ostream& err) {
  auto v = GaussianRational::parse(text);
  if (!v)
    err << "confdens: --lambda expects an exact literal like \"3/2\" or \"1/2+i\" (got \""
        << text << "\")\n";
  return v;
}

inline int default_jobs() {
  if (const char* env = std::getenv("CONFDENS_JOBS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1 && v <= 1024) return static_cast<int>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact calculator for conformal density modules"};
  app.name("confdens");
  app.require_subcommand(1);

  struct CommonArgs {
    int n = 1;
    int max_degree = 0;
    std::string lambda_text;
    bool json = false;
  };
  CommonArgs verify_args, scan_args, classify_args, unitarity_args;
  struct GridArgs {
    std::vector<std::string> cell_specs;
    bool acceptance = false;
    int max_degree = 10;
    int jobs = 0;
    bool json = false;
  } grid_args;

  auto add_common = [](CLI::App* sub, CommonArgs& args, int default_degree, bool needs_lambda) {
    args.max_degree = default_degree;
    sub->add_option("--n", args.n, "sphere dimension")->required()->check(CLI::Range(1, 16));
    sub->add_option("--max-degree", args.max_degree, "truncation degree")
        ->check(CLI::Range(2, 200));
    if (needs_lambda)
      sub->add_option("--lambda", args.lambda_text, "exact weight, e.g. 3/2 or 1/2+i")
          ->required();
    sub->add_flag("--json", args.json, "machine-readable output");
  };

  CLI::App* verify_cmd = app.add_subcommand("verify", "run the structural identity battery");
  add_common(verify_cmd, verify_args, 6, false);
  CLI::App* scan_cmd = app.add_subcommand("scan", "formal degeneration thresholds per edge");
  add_common(scan_cmd, scan_args, 8, false);
  scan_cmd->add_option("--lambda", scan_args.lambda_text,
                       "must be \"formal\"; the scan treats the weight symbolically");
  CLI::App* classify_cmd =
      app.add_subcommand("classify", "structure and forms at one exact weight");
  add_common(classify_cmd, classify_args, 10, true);
  CLI::App* unitarity_cmd =
      app.add_subcommand("unitarity", "invariant Hermitian forms at one exact weight");
  add_common(unitarity_cmd, unitarity_args, 10, true);

  CLI::App* grid_cmd = app.add_subcommand("grid", "classify many cells and compare case labels");
  grid_cmd->add_option("--cell", grid_args.cell_specs, "cell as n:lambda, e.g. 2:3/2 (repeatable)");
  grid_cmd->add_flag("--acceptance", grid_args.acceptance, "include the built-in acceptance cells");
  grid_cmd->add_option("--max-degree", grid_args.max_degree, "truncation degree")
      ->check(CLI::Range(2, 200));
  grid_cmd->add_option("--jobs", grid_args.jobs,
                       "parallel workers (default: CONFDENS_JOBS or hardware)")
      ->check(CLI::Range(1, 1024));
  grid_cmd->add_flag("--json", grid_args.json, "machine-readable output");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (*verify_cmd)
    return cmd_verify(verify_args.n, verify_args.max_degree, verify_args.json, out);
  if (*scan_cmd) {
    if (!scan_args.lambda_text.empty() && scan_args.lambda_text != "formal") {
      err << "confdens: scan is a formal-weight command; only --lambda formal is accepted\n";
      return kExitUsage;
    }
    return cmd_scan(scan_args.n, scan_args.max_degree, scan_args.json, out);
  }
  if (*classify_cmd || *unitarity_cmd) {
    const CommonArgs& args = (*classify_cmd) ? classify_args : unitarity_args;
    if (args.lambda_text == "formal") {
      err << "confdens: this command needs an exact weight, not a formal one\n";
      return kExitUsage;
    }
    auto lambda0 = parse_weight(args.lambda_text, err);
    if (!lambda0) return kExitUsage;
    return (*classify_cmd) ? cmd_classify(args.n, *lambda0, args.max_degree, args.json, out)
                           : cmd_unitarity(args.n, *lambda0, args.max_degree, args.json, out);
  }
  if (*grid_cmd) {
    std::vector<GridCell> cells;
    if (grid_args.acceptance) cells = builtin_grid_cells();
    for (const auto& spec : grid_args.cell_specs) {
      size_t colon = spec.find(':');
      bool ok = colon != std::string::npos && colon > 0;
      int cell_n = 0;
      if (ok) {
        try {
          size_t used = 0;
          cell_n = std::stoi(spec.substr(0, colon), &used);
          ok = used == colon && cell_n >= 1 && cell_n <= 16;
        } catch (...) {
          ok = false;
        }
      }
      std::optional<GaussianRational> cell_lambda;
      if (ok) {
        cell_lambda = GaussianRational::parse(spec.substr(colon + 1));
        ok = cell_lambda.has_value();
      }
      if (!ok) {
        err << "confdens: bad --cell \"" << spec << "\"; expected n:lambda like 2:3/2\n";
        return kExitUsage;
      }
      cells.push_back({cell_n, *cell_lambda});
    }
    std::vector<GridCell> unique_cells;
    for (const auto& cell : cells) {
      bool duplicate = false;
      for (const auto& kept : unique_cells)
        if (kept.n == cell.n && kept.lambda0 == cell.lambda0) duplicate = true;
      if (duplicate) {
        err << "confdens: duplicate cell " << cell.n << ":" << cell.lambda0.to_string()
            << " ignored\n";
        continue;
      }
      unique_cells.push_back(cell);
    }
    if (unique_cells.empty()) {
      err << "confdens: grid needs at least one cell (--cell or --acceptance)\n";
      return kExitUsage;
    }
    int worker_count = (grid_args.jobs >= 1) ? grid_args.jobs : default_jobs();
    return cmd_grid(unique_cells, grid_args.max_degree, worker_count, grid_args.json, out);
  }
  return kExitUsage;
}

}  // namespace confdens::cli
