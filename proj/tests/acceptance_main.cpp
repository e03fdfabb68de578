// Acceptance gate: runs the full battery of top-level guarantees and prints
// one PASS/FAIL line per criterion, with expected-versus-got details for any
// failing assertion. Exits nonzero if any criterion fails.

#include <chrono>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "confdens/analysis.hpp"
#include "confdens/cli.hpp"
#include "confdens/cone_rep.hpp"
#include "confdens/generators.hpp"
#include "confdens/harmonic.hpp"

using namespace confdens;

namespace {

GaussianRational q(long num, long den = 1) {
  return GaussianRational(make_rational(num, den));
}

GaussianRational parse_q(const std::string& text) {
  auto v = GaussianRational::parse(text);
  CONFDENS_CHECK(v.has_value(), "acceptance literal");
  return *v;
}

struct Criterion {
  int index = 0;
  std::string title;
  long total = 0;
  long failed = 0;
  std::vector<std::string> details;
  double seconds = 0.0;

  void check(bool ok, const std::string& detail) {
    ++total;
    if (!ok) {
      ++failed;
      details.push_back(detail);
    }
  }
  bool pass() const { return failed == 0; }
};

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::string fmt_seconds(double s) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(1);
  os << s << "s";
  return os.str();
}

// ---------------------------------------------------------------------------

Criterion criterion_closure() {
  Criterion c{1, "closure and structure constants, n <= 4"};
  Stopwatch watch;
  for (int n = 1; n <= 4; ++n) {
    size_t expected = static_cast<size_t>((n + 1) * (n + 2) / 2);
    size_t got = conformal_basis(n).size();
    c.check(got == expected, "n=" + std::to_string(n) + ": expected " +
                                 std::to_string(expected) + " generators, got " +
                                 std::to_string(got));
    ClosureCertificate cert = closure_certificate(n);
    c.check(cert.ok(), "n=" + std::to_string(n) + ": bracket closure certificate failed");
  }
  c.seconds = watch.seconds();
  c.check(c.seconds < 10.0, "runtime " + fmt_seconds(c.seconds) + " exceeds 10s");
  return c;
}

std::vector<ChartIdentityReport> chart_reports() {
  std::vector<ChartIdentityReport> reports;
  for (int n = 1; n <= 3; ++n) reports.push_back(chart_identity_check(n, 4));
  return reports;
}

Criterion criterion_morphism(const std::vector<ChartIdentityReport>& reports, double seconds) {
  Criterion c{2, "chart action is a Lie algebra morphism, degree <= 4, n <= 3"};
  for (const auto& r : reports) {
    c.check(r.morphism_ok,
            "n=" + std::to_string(r.n) + ": commutator mismatch (" + r.failure + ")");
    c.check(r.monomials_checked > 0, "n=" + std::to_string(r.n) + ": no monomials checked");
  }
  c.seconds = seconds;
  c.check(seconds < 60.0, "runtime " + fmt_seconds(seconds) + " exceeds 60s");
  return c;
}

Criterion criterion_cocycle(const std::vector<ChartIdentityReport>& reports) {
  Criterion c{3, "divergence cocycle and weight decomposition, n <= 3"};
  Stopwatch watch;
  for (const auto& r : reports) {
    c.check(r.cocycle_ok, "n=" + std::to_string(r.n) + ": normalized divergence is not a "
                          "1-cocycle (" + r.failure + ")");
    c.check(r.decomposition_ok, "n=" + std::to_string(r.n) + ": weighted action does not split "
                                "into derivative plus weight times divergence (" + r.failure +
                                ")");
  }
  c.seconds = watch.seconds();
  return c;
}

Criterion criterion_harmonic() {
  Criterion c{4, "harmonic dimensions, circle pair, and 2-sphere ladder, m <= 10"};
  Stopwatch watch;
  for (int n = 1; n <= 3; ++n) {
    DimensionReport r = harmonic_dimension_check(n, 10);
    c.check(r.ok, "n=" + std::to_string(n) + ": " + r.failure);
  }
  for (int m = 1; m <= 10; ++m) {
    // The circle layers must be exactly the conjugate pair of powers of
    // x0 + i*x1, with rotation weights +m and -m.
    RationalPoly line = RationalPoly::monomial({1, 0}, q(1)) +
                        RationalPoly::monomial({0, 1}, GaussianRational::i());
    RationalPoly conj_line = RationalPoly::monomial({1, 0}, q(1)) -
                             RationalPoly::monomial({0, 1}, GaussianRational::i());
    RationalPoly plus = RationalPoly::constant(2, q(1));
    RationalPoly minus = plus;
    for (int k = 0; k < m; ++k) {
      plus = plus * line;
      minus = minus * conj_line;
    }
    const auto& basis = harmonic_basis(1, m).elements;
    bool pair_ok = basis.size() == 2 && ((basis[0] == plus && basis[1] == minus) ||
                                         (basis[0] == minus && basis[1] == plus));
    c.check(pair_ok, "n=1 m=" + std::to_string(m) + ": basis is not the conjugate pair");
    auto labels = ktype_label_check(1, m);
    bool weights_ok =
        labels.weight_multiplicity == std::map<long, long>{{-m, 1}, {m, 1}};
    c.check(weights_ok,
            "n=1 m=" + std::to_string(m) + ": rotation weights are not {-m, +m}");
  }
  for (int m = 0; m <= 10; ++m) {
    long got = harmonic_dim(2, m);
    c.check(got == 2 * m + 1, "n=2 m=" + std::to_string(m) + ": expected dim " +
                                  std::to_string(2 * m + 1) + ", got " + std::to_string(got));
  }
  c.seconds = watch.seconds();
  return c;
}

Criterion criterion_casimir() {
  Criterion c{5, "Casimir scalar agrees across models, n <= 2, M = 6"};
  Stopwatch watch;
  LambdaScalar l = LambdaScalar::lambda();
  for (int n = 1; n <= 2; ++n) {
    CasimirBlocksReport blocks = casimir_blocks_check(n, 6);
    c.check(blocks.ok(), "n=" + std::to_string(n) + ": block Casimir is not scalar");
    LambdaScalar expected = LambdaScalar(GaussianRational(n * n)) * l * (l - LambdaScalar(1));
    c.check(blocks.scalar == expected,
            "n=" + std::to_string(n) + ": block scalar differs from n^2*lambda*(lambda-1)");
    CasimirStereoReport stereo = casimir_stereo_check(n, 3);
    c.check(stereo.ok, "n=" + std::to_string(n) + ": chart Casimir disagrees with the scalar");
  }
  c.seconds = watch.seconds();
  c.check(c.seconds < 120.0, "runtime " + fmt_seconds(c.seconds) + " exceeds 120s");
  return c;
}

Criterion criterion_scan() {
  Criterion c{6, "degeneration thresholds, n <= 3, m <= 6"};
  Stopwatch watch;
  for (int n = 1; n <= 3; ++n) {
    ScanReport report = vanishing_scan(n, 6);
    c.check(report.all_match, "n=" + std::to_string(n) + ": scan does not match closed forms");
    for (const auto& row : report.rows) {
      std::vector<GaussianRational> raise_expected = {q(-row.m, n)};
      std::vector<GaussianRational> lower_expected = {q(n + row.m, n)};
      c.check(row.raise_roots == raise_expected,
              "n=" + std::to_string(n) + " m=" + std::to_string(row.m) +
                  ": raising root is not -m/n");
      c.check(row.lower_roots == lower_expected,
              "n=" + std::to_string(n) + " m=" + std::to_string(row.m) +
                  ": lowering root is not 1+m/n");
    }
  }

  // Circle fine structure: each Fourier half carries its own +-m pencil; the
  // two chains never mix under raising or lowering.
  auto cb = cone_blocks(1, 8);
  for (const auto& gen : cb->gens) {
    for (int m = 1; m <= 6; ++m) {
      const AffineMat& raise = gen.raise_from(m);
      const AffineMat& lower = gen.lower_from(m + 1);
      std::string where = " at n=1 m=" + std::to_string(m);
      for (size_t k = 0; k < 2; ++k) {
        size_t other = 1 - k;
        bool raise_mix = !raise.a.at(k, other).is_zero() || !raise.b.at(k, other).is_zero();
        bool lower_mix = !lower.a.at(k, other).is_zero() || !lower.b.at(k, other).is_zero();
        c.check(!raise_mix, "raising mixes the Fourier halves" + where);
        c.check(!lower_mix, "lowering mixes the Fourier halves" + where);
        if (!raise.b.at(k, k).is_zero())
          c.check(raise.a.at(k, k) == q(m) * raise.b.at(k, k),
                  "half-chain raising root is not -m" + where);
        if (!lower.b.at(k, k).is_zero())
          c.check(lower.a.at(k, k) == q(-(m + 1)) * lower.b.at(k, k),
                  "half-chain lowering root is not m+1" + where);
      }
    }
  }
  c.seconds = watch.seconds();
  return c;
}

// --- criterion 7: the classification grid ----------------------------------

std::vector<size_t> head_set(const NodeSystem& ns, int top) {
  std::vector<size_t> out;
  for (size_t k = 0; k < ns.labels.size(); ++k)
    if (ns.labels[k].m <= top) out.push_back(k);
  return out;
}

std::vector<size_t> tail_set(const NodeSystem& ns, int bottom) {
  std::vector<size_t> out;
  for (size_t k = 0; k < ns.labels.size(); ++k)
    if (ns.labels[k].m >= bottom) out.push_back(k);
  return out;
}

std::vector<size_t> half_set(const NodeSystem& ns, int bottom, int sign) {
  std::vector<size_t> out;
  for (size_t k = 0; k < ns.labels.size(); ++k)
    if (ns.labels[k].m >= bottom && ns.labels[k].sign == sign) out.push_back(k);
  return out;
}

// Looks up the solved form for an exact node set; reports None-with-detail if
// the set was not detected as invariant.
const UnitarityResult* form_of(const Classification& c, const std::vector<size_t>& set) {
  for (size_t s = 0; s < c.detection.proper_closed_sets.size(); ++s)
    if (c.detection.proper_closed_sets[s] == set) return &c.submodules[s];
  return nullptr;
}

long dim_of(const Classification& c, const std::vector<size_t>& set) {
  for (size_t s = 0; s < c.detection.proper_closed_sets.size(); ++s)
    if (c.detection.proper_closed_sets[s] == set) return c.detection.closed_set_dims[s];
  return -1;
}

void expect_case(Criterion& c, const Classification& cl, const std::string& cell,
                 ModuleCase kind, long parameter) {
  c.check(cl.truncation_sufficient, cell + ": truncation window too small");
  c.check(cl.detection_matches_taxonomy, cell + ": detected sets disagree with the case law");
  bool ok = cl.taxonomy.kind == kind && (kind == ModuleCase::Simple ||
                                         cl.taxonomy.parameter == parameter);
  std::string expected = to_string(kind);
  if (kind != ModuleCase::Simple) expected += "(" + std::to_string(parameter) + ")";
  std::string got = to_string(cl.taxonomy.kind);
  if (cl.taxonomy.kind != ModuleCase::Simple)
    got += "(" + std::to_string(cl.taxonomy.parameter) + ")";
  c.check(ok, cell + ": expected case " + expected + ", got " + got);
}

void expect_form(Criterion& c, const Classification& cl, const std::string& cell,
                 const std::string& which, const std::vector<size_t>& set,
                 FormVerdict expected) {
  const UnitarityResult* r = form_of(cl, set);
  if (r == nullptr) {
    c.check(false, cell + ": " + which + " was not detected as an invariant set");
    return;
  }
  c.check(r->verdict == expected, cell + ": " + which + " form expected " +
                                      to_string(expected) + ", got " + to_string(r->verdict));
}

void expect_dim(Criterion& c, const Classification& cl, const std::string& cell,
                const std::string& which, const std::vector<size_t>& set, long expected) {
  long got = dim_of(cl, set);
  c.check(got == expected, cell + ": " + which + " expected dim " + std::to_string(expected) +
                               ", got " + std::to_string(got));
}

Criterion criterion_grid() {
  Criterion c{7, "taxonomy and invariant-form grid, M = 10"};
  Stopwatch watch;
  const int M = 10;
  auto cls = [&](int n, const GaussianRational& l) { return classify(n, l, M); };
  auto cell_name = [](int n, const std::string& l) { return "n=" + std::to_string(n) +
                                                            " lambda=" + l; };

  {  // simple weights, with full-module positivity where expected
    Classification cl = cls(1, parse_q("5/7"));
    expect_case(c, cl, cell_name(1, "5/7"), ModuleCase::Simple, -1);
  }
  {
    Classification cl = cls(2, parse_q("1/3"));
    expect_case(c, cl, cell_name(2, "1/3"), ModuleCase::Simple, -1);
    c.check(cl.full_module.verdict == FormVerdict::PositiveDefinite,
            cell_name(2, "1/3") + ": full-module form expected PositiveDefinite, got " +
                to_string(cl.full_module.verdict));
  }
  {
    Classification cl = cls(2, parse_q("1/2+i"));
    expect_case(c, cl, cell_name(2, "1/2+i"), ModuleCase::Simple, -1);
    c.check(cl.full_module.verdict == FormVerdict::PositiveDefinite,
            cell_name(2, "1/2+i") + ": full-module form expected PositiveDefinite, got " +
                to_string(cl.full_module.verdict));
  }
  {
    Classification cl = cls(2, parse_q("5/7"));
    expect_case(c, cl, cell_name(2, "5/7"), ModuleCase::Simple, -1);
    c.check(cl.full_module.verdict == FormVerdict::PositiveDefinite,
            cell_name(2, "5/7") + ": full-module form expected PositiveDefinite, got " +
                to_string(cl.full_module.verdict));
  }
  {
    Classification cl = cls(3, parse_q("2/3"));
    expect_case(c, cl, cell_name(3, "2/3"), ModuleCase::Simple, -1);
  }

  {  // finite-dimensional heads
    Classification cl = cls(1, q(-2));
    const std::string cell = cell_name(1, "-2");
    expect_case(c, cl, cell, ModuleCase::FiniteDimSub, 2);
    std::vector<size_t> head = head_set(cl.detection.nodes, 2);
    expect_dim(c, cl, cell, "head", head, 5);
    expect_form(c, cl, cell, "head", head, FormVerdict::Indefinite);
  }
  {
    Classification cl = cls(2, q(-1));
    const std::string cell = cell_name(2, "-1");
    expect_case(c, cl, cell, ModuleCase::FiniteDimSub, 2);
    std::vector<size_t> head = head_set(cl.detection.nodes, 2);
    expect_dim(c, cl, cell, "head", head, 9);
    expect_form(c, cl, cell, "head", head, FormVerdict::Indefinite);
  }
  {
    Classification cl = cls(2, q(0));
    const std::string cell = cell_name(2, "0");
    expect_case(c, cl, cell, ModuleCase::FiniteDimSub, 0);
    std::vector<size_t> constants = head_set(cl.detection.nodes, 0);
    expect_dim(c, cl, cell, "constants", constants, 1);
    expect_form(c, cl, cell, "constants", constants, FormVerdict::PositiveDefinite);
  }

  {  // circle integer weights: two half tails, both positive
    for (long l : {1L, 2L}) {
      Classification cl = cls(1, q(l));
      const std::string cell = cell_name(1, std::to_string(l));
      expect_case(c, cl, cell, ModuleCase::TwoHalfSubs, l);
      expect_form(c, cl, cell, "plus half", half_set(cl.detection.nodes, static_cast<int>(l), +1),
                  FormVerdict::PositiveDefinite);
      expect_form(c, cl, cell, "minus half",
                  half_set(cl.detection.nodes, static_cast<int>(l), -1),
                  FormVerdict::PositiveDefinite);
    }
  }

  {  // tails
    struct TailRow {
      int n;
      const char* lambda;
      long parameter;
      FormVerdict expected;
    };
    const TailRow rows[] = {
        {2, "1", 1, FormVerdict::PositiveDefinite},
        {2, "3/2", 2, FormVerdict::Indefinite},
        {2, "2", 3, FormVerdict::Indefinite},
        {3, "4/3", 2, FormVerdict::Indefinite},
    };
    for (const auto& row : rows) {
      Classification cl = cls(row.n, parse_q(row.lambda));
      const std::string cell = cell_name(row.n, row.lambda);
      expect_case(c, cl, cell, ModuleCase::TailSub, row.parameter);
      expect_form(c, cl, cell, "tail",
                  tail_set(cl.detection.nodes, static_cast<int>(row.parameter)), row.expected);
    }
  }

  c.seconds = watch.seconds();
  c.check(c.seconds < 300.0, "runtime " + fmt_seconds(c.seconds) + " exceeds 300s");
  return c;
}

Criterion criterion_duality() {
  Criterion c{8, "weight reflection sends blocks to negative Gram adjoints, n <= 2, M = 6"};
  Stopwatch watch;
  for (int n = 1; n <= 2; ++n) {
    DualityReport r = duality_check(n, 6);
    c.check(r.ok, "n=" + std::to_string(n) + ": " + r.failure);
    c.check(r.blocks_checked > 0, "n=" + std::to_string(n) + ": no blocks compared");
  }
  c.seconds = watch.seconds();
  return c;
}

Criterion criterion_determinism() {
  Criterion c{9, "grid JSON output is byte-deterministic"};
  Stopwatch watch;
  auto run_grid = [](const std::string& jobs) {
    std::ostringstream out, err;
    int code = cli::run({"grid", "--acceptance", "--json", "--jobs", jobs}, out, err);
    return std::make_pair(code, out.str());
  };
  auto [code1, out1] = run_grid("4");
  auto [code2, out2] = run_grid("4");
  auto [code3, out3] = run_grid("1");
  c.check(code1 == code2 && code2 == code3, "grid exit codes differ between runs");
  c.check(out1 == out2, "two identical grid runs differ in output bytes");
  c.check(out1 == out3, "grid output depends on the worker count");
  c.check(!out1.empty(), "grid produced no output");
  c.seconds = watch.seconds();
  return c;
}

}  // namespace

int main() {
  std::vector<Criterion> results;
  results.push_back(criterion_closure());

  Stopwatch chart_watch;
  std::vector<ChartIdentityReport> reports = chart_reports();
  double chart_seconds = chart_watch.seconds();
  results.push_back(criterion_morphism(reports, chart_seconds));
  results.push_back(criterion_cocycle(reports));

  results.push_back(criterion_harmonic());
  results.push_back(criterion_casimir());
  results.push_back(criterion_scan());
  results.push_back(criterion_grid());
  results.push_back(criterion_duality());
  results.push_back(criterion_determinism());

  int passed = 0;
  for (const auto& c : results) {
    std::cout << "criterion " << c.index << ": " << c.title << " ... "
              << (c.pass() ? "PASS" : "FAIL") << " (" << fmt_seconds(c.seconds) << ", "
              << c.total << " assertions)\n";
    for (const auto& d : c.details) std::cout << "    " << d << "\n";
    if (c.pass()) ++passed;
  }
  std::cout << "summary: " << passed << " of " << results.size() << " criteria pass\n";
  for (const auto& c : results)
    if (!c.pass())
      std::cout << "  criterion " << c.index << " fails " << c.failed << " of " << c.total
                << " assertions\n";
  return passed == static_cast<int>(results.size()) ? 0 : 1;
}
