#pragma once

// Structure analysis at exact weights: where raising/lowering degenerates,
// which layer sets close under the action, and which closed sets carry an
// invariant Hermitian form (and whether it is definite).
//
// Node granularity: for n >= 2 each harmonic layer is rotation-irreducible,
// so any invariant subspace is a union of whole layers and the nodes are the
// layers themselves. On the circle (n = 1) each layer m >= 1 splits into the
// two rotation eigenlines spanned by (x_0 + i x_1)^m and its conjugate, and
// those eigenlines are the nodes. Invariant Hermitian forms are block
// diagonal across nodes for the same reason, so the form solver's per-node
// scalar ansatz is fully general.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "confdens/common.hpp"
#include "confdens/cone_rep.hpp"
#include "confdens/gaussian_rational.hpp"
#include "confdens/harmonic.hpp"
#include "confdens/lambda_scalar.hpp"
#include "confdens/matrix.hpp"

namespace confdens {

// ---------------------------------------------------------------------------
// Weight coordinates: the layer parameter nu = n*lambda and its symmetric
// shift nu_e = n*lambda - n/2 (zero on the self-dual line).

struct ParameterTriple {
  GaussianRational lambda, nu, nu_e;

  static ParameterTriple from(int n, const GaussianRational& lambda0) {
    GaussianRational nn(static_cast<long>(n));
    return ParameterTriple{lambda0, nn * lambda0,
                           nn * lambda0 - GaussianRational(make_rational(n, 2))};
  }
};

// ---------------------------------------------------------------------------
// Arithmetic taxonomy of the weight.

enum class ModuleCase { Simple, FiniteDimSub, TwoHalfSubs, TailSub };

inline std::string to_string(ModuleCase c) {
  switch (c) {
    case ModuleCase::Simple: return "Simple";
    case ModuleCase::FiniteDimSub: return "FiniteDimSub";
    case ModuleCase::TwoHalfSubs: return "TwoHalfSubs";
    case ModuleCase::TailSub: return "TailSub";
  }
  CONFDENS_CHECK(false, "unreachable");
  return {};
}

struct Taxonomy {
  ModuleCase kind = ModuleCase::Simple;
  // FiniteDimSub: top degree of the finite-dimensional invariant subspace.
  // TwoHalfSubs / TailSub: bottom degree of the invariant tail(s).
  long parameter = -1;
  // Degree whose outgoing edge degenerates (-1 when none does).
  long threshold_degree = -1;
};

inline Taxonomy taxonomy_of(int n, const GaussianRational& lambda0) {
  Taxonomy t;
  if (!lambda0.is_real()) return t;
  const mpq_class& lam = lambda0.re();

  // Raising out of degree l dies at lambda = -l/n.
  mpq_class minus_nl = mpq_class(-static_cast<long>(n)) * lam;
  if (minus_nl >= 0 && minus_nl.get_den() == 1) {
    t.kind = ModuleCase::FiniteDimSub;
    t.parameter = minus_nl.get_num().get_si();
    t.threshold_degree = t.parameter;
    return t;
  }
  // Lowering out of degree q dies at lambda = 1 + (q - 1)/n.
  mpq_class nl_shift = mpq_class(static_cast<long>(n)) * (lam - 1);
  if (nl_shift >= 0 && nl_shift.get_den() == 1) {
    long bottom = nl_shift.get_num().get_si() + 1;
    t.kind = (n == 1) ? ModuleCase::TwoHalfSubs : ModuleCase::TailSub;
    t.parameter = bottom;
    t.threshold_degree = bottom;
    return t;
  }
  return t;
}

// ---------------------------------------------------------------------------
// Nodes: the rotation-isotypic pieces of the truncated module.

struct NodeLabel {
  int m = 0;
  int sign = 0;  // 0: whole layer; +1/-1: circle eigenline of weight +-m

  std::string name() const {
    std::string s = "H" + std::to_string(m);
    if (sign > 0) s += "+";
    if (sign < 0) s += "-";
    return s;
  }
  friend bool operator==(const NodeLabel& a, const NodeLabel& b) {
    return a.m == b.m && a.sign == b.sign;
  }
};

struct NodeSystem {
  int n = 0;
  int M = 0;
  std::vector<NodeLabel> labels;
  std::vector<std::vector<size_t>> cols;  // basis indices within the layer

  long node_dim(size_t k) const { return static_cast<long>(cols[k].size()); }
};

inline NodeSystem node_system(int n, int M) {
  NodeSystem ns;
  ns.n = n;
  ns.M = M;
  for (int m = 0; m <= M; ++m) {
    if (n == 1 && m >= 1) {
      ns.labels.push_back({m, +1});
      ns.cols.push_back({0});
      ns.labels.push_back({m, -1});
      ns.cols.push_back({1});
    } else {
      size_t dim = static_cast<size_t>(harmonic_dim(n, m));
      std::vector<size_t> all(dim);
      for (size_t k = 0; k < dim; ++k) all[k] = k;
      ns.labels.push_back({m, 0});
      ns.cols.push_back(std::move(all));
    }
  }
  return ns;
}

inline DenseMatrix<GaussianRational> submatrix(const DenseMatrix<GaussianRational>& m,
                                               const std::vector<size_t>& rows,
                                               const std::vector<size_t>& cols) {
  DenseMatrix<GaussianRational> out(rows.size(), cols.size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j) out.at(i, j) = m.at(rows[i], cols[j]);
  return out;
}

// ---------------------------------------------------------------------------
// Degeneration scan with the weight kept formal: for each edge between
// adjacent layers, the set of weights where the whole edge vanishes is the
// intersection of the root sets of its nonzero pencil entries, taken across
// all generators.

struct EdgeScan {
  int m = 0;  // edge between layers m and m+1
  bool raise_identically_zero = false;
  bool lower_identically_zero = false;
  std::vector<GaussianRational> raise_roots, lower_roots;
  GaussianRational expected_raise_root, expected_lower_root;
  bool raise_matches = false;
  bool lower_matches = false;
};

struct ScanReport {
  int n = 0;
  int max_m = 0;
  std::vector<EdgeScan> rows;
  bool all_match = false;
};

namespace detail {

struct RootIntersection {
  bool any_entry = false;
  bool first = true;
  std::vector<GaussianRational> roots;

  void add_entry(const GaussianRational& a, const GaussianRational& b) {
    if (a.is_zero() && b.is_zero()) return;  // identically-zero entry: no constraint
    any_entry = true;
    std::vector<GaussianRational> entry_roots;
    if (!b.is_zero()) entry_roots.push_back(-(a / b));
    if (first) {
      roots = std::move(entry_roots);
      first = false;
      return;
    }
    std::vector<GaussianRational> kept;
    for (const auto& r : roots)
      if (std::find(entry_roots.begin(), entry_roots.end(), r) != entry_roots.end())
        kept.push_back(r);
    roots = std::move(kept);
  }
};

inline void scan_pencil(const AffineMat& pencil, RootIntersection& inter) {
  for (size_t i = 0; i < pencil.rows(); ++i)
    for (size_t j = 0; j < pencil.cols(); ++j) inter.add_entry(pencil.a.at(i, j), pencil.b.at(i, j));
}

}  // namespace detail

inline ScanReport vanishing_scan(int n, int max_m) {
  CONFDENS_CHECK(max_m >= 0, "scan range");
  ScanReport report;
  report.n = n;
  report.max_m = max_m;
  auto cb = cone_blocks(n, max_m + 1);
  report.all_match = true;
  for (int m = 0; m <= max_m; ++m) {
    EdgeScan row;
    row.m = m;
    detail::RootIntersection up, down;
    for (const auto& gb : cb->gens) {
      detail::scan_pencil(gb.raise_from(m), up);
      detail::scan_pencil(gb.lower_from(m + 1), down);
    }
    row.raise_identically_zero = !up.any_entry;
    row.lower_identically_zero = !down.any_entry;
    row.raise_roots = up.roots;
    row.lower_roots = down.roots;
    row.expected_raise_root = GaussianRational(make_rational(-m, n));
    row.expected_lower_root = GaussianRational(make_rational(n + m, n));  // lowering from m+1
    row.raise_matches = !row.raise_identically_zero &&
                        row.raise_roots == std::vector<GaussianRational>{row.expected_raise_root};
    row.lower_matches = !row.lower_identically_zero &&
                        row.lower_roots == std::vector<GaussianRational>{row.expected_lower_root};
    if (!row.raise_matches || !row.lower_matches) report.all_match = false;
    report.rows.push_back(std::move(row));
  }
  return report;
}

// ---------------------------------------------------------------------------
// Submodule detection at a concrete weight: nodes, surviving edges, and the
// lattice of proper closed node sets.

struct DetectedEdge {
  size_t from = 0, to = 0;  // node indices
  bool present = false;      // some generator moves `from` into `to` at this weight
  bool formally_zero = false;  // the pencil itself is zero (never survives)
};

struct SubmoduleReport {
  int n = 0;
  int M = 0;
  GaussianRational lambda0;
  NodeSystem nodes;
  std::vector<DetectedEdge> edges;
  // Proper nonempty closed node sets (sorted node index lists), their total
  // dimensions, and the inclusion-minimal ones.
  std::vector<std::vector<size_t>> proper_closed_sets;
  std::vector<long> closed_set_dims;
  std::vector<std::vector<size_t>> minimal_closed_sets;
  bool boundary_warning = false;  // a degenerate edge touches layer >= M-1
};

inline SubmoduleReport submodule_detect(const ConeBlocks& cb, const EvaluatedBlocks& ev) {
  SubmoduleReport report;
  report.n = cb.n;
  report.M = cb.M;
  report.lambda0 = ev.lambda0;
  report.nodes = node_system(cb.n, cb.M);
  const NodeSystem& ns = report.nodes;

  // Nodes of equal degree must be preserved by the diagonal blocks, or the
  // node granularity would be wrong.
  for (size_t u = 0; u < ns.labels.size(); ++u)
    for (size_t v = 0; v < ns.labels.size(); ++v) {
      if (u == v || ns.labels[u].m != ns.labels[v].m) continue;
      for (const auto& gb : cb.gens)
        CONFDENS_CHECK(
            submatrix(gb.diag(ns.labels[u].m).a, ns.cols[v], ns.cols[u]).is_zero() &&
                submatrix(gb.diag(ns.labels[u].m).b, ns.cols[v], ns.cols[u]).is_zero(),
            "diagonal blocks mix same-degree nodes");
    }

  // Directed edges between adjacent degrees.
  for (size_t u = 0; u < ns.labels.size(); ++u)
    for (size_t v = 0; v < ns.labels.size(); ++v) {
      int mu = ns.labels[u].m, mv = ns.labels[v].m;
      if (mv != mu + 1 && mv != mu - 1) continue;
      DetectedEdge e;
      e.from = u;
      e.to = v;
      e.formally_zero = true;
      for (size_t g = 0; g < cb.gens.size(); ++g) {
        const AffineMat& pencil = (mv == mu + 1) ? cb.gens[g].raise_from(mu)
                                                 : cb.gens[g].lower_from(mu);
        const DenseMatrix<GaussianRational>& value =
            (mv == mu + 1) ? ev.gens[g].raise_from(mu) : ev.gens[g].lower_from(mu);
        if (!(submatrix(pencil.a, ns.cols[v], ns.cols[u]).is_zero() &&
              submatrix(pencil.b, ns.cols[v], ns.cols[u]).is_zero()))
          e.formally_zero = false;
        if (!submatrix(value, ns.cols[v], ns.cols[u]).is_zero()) e.present = true;
      }
      if (!e.present && !e.formally_zero &&
          (ns.labels[u].m >= cb.M - 1 || ns.labels[v].m >= cb.M - 1))
        report.boundary_warning = true;
      report.edges.push_back(e);
    }

  // Closures of single nodes under the surviving edges.
  size_t count = ns.labels.size();
  std::vector<std::vector<size_t>> adjacency(count);
  for (const auto& e : report.edges)
    if (e.present) adjacency[e.from].push_back(e.to);
  auto closure_of = [&](size_t start) {
    std::vector<bool> seen(count, false);
    std::vector<size_t> stack = {start};
    seen[start] = true;
    while (!stack.empty()) {
      size_t x = stack.back();
      stack.pop_back();
      for (size_t y : adjacency[x])
        if (!seen[y]) {
          seen[y] = true;
          stack.push_back(y);
        }
    }
    std::vector<size_t> out;
    for (size_t k = 0; k < count; ++k)
      if (seen[k]) out.push_back(k);
    return out;
  };

  std::set<std::vector<size_t>> closed;
  for (size_t k = 0; k < count; ++k) closed.insert(closure_of(k));
  // Closed sets are exactly the unions of single-node closures; iterate
  // pairwise unions to the fixpoint.
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::vector<size_t>> current(closed.begin(), closed.end());
    for (size_t x = 0; x < current.size(); ++x)
      for (size_t y = x + 1; y < current.size(); ++y) {
        std::vector<size_t> u;
        std::set_union(current[x].begin(), current[x].end(), current[y].begin(), current[y].end(),
                       std::back_inserter(u));
        if (closed.insert(std::move(u)).second) grew = true;
      }
  }

  std::vector<size_t> everything;
  for (size_t k = 0; k < count; ++k) everything.push_back(k);
  for (const auto& s : closed) {
    if (s == everything) continue;
    report.proper_closed_sets.push_back(s);
    long dim = 0;
    for (size_t k : s) dim += ns.node_dim(k);
    report.closed_set_dims.push_back(dim);
  }
  for (const auto& s : report.proper_closed_sets) {
    bool minimal = true;
    for (const auto& other : report.proper_closed_sets) {
      if (other == s) continue;
      if (std::includes(s.begin(), s.end(), other.begin(), other.end())) minimal = false;
    }
    if (minimal) report.minimal_closed_sets.push_back(s);
  }
  return report;
}

inline SubmoduleReport submodule_detect(int n, const GaussianRational& lambda0, int M) {
  auto cb = cone_blocks(n, M);
  return submodule_detect(*cb, eval_blocks(*cb, lambda0));
}

// ---------------------------------------------------------------------------
// Invariant Hermitian forms on a closed node set. The ansatz (fully general,
// see the header comment) is <u, v> = sum over nodes of c_k * (u, v)_{G_k}
// with real scalars c_k; invariance under a raising/lowering pair (R, L)
// between nodes s -> t forces
//     c_t * G_t R + c_s * L^dagger G_s = 0
// entrywise, simultaneously for every generator, which pins the ratios
// c_t / c_s. Diagonal blocks must be skew-adjoint for the node inner
// products. Non-real weights admit a Hermitian form only on the self-dual
// line Re(lambda) = 1/2, where the constant weights c = 1 must satisfy the
// same identities; this is checked directly rather than assumed.

enum class FormVerdict { PositiveDefinite, Indefinite, None };

inline std::string to_string(FormVerdict v) {
  switch (v) {
    case FormVerdict::PositiveDefinite: return "PositiveDefinite";
    case FormVerdict::Indefinite: return "Indefinite";
    case FormVerdict::None: return "None";
  }
  CONFDENS_CHECK(false, "unreachable");
  return {};
}

struct UnitarityResult {
  FormVerdict verdict = FormVerdict::None;
  std::vector<NodeLabel> nodes;               // solved node set, in system order
  std::vector<GaussianRational> weights;      // c_k per node (real when solved)
  bool skew_ok = false;
  std::string detail;                         // reason when verdict is None
};

inline UnitarityResult unitarity_solve(const EvaluatedBlocks& ev, const NodeSystem& ns,
                                       const std::vector<size_t>& subset) {
  UnitarityResult result;
  CONFDENS_CHECK(!subset.empty(), "form solver needs a nonempty node set");
  for (size_t k : subset) result.nodes.push_back(ns.labels[k]);

  int n = ev.n;
  std::vector<DenseMatrix<GaussianRational>> node_gram;
  for (size_t k : subset)
    node_gram.push_back(submatrix(ktype_gram(n, ns.labels[k].m), ns.cols[k], ns.cols[k]));

  std::map<size_t, size_t> pos;  // node index -> position within subset
  for (size_t p = 0; p < subset.size(); ++p) pos[subset[p]] = p;

  // Diagonal blocks must be skew-adjoint regardless of the weights.
  result.skew_ok = true;
  for (size_t p = 0; p < subset.size(); ++p) {
    size_t k = subset[p];
    for (const auto& gen : ev.gens) {
      auto d = submatrix(gen.diag(ns.labels[k].m), ns.cols[k], ns.cols[k]);
      if (!(d.conj_transpose() * node_gram[p] + node_gram[p] * d).is_zero()) {
        result.skew_ok = false;
        result.detail = "diagonal block is not skew-adjoint";
        return result;
      }
    }
  }

  // Non-real weight: a Hermitian form needs the self-dual line, where the
  // edge identities must hold verbatim with constant weights c = 1.
  if (!ev.lambda0.is_real()) {
    if (!(ev.lambda0.re() == mpq_class(1, 2))) {
      result.detail = "non-real weight off the self-dual line";
      return result;
    }
    for (size_t ps = 0; ps < subset.size(); ++ps)
      for (size_t pt = 0; pt < subset.size(); ++pt) {
        size_t ks = subset[ps], kt = subset[pt];
        int ms = ns.labels[ks].m, mt = ns.labels[kt].m;
        if (mt != ms + 1) continue;
        for (const auto& gen : ev.gens) {
          auto r = submatrix(gen.raise_from(ms), ns.cols[kt], ns.cols[ks]);
          auto l = submatrix(gen.lower_from(mt), ns.cols[ks], ns.cols[kt]);
          if (!(node_gram[pt] * r + l.conj_transpose() * node_gram[ps]).is_zero()) {
            result.detail = "self-dual line constraints reject constant weights";
            return result;
          }
        }
      }
    result.weights.assign(subset.size(), GaussianRational(1));
    result.verdict = FormVerdict::PositiveDefinite;
    return result;
  }

  // Real weight: collect the edge constraints c_t P + c_s Q = 0 inside the
  // subset; each constrained edge pins the ratio c_t / c_s.
  struct Constraint {
    size_t s, t;  // positions within the subset, t one degree above s
    GaussianRational ratio;  // c_t / c_s
  };
  std::vector<Constraint> constraints;
  for (size_t ps = 0; ps < subset.size(); ++ps)
    for (size_t pt = 0; pt < subset.size(); ++pt) {
      size_t ks = subset[ps], kt = subset[pt];
      int ms = ns.labels[ks].m, mt = ns.labels[kt].m;
      if (mt != ms + 1) continue;
      bool any = false;
      bool have_ratio = false;
      GaussianRational ratio;
      for (const auto& gen : ev.gens) {
        auto r = submatrix(gen.raise_from(ms), ns.cols[kt], ns.cols[ks]);
        auto l = submatrix(gen.lower_from(mt), ns.cols[ks], ns.cols[kt]);
        DenseMatrix<GaussianRational> p = node_gram[pt] * r;
        DenseMatrix<GaussianRational> q = l.conj_transpose() * node_gram[ps];
        for (size_t i = 0; i < p.rows(); ++i)
          for (size_t j = 0; j < p.cols(); ++j) {
            bool pz = p.at(i, j).is_zero(), qz = q.at(i, j).is_zero();
            if (pz && qz) continue;
            any = true;
            if (pz != qz) {
              result.detail = "degenerate constraint: a weight is forced to zero";
              return result;
            }
            GaussianRational r_ij = -(q.at(i, j) / p.at(i, j));
            if (!r_ij.is_real()) {
              result.detail = "weight ratio is not real";
              return result;
            }
            if (!have_ratio) {
              ratio = r_ij;
              have_ratio = true;
            } else if (!(ratio == r_ij)) {
              result.detail = "inconsistent weight ratios across entries";
              return result;
            }
          }
      }
      if (any) constraints.push_back({ps, pt, ratio});
    }

  // Propagate weights across constrained edges, anchoring each connected
  // component at its first node.
  std::vector<std::vector<std::pair<size_t, GaussianRational>>> graph(subset.size());
  for (const auto& c : constraints) {
    graph[c.s].push_back({c.t, c.ratio});
    graph[c.t].push_back({c.s, c.ratio.inverse()});
  }
  std::vector<GaussianRational> weight(subset.size(), GaussianRational(0));
  std::vector<bool> solved(subset.size(), false);
  for (size_t start = 0; start < subset.size(); ++start) {
    if (solved[start]) continue;
    weight[start] = GaussianRational(1);
    solved[start] = true;
    std::vector<size_t> stack = {start};
    while (!stack.empty()) {
      size_t x = stack.back();
      stack.pop_back();
      for (const auto& [y, r] : graph[x]) {
        GaussianRational wy = weight[x] * r;
        if (!solved[y]) {
          weight[y] = wy;
          solved[y] = true;
          stack.push_back(y);
        } else if (!(weight[y] == wy)) {
          result.detail = "inconsistent weight ratios around a cycle";
          return result;
        }
      }
    }
  }
  result.weights = weight;

  bool all_positive = true;
  for (const auto& c : weight) {
    CONFDENS_CHECK(c.is_real() && !c.is_zero(), "solved weight must be real nonzero");
    if (sgn(c.re()) < 0) all_positive = false;
  }
  result.verdict = all_positive ? FormVerdict::PositiveDefinite : FormVerdict::Indefinite;
  return result;
}

// ---------------------------------------------------------------------------
// Full classification of one weight.

struct Classification {
  int n = 0;
  int M = 0;
  ParameterTriple params;
  Taxonomy taxonomy;
  int truncation_reliable_up_to = 0;  // M - 2
  bool truncation_sufficient = false;
  SubmoduleReport detection;
  bool detection_matches_taxonomy = false;
  UnitarityResult full_module;
  std::vector<UnitarityResult> submodules;  // parallel to detection.proper_closed_sets
};

namespace detail {

// The closed node sets the taxonomy predicts inside the truncation window.
inline std::vector<std::vector<size_t>> expected_closed_sets(const Taxonomy& t,
                                                             const NodeSystem& ns) {
  std::vector<std::vector<size_t>> out;
  switch (t.kind) {
    case ModuleCase::Simple:
      break;
    case ModuleCase::FiniteDimSub: {
      std::vector<size_t> head;
      for (size_t k = 0; k < ns.labels.size(); ++k)
        if (ns.labels[k].m <= t.parameter) head.push_back(k);
      if (ns.n == 1 && t.parameter + 1 <= ns.M) {
        // On the circle the layers above the vanished raising edge split into
        // two chains that never remix, so each half-tail extends the head to a
        // further invariant set.
        std::vector<size_t> plus = head, minus = head;
        for (size_t k = 0; k < ns.labels.size(); ++k) {
          if (ns.labels[k].m <= t.parameter) continue;
          if (ns.labels[k].sign > 0) plus.push_back(k);
          if (ns.labels[k].sign < 0) minus.push_back(k);
        }
        std::sort(plus.begin(), plus.end());
        std::sort(minus.begin(), minus.end());
        out.push_back(std::move(plus));
        out.push_back(std::move(minus));
      }
      out.push_back(std::move(head));
      break;
    }
    case ModuleCase::TailSub: {
      std::vector<size_t> tail;
      for (size_t k = 0; k < ns.labels.size(); ++k)
        if (ns.labels[k].m >= t.parameter) tail.push_back(k);
      out.push_back(std::move(tail));
      break;
    }
    case ModuleCase::TwoHalfSubs: {
      std::vector<size_t> plus, minus, both;
      for (size_t k = 0; k < ns.labels.size(); ++k) {
        if (ns.labels[k].m < t.parameter) continue;
        both.push_back(k);
        if (ns.labels[k].sign > 0) plus.push_back(k);
        if (ns.labels[k].sign < 0) minus.push_back(k);
      }
      out.push_back(std::move(plus));
      out.push_back(std::move(minus));
      out.push_back(std::move(both));
      break;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

inline Classification classify(int n, const GaussianRational& lambda0, int M) {
  CONFDENS_CHECK(M >= 2, "classification needs M >= 2");
  Classification c;
  c.n = n;
  c.M = M;
  c.params = ParameterTriple::from(n, lambda0);
  c.taxonomy = taxonomy_of(n, lambda0);
  c.truncation_reliable_up_to = M - 2;
  c.truncation_sufficient =
      c.taxonomy.threshold_degree < 0 || c.taxonomy.threshold_degree <= M - 2;

  auto cb = cone_blocks(n, M);
  auto ev = eval_blocks(*cb, lambda0);
  c.detection = submodule_detect(*cb, ev);

  std::vector<std::vector<size_t>> found = c.detection.proper_closed_sets;
  std::sort(found.begin(), found.end());
  c.detection_matches_taxonomy =
      found == detail::expected_closed_sets(c.taxonomy, c.detection.nodes);

  std::vector<size_t> everything;
  for (size_t k = 0; k < c.detection.nodes.labels.size(); ++k) everything.push_back(k);
  c.full_module = unitarity_solve(ev, c.detection.nodes, everything);
  for (const auto& s : c.detection.proper_closed_sets)
    c.submodules.push_back(unitarity_solve(ev, c.detection.nodes, s));
  return c;
}

}  // namespace confdens
