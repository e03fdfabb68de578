#pragma once

// The conformal generator catalog in two realizations that must agree:
//  - polynomial vector fields on the flat chart (variables s_1..s_n), and
//  - matrices in the ambient orthogonal Lie algebra on R^{n+2} preserving the
//    quadratic form diag(1, ..., 1, -1).
// The ambient basis consists of plane rotations R_ab = E_ab - E_ba (a < b)
// and boosts B_a = E_{a,t} + E_{t,a} against the last coordinate t = n + 1.
// Structure constants are computed independently on both sides and compared;
// the closure certificate also checks antisymmetry and the Jacobi identity.

#include <optional>
#include <string>
#include <vector>

#include "confdens/common.hpp"
#include "confdens/gaussian_rational.hpp"
#include "confdens/lambda_scalar.hpp"
#include "confdens/matrix.hpp"
#include "confdens/multipoly.hpp"
#include "confdens/vector_field.hpp"

namespace confdens {

enum class GenKind { Translation, Rotation, Dilation, SpecialConformal };

struct GenLabel {
  GenKind kind;
  int i = 0;  // first chart index (1-based), used by all kinds except Dilation
  int j = 0;  // second chart index, used by Rotation only (i < j)

  std::string name() const {
    switch (kind) {
      case GenKind::Translation:
        return "translation_" + std::to_string(i);
      case GenKind::Rotation:
        return "rotation_" + std::to_string(i) + "_" + std::to_string(j);
      case GenKind::Dilation:
        return "dilation";
      case GenKind::SpecialConformal:
        return "special_conformal_" + std::to_string(i);
    }
    return "?";
  }

  friend bool operator==(const GenLabel& a, const GenLabel& b) {
    return a.kind == b.kind && a.i == b.i && a.j == b.j;
  }
};

inline int conformal_dim(int n) { return (n + 1) * (n + 2) / 2; }

// Canonical basis order: translations, rotations (i < j lexicographic),
// dilation, special conformal generators.
inline std::vector<GenLabel> conformal_basis(int n) {
  CONFDENS_CHECK(n >= 1, "chart dimension must be >= 1");
  std::vector<GenLabel> basis;
  for (int i = 1; i <= n; ++i) basis.push_back({GenKind::Translation, i, 0});
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) basis.push_back({GenKind::Rotation, i, j});
  basis.push_back({GenKind::Dilation, 0, 0});
  for (int i = 1; i <= n; ++i) basis.push_back({GenKind::SpecialConformal, i, 0});
  CONFDENS_CHECK(static_cast<int>(basis.size()) == conformal_dim(n), "basis size");
  return basis;
}

// Chart vector field of a generator. Components are indexed by s_1..s_n
// (variable k of the polynomial ring is s_{k+1}).
inline VectorField<LambdaScalar> chart_field(const GenLabel& g, int n) {
  using Poly = MultiPoly<LambdaScalar>;
  auto var = [&](int chart_index) { return Poly::variable(n, chart_index - 1); };
  std::vector<Poly> comp(static_cast<size_t>(n), Poly::zero(n));
  switch (g.kind) {
    case GenKind::Translation:
      comp[static_cast<size_t>(g.i - 1)] = Poly::constant(n, LambdaScalar(1));
      break;
    case GenKind::Rotation:
      // s_i d/ds_j - s_j d/ds_i
      comp[static_cast<size_t>(g.j - 1)] += var(g.i);
      comp[static_cast<size_t>(g.i - 1)] -= var(g.j);
      break;
    case GenKind::Dilation:
      for (int k = 1; k <= n; ++k) comp[static_cast<size_t>(k - 1)] = var(k);
      break;
    case GenKind::SpecialConformal:
      // sum_j (s_j^2 d/ds_i - 2 s_i s_j d/ds_j)
      for (int j = 1; j <= n; ++j) {
        comp[static_cast<size_t>(g.i - 1)] += var(j) * var(j);
        comp[static_cast<size_t>(j - 1)] -= LambdaScalar(2) * (var(g.i) * var(j));
      }
      break;
  }
  return VectorField<LambdaScalar>(std::move(comp));
}

namespace detail {

inline DenseMatrix<GaussianRational> plane_rotation(int n, int a, int b) {
  size_t dim = static_cast<size_t>(n) + 2;
  DenseMatrix<GaussianRational> m(dim, dim);
  m.at(static_cast<size_t>(a), static_cast<size_t>(b)) = GaussianRational(1);
  m.at(static_cast<size_t>(b), static_cast<size_t>(a)) = GaussianRational(-1);
  return m;
}

inline DenseMatrix<GaussianRational> boost(int n, int a) {
  size_t dim = static_cast<size_t>(n) + 2;
  size_t t = dim - 1;
  DenseMatrix<GaussianRational> m(dim, dim);
  m.at(static_cast<size_t>(a), t) = GaussianRational(1);
  m.at(t, static_cast<size_t>(a)) = GaussianRational(1);
  return m;
}

}  // namespace detail

// Ambient matrix of a generator. Chart index i corresponds to ambient axis i
// (axis 0 is the extra sphere direction, axis n+1 the timelike one).
inline DenseMatrix<GaussianRational> ambient_matrix(const GenLabel& g, int n) {
  switch (g.kind) {
    case GenKind::Translation:
      return detail::plane_rotation(n, 0, g.i) - detail::boost(n, g.i);
    case GenKind::Rotation:
      return detail::plane_rotation(n, g.i, g.j);
    case GenKind::Dilation:
      return detail::boost(n, 0);
    case GenKind::SpecialConformal:
      return -(detail::plane_rotation(n, 0, g.i) + detail::boost(n, g.i));
  }
  CONFDENS_CHECK(false, "unreachable");
  return DenseMatrix<GaussianRational>(0, 0);
}

// Expands target in the linear span of basis elements; nullopt when target is
// outside the span.
inline std::optional<std::vector<GaussianRational>> expand_in_field_basis(
    const std::vector<VectorField<LambdaScalar>>& basis, const VectorField<LambdaScalar>& target) {
  CONFDENS_CHECK(!basis.empty(), "empty basis");
  int n = basis.front().nvars();
  // Rows: (component, monomial) pairs over the union of supports.
  std::map<std::pair<int, ExponentVec>, size_t> row_of;
  auto note = [&](const VectorField<LambdaScalar>& f) {
    for (int k = 0; k < n; ++k)
      for (const auto& [e, c] : f.component(k).terms()) {
        (void)c;
        row_of.emplace(std::make_pair(k, e), row_of.size());
      }
  };
  for (const auto& f : basis) note(f);
  note(target);

  DenseMatrix<GaussianRational> a(row_of.size(), basis.size());
  std::vector<GaussianRational> b(row_of.size(), GaussianRational(0));
  auto constant_of = [](const LambdaScalar& v) {
    CONFDENS_CHECK(v.is_constant(), "generator coefficients must be parameter-free");
    return v.constant_value();
  };
  for (size_t col = 0; col < basis.size(); ++col)
    for (int k = 0; k < n; ++k)
      for (const auto& [e, c] : basis[col].component(k).terms())
        a.at(row_of.at({k, e}), col) = constant_of(c);
  for (int k = 0; k < n; ++k)
    for (const auto& [e, c] : target.component(k).terms()) b[row_of.at({k, e})] = constant_of(c);
  return a.solve(b);
}

inline std::optional<std::vector<GaussianRational>> expand_in_matrix_basis(
    const std::vector<DenseMatrix<GaussianRational>>& basis,
    const DenseMatrix<GaussianRational>& target) {
  CONFDENS_CHECK(!basis.empty(), "empty basis");
  size_t rows = basis.front().rows() * basis.front().cols();
  DenseMatrix<GaussianRational> a(rows, basis.size());
  std::vector<GaussianRational> b(rows, GaussianRational(0));
  for (size_t col = 0; col < basis.size(); ++col) {
    const auto& m = basis[col];
    CONFDENS_CHECK(m.rows() == basis.front().rows() && m.cols() == basis.front().cols(),
                   "basis shape mismatch");
    for (size_t r = 0; r < m.rows(); ++r)
      for (size_t c = 0; c < m.cols(); ++c) a.at(r * m.cols() + c, col) = m.at(r, c);
  }
  for (size_t r = 0; r < target.rows(); ++r)
    for (size_t c = 0; c < target.cols(); ++c) b[r * target.cols() + c] = target.at(r, c);
  return a.solve(b);
}

// Structure constants: coef[a][b][k] is the k-th coefficient of [g_a, g_b].
struct StructureConstants {
  int n = 0;
  std::vector<GenLabel> basis;
  std::vector<std::vector<std::vector<GaussianRational>>> coef;

  const std::vector<GaussianRational>& bracket_coeffs(size_t a, size_t b) const {
    return coef[a][b];
  }

  bool antisymmetric() const {
    for (size_t a = 0; a < basis.size(); ++a)
      for (size_t b = 0; b < basis.size(); ++b)
        for (size_t k = 0; k < basis.size(); ++k)
          if (coef[a][b][k] != -coef[b][a][k]) return false;
    return true;
  }

  bool jacobi() const {
    size_t d = basis.size();
    for (size_t a = 0; a < d; ++a)
      for (size_t b = a + 1; b < d; ++b)
        for (size_t c = b + 1; c < d; ++c)
          for (size_t k = 0; k < d; ++k) {
            GaussianRational sum(0);
            for (size_t m = 0; m < d; ++m) {
              sum += coef[a][b][m] * coef[m][c][k];
              sum += coef[b][c][m] * coef[m][a][k];
              sum += coef[c][a][m] * coef[m][b][k];
            }
            if (!sum.is_zero()) return false;
          }
    return true;
  }
};

inline std::optional<StructureConstants> structure_constants_from_fields(int n) {
  StructureConstants sc;
  sc.n = n;
  sc.basis = conformal_basis(n);
  std::vector<VectorField<LambdaScalar>> fields;
  fields.reserve(sc.basis.size());
  for (const auto& g : sc.basis) fields.push_back(chart_field(g, n));
  size_t d = sc.basis.size();
  sc.coef.assign(d, std::vector<std::vector<GaussianRational>>(d));
  for (size_t a = 0; a < d; ++a)
    for (size_t b = 0; b < d; ++b) {
      auto expansion =
          expand_in_field_basis(fields, VectorField<LambdaScalar>::bracket(fields[a], fields[b]));
      if (!expansion) return std::nullopt;
      sc.coef[a][b] = std::move(*expansion);
    }
  return sc;
}

inline std::optional<StructureConstants> structure_constants_from_matrices(int n) {
  StructureConstants sc;
  sc.n = n;
  sc.basis = conformal_basis(n);
  std::vector<DenseMatrix<GaussianRational>> mats;
  mats.reserve(sc.basis.size());
  for (const auto& g : sc.basis) mats.push_back(ambient_matrix(g, n));
  size_t d = sc.basis.size();
  sc.coef.assign(d, std::vector<std::vector<GaussianRational>>(d));
  for (size_t a = 0; a < d; ++a)
    for (size_t b = 0; b < d; ++b) {
      auto expansion = expand_in_matrix_basis(mats, mats[a] * mats[b] - mats[b] * mats[a]);
      if (!expansion) return std::nullopt;
      sc.coef[a][b] = std::move(*expansion);
    }
  return sc;
}

struct ClosureCertificate {
  bool fields_close = false;
  bool matrices_close = false;
  bool tables_agree = false;
  bool antisymmetric = false;
  bool jacobi = false;
  bool ok() const { return fields_close && matrices_close && tables_agree && antisymmetric && jacobi; }
};

// Verifies that both realizations close with identical structure constants
// and that the common bracket table is a Lie bracket.
inline ClosureCertificate closure_certificate(int n) {
  ClosureCertificate cert;
  auto from_fields = structure_constants_from_fields(n);
  auto from_matrices = structure_constants_from_matrices(n);
  cert.fields_close = from_fields.has_value();
  cert.matrices_close = from_matrices.has_value();
  if (!from_fields || !from_matrices) return cert;
  cert.tables_agree = from_fields->coef == from_matrices->coef;
  cert.antisymmetric = from_fields->antisymmetric();
  cert.jacobi = from_fields->jacobi();
  return cert;
}

// Chart-side identity battery on polynomial densities with the weight kept
// formal: the weighted action represents the bracket table, the normalized
// divergence satisfies the 1-cocycle identity, and the weighted action
// decomposes as plain derivative plus weight times divergence multiplier.
struct ChartIdentityReport {
  int n = 0;
  int max_degree = 0;
  long monomials_checked = 0;
  bool morphism_ok = false;
  bool cocycle_ok = false;
  bool decomposition_ok = false;
  std::string failure;
  bool ok() const { return morphism_ok && cocycle_ok && decomposition_ok; }
};

inline ChartIdentityReport chart_identity_check(int n, int max_degree) {
  CONFDENS_CHECK(n >= 1 && max_degree >= 0, "chart identity arguments");
  using LPoly = MultiPoly<LambdaScalar>;
  ChartIdentityReport report;
  report.n = n;
  report.max_degree = max_degree;

  LambdaScalar lam = LambdaScalar::lambda();
  auto basis = conformal_basis(n);
  auto sc = structure_constants_from_fields(n);
  CONFDENS_CHECK(sc.has_value(), "chart fields must close");
  std::vector<VectorField<LambdaScalar>> fields;
  fields.reserve(basis.size());
  for (const auto& g : basis) fields.push_back(chart_field(g, n));

  std::vector<LPoly> densities;
  for (int d = 0; d <= max_degree; ++d) {
    ExponentVec cur(static_cast<size_t>(n), 0);
    auto rec = [&](auto&& self, int var, int left) -> void {
      if (var == n - 1) {
        cur[static_cast<size_t>(var)] = left;
        densities.push_back(LPoly::monomial(cur, LambdaScalar(GaussianRational(1))));
        cur[static_cast<size_t>(var)] = 0;
        return;
      }
      for (int e = left; e >= 0; --e) {
        cur[static_cast<size_t>(var)] = e;
        self(self, var + 1, left - e);
      }
      cur[static_cast<size_t>(var)] = 0;
    };
    rec(rec, 0, d);
  }
  report.monomials_checked = static_cast<long>(densities.size());

  report.morphism_ok = true;
  for (size_t a = 0; a < basis.size() && report.morphism_ok; ++a)
    for (size_t b = a + 1; b < basis.size() && report.morphism_ok; ++b)
      for (const auto& phi : densities) {
        LPoly lhs = lie_derivative(fields[a], lie_derivative(fields[b], phi, lam), lam) -
                    lie_derivative(fields[b], lie_derivative(fields[a], phi, lam), lam);
        LPoly rhs = LPoly::zero(n);
        for (size_t k = 0; k < basis.size(); ++k) {
          const GaussianRational& c = sc->bracket_coeffs(a, b)[k];
          if (c.is_zero()) continue;
          rhs += LambdaScalar(c) * lie_derivative(fields[k], phi, lam);
        }
        if (!(lhs == rhs)) {
          report.morphism_ok = false;
          report.failure = "bracket action mismatch at " + basis[a].name() + ", " +
                           basis[b].name() + " on " + phi.to_string();
          break;
        }
      }

  report.cocycle_ok = true;
  for (size_t a = 0; a < basis.size() && report.cocycle_ok; ++a)
    for (size_t b = 0; b < basis.size(); ++b) {
      auto br = VectorField<LambdaScalar>::bracket(fields[a], fields[b]);
      if (!(br.divergence() == fields[a].apply(fields[b].divergence()) -
                                   fields[b].apply(fields[a].divergence()))) {
        report.cocycle_ok = false;
        report.failure = "divergence cocycle fails at " + basis[a].name() + ", " + basis[b].name();
        break;
      }
    }

  report.decomposition_ok = true;
  for (size_t a = 0; a < basis.size() && report.decomposition_ok; ++a)
    for (const auto& phi : densities)
      if (!(lie_derivative(fields[a], phi, lam) ==
            fields[a].apply(phi) + lam * (fields[a].divergence() * phi))) {
        report.decomposition_ok = false;
        report.failure = "weighted action decomposition fails at " + basis[a].name();
        break;
      }
  return report;
}

}  // namespace confdens
