#pragma once

// Truncated matrix realization of the conformal action on weighted densities.
//
// A density of weight lambda is expanded over harmonic layers H_0..H_M; every
// basis generator then acts through three block diagonals: a degree-preserving
// rotation part, a raising part H_m -> H_{m+1}, and a lowering part
// H_m -> H_{m-1}. All blocks depend at most affinely on the weight, so they
// are stored as pencils A + lambda*B over the Gaussian rationals and can be
// evaluated exactly at any concrete weight or manipulated with the weight
// kept formal.
//
// The boost decomposition: on a harmonic P of degree m carried by the radial
// power kappa - m with kappa = -n*lambda, applying r*d_a yields
//     d_a(P) + (kappa - m) * proj_low   in layer m-1, and
//     (kappa - m) * proj_high           in layer m+1,
// where x_a P = proj_high + r^2 proj_low with proj_low = d_a(P)/(n + 2m - 1).

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "confdens/common.hpp"
#include "confdens/gaussian_rational.hpp"
#include "confdens/generators.hpp"
#include "confdens/harmonic.hpp"
#include "confdens/lambda_scalar.hpp"
#include "confdens/matrix.hpp"
#include "confdens/multipoly.hpp"

namespace confdens {

using LambdaPoly = MultiPoly<LambdaScalar>;

// ---------------------------------------------------------------------------
// Affine matrix pencils in the weight.

struct AffineMat {
  DenseMatrix<GaussianRational> a, b;  // value at weight lambda: a + lambda*b

  AffineMat() = default;
  AffineMat(size_t rows, size_t cols) : a(rows, cols), b(rows, cols) {}
  AffineMat(DenseMatrix<GaussianRational> a0, DenseMatrix<GaussianRational> b0)
      : a(std::move(a0)), b(std::move(b0)) {
    CONFDENS_CHECK(a.rows() == b.rows() && a.cols() == b.cols(), "pencil shape mismatch");
  }

  size_t rows() const { return a.rows(); }
  size_t cols() const { return a.cols(); }
  bool is_zero() const { return a.is_zero() && b.is_zero(); }

  DenseMatrix<GaussianRational> eval(const GaussianRational& l) const { return a + l * b; }

  DenseMatrix<LambdaScalar> symbolic() const {
    DenseMatrix<LambdaScalar> m(rows(), cols());
    LambdaScalar l = LambdaScalar::lambda();
    for (size_t i = 0; i < rows(); ++i)
      for (size_t j = 0; j < cols(); ++j)
        m.at(i, j) = LambdaScalar(a.at(i, j)) + l * LambdaScalar(b.at(i, j));
    return m;
  }

  // The pencil at weight 1 - lambda, again as a pencil in lambda.
  AffineMat reflect_weight() const { return AffineMat(a + b, -b); }

  AffineMat operator-() const { return AffineMat(-a, -b); }
  friend AffineMat operator+(const AffineMat& x, const AffineMat& y) {
    return AffineMat(x.a + y.a, x.b + y.b);
  }
  friend AffineMat operator-(const AffineMat& x, const AffineMat& y) {
    return AffineMat(x.a - y.a, x.b - y.b);
  }
  friend AffineMat operator*(const GaussianRational& s, const AffineMat& x) {
    return AffineMat(s * x.a, s * x.b);
  }
  friend bool operator==(const AffineMat& x, const AffineMat& y) {
    return x.a == y.a && x.b == y.b;
  }
};

// ---------------------------------------------------------------------------
// Polynomial-level boost application (the r*d_axis operation), kept formal in
// the weight. Used to cross-check the assembled matrices.

struct BoostImage {
  LambdaPoly lower;  // harmonic, degree m - 1
  LambdaPoly raise;  // harmonic, degree m + 1
};

inline BoostImage boost_apply(int n, int axis, const RationalPoly& p) {
  CONFDENS_CHECK(n >= 1 && axis >= 0 && axis <= n, "boost axis out of range");
  CONFDENS_CHECK(p.nvars() == n + 1, "ambient arity mismatch");
  CONFDENS_CHECK(!p.is_zero() && p.is_homogeneous(), "boost input must be homogeneous nonzero");
  CONFDENS_CHECK(laplacian(p).is_zero(), "boost input must be harmonic");
  int m = p.total_degree();

  RationalPoly dp = p.derivative(axis);
  RationalPoly proj_low = RationalPoly::zero(n + 1);
  if (m >= 1)
    proj_low = GaussianRational(make_rational(1, n + 2 * static_cast<long>(m) - 1)) * dp;
  RationalPoly proj_high =
      RationalPoly::variable(n + 1, axis) * p - times_r_squared(proj_low);
  CONFDENS_CHECK(laplacian(proj_high).is_zero(), "raised component fails harmonicity");

  LambdaScalar km = LambdaScalar(-static_cast<long>(n)) * LambdaScalar::lambda() -
                    LambdaScalar(static_cast<long>(m));
  auto lift = [](const GaussianRational& c) { return LambdaScalar(c); };
  return BoostImage{map_coefficients<LambdaScalar>(dp, lift) +
                        km * map_coefficients<LambdaScalar>(proj_low, lift),
                    km * map_coefficients<LambdaScalar>(proj_high, lift)};
}

// ---------------------------------------------------------------------------
// Structure matrices on harmonic layers.

namespace detail {

template <class F>
inline DenseMatrix<GaussianRational> harmonic_map_matrix(int n, int src_m, int dst_m, F&& image) {
  const HarmonicBasis& src = harmonic_basis(n, src_m);
  DenseMatrix<GaussianRational> out(static_cast<size_t>(harmonic_dim(n, dst_m)),
                                    static_cast<size_t>(src.dim()));
  for (size_t j = 0; j < src.elements.size(); ++j) {
    RationalPoly img = image(src.elements[j]);
    if (img.is_zero()) continue;
    auto coords = harmonic_coordinates(n, dst_m, img);
    for (size_t i = 0; i < coords.size(); ++i)
      if (!coords[i].is_zero()) out.at(i, j) = coords[i];
  }
  return out;
}

}  // namespace detail

// Action of x_a d_b - x_b d_a on the degree-m layer.
inline DenseMatrix<GaussianRational> rotation_matrix(int n, int m, int a, int b) {
  CONFDENS_CHECK(a >= 0 && b >= 0 && a <= n && b <= n && a != b, "rotation plane out of range");
  return detail::harmonic_map_matrix(n, m, m, [&](const RationalPoly& p) {
    return RationalPoly::variable(n + 1, a) * p.derivative(b) -
           RationalPoly::variable(n + 1, b) * p.derivative(a);
  });
}

// Matrix of d_axis : H_m -> H_{m-1}.
inline DenseMatrix<GaussianRational> derivative_matrix(int n, int m, int axis) {
  CONFDENS_CHECK(m >= 1, "derivative matrix needs positive degree");
  return detail::harmonic_map_matrix(
      n, m, m - 1, [&](const RationalPoly& p) { return p.derivative(axis); });
}

// Matrix of P |-> harmonic part of x_axis * P, as a map H_m -> H_{m+1}.
inline DenseMatrix<GaussianRational> raise_structure_matrix(int n, int m, int axis) {
  if (m == 0)
    return detail::harmonic_map_matrix(
        n, 0, 1, [&](const RationalPoly& p) { return RationalPoly::variable(n + 1, axis) * p; });
  GaussianRational inv(make_rational(1, n + 2 * static_cast<long>(m) - 1));
  return detail::harmonic_map_matrix(n, m, m + 1, [&](const RationalPoly& p) {
    RationalPoly proj_low = inv * p.derivative(axis);
    return RationalPoly::variable(n + 1, axis) * p - times_r_squared(proj_low);
  });
}

// ---------------------------------------------------------------------------
// Assembled generator blocks on the truncated sum H_0 + ... + H_M.

struct GeneratorBlocks {
  GenLabel label;
  // diag_[m] : H_m -> H_m for m = 0..M;
  // raise_[m] : H_m -> H_{m+1} and lower_[m] : H_{m+1} -> H_m for m = 0..M-1.
  std::vector<AffineMat> diag_, raise_, lower_;

  int top_degree() const { return static_cast<int>(diag_.size()) - 1; }
  const AffineMat& diag(int m) const { return diag_.at(static_cast<size_t>(m)); }
  const AffineMat& raise_from(int m) const { return raise_.at(static_cast<size_t>(m)); }
  const AffineMat& lower_from(int m) const {
    CONFDENS_CHECK(m >= 1, "no lowering out of the bottom layer");
    return lower_.at(static_cast<size_t>(m) - 1);
  }
};

struct ConeBlocks {
  int n = 0;
  int M = 0;
  std::vector<long> dims;           // dims[m] = harmonic dimension of layer m
  std::vector<GenLabel> basis;      // conformal_basis(n)
  std::vector<GeneratorBlocks> gens;  // parallel to basis

  size_t index_of(const GenLabel& g) const {
    for (size_t k = 0; k < basis.size(); ++k)
      if (basis[k] == g) return k;
    CONFDENS_CHECK(false, "unknown generator label");
    return 0;
  }
  const GeneratorBlocks& blocks_of(const GenLabel& g) const { return gens[index_of(g)]; }
};

namespace detail {

inline std::unique_ptr<ConeBlocks> build_cone_blocks(int n, int M) {
  CONFDENS_CHECK(n >= 1 && M >= 1, "cone blocks need n >= 1 and M >= 1");
  auto cb = std::make_unique<ConeBlocks>();
  cb->n = n;
  cb->M = M;
  for (int m = 0; m <= M; ++m) cb->dims.push_back(harmonic_dim(n, m));
  cb->basis = conformal_basis(n);

  // Boost pencils per ambient axis. With kappa = -n*lambda and source degree
  // m the lowering block is D + (kappa - m) * D/(n + 2m - 1) and the raising
  // block is (kappa - m) * Xup.
  GaussianRational minus_n(-static_cast<long>(n));
  std::vector<std::vector<AffineMat>> braise(static_cast<size_t>(n) + 1),
      blower(static_cast<size_t>(n) + 1);
  for (int a = 0; a <= n; ++a) {
    auto& up = braise[static_cast<size_t>(a)];
    auto& down = blower[static_cast<size_t>(a)];
    for (int m = 0; m <= M - 1; ++m) {
      DenseMatrix<GaussianRational> xup = raise_structure_matrix(n, m, a);
      up.emplace_back(GaussianRational(-static_cast<long>(m)) * xup, minus_n * xup);
    }
    for (int m = 1; m <= M; ++m) {
      DenseMatrix<GaussianRational> d = derivative_matrix(n, m, a);
      DenseMatrix<GaussianRational> xlow =
          GaussianRational(make_rational(1, n + 2 * static_cast<long>(m) - 1)) * d;
      down.emplace_back(d - GaussianRational(static_cast<long>(m)) * xlow, minus_n * xlow);
    }
  }

  auto constant_diag = [&](const DenseMatrix<GaussianRational>& m) {
    return AffineMat(m, DenseMatrix<GaussianRational>(m.rows(), m.cols()));
  };
  auto zero_raise = [&](int m) {
    return AffineMat(static_cast<size_t>(cb->dims[static_cast<size_t>(m) + 1]),
                     static_cast<size_t>(cb->dims[static_cast<size_t>(m)]));
  };
  auto zero_lower = [&](int m) {
    return AffineMat(static_cast<size_t>(cb->dims[static_cast<size_t>(m)]),
                     static_cast<size_t>(cb->dims[static_cast<size_t>(m) + 1]));
  };

  for (const GenLabel& g : cb->basis) {
    GeneratorBlocks gb;
    gb.label = g;
    switch (g.kind) {
      case GenKind::Translation:
        for (int m = 0; m <= M; ++m)
          gb.diag_.push_back(constant_diag(rotation_matrix(n, m, 0, g.i)));
        gb.raise_ = braise[static_cast<size_t>(g.i)];
        gb.lower_ = blower[static_cast<size_t>(g.i)];
        break;
      case GenKind::SpecialConformal:
        for (int m = 0; m <= M; ++m)
          gb.diag_.push_back(constant_diag(-rotation_matrix(n, m, 0, g.i)));
        gb.raise_ = braise[static_cast<size_t>(g.i)];
        gb.lower_ = blower[static_cast<size_t>(g.i)];
        break;
      case GenKind::Dilation:
        for (int m = 0; m <= M; ++m)
          gb.diag_.emplace_back(static_cast<size_t>(cb->dims[static_cast<size_t>(m)]),
                                static_cast<size_t>(cb->dims[static_cast<size_t>(m)]));
        for (int m = 0; m <= M - 1; ++m) {
          gb.raise_.push_back(-braise[0][static_cast<size_t>(m)]);
          gb.lower_.push_back(-blower[0][static_cast<size_t>(m)]);
        }
        break;
      case GenKind::Rotation:
        for (int m = 0; m <= M; ++m)
          gb.diag_.push_back(constant_diag(rotation_matrix(n, m, g.i, g.j)));
        for (int m = 0; m <= M - 1; ++m) {
          gb.raise_.push_back(zero_raise(m));
          gb.lower_.push_back(zero_lower(m));
        }
        break;
    }
    cb->gens.push_back(std::move(gb));
  }
  return cb;
}

struct ConeBlockCache {
  std::mutex mu;
  std::map<std::pair<int, int>, std::shared_ptr<const ConeBlocks>> entries;
};

inline ConeBlockCache& cone_block_cache() {
  static ConeBlockCache c;
  return c;
}

}  // namespace detail

inline std::shared_ptr<const ConeBlocks> cone_blocks(int n, int M) {
  auto& cache = detail::cone_block_cache();
  auto key = std::make_pair(n, M);
  {
    std::lock_guard<std::mutex> lock(cache.mu);
    auto it = cache.entries.find(key);
    if (it != cache.entries.end()) return it->second;
  }
  // Build outside the lock (assembly re-enters the harmonic caches).
  std::shared_ptr<const ConeBlocks> built = detail::build_cone_blocks(n, M);
  std::lock_guard<std::mutex> lock(cache.mu);
  return cache.entries.emplace(key, std::move(built)).first->second;
}

// Blocks evaluated at a concrete weight.
struct EvaluatedBlocks {
  int n = 0;
  int M = 0;
  GaussianRational lambda0;
  std::vector<long> dims;
  std::vector<GenLabel> basis;
  struct Gen {
    std::vector<DenseMatrix<GaussianRational>> diag_, raise_, lower_;
    const DenseMatrix<GaussianRational>& diag(int m) const {
      return diag_.at(static_cast<size_t>(m));
    }
    const DenseMatrix<GaussianRational>& raise_from(int m) const {
      return raise_.at(static_cast<size_t>(m));
    }
    const DenseMatrix<GaussianRational>& lower_from(int m) const {
      CONFDENS_CHECK(m >= 1, "no lowering out of the bottom layer");
      return lower_.at(static_cast<size_t>(m) - 1);
    }
  };
  std::vector<Gen> gens;
};

inline EvaluatedBlocks eval_blocks(const ConeBlocks& cb, const GaussianRational& lambda0) {
  EvaluatedBlocks ev;
  ev.n = cb.n;
  ev.M = cb.M;
  ev.lambda0 = lambda0;
  ev.dims = cb.dims;
  ev.basis = cb.basis;
  for (const auto& gb : cb.gens) {
    EvaluatedBlocks::Gen g;
    for (const auto& m : gb.diag_) g.diag_.push_back(m.eval(lambda0));
    for (const auto& m : gb.raise_) g.raise_.push_back(m.eval(lambda0));
    for (const auto& m : gb.lower_) g.lower_.push_back(m.eval(lambda0));
    ev.gens.push_back(std::move(g));
  }
  return ev;
}

// ---------------------------------------------------------------------------
// Composition machinery. Products of two affine pencils are quadratic in the
// weight; they are kept as coefficient triples so all arithmetic stays over
// the Gaussian rationals.

namespace detail {

struct QuadMat {
  DenseMatrix<GaussianRational> c0, c1, c2;  // c0 + lambda*c1 + lambda^2*c2

  QuadMat(size_t rows, size_t cols) : c0(rows, cols), c1(rows, cols), c2(rows, cols) {}

  static QuadMat product(const AffineMat& g, const AffineMat& h) {
    QuadMat q(g.rows(), h.cols());
    q.c0 = g.a * h.a;
    q.c1 = g.a * h.b + g.b * h.a;
    q.c2 = g.b * h.b;
    return q;
  }

  QuadMat& operator+=(const QuadMat& o) {
    c0 = c0 + o.c0;
    c1 = c1 + o.c1;
    c2 = c2 + o.c2;
    return *this;
  }
  QuadMat& operator-=(const QuadMat& o) {
    c0 = c0 - o.c0;
    c1 = c1 - o.c1;
    c2 = c2 - o.c2;
    return *this;
  }
  void add_scaled(const GaussianRational& s, const AffineMat& m) {
    c0 = c0 + s * m.a;
    c1 = c1 + s * m.b;
  }
  bool is_zero() const { return c0.is_zero() && c1.is_zero() && c2.is_zero(); }
  friend bool operator==(const QuadMat& x, const QuadMat& y) {
    return x.c0 == y.c0 && x.c1 == y.c1 && x.c2 == y.c2;
  }
};

// Invokes fn(target_degree, block) for each block of gb out of layer m.
template <class F>
inline void for_each_block(const GeneratorBlocks& gb, int m, int M, F&& fn) {
  if (m >= 1) fn(m - 1, gb.lower_from(m));
  fn(m, gb.diag(m));
  if (m <= M - 1) fn(m + 1, gb.raise_from(m));
}

// Column m of the composite g∘h, keyed by target degree. Exact for
// m <= M - 2: the only missing blocks are those out of layer M.
inline std::map<int, QuadMat> compose_column(const GeneratorBlocks& g, const GeneratorBlocks& h,
                                             int m, int M) {
  std::map<int, QuadMat> acc;
  for_each_block(h, m, M, [&](int t1, const AffineMat& hb) {
    for_each_block(g, t1, M, [&](int t2, const AffineMat& gb) {
      auto it = acc.try_emplace(t2, gb.rows(), hb.cols()).first;
      it->second += QuadMat::product(gb, hb);
    });
  });
  return acc;
}

inline bool quad_maps_equal(const std::map<int, QuadMat>& x, const std::map<int, QuadMat>& y,
                            int* bad_target) {
  for (const auto& [t, q] : x) {
    auto it = y.find(t);
    if (it == y.end() ? !q.is_zero() : !(q == it->second)) {
      *bad_target = t;
      return false;
    }
  }
  for (const auto& [t, q] : y)
    if (x.find(t) == x.end() && !q.is_zero()) {
      *bad_target = t;
      return false;
    }
  return true;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// The assembled blocks realize the abstract bracket: [g, h] computed by block
// composition equals the structure-constant combination, with the weight kept
// formal. Columns 0..M-2 are exact under truncation.

struct MorphismReport {
  int n = 0;
  int M = 0;
  long pairs_checked = 0;
  long columns_checked = 0;
  bool ok = false;
  std::string failure;
};

inline MorphismReport matrix_morphism_check(int n, int M) {
  MorphismReport report;
  report.n = n;
  report.M = M;
  CONFDENS_CHECK(M >= 2, "morphism check needs M >= 2");
  auto cb = cone_blocks(n, M);
  auto sc = structure_constants_from_fields(n);
  if (!sc) {
    report.failure = "chart fields do not close";
    return report;
  }
  size_t d = cb->basis.size();
  for (size_t a = 0; a < d; ++a)
    for (size_t b = a + 1; b < d; ++b) {
      for (int m = 0; m <= M - 2; ++m) {
        auto lhs = detail::compose_column(cb->gens[a], cb->gens[b], m, M);
        auto rhs_products = detail::compose_column(cb->gens[b], cb->gens[a], m, M);
        for (auto& [t, q] : rhs_products) {
          auto it = lhs.try_emplace(t, q.c0.rows(), q.c0.cols()).first;
          it->second -= q;
        }
        std::map<int, detail::QuadMat> rhs;
        const auto& coeffs = sc->bracket_coeffs(a, b);
        for (size_t k = 0; k < d; ++k) {
          if (coeffs[k].is_zero()) continue;
          detail::for_each_block(cb->gens[k], m, M, [&](int t, const AffineMat& blk) {
            auto it = rhs.try_emplace(t, blk.rows(), blk.cols()).first;
            it->second.add_scaled(coeffs[k], blk);
          });
        }
        int bad = 0;
        if (!detail::quad_maps_equal(lhs, rhs, &bad)) {
          report.failure = "[" + cb->basis[a].name() + ", " + cb->basis[b].name() +
                           "] disagrees on column " + std::to_string(m) + " target " +
                           std::to_string(bad);
          return report;
        }
        ++report.columns_checked;
      }
      ++report.pairs_checked;
    }
  report.ok = true;
  return report;
}

// ---------------------------------------------------------------------------
// Casimir element, block side: with the invariant pairing fixed by the
// matrix realization, the element is
//     dil^2 + (1/2) sum_i (tr_i sc_i + sc_i tr_i) - sum_{i<j} rot_ij^2
// and must act on every interior column as n^2 lambda (lambda - 1) times the
// identity, with no off-diagonal leakage.

struct CasimirBlocksReport {
  int n = 0;
  int M = 0;
  bool offdiagonal_vanishes = false;
  bool diagonal_scalar = false;
  bool scalar_matches = false;
  LambdaScalar scalar;
  bool ok() const { return offdiagonal_vanishes && diagonal_scalar && scalar_matches; }
};

inline CasimirBlocksReport casimir_blocks_check(int n, int M) {
  CasimirBlocksReport report;
  report.n = n;
  report.M = M;
  CONFDENS_CHECK(M >= 2, "casimir check needs M >= 2");
  auto cb = cone_blocks(n, M);

  struct Term {
    GaussianRational coeff;
    size_t g, h;
  };
  std::vector<Term> terms;
  size_t dil = cb->index_of({GenKind::Dilation, 0, 0});
  terms.push_back({GaussianRational(1), dil, dil});
  GaussianRational half(make_rational(1, 2));
  for (int i = 1; i <= n; ++i) {
    size_t tr = cb->index_of({GenKind::Translation, i, 0});
    size_t sc = cb->index_of({GenKind::SpecialConformal, i, 0});
    terms.push_back({half, tr, sc});
    terms.push_back({half, sc, tr});
  }
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      size_t rot = cb->index_of({GenKind::Rotation, i, j});
      terms.push_back({GaussianRational(-1), rot, rot});
    }

  LambdaScalar l = LambdaScalar::lambda();
  LambdaScalar expected =
      LambdaScalar(static_cast<long>(n) * n) * l * (l - LambdaScalar(1));

  report.offdiagonal_vanishes = true;
  report.diagonal_scalar = true;
  report.scalar_matches = true;
  bool have_scalar = false;
  for (int m = 0; m <= M - 2; ++m) {
    std::map<int, detail::QuadMat> acc;
    for (const auto& term : terms) {
      auto prod = detail::compose_column(cb->gens[term.g], cb->gens[term.h], m, M);
      for (auto& [t, q] : prod) {
        auto it = acc.try_emplace(t, q.c0.rows(), q.c0.cols()).first;
        if (term.coeff == GaussianRational(1)) {
          it->second += q;
        } else {
          detail::QuadMat scaled(q.c0.rows(), q.c0.cols());
          scaled.c0 = term.coeff * q.c0;
          scaled.c1 = term.coeff * q.c1;
          scaled.c2 = term.coeff * q.c2;
          it->second += scaled;
        }
      }
    }
    for (const auto& [t, q] : acc) {
      if (t == m) continue;
      if (!q.is_zero()) report.offdiagonal_vanishes = false;
    }
    auto dit = acc.find(m);
    CONFDENS_CHECK(dit != acc.end(), "casimir diagonal block missing");
    const detail::QuadMat& q = dit->second;
    size_t dim = q.c0.rows();
    auto scalar_of = [&](const DenseMatrix<GaussianRational>& mat,
                         GaussianRational& out) -> bool {
      out = mat.at(0, 0);
      return mat == out * DenseMatrix<GaussianRational>::identity(dim);
    };
    GaussianRational s0, s1, s2;
    if (!scalar_of(q.c0, s0) || !scalar_of(q.c1, s1) || !scalar_of(q.c2, s2)) {
      report.diagonal_scalar = false;
      continue;
    }
    LambdaScalar scalar = LambdaScalar(s0) + LambdaScalar(s1) * l + LambdaScalar(s2) * l * l;
    if (!have_scalar) {
      report.scalar = scalar;
      have_scalar = true;
    }
    if (!(scalar == report.scalar) || !(scalar == expected)) report.scalar_matches = false;
  }
  return report;
}

// Casimir element, chart side: the same combination of weighted derivations
// applied to every chart monomial of degree <= max_degree must multiply by
// n^2 lambda (lambda - 1).

struct CasimirStereoReport {
  int n = 0;
  int max_degree = 0;
  long monomials_checked = 0;
  bool ok = false;
};

inline CasimirStereoReport casimir_stereo_check(int n, int max_degree) {
  CasimirStereoReport report;
  report.n = n;
  report.max_degree = max_degree;

  std::vector<GenLabel> basis = conformal_basis(n);
  std::vector<VectorField<LambdaScalar>> fields;
  fields.reserve(basis.size());
  for (const auto& g : basis) fields.push_back(chart_field(g, n));
  auto field_of = [&](const GenLabel& g) -> const VectorField<LambdaScalar>& {
    for (size_t k = 0; k < basis.size(); ++k)
      if (basis[k] == g) return fields[k];
    CONFDENS_CHECK(false, "unknown generator label");
    return fields[0];
  };

  LambdaScalar l = LambdaScalar::lambda();
  auto act = [&](const GenLabel& g, const LambdaPoly& f) {
    return lie_derivative(field_of(g), f, l);
  };
  LambdaScalar half(GaussianRational(make_rational(1, 2)));
  auto omega = [&](const LambdaPoly& f) {
    GenLabel dil{GenKind::Dilation, 0, 0};
    LambdaPoly out = act(dil, act(dil, f));
    for (int i = 1; i <= n; ++i) {
      GenLabel tr{GenKind::Translation, i, 0};
      GenLabel sc{GenKind::SpecialConformal, i, 0};
      out += half * (act(tr, act(sc, f)) + act(sc, act(tr, f)));
    }
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) {
        GenLabel rot{GenKind::Rotation, i, j};
        out -= act(rot, act(rot, f));
      }
    return out;
  };

  LambdaScalar expected =
      LambdaScalar(static_cast<long>(n) * n) * l * (l - LambdaScalar(1));
  for (int deg = 0; deg <= max_degree; ++deg)
    for (const auto& e : homogeneous_monomials(n, deg)) {
      LambdaPoly phi = LambdaPoly::monomial(e, LambdaScalar(1));
      if (!(omega(phi) == expected * phi)) return report;
      ++report.monomials_checked;
    }
  report.ok = true;
  return report;
}

// ---------------------------------------------------------------------------
// Adjoints with respect to the layer inner products, and the weight duality
// lambda <-> 1 - lambda: each generator block at weight 1 - lambda is minus
// the adjoint of the opposite block at weight lambda.

inline DenseMatrix<GaussianRational> gram_adjoint(int n, int p, int q,
                                                  const DenseMatrix<GaussianRational>& x) {
  const auto& gp = ktype_gram(n, p);
  const auto& gq = ktype_gram(n, q);
  auto gp_inv = gp.inverse();
  CONFDENS_CHECK(gp_inv.has_value(), "layer inner product is singular");
  return *gp_inv * x.conj_transpose() * gq;
}

inline AffineMat gram_adjoint(int n, int p, int q, const AffineMat& x) {
  return AffineMat(gram_adjoint(n, p, q, x.a), gram_adjoint(n, p, q, x.b));
}

struct DualityReport {
  int n = 0;
  int M = 0;
  long blocks_checked = 0;
  bool ok = false;
  std::string failure;
};

inline DualityReport duality_check(int n, int M) {
  DualityReport report;
  report.n = n;
  report.M = M;
  auto cb = cone_blocks(n, M);

  // Precompute inverse layer inner products.
  std::vector<DenseMatrix<GaussianRational>> gram(static_cast<size_t>(M) + 1,
                                                  DenseMatrix<GaussianRational>()),
      gram_inv = gram;
  for (int m = 0; m <= M; ++m) {
    gram[static_cast<size_t>(m)] = ktype_gram(n, m);
    auto inv = gram[static_cast<size_t>(m)].inverse();
    CONFDENS_CHECK(inv.has_value(), "layer inner product is singular");
    gram_inv[static_cast<size_t>(m)] = std::move(*inv);
  }
  auto adj = [&](int p, int q, const AffineMat& x) {
    auto one = [&](const DenseMatrix<GaussianRational>& v) {
      return gram_inv[static_cast<size_t>(p)] * v.conj_transpose() * gram[static_cast<size_t>(q)];
    };
    return AffineMat(one(x.a), one(x.b));
  };
  auto fail = [&](const GenLabel& g, const char* part, int m) {
    report.failure = g.name() + " " + part + " block at layer " + std::to_string(m);
  };

  for (const auto& gb : cb->gens) {
    for (int m = 0; m <= M; ++m) {
      if (!(gb.diag(m).reflect_weight() == -adj(m, m, gb.diag(m)))) {
        fail(gb.label, "diagonal", m);
        return report;
      }
      ++report.blocks_checked;
    }
    for (int m = 0; m <= M - 1; ++m) {
      if (!(gb.raise_from(m).reflect_weight() == -adj(m + 1, m, gb.lower_from(m + 1)))) {
        fail(gb.label, "raising", m);
        return report;
      }
      if (!(gb.lower_from(m + 1).reflect_weight() == -adj(m, m + 1, gb.raise_from(m)))) {
        fail(gb.label, "lowering", m + 1);
        return report;
      }
      report.blocks_checked += 2;
    }
  }
  report.ok = true;
  return report;
}

}  // namespace confdens
