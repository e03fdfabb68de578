#pragma once

// Harmonic polynomials on the ambient space R^{n+1} (polynomial variables
// x_0..x_n), their bases, the decomposition of an arbitrary homogeneous
// polynomial into r^{2j}-weighted harmonic layers, exact sphere moments, and
// the induced inner products.
//
// Basis construction (n >= 2): a harmonic polynomial is freely determined by
// its terms of degree <= 1 in the last variable; writing f = sum_k x_n^k f_k
// with f_k in the remaining variables, harmonicity forces
//     f_{k+2} = -lap'(f_k) / ((k+1)(k+2)),
// so each seed monomial with last-variable exponent <= 1 extends uniquely to
// a harmonic polynomial whose coordinates can later be read off at the seed
// monomials. For n = 1 the classical basis {(x_0 + i x_1)^m, (x_0 - i x_1)^m}
// is used instead.

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "confdens/common.hpp"
#include "confdens/gaussian_rational.hpp"
#include "confdens/matrix.hpp"
#include "confdens/multipoly.hpp"

namespace confdens {

using RationalPoly = MultiPoly<GaussianRational>;

inline long binomial_long(unsigned long a, unsigned long b) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), a, b);
  CONFDENS_CHECK(r.fits_slong_p(), "binomial overflow");
  return r.get_si();
}

// Dimension of the degree-m harmonic space in n+1 variables.
inline long harmonic_dim(int n, int m) {
  CONFDENS_CHECK(n >= 1 && m >= 0, "harmonic_dim arguments");
  unsigned long un = static_cast<unsigned long>(n), um = static_cast<unsigned long>(m);
  long full = binomial_long(um + un, un);
  long lower = (m >= 2) ? binomial_long(um + un - 2, un) : 0;
  return full - lower;
}

// All exponent vectors of total degree deg, leading (graded-lex largest)
// first.
inline std::vector<ExponentVec> homogeneous_monomials(int nvars, int deg) {
  std::vector<ExponentVec> out;
  ExponentVec cur(static_cast<size_t>(nvars), 0);
  auto rec = [&](auto&& self, int var, int left) -> void {
    if (var == nvars - 1) {
      cur[static_cast<size_t>(var)] = left;
      out.push_back(cur);
      cur[static_cast<size_t>(var)] = 0;
      return;
    }
    for (int e = left; e >= 0; --e) {
      cur[static_cast<size_t>(var)] = e;
      self(self, var + 1, left - e);
    }
    cur[static_cast<size_t>(var)] = 0;
  };
  rec(rec, 0, deg);
  return out;
}

inline RationalPoly laplacian(const RationalPoly& p) {
  RationalPoly r = RationalPoly::zero(p.nvars());
  for (int v = 0; v < p.nvars(); ++v) r += p.derivative(v).derivative(v);
  return r;
}

// Multiplication by r^2 = sum_k x_k^2.
inline RationalPoly times_r_squared(const RationalPoly& p) {
  RationalPoly r = RationalPoly::zero(p.nvars());
  for (const auto& [e, c] : p.terms())
    for (int v = 0; v < p.nvars(); ++v) {
      ExponentVec e2(e);
      e2[static_cast<size_t>(v)] += 2;
      r.add_term(std::move(e2), c);
    }
  return r;
}

namespace detail {

// Laplacian in all variables except the last.
inline RationalPoly laplacian_head(const RationalPoly& p) {
  RationalPoly r = RationalPoly::zero(p.nvars());
  for (int v = 0; v + 1 < p.nvars(); ++v) r += p.derivative(v).derivative(v);
  return r;
}

// Extends a seed monomial (last-variable exponent <= 1) to the unique
// harmonic polynomial agreeing with it on every last-exponent <= 1 term.
inline RationalPoly harmonic_from_seed(int nvars, const ExponentVec& seed) {
  size_t last = static_cast<size_t>(nvars) - 1;
  CONFDENS_CHECK(seed[last] <= 1, "seed must have last exponent <= 1");
  ExponentVec head(seed);
  head[last] = 0;
  RationalPoly layer = RationalPoly::monomial(head, GaussianRational(1));
  RationalPoly out = RationalPoly::zero(nvars);
  long k = seed[last];
  while (!layer.is_zero()) {
    for (const auto& [e, c] : layer.terms()) {
      ExponentVec lifted(e);
      lifted[last] += static_cast<int>(k);
      out.add_term(std::move(lifted), c);
    }
    RationalPoly next = laplacian_head(layer);
    if (next.is_zero()) break;
    GaussianRational factor(make_rational(-1, (k + 1) * (k + 2)));
    layer = factor * next;
    k += 2;
  }
  return out;
}

inline RationalPoly complex_line_power(int nvars, int m, bool conjugate) {
  // (x_0 + i x_1)^m, or its conjugate.
  RationalPoly z(nvars);
  ExponentVec e0(static_cast<size_t>(nvars), 0);
  e0[0] = 1;
  z.add_term(e0, GaussianRational(1));
  ExponentVec e1(static_cast<size_t>(nvars), 0);
  e1[1] = 1;
  z.add_term(e1, conjugate ? -GaussianRational::i() : GaussianRational::i());
  RationalPoly acc = RationalPoly::constant(nvars, GaussianRational(1));
  for (int k = 0; k < m; ++k) acc = acc * z;
  return acc;
}

}  // namespace detail

struct HarmonicBasis {
  int n = 0;
  int m = 0;
  std::vector<RationalPoly> elements;
  // For n >= 2: the seed monomial of each element (coordinates of a harmonic
  // polynomial are its coefficients at the seeds). Unused for n = 1.
  std::vector<ExponentVec> seeds;
  long dim() const { return static_cast<long>(elements.size()); }
};

namespace detail {

inline std::unique_ptr<HarmonicBasis> build_harmonic_basis(int n, int m) {
  auto basis = std::make_unique<HarmonicBasis>();
  basis->n = n;
  basis->m = m;
  int d = n + 1;
  if (n == 1) {
    if (m == 0) {
      basis->elements.push_back(RationalPoly::constant(d, GaussianRational(1)));
    } else {
      basis->elements.push_back(complex_line_power(d, m, false));
      basis->elements.push_back(complex_line_power(d, m, true));
    }
  } else {
    for (const auto& e : homogeneous_monomials(d, m)) {
      if (e[static_cast<size_t>(d) - 1] > 1) continue;
      basis->seeds.push_back(e);
      basis->elements.push_back(harmonic_from_seed(d, e));
    }
  }
  CONFDENS_CHECK(basis->dim() == harmonic_dim(n, m), "harmonic basis has wrong dimension");
  for (const auto& h : basis->elements)
    CONFDENS_CHECK(laplacian(h).is_zero(), "harmonic basis element fails harmonicity");
  return basis;
}

struct HarmonicCaches {
  std::mutex mu;
  std::map<std::pair<int, int>, std::unique_ptr<HarmonicBasis>> bases;
  std::map<std::pair<int, int>, std::unique_ptr<DenseMatrix<GaussianRational>>> grams;
};

inline HarmonicCaches& harmonic_caches() {
  static HarmonicCaches c;
  return c;
}

}  // namespace detail

inline const HarmonicBasis& harmonic_basis(int n, int m) {
  auto& caches = detail::harmonic_caches();
  std::lock_guard<std::mutex> lock(caches.mu);
  auto key = std::make_pair(n, m);
  auto it = caches.bases.find(key);
  if (it == caches.bases.end())
    it = caches.bases.emplace(key, detail::build_harmonic_basis(n, m)).first;
  return *it->second;
}

// Coordinates of a harmonic polynomial in the cached basis. The caller is
// responsible for p actually lying in the harmonic space; with verify set the
// expansion is recomputed and compared.
inline std::vector<GaussianRational> harmonic_coordinates(int n, int m, const RationalPoly& p,
                                                          bool verify = false) {
  const HarmonicBasis& basis = harmonic_basis(n, m);
  std::vector<GaussianRational> coords;
  coords.reserve(static_cast<size_t>(basis.dim()));
  if (n == 1) {
    if (m == 0) {
      coords.push_back(p.coeff(ExponentVec{0, 0}));
    } else {
      // p = a z^m + b zbar^m: read the x_0^m and x_0^{m-1} x_1 coefficients.
      ExponentVec top(static_cast<size_t>(2), 0);
      top[0] = m;
      ExponentVec next(static_cast<size_t>(2), 0);
      next[0] = m - 1;
      next[1] = 1;
      GaussianRational c0 = p.coeff(top);
      GaussianRational c1 = p.coeff(next);
      GaussianRational mi = GaussianRational(static_cast<long>(m)) * GaussianRational::i();
      GaussianRational a = (c0 + c1 / mi) * GaussianRational(make_rational(1, 2));
      coords.push_back(a);
      coords.push_back(c0 - a);
    }
  } else {
    for (const auto& seed : basis.seeds) coords.push_back(p.coeff(seed));
  }
  if (verify) {
    RationalPoly rebuilt = RationalPoly::zero(p.nvars());
    for (size_t k = 0; k < coords.size(); ++k) rebuilt += coords[k] * basis.elements[k];
    CONFDENS_CHECK(rebuilt == p, "polynomial is not in the harmonic span");
  }
  return coords;
}

// Decomposes a homogeneous polynomial of degree d into harmonic layers:
// result[j] is harmonic of degree d - 2j and p = sum_j r^{2j} result[j].
// Uses the exact triangular relation lap(r^{2j} h) = 2j (2d - 2j + n - 1)
// r^{2j-2} h for h harmonic of degree d - 2j.
inline std::vector<RationalPoly> harmonic_project(int n, const RationalPoly& p) {
  CONFDENS_CHECK(p.nvars() == n + 1, "ambient arity mismatch");
  CONFDENS_CHECK(p.is_homogeneous(), "projection requires a homogeneous input");
  if (p.is_zero()) return {};
  int d = p.total_degree();
  RationalPoly lap = laplacian(p);
  std::vector<RationalPoly> result;
  if (lap.is_zero()) {
    result.push_back(p);
    return result;
  }
  std::vector<RationalPoly> sub = harmonic_project(n, lap);
  result.assign(sub.size() + 1, RationalPoly::zero(p.nvars()));
  for (size_t t = 0; t < sub.size(); ++t) {
    long j = static_cast<long>(t) + 1;
    GaussianRational factor(make_rational(1, 2 * j * (2 * d - 2 * j + n - 1)));
    result[static_cast<size_t>(j)] = factor * sub[t];
  }
  RationalPoly top = p;
  for (size_t j = 1; j < result.size(); ++j) {
    RationalPoly shifted = result[j];
    for (size_t t = 0; t < j; ++t) shifted = times_r_squared(shifted);
    top -= shifted;
  }
  CONFDENS_CHECK(laplacian(top).is_zero(), "projection residue fails harmonicity");
  result[0] = std::move(top);
  return result;
}

// Exact moment of a monomial against the rotation-invariant probability
// measure on the n-sphere: zero unless every exponent is even, else
// prod_i (alpha_i - 1)!! / prod_{t=0}^{k-1} (n + 1 + 2t) with 2k the total
// degree.
inline mpq_class sphere_moment(int n, const ExponentVec& alpha) {
  CONFDENS_CHECK(static_cast<int>(alpha.size()) == n + 1, "ambient arity mismatch");
  long total = 0;
  for (int a : alpha) {
    CONFDENS_CHECK(a >= 0, "negative exponent");
    if (a % 2 != 0) return mpq_class(0);
    total += a;
  }
  mpz_class num(1);
  for (int a : alpha)
    for (long f = a - 1; f >= 2; f -= 2) num *= f;
  mpz_class den(1);
  for (long t = 0; t < total / 2; ++t) den *= (n + 1 + 2 * t);
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

// L^2 sphere pairing <p, q> = integral of p * conj(q), sesquilinear in the
// second argument.
inline GaussianRational sphere_inner(int n, const RationalPoly& p, const RationalPoly& q) {
  GaussianRational acc(0);
  for (const auto& [ea, ca] : p.terms())
    for (const auto& [eb, cb] : q.terms()) {
      bool odd = false;
      ExponentVec sum(ea);
      for (size_t k = 0; k < sum.size(); ++k) {
        sum[k] += eb[k];
        if (sum[k] % 2 != 0) {
          odd = true;
          break;
        }
      }
      if (odd) continue;
      acc += ca * cb.conj() * GaussianRational(sphere_moment(n, sum));
    }
  return acc;
}

namespace detail {

inline int parity_signature(const ExponentVec& e) {
  int sig = 0;
  for (size_t k = 0; k < e.size(); ++k) sig |= (e[k] % 2) << k;
  return sig;
}

inline std::unique_ptr<DenseMatrix<GaussianRational>> build_gram(int n, int m) {
  const HarmonicBasis& basis = harmonic_basis(n, m);
  size_t dim = static_cast<size_t>(basis.dim());
  auto gram = std::make_unique<DenseMatrix<GaussianRational>>(dim, dim);
  // For n >= 2 every term of a basis element shares the parity pattern of its
  // seed, so entries between different parity classes vanish identically.
  std::vector<int> sig(dim, -1);
  if (n >= 2)
    for (size_t k = 0; k < dim; ++k) sig[k] = parity_signature(basis.seeds[k]);
  for (size_t a = 0; a < dim; ++a)
    for (size_t b = a; b < dim; ++b) {
      if (n >= 2 && sig[a] != sig[b]) continue;
      GaussianRational v = sphere_inner(n, basis.elements[a], basis.elements[b]);
      if (v.is_zero()) continue;
      gram->at(a, b) = v;
      gram->at(b, a) = v.conj();
    }
  return gram;
}

}  // namespace detail

inline const DenseMatrix<GaussianRational>& ktype_gram(int n, int m) {
  auto& caches = detail::harmonic_caches();
  auto key = std::make_pair(n, m);
  {
    std::lock_guard<std::mutex> lock(caches.mu);
    auto it = caches.grams.find(key);
    if (it != caches.grams.end()) return *it->second;
  }
  // Build outside the lock: build_gram re-enters the cache via
  // harmonic_basis. Concurrent builders race benignly; emplace keeps the
  // first result.
  auto gram = detail::build_gram(n, m);
  std::lock_guard<std::mutex> lock(caches.mu);
  auto it = caches.grams.emplace(key, std::move(gram)).first;
  return *it->second;
}

// Positive definiteness of a Hermitian matrix via symmetric elimination: the
// matrix is positive definite iff every pivot is a positive rational.
struct DefinitenessReport {
  bool hermitian = false;
  bool positive_definite = false;
  std::vector<mpq_class> pivots;
};

inline DefinitenessReport hermitian_definiteness(const DenseMatrix<GaussianRational>& g) {
  DefinitenessReport report;
  if (g.rows() != g.cols()) return report;
  if (g.conj_transpose() != g) return report;
  report.hermitian = true;
  DenseMatrix<GaussianRational> a = g;
  size_t dim = g.rows();
  report.positive_definite = true;
  for (size_t k = 0; k < dim; ++k) {
    const GaussianRational& piv = a.at(k, k);
    CONFDENS_CHECK(piv.is_real(), "hermitian diagonal must be real");
    report.pivots.push_back(piv.re());
    if (sgn(piv.re()) <= 0) {
      report.positive_definite = false;
      return report;
    }
    GaussianRational inv = piv.inverse();
    for (size_t i = k + 1; i < dim; ++i) {
      if (a.at(i, k).is_zero()) continue;
      GaussianRational f = a.at(i, k) * inv;
      for (size_t j = k + 1; j < dim; ++j) a.at(i, j) -= f * a.at(k, j);
    }
  }
  return report;
}

// The distinguished rotation in the (x_0, x_1) plane, normalized so that
// (x_0 + i x_1)^m is an eigenvector with eigenvalue +m.
inline RationalPoly cartan_apply(const RationalPoly& p) {
  CONFDENS_CHECK(p.nvars() >= 2, "cartan_apply needs at least two variables");
  RationalPoly x0 = RationalPoly::variable(p.nvars(), 0);
  RationalPoly x1 = RationalPoly::variable(p.nvars(), 1);
  return GaussianRational::i() * (x1 * p.derivative(0) - x0 * p.derivative(1));
}

struct KTypeLabelReport {
  int n = 0;
  int m = 0;
  long dim = 0;
  std::map<long, long> weight_multiplicity;
  bool integer_spectrum_complete = false;  // multiplicities over [-m, m] fill the space
  bool extreme_weights_achieved = false;   // +m and -m both occur
  bool top_vector_confirmed = false;       // (x_0 + i x_1)^m has eigenvalue +m
  bool ok() const {
    return integer_spectrum_complete && extreme_weights_achieved && top_vector_confirmed;
  }
};

inline KTypeLabelReport ktype_label_check(int n, int m) {
  KTypeLabelReport report;
  report.n = n;
  report.m = m;
  const HarmonicBasis& basis = harmonic_basis(n, m);
  size_t dim = static_cast<size_t>(basis.dim());
  report.dim = basis.dim();

  DenseMatrix<GaussianRational> c(dim, dim);
  for (size_t j = 0; j < dim; ++j) {
    auto col = harmonic_coordinates(n, m, cartan_apply(basis.elements[j]), /*verify=*/true);
    for (size_t i = 0; i < dim; ++i) c.at(i, j) = col[i];
  }

  long total = 0;
  for (long k = -m; k <= m; ++k) {
    DenseMatrix<GaussianRational> shifted = c;
    for (size_t t = 0; t < dim; ++t) shifted.at(t, t) -= GaussianRational(k);
    long nullity = static_cast<long>(dim) - static_cast<long>(shifted.rank());
    if (nullity > 0) report.weight_multiplicity[k] = nullity;
    total += nullity;
  }
  report.integer_spectrum_complete = (total == report.dim);
  report.extreme_weights_achieved = (m == 0) ? report.weight_multiplicity.count(0) > 0
                                             : (report.weight_multiplicity.count(m) > 0 &&
                                                report.weight_multiplicity.count(-m) > 0);

  RationalPoly top = detail::complex_line_power(n + 1, m, false);
  report.top_vector_confirmed =
      cartan_apply(top) == GaussianRational(static_cast<long>(m)) * top;
  return report;
}

// Dimension cross-check: for each degree up to max_m, the basis size must
// match both the closed-form dimension and an independent count, the nullity
// of the Laplacian as a linear map on homogeneous polynomials.
struct DimensionReport {
  int n = 0;
  int max_m = 0;
  bool ok = false;
  std::string failure;
};

inline DimensionReport harmonic_dimension_check(int n, int max_m) {
  CONFDENS_CHECK(n >= 1 && max_m >= 0, "dimension check arguments");
  DimensionReport report;
  report.n = n;
  report.max_m = max_m;
  for (int m = 0; m <= max_m; ++m) {
    long expected = harmonic_dim(n, m);
    long basis_dim = harmonic_basis(n, m).dim();

    auto cols = homogeneous_monomials(n + 1, m);
    long nullity;
    if (m < 2) {
      nullity = static_cast<long>(cols.size());  // the Laplacian is the zero map
    } else {
      auto rows = homogeneous_monomials(n + 1, m - 2);
      std::map<ExponentVec, size_t, GradedLexLess> row_index;
      for (size_t i = 0; i < rows.size(); ++i) row_index[rows[i]] = i;
      DenseMatrix<GaussianRational> lap(rows.size(), cols.size());
      for (size_t j = 0; j < cols.size(); ++j) {
        RationalPoly image = laplacian(RationalPoly::monomial(cols[j], GaussianRational(1)));
        for (const auto& [e, c] : image.terms()) lap.at(row_index.at(e), j) = c;
      }
      nullity = static_cast<long>(cols.size()) - static_cast<long>(lap.rank());
    }

    if (basis_dim != expected || nullity != expected) {
      report.failure = "degree " + std::to_string(m) + ": closed form " +
                       std::to_string(expected) + ", basis " + std::to_string(basis_dim) +
                       ", Laplacian nullity " + std::to_string(nullity);
      return report;
    }
  }
  report.ok = true;
  return report;
}

}  // namespace confdens
