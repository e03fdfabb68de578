#pragma once

// The scalar field for formal spectral-parameter computations: rational
// functions in one variable ("lambda") with Gaussian-rational coefficients.
// Values are canonical (denominator monic, fraction reduced), so equality of
// rational functions is component equality and printing is deterministic.
//
// Also provides exact root extraction for the numerators that arise as
// vanishing conditions: complete in closed form for degree <= 2, and by
// rational-root search plus deflation above that (with an explicit
// incompleteness flag when a residual factor of degree >= 3 resists the
// search).

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "confdens/common.hpp"
#include "confdens/gaussian_rational.hpp"

namespace confdens {

class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(const GaussianRational& c0) {
    if (!c0.is_zero()) c_.push_back(c0);
  }
  static UniPoly variable() {
    UniPoly p;
    p.c_ = {GaussianRational(0), GaussianRational(1)};
    return p;
  }
  static UniPoly from_coeffs(std::vector<GaussianRational> coeffs) {
    UniPoly p;
    p.c_ = std::move(coeffs);
    p.trim();
    return p;
  }

  // Degree of the zero polynomial is -1.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }

  const GaussianRational& coeff(int k) const {
    static const GaussianRational kZero(0);
    if (k < 0 || k >= static_cast<int>(c_.size())) return kZero;
    return c_[static_cast<size_t>(k)];
  }
  const GaussianRational& leading() const {
    CONFDENS_CHECK(!is_zero(), "leading coefficient of zero polynomial");
    return c_.back();
  }

  UniPoly operator-() const {
    UniPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<GaussianRational> c(std::max(a.c_.size(), b.c_.size()));
    for (size_t k = 0; k < c.size(); ++k) c[k] = a.coeff(static_cast<int>(k)) + b.coeff(static_cast<int>(k));
    return from_coeffs(std::move(c));
  }
  friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly();
    std::vector<GaussianRational> c(a.c_.size() + b.c_.size() - 1, GaussianRational(0));
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return from_coeffs(std::move(c));
  }
  friend UniPoly operator*(const GaussianRational& s, const UniPoly& p) {
    UniPoly r;
    if (s.is_zero()) return r;
    r.c_ = p.c_;
    for (auto& c : r.c_) c *= s;
    return r;
  }
  friend bool operator==(const UniPoly& a, const UniPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

  // Euclidean division by a nonzero divisor: returns (quotient, remainder).
  std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const {
    CONFDENS_CHECK(!d.is_zero(), "polynomial division by zero");
    UniPoly r = *this;
    std::vector<GaussianRational> q;
    int dd = d.degree();
    if (r.degree() >= dd) q.assign(static_cast<size_t>(r.degree() - dd) + 1, GaussianRational(0));
    GaussianRational lead_inv = d.leading().inverse();
    while (!r.is_zero() && r.degree() >= dd) {
      int shift = r.degree() - dd;
      GaussianRational f = r.leading() * lead_inv;
      q[static_cast<size_t>(shift)] = f;
      std::vector<GaussianRational> sub(static_cast<size_t>(shift + dd) + 1, GaussianRational(0));
      for (int k = 0; k <= dd; ++k) sub[static_cast<size_t>(k + shift)] = f * d.coeff(k);
      r = r - from_coeffs(std::move(sub));
    }
    return {from_coeffs(std::move(q)), r};
  }

  UniPoly monic() const {
    if (is_zero()) return *this;
    return leading().inverse() * (*this);
  }

  // Monic gcd; gcd(0, 0) = 0.
  static UniPoly gcd(UniPoly a, UniPoly b) {
    while (!b.is_zero()) {
      UniPoly r = a.divmod(b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  UniPoly derivative() const {
    if (c_.size() <= 1) return UniPoly();
    std::vector<GaussianRational> c(c_.size() - 1);
    for (size_t k = 1; k < c_.size(); ++k) c[k - 1] = GaussianRational(static_cast<long>(k)) * c_[k];
    return from_coeffs(std::move(c));
  }

  GaussianRational eval(const GaussianRational& x) const {
    GaussianRational acc(0);
    for (size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
    return acc;
  }

  // Coefficient-wise complex conjugation (the variable is treated as real).
  UniPoly conj() const {
    UniPoly r = *this;
    for (auto& c : r.c_) c = c.conj();
    return r;
  }

  // p(a + b*x), exact composition with an affine argument.
  UniPoly compose_affine(const GaussianRational& a, const GaussianRational& b) const {
    UniPoly arg = from_coeffs({a, b});
    UniPoly acc;
    for (size_t k = c_.size(); k-- > 0;) acc = acc * arg + UniPoly(c_[k]);
    return acc;
  }

  std::string to_string(const std::string& var = "lambda") const {
    if (is_zero()) return "0";
    std::string out;
    for (int k = degree(); k >= 0; --k) {
      const GaussianRational& c = coeff(k);
      if (c.is_zero()) continue;
      std::string cs = c.to_string();
      bool negative_simple = false;
      std::string body;
      if (k == 0) {
        body = (cs.find_first_of("+-", 1) != std::string::npos) ? "(" + cs + ")" : cs;
        if (!body.empty() && body[0] == '-' && body.find_first_of("+-", 1) == std::string::npos) {
          negative_simple = true;
          body = body.substr(1);
        }
      } else {
        std::string power = (k == 1) ? var : var + "^" + std::to_string(k);
        if (c.is_one()) {
          body = power;
        } else if (c == GaussianRational(-1)) {
          negative_simple = true;
          body = power;
        } else if (cs.find_first_of("+-", 1) != std::string::npos) {
          body = "(" + cs + ")*" + power;
        } else if (!cs.empty() && cs[0] == '-') {
          negative_simple = true;
          body = cs.substr(1) + "*" + power;
        } else {
          body = cs + "*" + power;
        }
      }
      if (out.empty()) {
        out = negative_simple ? "-" + body : body;
      } else {
        out += negative_simple ? " - " + body : " + " + body;
      }
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<GaussianRational> c_;  // c_[k] multiplies lambda^k
};

// A rational function num/den in the formal variable, canonicalized so that
// den is monic and gcd(num, den) = 1; zero is 0/1.
class LambdaScalar {
 public:
  LambdaScalar() : num_(), den_(UniPoly(GaussianRational(1))) {}
  LambdaScalar(long v) : LambdaScalar(GaussianRational(v)) {}  // NOLINT
  LambdaScalar(const GaussianRational& v)                      // NOLINT
      : num_(UniPoly(v)), den_(UniPoly(GaussianRational(1))) {}
  explicit LambdaScalar(const UniPoly& p) : num_(p), den_(UniPoly(GaussianRational(1))) {}
  LambdaScalar(UniPoly num, UniPoly den) : num_(std::move(num)), den_(std::move(den)) {
    CONFDENS_CHECK(!den_.is_zero(), "rational function with zero denominator");
    canonicalize();
  }

  static LambdaScalar lambda() { return LambdaScalar(UniPoly::variable()); }

  const UniPoly& num() const { return num_; }
  const UniPoly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }
  bool is_constant() const { return num_.is_constant() && den_.degree() == 0; }
  GaussianRational constant_value() const {
    CONFDENS_CHECK(is_constant(), "constant_value of a non-constant scalar");
    return num_.coeff(0);
  }

  LambdaScalar operator-() const {
    LambdaScalar r = *this;
    r.num_ = -r.num_;
    return r;
  }
  friend LambdaScalar operator+(const LambdaScalar& a, const LambdaScalar& b) {
    return LambdaScalar(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend LambdaScalar operator-(const LambdaScalar& a, const LambdaScalar& b) {
    return LambdaScalar(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend LambdaScalar operator*(const LambdaScalar& a, const LambdaScalar& b) {
    return LambdaScalar(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend LambdaScalar operator/(const LambdaScalar& a, const LambdaScalar& b) {
    CONFDENS_CHECK(!b.is_zero(), "division by zero scalar");
    return LambdaScalar(a.num_ * b.den_, a.den_ * b.num_);
  }
  LambdaScalar& operator+=(const LambdaScalar& o) { return *this = *this + o; }
  LambdaScalar& operator-=(const LambdaScalar& o) { return *this = *this - o; }
  LambdaScalar& operator*=(const LambdaScalar& o) { return *this = *this * o; }
  LambdaScalar& operator/=(const LambdaScalar& o) { return *this = *this / o; }

  friend bool operator==(const LambdaScalar& a, const LambdaScalar& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const LambdaScalar& a, const LambdaScalar& b) { return !(a == b); }

  // Evaluation at a concrete parameter value; throws on a pole.
  GaussianRational eval(const GaussianRational& x) const {
    GaussianRational d = den_.eval(x);
    CONFDENS_CHECK(!d.is_zero(), "evaluation at a pole");
    return num_.eval(x) / d;
  }

  // Substitutes lambda -> a + b*lambda.
  LambdaScalar substitute_affine(const GaussianRational& a, const GaussianRational& b) const {
    return LambdaScalar(num_.compose_affine(a, b), den_.compose_affine(a, b));
  }

  // Coefficient-wise conjugation; the formal variable is treated as real.
  LambdaScalar conj() const {
    LambdaScalar r;
    r.num_ = num_.conj();
    r.den_ = den_.conj();
    return r;
  }

  std::string to_string() const {
    if (is_polynomial()) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
  }

 private:
  void canonicalize() {
    if (num_.is_zero()) {
      den_ = UniPoly(GaussianRational(1));
      return;
    }
    UniPoly g = UniPoly::gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = num_.divmod(g).first;
      den_ = den_.divmod(g).first;
    }
    GaussianRational lead_inv = den_.leading().inverse();
    num_ = lead_inv * num_;
    den_ = lead_inv * den_;
  }
  UniPoly num_, den_;
};

// ---------------------------------------------------------------------------
// Root extraction

struct RootResult {
  bool identically_zero = false;
  // True when the returned set is certified to be every root in Q(i); false
  // when a residual factor of degree >= 3 resisted the rational-root search.
  bool complete = true;
  std::vector<GaussianRational> roots;  // sorted, distinct
};

namespace detail {

inline std::vector<GaussianRational> closed_form_roots(const UniPoly& p) {
  std::vector<GaussianRational> roots;
  int d = p.degree();
  CONFDENS_CHECK(d <= 2, "closed form limited to degree <= 2");
  if (d == 1) {
    roots.push_back(-p.coeff(0) / p.coeff(1));
  } else if (d == 2) {
    GaussianRational a = p.coeff(2), b = p.coeff(1), c = p.coeff(0);
    GaussianRational disc = b * b - GaussianRational(4) * a * c;
    auto sq = gaussian_sqrt(disc);
    if (sq) {
      GaussianRational two_a = GaussianRational(2) * a;
      roots.push_back((-b + *sq) / two_a);
      roots.push_back((-b - *sq) / two_a);
    }
    // No square root in Q(i) means no roots in Q(i): the set is complete.
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

// Divisors of |n| by trial division. Returns nullopt if |n| is too large to
// enumerate within the iteration cap.
inline std::optional<std::vector<mpz_class>> divisors_of(const mpz_class& n_in) {
  mpz_class n = abs(n_in);
  CONFDENS_CHECK(sgn(n) != 0, "divisors of zero");
  const unsigned long kMaxTrials = 3000000;
  std::vector<mpz_class> divs;
  mpz_class d(1);
  unsigned long trials = 0;
  while (d * d <= n) {
    if (++trials > kMaxTrials) return std::nullopt;
    if (n % d == 0) {
      divs.push_back(d);
      mpz_class q = n / d;
      if (q != d) divs.push_back(q);
    }
    ++d;
  }
  return divs;
}

// Deflates p by (x - r) as long as r remains a root; appends one copy of r to
// roots (root sets carry no multiplicity).
inline void deflate_root(UniPoly& p, const GaussianRational& r, std::vector<GaussianRational>& roots) {
  UniPoly factor = UniPoly::from_coeffs({-r, GaussianRational(1)});
  bool was_root = false;
  while (!p.is_zero() && p.degree() >= 1) {
    auto [q, rem] = p.divmod(factor);
    if (!rem.is_zero()) break;
    was_root = true;
    p = q;
  }
  if (was_root) roots.push_back(r);
}

}  // namespace detail

// Roots (in Q(i)) of the numerator of f. Complete in closed form through
// degree 2; for higher degree, finds roots by rational-root search on the
// gcd of the real/imaginary coefficient parts plus deflation, finishing with
// the closed form once the residual drops to degree <= 2. If a residual of
// degree >= 3 remains, the result is flagged incomplete.
inline RootResult roots_of(const LambdaScalar& f) {
  RootResult res;
  if (f.is_zero()) {
    res.identically_zero = true;
    return res;
  }
  UniPoly p = f.num();
  if (p.degree() <= 2) {
    res.roots = detail::closed_form_roots(p);
    return res;
  }

  // Strip powers of the variable (root 0).
  if (p.coeff(0).is_zero()) detail::deflate_root(p, GaussianRational(0), res.roots);

  if (p.degree() >= 3) {
    // Real rational roots are common roots of the real and imaginary parts.
    std::vector<GaussianRational> re_c, im_c;
    for (int k = 0; k <= p.degree(); ++k) {
      re_c.push_back(GaussianRational(p.coeff(k).re()));
      im_c.push_back(GaussianRational(p.coeff(k).im()));
    }
    UniPoly g = UniPoly::gcd(UniPoly::from_coeffs(re_c), UniPoly::from_coeffs(im_c));
    if (g.degree() >= 1) {
      // Scale to integer coefficients.
      mpz_class den_lcm(1);
      for (int k = 0; k <= g.degree(); ++k) {
        mpz_class d = g.coeff(k).re().get_den();
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), d.get_mpz_t());
      }
      std::vector<mpz_class> ic(static_cast<size_t>(g.degree()) + 1);
      for (int k = 0; k <= g.degree(); ++k) {
        mpq_class scaled = g.coeff(k).re() * mpq_class(den_lcm);
        CONFDENS_CHECK(scaled.get_den() == 1, "integer scaling failed");
        ic[static_cast<size_t>(k)] = scaled.get_num();
      }
      CONFDENS_CHECK(sgn(ic.front()) != 0, "unexpected zero constant term");
      auto ps = detail::divisors_of(ic.front());
      auto qs = detail::divisors_of(ic.back());
      if (!ps || !qs) {
        res.complete = false;
      } else {
        std::vector<GaussianRational> candidates;
        for (const mpz_class& pp : *ps)
          for (const mpz_class& qq : *qs) {
            mpq_class c(pp, qq);
            c.canonicalize();
            candidates.emplace_back(c, mpq_class(0));
            candidates.emplace_back(mpq_class(-c), mpq_class(0));
          }
        std::sort(candidates.begin(), candidates.end());
        candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
        for (const auto& cand : candidates) {
          if (p.degree() < 1) break;
          if (p.eval(cand).is_zero()) detail::deflate_root(p, cand, res.roots);
        }
      }
    }
  }

  if (p.degree() <= 2) {
    auto tail = detail::closed_form_roots(p);
    res.roots.insert(res.roots.end(), tail.begin(), tail.end());
  } else {
    res.complete = false;  // unfactored residual of degree >= 3
  }
  std::sort(res.roots.begin(), res.roots.end());
  res.roots.erase(std::unique(res.roots.begin(), res.roots.end()), res.roots.end());
  return res;
}

}  // namespace confdens
