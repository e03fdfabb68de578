#pragma once

// Exact arithmetic in the field Q(i): numbers a + b*i with rational a, b.
// Backed by GMP rationals. Values are always kept in canonical form
// (numerators/denominators reduced, denominators positive), so equality is
// plain component comparison and printing is deterministic.

#include <gmpxx.h>

#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "confdens/common.hpp"

namespace confdens {

inline mpq_class make_rational(long num, long den = 1) {
  CONFDENS_CHECK(den != 0, "rational with zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

inline std::string rational_to_string(const mpq_class& q) { return q.get_str(); }

// Exact square root of a non-negative rational, when it exists.
inline std::optional<mpq_class> rational_sqrt(const mpq_class& q) {
  if (sgn(q) < 0) return std::nullopt;
  mpz_class num = q.get_num(), den = q.get_den();
  if (mpz_perfect_square_p(num.get_mpz_t()) == 0) return std::nullopt;
  if (mpz_perfect_square_p(den.get_mpz_t()) == 0) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  mpq_class r(rn, rd);
  r.canonicalize();
  return r;
}

class GaussianRational {
 public:
  GaussianRational() : re_(0), im_(0) {}
  GaussianRational(long v) : re_(v), im_(0) {}  // NOLINT: implicit by design
  GaussianRational(const mpq_class& re) : re_(re), im_(0) {}
  GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussianRational i() { return GaussianRational(mpq_class(0), mpq_class(1)); }
  static GaussianRational from_rational(long num, long den = 1) {
    return GaussianRational(make_rational(num, den));
  }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

  GaussianRational conj() const { return GaussianRational(re_, -im_); }

  // |z|^2 = a^2 + b^2, a non-negative rational.
  mpq_class norm_sq() const { return re_ * re_ + im_ * im_; }

  GaussianRational operator-() const { return GaussianRational(-re_, -im_); }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    CONFDENS_CHECK(!o.is_zero(), "division by zero in Q(i)");
    mpq_class n = o.norm_sq();
    mpq_class r = (re_ * o.re_ + im_ * o.im_) / n;
    mpq_class i = (im_ * o.re_ - re_ * o.im_) / n;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

  GaussianRational inverse() const {
    GaussianRational one(1);
    return one /= *this;
  }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

  // Deterministic total order (real part, then imaginary part). This is a
  // container/sorting order only; Q(i) has no field order.
  static int compare(const GaussianRational& a, const GaussianRational& b) {
    int c = cmp(a.re_, b.re_);
    if (c != 0) return c;
    return cmp(a.im_, b.im_);
  }
  friend bool operator<(const GaussianRational& a, const GaussianRational& b) {
    return compare(a, b) < 0;
  }

  // Canonical text form: "0", "3", "-1/2", "i", "-i", "2/3*i", "1/2-2/3*i".
  std::string to_string() const {
    if (is_zero()) return "0";
    std::string out;
    bool have_re = sgn(re_) != 0;
    if (have_re) out += re_.get_str();
    if (sgn(im_) != 0) {
      mpq_class a = abs(im_);
      std::string mag = (a == 1) ? "i" : a.get_str() + "*i";
      if (have_re) {
        out += (sgn(im_) > 0 ? "+" : "-");
        out += mag;
      } else {
        out += (sgn(im_) > 0 ? "" : "-");
        out += mag;
      }
    }
    return out;
  }

  // Strict parser for the canonical form above (whitespace tolerated, floats
  // and malformed input rejected). Grammar: one or two signed terms, each a
  // rational "p", "p/q", or an imaginary "i", "p*i", "p/q*i".
  static std::optional<GaussianRational> parse(std::string_view text);

 private:
  mpq_class re_, im_;
};

namespace detail {

inline bool parse_digits(std::string_view s, size_t& pos, mpz_class& out) {
  size_t start = pos;
  while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
  if (pos == start) return false;
  out = mpz_class(std::string(s.substr(start, pos - start)), 10);
  return true;
}

// Parses an unsigned rational "p" or "p/q" starting at pos.
inline bool parse_unsigned_rational(std::string_view s, size_t& pos, mpq_class& out) {
  mpz_class num;
  if (!parse_digits(s, pos, num)) return false;
  mpz_class den(1);
  if (pos < s.size() && s[pos] == '/') {
    ++pos;
    if (!parse_digits(s, pos, den)) return false;
    if (sgn(den) == 0) return false;
  }
  out = mpq_class(num, den);
  out.canonicalize();
  return true;
}

}  // namespace detail

inline std::optional<GaussianRational> GaussianRational::parse(std::string_view text) {
  // Whitespace is tolerated only at the ends and around '+'/'-', never inside
  // a number ("1 2" is malformed, not 12).
  std::string s;
  s.reserve(text.size());
  for (size_t k = 0; k < text.size(); ++k) {
    char c = text[k];
    if (c == ' ' || c == '\t') {
      size_t prev = s.size();
      size_t next = k + 1;
      while (next < text.size() && (text[next] == ' ' || text[next] == '\t')) ++next;
      bool at_edge = (prev == 0) || (next >= text.size());
      bool by_sign = (prev > 0 && (s.back() == '+' || s.back() == '-')) ||
                     (next < text.size() && (text[next] == '+' || text[next] == '-'));
      if (!at_edge && !by_sign) return std::nullopt;
      k = next - 1;
      continue;
    }
    s.push_back(c);
  }
  if (s.empty()) return std::nullopt;

  mpq_class re(0), im(0);
  size_t pos = 0;
  int nterms = 0;
  while (pos < s.size()) {
    if (nterms >= 2) return std::nullopt;
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      if (nterms == 0 && s[pos] == '+') return std::nullopt;  // no leading '+'
      sign = (s[pos] == '-') ? -1 : 1;
      ++pos;
      if (pos >= s.size()) return std::nullopt;
    } else if (nterms > 0) {
      return std::nullopt;  // terms after the first need an explicit sign
    }
    if (s[pos] == 'i') {
      ++pos;
      if (pos < s.size() && s[pos] != '+' && s[pos] != '-') return std::nullopt;
      im += sign;
      ++nterms;
      continue;
    }
    mpq_class q;
    if (!detail::parse_unsigned_rational(s, pos, q)) return std::nullopt;
    if (pos < s.size() && s[pos] == '*') {
      ++pos;
      if (pos >= s.size() || s[pos] != 'i') return std::nullopt;
      ++pos;
      im += sign * q;
    } else if (pos < s.size() && s[pos] == 'i') {
      return std::nullopt;  // require explicit '*' between coefficient and i
    } else {
      re += sign * q;
    }
    ++nterms;
    if (pos < s.size() && s[pos] != '+' && s[pos] != '-') return std::nullopt;
  }
  if (nterms == 0) return std::nullopt;
  return GaussianRational(re, im);
}

// Principal square root in Q(i) when one exists: the root with positive real
// part (or zero real part and non-negative imaginary part).
inline std::optional<GaussianRational> gaussian_sqrt(const GaussianRational& z) {
  const mpq_class& s = z.re();
  const mpq_class& t = z.im();
  if (sgn(t) == 0) {
    if (sgn(s) >= 0) {
      auto u = rational_sqrt(s);
      if (!u) return std::nullopt;
      return GaussianRational(*u, mpq_class(0));
    }
    auto v = rational_sqrt(mpq_class(-s));
    if (!v) return std::nullopt;
    return GaussianRational(mpq_class(0), *v);
  }
  // (u + v i)^2 = s + t i  =>  u^2 = (s + sqrt(s^2+t^2))/2, v = t/(2u).
  auto norm_root = rational_sqrt(s * s + t * t);
  if (!norm_root) return std::nullopt;
  mpq_class u_sq = (s + *norm_root) / 2;
  auto u = rational_sqrt(u_sq);
  if (!u || sgn(*u) == 0) return std::nullopt;
  mpq_class v = t / (2 * (*u));
  GaussianRational root(*u, v);
  CONFDENS_CHECK(root * root == z, "gaussian_sqrt postcondition");
  return root;
}

}  // namespace confdens
