#pragma once

// Multivariate polynomials over an exact field, with terms kept in graded
// lexicographic order (total degree first; among equal degrees the earlier
// variable dominates). The term map stores only nonzero coefficients, so
// equality and printing are canonical.

#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "confdens/common.hpp"

namespace confdens {

using ExponentVec = std::vector<int>;

inline int exponent_degree(const ExponentVec& e) {
  return std::accumulate(e.begin(), e.end(), 0);
}

struct GradedLexLess {
  bool operator()(const ExponentVec& a, const ExponentVec& b) const {
    CONFDENS_CHECK(a.size() == b.size(), "exponent vectors of different arity");
    int da = exponent_degree(a), db = exponent_degree(b);
    if (da != db) return da < db;
    for (size_t k = 0; k < a.size(); ++k)
      if (a[k] != b[k]) return a[k] < b[k];
    return false;
  }
};

template <class K>
class MultiPoly {
 public:
  using TermMap = std::map<ExponentVec, K, GradedLexLess>;

  explicit MultiPoly(int nvars) : nvars_(nvars) { CONFDENS_CHECK(nvars >= 1, "nvars >= 1"); }

  static MultiPoly zero(int nvars) { return MultiPoly(nvars); }
  static MultiPoly constant(int nvars, const K& c) {
    MultiPoly p(nvars);
    p.add_term(ExponentVec(static_cast<size_t>(nvars), 0), c);
    return p;
  }
  static MultiPoly monomial(ExponentVec exps, const K& c) {
    MultiPoly p(static_cast<int>(exps.size()));
    for (int e : exps) CONFDENS_CHECK(e >= 0, "negative exponent");
    p.add_term(std::move(exps), c);
    return p;
  }
  static MultiPoly variable(int nvars, int idx) {
    CONFDENS_CHECK(idx >= 0 && idx < nvars, "variable index out of range");
    ExponentVec e(static_cast<size_t>(nvars), 0);
    e[static_cast<size_t>(idx)] = 1;
    return monomial(std::move(e), K(1));
  }

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }

  // Degree of the zero polynomial is -1.
  int total_degree() const {
    return terms_.empty() ? -1 : exponent_degree(terms_.rbegin()->first);
  }
  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    int d = exponent_degree(terms_.begin()->first);
    return d == total_degree();
  }

  K coeff(const ExponentVec& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? K(0) : it->second;
  }

  // Largest term in graded lexicographic order.
  std::pair<ExponentVec, K> leading_term() const {
    CONFDENS_CHECK(!terms_.empty(), "leading term of zero polynomial");
    return *terms_.rbegin();
  }

  void add_term(ExponentVec e, const K& c) {
    CONFDENS_CHECK(static_cast<int>(e.size()) == nvars_, "arity mismatch");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(std::move(e), c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  MultiPoly operator-() const {
    MultiPoly r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
  }
  MultiPoly& operator+=(const MultiPoly& o) {
    CONFDENS_CHECK(nvars_ == o.nvars_, "arity mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) { return *this += -o; }
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    CONFDENS_CHECK(a.nvars_ == b.nvars_, "arity mismatch");
    MultiPoly r(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) {
        ExponentVec e(ea);
        for (size_t k = 0; k < e.size(); ++k) e[k] += eb[k];
        r.add_term(std::move(e), ca * cb);
      }
    return r;
  }
  friend MultiPoly operator*(const K& s, const MultiPoly& p) {
    MultiPoly r(p.nvars_);
    if (s.is_zero()) return r;
    for (const auto& [e, c] : p.terms_) r.add_term(e, s * c);
    return r;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }
  friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

  MultiPoly derivative(int var) const {
    CONFDENS_CHECK(var >= 0 && var < nvars_, "variable index out of range");
    MultiPoly r(nvars_);
    for (const auto& [e, c] : terms_) {
      int k = e[static_cast<size_t>(var)];
      if (k == 0) continue;
      ExponentVec de(e);
      --de[static_cast<size_t>(var)];
      r.add_term(std::move(de), K(static_cast<long>(k)) * c);
    }
    return r;
  }

  MultiPoly conj() const {
    MultiPoly r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, c.conj());
    return r;
  }

  // Prints terms leading-first, e.g. "2*x0^2*x1 - x2 + 1/2".
  std::string to_string(const std::vector<std::string>& names) const {
    CONFDENS_CHECK(static_cast<int>(names.size()) == nvars_, "name list arity mismatch");
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      std::string mono;
      for (size_t k = 0; k < e.size(); ++k) {
        if (e[k] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += names[k];
        if (e[k] > 1) mono += "^" + std::to_string(e[k]);
      }
      std::string cs = c.to_string();
      bool negative_simple = false;
      std::string body;
      if (mono.empty()) {
        body = (cs.find_first_of("+-", 1) != std::string::npos) ? "(" + cs + ")" : cs;
        if (!body.empty() && body[0] == '-' && body.find_first_of("+-", 1) == std::string::npos) {
          negative_simple = true;
          body = body.substr(1);
        }
      } else if (cs == "1") {
        body = mono;
      } else if (cs == "-1") {
        negative_simple = true;
        body = mono;
      } else if (cs.find_first_of("+-", 1) != std::string::npos) {
        body = "(" + cs + ")*" + mono;
      } else if (!cs.empty() && cs[0] == '-') {
        negative_simple = true;
        body = cs.substr(1) + "*" + mono;
      } else {
        body = cs + "*" + mono;
      }
      if (out.empty())
        out = negative_simple ? "-" + body : body;
      else
        out += negative_simple ? " - " + body : " + " + body;
    }
    return out;
  }

  std::string to_string(const std::string& prefix = "x", int start_index = 0) const {
    std::vector<std::string> names;
    names.reserve(static_cast<size_t>(nvars_));
    for (int k = 0; k < nvars_; ++k) names.push_back(prefix + std::to_string(start_index + k));
    return to_string(names);
  }

 private:
  int nvars_;
  TermMap terms_;
};

// Applies a coefficient transform, e.g. embedding rational-coefficient
// polynomials into formal-parameter ones.
template <class K2, class K1, class Fn>
MultiPoly<K2> map_coefficients(const MultiPoly<K1>& p, Fn&& fn) {
  MultiPoly<K2> r(p.nvars());
  for (const auto& [e, c] : p.terms()) r.add_term(e, fn(c));
  return r;
}

}  // namespace confdens
