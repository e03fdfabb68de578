#pragma once

// Polynomial vector fields and the weighted (density) action. A field is a
// tuple of polynomial components; the bracket is the commutator of the
// associated derivations, and the weighted action adds a divergence term
// multiplied by the weight parameter.

#include <string>
#include <utility>
#include <vector>

#include "confdens/common.hpp"
#include "confdens/multipoly.hpp"

namespace confdens {

template <class K>
class VectorField {
 public:
  explicit VectorField(std::vector<MultiPoly<K>> components) : comp_(std::move(components)) {
    CONFDENS_CHECK(!comp_.empty(), "vector field needs at least one component");
    for (const auto& c : comp_)
      CONFDENS_CHECK(c.nvars() == nvars(), "component arity mismatch");
    CONFDENS_CHECK(static_cast<size_t>(nvars()) == comp_.size(),
                   "component count must equal the number of variables");
  }

  static VectorField zero(int nvars) {
    return VectorField(std::vector<MultiPoly<K>>(static_cast<size_t>(nvars), MultiPoly<K>::zero(nvars)));
  }

  int nvars() const { return comp_.empty() ? 0 : comp_.front().nvars(); }
  const MultiPoly<K>& component(int k) const { return comp_[static_cast<size_t>(k)]; }

  bool is_zero() const {
    for (const auto& c : comp_)
      if (!c.is_zero()) return false;
    return true;
  }

  // Directional derivative: sum_k comp_k * d f / d x_k.
  MultiPoly<K> apply(const MultiPoly<K>& f) const {
    CONFDENS_CHECK(f.nvars() == nvars(), "arity mismatch");
    MultiPoly<K> r = MultiPoly<K>::zero(nvars());
    for (int k = 0; k < nvars(); ++k) r += comp_[static_cast<size_t>(k)] * f.derivative(k);
    return r;
  }

  MultiPoly<K> divergence() const {
    MultiPoly<K> r = MultiPoly<K>::zero(nvars());
    for (int k = 0; k < nvars(); ++k) r += comp_[static_cast<size_t>(k)].derivative(k);
    return r;
  }

  // Commutator of derivations: [X, Y]_k = X(Y_k) - Y(X_k).
  static VectorField bracket(const VectorField& x, const VectorField& y) {
    CONFDENS_CHECK(x.nvars() == y.nvars(), "arity mismatch");
    std::vector<MultiPoly<K>> comp;
    comp.reserve(x.comp_.size());
    for (int k = 0; k < x.nvars(); ++k)
      comp.push_back(x.apply(y.component(k)) - y.apply(x.component(k)));
    return VectorField(std::move(comp));
  }

  VectorField operator-() const {
    std::vector<MultiPoly<K>> comp;
    comp.reserve(comp_.size());
    for (const auto& c : comp_) comp.push_back(-c);
    return VectorField(std::move(comp));
  }
  friend VectorField operator+(const VectorField& a, const VectorField& b) {
    CONFDENS_CHECK(a.nvars() == b.nvars(), "arity mismatch");
    std::vector<MultiPoly<K>> comp;
    comp.reserve(a.comp_.size());
    for (size_t k = 0; k < a.comp_.size(); ++k) comp.push_back(a.comp_[k] + b.comp_[k]);
    return VectorField(std::move(comp));
  }
  friend VectorField operator-(const VectorField& a, const VectorField& b) { return a + (-b); }
  friend VectorField operator*(const K& s, const VectorField& f) {
    std::vector<MultiPoly<K>> comp;
    comp.reserve(f.comp_.size());
    for (const auto& c : f.comp_) comp.push_back(s * c);
    return VectorField(std::move(comp));
  }
  friend bool operator==(const VectorField& a, const VectorField& b) { return a.comp_ == b.comp_; }
  friend bool operator!=(const VectorField& a, const VectorField& b) { return !(a == b); }

  std::string to_string(const std::string& prefix = "s", int start_index = 1) const {
    std::string out = "(";
    for (size_t k = 0; k < comp_.size(); ++k) {
      if (k) out += ", ";
      out += comp_[k].to_string(prefix, start_index);
    }
    return out + ")";
  }

 private:
  std::vector<MultiPoly<K>> comp_;
};

// Weighted action on densities: X(f) + weight * div(X) * f. At weight zero
// this is the plain directional derivative.
template <class K>
MultiPoly<K> lie_derivative(const VectorField<K>& x, const MultiPoly<K>& f, const K& weight) {
  MultiPoly<K> r = x.apply(f);
  if (!weight.is_zero()) r += weight * (x.divergence() * f);
  return r;
}

}  // namespace confdens
