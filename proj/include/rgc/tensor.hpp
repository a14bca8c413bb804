#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "rgc/super.hpp"

namespace rgc {

// A permutation of {0..k-1} stored as the function table p[i] = sigma(i).
// Permutations act on tensors on the left: slot j of sigma.t receives the
// factor previously in slot sigma^{-1}(j), so sigma.(tau.t) = (sigma tau).t.
using Perm = std::vector<int>;

inline Perm identity_perm(int k) {
  Perm p(k);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

inline bool is_permutation(const Perm& p) {
  std::vector<char> seen(p.size(), 0);
  for (int v : p) {
    if (v < 0 || v >= static_cast<int>(p.size()) || seen[v]) return false;
    seen[v] = 1;
  }
  return true;
}

inline Perm inverse_perm(const Perm& p) {
  Perm inv(p.size());
  for (int i = 0; i < static_cast<int>(p.size()); ++i) inv[p[i]] = i;
  return inv;
}

// compose(a, b) = a after b: (a o b)(i) = a(b(i)).
inline Perm compose(const Perm& a, const Perm& b) {
  Perm c(b.size());
  for (int i = 0; i < static_cast<int>(b.size()); ++i) c[i] = a[b[i]];
  return c;
}

inline int perm_sign(const Perm& p) {
  int s = 1;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) s = -s;
  return s;
}

// z_k: the cyclic generator whose action sends v1 x v2 x ... x vk to
// v2 x ... x vk x v1 (first factor moved last, with its Koszul sign).
inline Perm cyclic_perm(int k) {
  Perm p(k);
  for (int i = 0; i < k; ++i) p[i] = (i + k - 1) % k;
  return p;
}

// Sign accumulated when reordering homogeneous factors by perm: one factor
// transposition of two odd slots contributes -1.
inline int koszul_sign(const Perm& perm, const std::vector<Parity>& parities) {
  if (perm.size() != parities.size())
    throw std::invalid_argument("koszul_sign: perm/parity length mismatch");
  if (!is_permutation(perm)) throw std::invalid_argument("koszul_sign: not a permutation");
  int s = 1;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j] && is_odd(parities[i]) && is_odd(parities[j])) s = -s;
  return s;
}

using IndexTuple = std::vector<int>;

// Homogeneous element of V^{x k}, stored sparsely as tuple -> coefficient.
class GradedTensor {
 public:
  GradedTensor() = default;
  GradedTensor(SuperSpace space, int order, Parity parity)
      : space_(std::move(space)), order_(order), parity_(parity) {}

  const SuperSpace& space() const { return space_; }
  int order() const { return order_; }
  Parity parity() const { return parity_; }
  const std::map<IndexTuple, Rational>& entries() const { return c_; }
  bool is_zero() const { return c_.empty(); }

  Parity tuple_parity(const IndexTuple& t) const {
    Parity p = Parity::Even;
    for (int i : t) p = p + space_.parity(i);
    return p;
  }

  void add(const IndexTuple& t, const Rational& v) {
    if (v.is_zero()) return;
    if (static_cast<int>(t.size()) != order_)
      throw std::invalid_argument("GradedTensor: tuple order mismatch");
    if (tuple_parity(t) != parity_)
      throw std::invalid_argument("GradedTensor: inhomogeneous entry");
    auto it = c_.find(t);
    if (it == c_.end()) {
      c_.emplace(t, v);
    } else {
      it->second += v;
      if (it->second.is_zero()) c_.erase(it);
    }
  }

  GradedTensor& operator+=(const GradedTensor& o) {
    for (const auto& [t, v] : o.c_) add(t, v);
    return *this;
  }

  GradedTensor scaled(const Rational& s) const {
    GradedTensor r(space_, order_, parity_);
    if (s.is_zero()) return r;
    for (const auto& [t, v] : c_) r.c_.emplace(t, v * s);
    return r;
  }

  friend bool operator==(const GradedTensor& a, const GradedTensor& b) {
    return a.order_ == b.order_ && a.parity_ == b.parity_ && a.c_ == b.c_;
  }

 private:
  SuperSpace space_;
  int order_ = 0;
  Parity parity_ = Parity::Even;
  std::map<IndexTuple, Rational> c_;
};

// Left action of perm on a tensor, with Koszul signs per tuple.
inline GradedTensor permute_tensor(const Perm& perm, const GradedTensor& t) {
  if (static_cast<int>(perm.size()) != t.order())
    throw std::invalid_argument("permute_tensor: order mismatch");
  Perm inv = inverse_perm(perm);
  GradedTensor out(t.space(), t.order(), t.parity());
  std::vector<Parity> pars(t.order());
  IndexTuple moved(t.order());
  for (const auto& [tuple, coeff] : t.entries()) {
    for (int i = 0; i < t.order(); ++i) pars[i] = t.space().parity(tuple[i]);
    int s = koszul_sign(perm, pars);
    for (int j = 0; j < t.order(); ++j) moved[j] = tuple[inv[j]];
    out.add(moved, s > 0 ? coeff : -coeff);
  }
  return out;
}

enum class Symmetrizer { Norm, Antisymmetrizer, Cyclic };

// N = 1 + z + ... + z^{k-1};  eps = sum sgn(sigma) sigma;  Cyclic = z^r.
inline GradedTensor apply_symmetrizer(Symmetrizer kind, const GradedTensor& t, int power = 1) {
  int k = t.order();
  switch (kind) {
    case Symmetrizer::Cyclic: {
      Perm z = cyclic_perm(k);
      Perm zr = identity_perm(k);
      for (int i = 0; i < ((power % k) + k) % k; ++i) zr = compose(z, zr);
      return permute_tensor(zr, t);
    }
    case Symmetrizer::Norm: {
      GradedTensor out(t.space(), k, t.parity());
      Perm z = cyclic_perm(k);
      Perm zr = identity_perm(k);
      for (int r = 0; r < k; ++r) {
        out += permute_tensor(zr, t);
        zr = compose(z, zr);
      }
      return out;
    }
    case Symmetrizer::Antisymmetrizer: {
      GradedTensor out(t.space(), k, t.parity());
      Perm p = identity_perm(k);
      do {
        GradedTensor term = permute_tensor(p, t);
        out += (perm_sign(p) > 0) ? term : term.scaled(Rational(-1));
      } while (std::next_permutation(p.begin(), p.end()));
      return out;
    }
  }
  throw std::logic_error("apply_symmetrizer: unreachable");
}

// Slot-level permutation implementing the block action: block slot j of the
// output receives block sigma^{-1}(j), blocks kept internally intact.
// profile[i] is the size of input block i.
inline Perm block_perm(const Perm& sigma, const std::vector<int>& profile) {
  int m = static_cast<int>(profile.size());
  std::vector<int> in_start(m, 0);
  for (int i = 1; i < m; ++i) in_start[i] = in_start[i - 1] + profile[i - 1];
  Perm inv = inverse_perm(sigma);
  std::vector<int> out_start(m, 0);
  for (int j = 1; j < m; ++j) out_start[j] = out_start[j - 1] + profile[inv[j - 1]];
  int total = in_start[m - 1] + profile[m - 1];
  Perm p(total);
  for (int j = 0; j < m; ++j) {
    int b = inv[j];
    for (int t = 0; t < profile[b]; ++t) p[in_start[b] + t] = out_start[j] + t;
  }
  return p;
}

}  // namespace rgc
