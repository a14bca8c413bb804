#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rgc/linalg.hpp"
#include "rgc/super.hpp"

namespace rgc {

struct DarbouxResult {
  Matrix basis_change;   // columns are the new basis vectors in old coordinates
  SuperSpace space;      // symplectically tagged; carries the residual odd diagonal
  bool canonical;        // true when every odd diagonal entry was normalised to 1
};

namespace detail {

// Strips square factors found by bounded trial division; the pairing stays
// exact either way, this only shortens the reported residue.
inline void reduce_square_factors(mpz_class& n, mpz_class& scale) {
  for (mpz_class p = 2; p * p * p * p <= n || p <= 1000; ++p) {
    if (p * p > n) break;
    while (n % (p * p) == 0) {
      n /= p * p;
      scale *= p;
    }
  }
}

inline Rational normalize_square_class(const Rational& c, Rational* rescale) {
  Rational root;
  if (c.is_square(&root)) { *rescale = root; return Rational(1); }
  Rational neg = -c;
  if (neg.is_square(&root)) { *rescale = root; return Rational(-1); }
  // c = sign * num/den ~ sign * num*den modulo squares.
  mpz_class num = abs(c.raw().get_num()) * c.raw().get_den();
  mpz_class scale = c.raw().get_den();
  reduce_square_factors(num, scale);
  Rational residue((c.sign() < 0 ? mpq_class(-num) : mpq_class(num)));
  // c / rescale^2 = residue  =>  rescale^2 = c / residue, a square by construction.
  Rational ratio = c / residue;
  Rational r;
  if (!ratio.is_square(&r)) throw std::logic_error("square reduction failed");
  *rescale = r;
  return residue;
}

}  // namespace detail

// Change of basis carrying an even, graded-skew, nondegenerate pairing to the
// hyperbolic-plus-odd-diagonal normal form. Over the rationals the odd
// diagonal is only normalised up to square classes; the residue is reported
// in the returned space's tag.
inline DarbouxResult darboux_basis(const InnerProduct& g) {
  if (!g.is_even()) throw std::invalid_argument("darboux_basis: pairing not even");
  if (!g.is_graded_skew()) throw std::invalid_argument("darboux_basis: pairing not graded-skew");
  if (!g.is_nondegenerate()) throw std::invalid_argument("darboux_basis: degenerate pairing");

  const SuperSpace& s = g.space();
  int d = s.dim();
  std::vector<int> evens, odds;
  for (int i = 0; i < d; ++i) (is_odd(s.parity(i)) ? odds : evens).push_back(i);

  auto pair_vec = [&](const std::vector<Rational>& u, const std::vector<Rational>& v) {
    Rational acc(0);
    for (int i = 0; i < d; ++i) {
      if (u[i].is_zero()) continue;
      for (int j = 0; j < d; ++j) {
        if (v[j].is_zero()) continue;
        acc += u[i] * g.at(i, j) * v[j];
      }
    }
    return acc;
  };
  auto unit_vec = [&](int i) {
    std::vector<Rational> v(d, Rational(0));
    v[i] = Rational(1);
    return v;
  };

  // Even block: symplectic reduction into hyperbolic pairs.
  std::vector<std::vector<Rational>> ps, qs;
  {
    std::vector<std::vector<Rational>> pool;
    for (int i : evens) pool.push_back(unit_vec(i));
    while (!pool.empty()) {
      std::vector<Rational> p = pool.front();
      pool.erase(pool.begin());
      int mate = -1;
      for (std::size_t t = 0; t < pool.size(); ++t)
        if (!pair_vec(p, pool[t]).is_zero()) { mate = static_cast<int>(t); break; }
      if (mate < 0) throw std::invalid_argument("darboux_basis: degenerate even block");
      std::vector<Rational> q = pool[mate];
      pool.erase(pool.begin() + mate);
      Rational c = pair_vec(p, q);
      for (auto& x : q) x /= c;
      for (auto& u : pool) {
        Rational a = pair_vec(p, u), b = pair_vec(q, u);
        for (int i = 0; i < d; ++i) u[i] = u[i] - a * q[i] + b * p[i];
      }
      ps.push_back(std::move(p));
      qs.push_back(std::move(q));
    }
  }

  // Odd block: congruence diagonalisation, then square-class normalisation.
  std::vector<std::vector<Rational>> xs;
  std::vector<Rational> diag;
  {
    std::vector<std::vector<Rational>> pool;
    for (int i : odds) pool.push_back(unit_vec(i));
    while (!pool.empty()) {
      int pivot = -1;
      for (std::size_t t = 0; t < pool.size(); ++t)
        if (!pair_vec(pool[t], pool[t]).is_zero()) { pivot = static_cast<int>(t); break; }
      if (pivot < 0) {
        // All isotropic: mix two non-orthogonal vectors, scaled so the mixed
        // vector has unit square.
        int a = -1, b = -1;
        for (std::size_t t = 0; t < pool.size() && a < 0; ++t)
          for (std::size_t u = t + 1; u < pool.size(); ++u)
            if (!pair_vec(pool[t], pool[u]).is_zero()) { a = static_cast<int>(t); b = static_cast<int>(u); break; }
        if (a < 0) throw std::invalid_argument("darboux_basis: degenerate odd block");
        Rational lam = Rational(1) / (Rational(2) * pair_vec(pool[a], pool[b]));
        for (int i = 0; i < d; ++i) pool[a][i] += lam * pool[b][i];
        pivot = a;
      }
      std::vector<Rational> v = pool[pivot];
      pool.erase(pool.begin() + pivot);
      Rational c = pair_vec(v, v);
      Rational rescale(1);
      Rational residue = detail::normalize_square_class(c, &rescale);
      for (auto& x : v) x /= rescale;
      for (auto& u : pool) {
        Rational a = pair_vec(v, u) / residue;
        for (int i = 0; i < d; ++i) u[i] -= a * v[i];
      }
      xs.push_back(std::move(v));
      diag.push_back(residue);
    }
  }

  int n = static_cast<int>(ps.size());
  int m = static_cast<int>(xs.size());
  Matrix B = zero_matrix(d, d);
  for (int c = 0; c < n; ++c)
    for (int i = 0; i < d; ++i) B[i][c] = ps[c][i];
  for (int c = 0; c < n; ++c)
    for (int i = 0; i < d; ++i) B[i][n + c] = qs[c][i];
  for (int c = 0; c < m; ++c)
    for (int i = 0; i < d; ++i) B[i][2 * n + c] = xs[c][i];

  bool canon = true;
  for (const auto& e : diag)
    if (e != Rational(1)) canon = false;
  return DarbouxResult{std::move(B), SuperSpace::symplectic(n, m, diag), canon};
}

// Dual pairing on the dual basis induced by x -> <x,->: the Gram matrices
// satisfy G * G^dual = Id. Applying it twice returns the original pairing.
inline InnerProduct inverse_pairing(const InnerProduct& g) {
  if (g.dim() == 0) return g;
  Matrix inv = inverse(g.matrix());
  if (inv.empty()) throw std::invalid_argument("inverse_pairing: degenerate pairing");
  const SuperSpace& s = g.space();
  std::vector<std::string> labels;
  std::vector<Parity> parities;
  for (int i = 0; i < s.dim(); ++i) {
    const std::string& l = s.label(i);
    if (l.size() > 0 && l.back() == '*')
      labels.push_back(l.substr(0, l.size() - 1));
    else
      labels.push_back(l + "*");
    parities.push_back(s.parity(i));
  }
  return InnerProduct(SuperSpace(std::move(labels), std::move(parities)), std::move(inv));
}

}  // namespace rgc
