#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rgc/cyclic.hpp"
#include "rgc/darboux.hpp"
#include "rgc/tensor.hpp"

namespace rgc {

// Minimal symplectic A-infinity algebra presented on the parity reversion:
// a super space for PiU, an even graded-skew nondegenerate pairing on it, and
// odd cyclically invariant tensors h_k (k >= 3) stored as coefficient arrays.
struct AInfinityAlgebra {
  std::string name;
  SuperSpace pi_u;
  InnerProduct pairing;          // on PiU
  std::map<int, GradedTensor> h; // k -> h_k

  const GradedTensor* h_at(int k) const {
    auto it = h.find(k);
    return it == h.end() ? nullptr : &it->second;
  }
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> failures;

  void fail(const std::string& what) {
    ok = false;
    failures.push_back(what);
  }
};

inline ValidationReport validate(const AInfinityAlgebra& a) {
  ValidationReport r;
  for (const auto& [k, hk] : a.h) {
    if (k < 3) r.fail("h_" + std::to_string(k) + ": order below 3");
    if (hk.order() != k) r.fail("h_" + std::to_string(k) + ": tensor order mismatch");
    if (hk.parity() != Parity::Odd) r.fail("h_" + std::to_string(k) + ": not odd");
    if (!(permute_tensor(cyclic_perm(k), hk) == hk))
      r.fail("h_" + std::to_string(k) + ": not cyclically invariant");
  }
  if (!a.pairing.is_even()) r.fail("pairing: not even");
  if (!a.pairing.is_graded_skew()) r.fail("pairing: not graded-skew");
  if (!a.pairing.is_nondegenerate()) r.fail("pairing: degenerate");
  return r;
}

// A Frobenius algebra on U: structure constants of the multiplication and an
// invariant trace pairing.
struct FrobeniusInput {
  SuperSpace u;
  // mult[i][j][k]: coefficient of u_k in u_i * u_j
  std::vector<std::vector<std::vector<Rational>>> mult;
  Matrix trace;

  Rational pair_mult(int i, int j, int k) const { return mult.at(i).at(j).at(k); }
};

inline bool frobenius_associative(const FrobeniusInput& f) {
  int d = f.u.dim();
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c)
        for (int e = 0; e < d; ++e) {
          Rational lhs(0), rhs(0);
          for (int t = 0; t < d; ++t) {
            lhs += f.mult[a][b][t] * f.mult[t][c][e];
            rhs += f.mult[b][c][t] * f.mult[a][t][e];
          }
          if (lhs != rhs) return false;
        }
  return true;
}

inline bool frobenius_invariant(const FrobeniusInput& f) {
  int d = f.u.dim();
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c) {
        Rational lhs(0), rhs(0);
        for (int t = 0; t < d; ++t) {
          lhs += f.mult[a][b][t] * f.trace[t][c];
          rhs += f.mult[b][c][t] * f.trace[a][t];
        }
        if (lhs != rhs) return false;
      }
  return true;
}

// h_3(Pa, Pb, Pc) := (-1)^{|b|} <ab, c>; the parity-shift convention is fixed
// here once and certified end-to-end by the master-equation and equivalence
// suites. The pairing on PiU is <Pa, Pb> := (-1)^{|a|} <a, b>.
inline AInfinityAlgebra build_from_frobenius(const FrobeniusInput& f, const std::string& name) {
  if (!frobenius_associative(f)) throw std::invalid_argument("frobenius: not associative");
  if (!frobenius_invariant(f)) throw std::invalid_argument("frobenius: pairing not invariant");
  int d = f.u.dim();
  std::vector<std::string> labels;
  std::vector<Parity> parities;
  for (int i = 0; i < d; ++i) {
    labels.push_back(f.u.label(i) + "'");
    parities.push_back(f.u.parity(i) + Parity::Odd);
  }
  SuperSpace pi_u(labels, parities);
  Matrix g = zero_matrix(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      g[i][j] = is_odd(f.u.parity(i)) ? -f.trace[i][j] : f.trace[i][j];
  InnerProduct pairing(pi_u, g);

  GradedTensor h3(pi_u, 3, Parity::Odd);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c) {
        Rational v(0);
        for (int t = 0; t < d; ++t) v += f.mult[a][b][t] * f.trace[t][c];
        if (is_odd(f.u.parity(b))) v = -v;
        h3.add({a, b, c}, v);
      }
  AInfinityAlgebra out{name, pi_u, pairing, {}};
  if (!h3.is_zero()) out.h.emplace(3, std::move(h3));
  ValidationReport r = validate(out);
  if (!r.ok) throw std::logic_error("build_from_frobenius: " + r.failures.front());
  return out;
}

// ---- Hamiltonian coordinates -----------------------------------------------

struct HamiltonianCoordinates {
  SuperSpace letters;      // tagged dual coordinates, possibly with residues
  Matrix dual_change;      // S: columns express the new letters in old ones
  bool canonical;          // all odd residues equal to 1
  WordSum words;           // h' = sum over k of the length-k word packets

  CEChain as_chain() const {
    CEChain c(letters);
    for (const auto& [w, v] : words.terms()) c.add({w}, v);
    return c;
  }
};

namespace detail {

// Rewrites a coefficient array in the new dual basis: NEW_b = sum_a S[a][b] OLD_a.
inline GradedTensor transport_tensor(const GradedTensor& t, const Matrix& s_inv,
                                     const SuperSpace& target) {
  int d = static_cast<int>(s_inv.size());
  GradedTensor out(target, t.order(), t.parity());
  IndexTuple idx(t.order());
  for (const auto& [tuple, coeff] : t.entries()) {
    // expand each OLD letter into NEW ones: OLD_c = sum_b s_inv[b][c] NEW_b
    std::function<void(int, Rational)> rec = [&](int slot, Rational acc) {
      if (acc.is_zero()) return;
      if (slot == t.order()) {
        out.add(idx, acc);
        return;
      }
      for (int b = 0; b < d; ++b) {
        const Rational& f = s_inv[b][tuple[slot]];
        if (f.is_zero()) continue;
        idx[slot] = b;
        rec(slot + 1, acc * f);
      }
    };
    rec(0, coeff);
  }
  return out;
}

}  // namespace detail

// Darboux-normalises the dual pairing <-,->^{-1} of A and rewrites each h_k
// as a packet of cyclic words: N . (word packet of length k) = h_k.
inline HamiltonianCoordinates hamiltonian_coordinates(const AInfinityAlgebra& a) {
  InnerProduct dual = inverse_pairing(a.pairing);
  DarbouxResult dr = darboux_basis(dual);
  HamiltonianCoordinates out{dr.space, dr.basis_change, dr.canonical, WordSum(dr.space)};

  Matrix s_inv = inverse(dr.basis_change);
  for (const auto& [k, hk] : a.h) {
    GradedTensor moved = detail::transport_tensor(hk, s_inv, dr.space);
    // group z-invariant tensors into canonical word packets
    WordSum packet(dr.space);
    GradedTensor rebuilt(dr.space, k, Parity::Odd);
    for (const auto& [tuple, coeff] : moved.entries()) {
      CanonicalWord cw = canonical_rotation(dr.space, tuple);
      if (cw.word != tuple) continue;  // only canonical representatives
      // nu = coefficient of the canonical tuple inside N . tuple
      GradedTensor single(dr.space, k, Parity::Odd);
      single.add(tuple, Rational(1));
      GradedTensor norm = apply_symmetrizer(Symmetrizer::Norm, single);
      auto it = norm.entries().find(tuple);
      if (it == norm.entries().end()) throw std::logic_error("hamiltonian: z-invariance broken");
      packet.add(tuple, coeff / it->second);
    }
    for (const auto& [w, c] : packet.terms()) {
      GradedTensor single(dr.space, k, Parity::Odd);
      single.add(w, c);
      rebuilt += apply_symmetrizer(Symmetrizer::Norm, single);
    }
    if (!(rebuilt == moved))
      throw std::logic_error("hamiltonian_coordinates: h_k is not the norm of a word packet");
    out.words += packet;
  }
  return out;
}

// Rebuilds the h_k coefficient arrays of an algebra living on tagged letters
// from a Hamiltonian word sum: h_k = N . (length-k packet).
inline std::map<int, GradedTensor> tensors_from_hamiltonian(const SuperSpace& letters,
                                                            const WordSum& words) {
  std::map<int, GradedTensor> out;
  for (const auto& [w, c] : words.terms()) {
    int k = static_cast<int>(w.size());
    GradedTensor single(letters, k, word_parity(letters, w));
    single.add(w, c);
    GradedTensor norm = apply_symmetrizer(Symmetrizer::Norm, single);
    auto it = out.find(k);
    if (it == out.end()) out.emplace(k, std::move(norm));
    else it->second += norm;
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

// An algebra whose pairing is the inverse of the canonical dual form on a
// tagged letter space: exactly what conjugation flows produce.
inline AInfinityAlgebra algebra_on_letters(const SuperSpace& letters, const WordSum& words,
                                           const std::string& name) {
  InnerProduct c = InnerProduct::canonical(letters);
  Matrix g = inverse(c.matrix());
  AInfinityAlgebra out{name, letters, InnerProduct(letters, g), tensors_from_hamiltonian(letters, words)};
  return out;
}

// {h', h'} as a cyclic word combination; zero iff the structure satisfies the
// master equation.
inline WordSum check_master_equation(const AInfinityAlgebra& a) {
  HamiltonianCoordinates hc = hamiltonian_coordinates(a);
  return bracket(hc.words, hc.words);
}

// Direct sum: concatenated bases, block pairing, h_k supported on the blocks.
inline AInfinityAlgebra direct_sum(const AInfinityAlgebra& a, const AInfinityAlgebra& b) {
  int da = a.pi_u.dim(), db = b.pi_u.dim();
  std::vector<std::string> labels;
  std::vector<Parity> parities;
  for (int i = 0; i < da; ++i) {
    labels.push_back("L." + a.pi_u.label(i));
    parities.push_back(a.pi_u.parity(i));
  }
  for (int i = 0; i < db; ++i) {
    labels.push_back("R." + b.pi_u.label(i));
    parities.push_back(b.pi_u.parity(i));
  }
  SuperSpace sum(labels, parities);
  Matrix g = zero_matrix(da + db, da + db);
  for (int i = 0; i < da; ++i)
    for (int j = 0; j < da; ++j) g[i][j] = a.pairing.at(i, j);
  for (int i = 0; i < db; ++i)
    for (int j = 0; j < db; ++j) g[da + i][da + j] = b.pairing.at(i, j);
  AInfinityAlgebra out{a.name + "+" + b.name, sum, InnerProduct(sum, g), {}};
  for (const auto& [k, hk] : a.h) {
    GradedTensor t(sum, k, hk.parity());
    for (const auto& [tuple, c] : hk.entries()) t.add(tuple, c);
    out.h.emplace(k, std::move(t));
  }
  for (const auto& [k, hk] : b.h) {
    GradedTensor t(sum, k, hk.parity());
    for (const auto& [tuple, c] : hk.entries()) {
      IndexTuple shifted = tuple;
      for (int& i : shifted) i += da;
      t.add(shifted, c);
    }
    auto it = out.h.find(k);
    if (it == out.h.end()) out.h.emplace(k, std::move(t));
    else it->second += t;
  }
  return out;
}

// ---- built-in algebras -------------------------------------------------------

// The ground field: u*u = u, <u,u> = 1.
inline AInfinityAlgebra builtin_ground() {
  FrobeniusInput f;
  f.u = SuperSpace({"u"}, {Parity::Even});
  f.mult = {{{Rational(1)}}};
  f.trace = {{Rational(1)}};
  return build_from_frobenius(f, "ground");
}

// Dual numbers C[t]/t^2 with the trace picking the t-coefficient.
inline AInfinityAlgebra builtin_dual() {
  FrobeniusInput f;
  f.u = SuperSpace({"e", "t"}, {Parity::Even, Parity::Even});
  f.mult.assign(2, std::vector<std::vector<Rational>>(2, std::vector<Rational>(2, Rational(0))));
  f.mult[0][0][0] = Rational(1);  // e*e = e
  f.mult[0][1][1] = Rational(1);  // e*t = t
  f.mult[1][0][1] = Rational(1);  // t*e = t
  f.trace = {{Rational(0), Rational(1)}, {Rational(1), Rational(0)}};
  return build_from_frobenius(f, "dual");
}

inline AInfinityAlgebra builtin_ground_ground() {
  AInfinityAlgebra s = direct_sum(builtin_ground(), builtin_ground());
  s.name = "ground+ground";
  return s;
}

// The zero algebra: nothing to pair, nothing to contract.
inline AInfinityAlgebra builtin_zero() {
  SuperSpace empty({}, {});
  return AInfinityAlgebra{"zero", empty, InnerProduct(empty, {}), {}};
}

// Negative control: the dual-number h_3 perturbed on the cyclic orbit of
// (e',t',t'), which breaks associativity but keeps every validation
// invariant.
inline AInfinityAlgebra builtin_nonassoc() {
  AInfinityAlgebra a = builtin_dual();
  a.name = "nonassoc";
  GradedTensor& h3 = a.h.at(3);
  h3.add({0, 1, 1}, Rational(1));
  h3.add({1, 1, 0}, Rational(1));
  h3.add({1, 0, 1}, Rational(1));
  return a;
}

inline AInfinityAlgebra builtin_algebra(const std::string& name) {
  if (name == "ground") return builtin_ground();
  if (name == "dual") return builtin_dual();
  if (name == "ground+ground") return builtin_ground_ground();
  if (name == "zero") return builtin_zero();
  if (name == "nonassoc") return builtin_nonassoc();
  throw std::invalid_argument("unknown builtin algebra: " + name);
}

}  // namespace rgc
