#pragma once

#include <functional>
#include <map>
#include <vector>

#include "rgc/cyclic.hpp"
#include "rgc/graph_chain.hpp"
#include "rgc/ribbon.hpp"

namespace rgc {

// sigma_c for an oriented chord diagram (i_1,j_1),...,(i_k,j_k):
// the permutation sending i_r -> 2r-1, j_r -> 2r (0-based here).
inline Perm sigma_of_chords(const OrientedChordDiagram& c) {
  int n = 2 * static_cast<int>(c.size());
  Perm p(n, -1);
  for (int r = 0; r < static_cast<int>(c.size()); ++r) {
    p.at(c[r].first - 1) = 2 * r;
    p.at(c[r].second - 1) = 2 * r + 1;
  }
  if (!is_permutation(p)) throw std::invalid_argument("sigma_of_chords: not a chord diagram");
  return p;
}

// beta_c(x) = kappa(sigma_c . x): permute with Koszul signs, then contract
// consecutive pairs with the space's canonical form. `form` lets the caller
// substitute a different even pairing (the kappa^A of a partition function).
inline Rational beta_amplitude(const OrientedChordDiagram& c, const GradedTensor& t,
                               const std::function<Rational(int, int)>& form) {
  if (2 * static_cast<int>(c.size()) != t.order())
    throw std::invalid_argument("beta_amplitude: order mismatch");
  const SuperSpace& s = t.space();
  Perm sigma = sigma_of_chords(c);
  Rational acc(0);
  std::vector<Parity> par(t.order());
  for (const auto& [tuple, coeff] : t.entries()) {
    Rational prod(1);
    bool dead = false;
    for (const auto& [a, b] : c) {
      Rational f = form(tuple[a - 1], tuple[b - 1]);
      if (f.is_zero()) { dead = true; break; }
      prod *= f;
    }
    if (dead) continue;
    for (int i = 0; i < t.order(); ++i) par[i] = s.parity(tuple[i]);
    int sign = koszul_sign(sigma, par);
    acc += coeff * prod * Rational(sign);
  }
  return acc;
}

inline Rational beta_amplitude(const OrientedChordDiagram& c, const GradedTensor& t) {
  const SuperSpace& s = t.space();
  return beta_amplitude(c, t, [&s](int a, int b) { return s.form(a, b); });
}

using ProfiledTensor = std::map<std::vector<int>, GradedTensor>;

// F~_Gamma on a profiled element of T(T+(V)): the beta amplitude of the
// summand whose block profile matches Gamma's type, zero on all others.
inline Rational feynman_fully_ordered(const FullyOrderedGraph& g, const ProfiledTensor& x) {
  auto it = x.find(g.valences);
  if (it == x.end()) return Rational(0);
  return beta_amplitude(g.chords, it->second);
}

// F_Gamma(x) evaluated on the canonical representative of an oriented class.
inline Rational feynman_oriented(const GraphKey& key, const CEChain& x) {
  return feynman_fully_ordered(decode_key(key), eps_TN(x));
}

inline Rational feynman_oriented(const GraphKey& key, const ProfiledTensor& etn) {
  return feynman_fully_ordered(decode_key(key), etn);
}

// <<x, Gamma>> = F_Gamma(x) / |Aut Gamma|.
inline Rational ce_graph_pairing(const CEChain& x, const GraphKey& key) {
  const CanonicalForm& cf = canonical_form(decode_key(key));
  if (cf.zero) throw std::invalid_argument("ce_graph_pairing: zero graph");
  return feynman_oriented(key, x) / Rational(cf.aut);
}

inline Rational ce_graph_pairing(const ProfiledTensor& etn, const GraphKey& key) {
  const CanonicalForm& cf = canonical_form(decode_key(key));
  if (cf.zero) throw std::invalid_argument("ce_graph_pairing: zero graph");
  return feynman_oriented(key, etn) / Rational(cf.aut);
}

// Pairing of a CE chain against a whole graph chain.
inline Rational ce_graph_pairing(const CEChain& x, const GraphChain& y) {
  if (y.is_zero()) return Rational(0);
  ProfiledTensor etn = eps_TN(x);
  Rational acc(0);
  for (const auto& [k, c] : y.terms()) acc += c * ce_graph_pairing(etn, k);
  return acc;
}

// I(x) = sum over unoriented chord diagrams c of beta_{c^}(x) Gamma(c^),
// with c^ the orientation taking i_r < j_r. Words must have length >= 3.
inline GraphChain I_map(const CEChain& x) {
  const SuperSpace& s = x.space();
  GraphChain out;
  for (const auto& [mono, coeff] : x.terms()) {
    std::vector<int> profile;
    Letters flat;
    for (const Letters& w : mono) {
      if (w.size() < 3) throw std::invalid_argument("I_map: word of length < 3");
      profile.push_back(static_cast<int>(w.size()));
      flat.insert(flat.end(), w.begin(), w.end());
    }
    int total = static_cast<int>(flat.size());
    if (total % 2) continue;  // no perfect matching on an odd letter count
    if (total == 0) {         // the constant maps to the empty graph
      out.add(FullyOrderedGraph{}, coeff);
      continue;
    }
    std::vector<Parity> par(total);
    for (int i = 0; i < total; ++i) par[i] = s.parity(flat[i]);

    GradedTensor t(s, total, word_parity(s, flat));
    t.add(flat, coeff);

    OrientedChordDiagram c;
    std::vector<char> taken(total + 1, 0);
    std::function<void()> rec = [&]() {
      int a = 0;
      for (int h = 1; h <= total; ++h)
        if (!taken[h]) { a = h; break; }
      if (a == 0) {
        Rational beta = beta_amplitude(c, t);
        if (!beta.is_zero()) out.add(FullyOrderedGraph{profile, c}, beta);
        return;
      }
      taken[a] = 1;
      for (int b = a + 1; b <= total; ++b) {
        if (taken[b]) continue;
        // cheap structural filter: the canonical form pairs only partners
        if (s.form(flat[a - 1], flat[b - 1]).is_zero()) continue;
        taken[b] = 1;
        c.emplace_back(a, b);
        rec();
        c.pop_back();
        taken[b] = 0;
      }
      taken[a] = 0;
    };
    rec();
  }
  return out;
}

}  // namespace rgc
