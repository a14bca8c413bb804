#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "rgc/tensor.hpp"

namespace rgc {

// Letters are indices into a symplectically tagged SuperSpace. A word is a
// tensor word modulo signed rotation; we store the lexicographically least
// rotation, and a word that meets its own negative under rotation is zero.
using Letters = std::vector<int>;

struct CanonicalWord {
  Letters word;  // least representative
  int sign;      // input = sign * representative in the coinvariant space
  bool zero;
};

inline CanonicalWord canonical_rotation(const SuperSpace& s, const Letters& w) {
  int L = static_cast<int>(w.size());
  if (L == 0) return {w, 1, false};
  Letters cur = w;
  int curSign = 1;
  Letters best = w;
  int bestSign = 1;
  bool zero = false;
  for (int r = 1; r < L; ++r) {
    // rotate: move first letter to the end, Koszul sign against the rest
    Parity rest = Parity::Even;
    for (int t = 1; t < L; ++t) rest = rest + s.parity(cur[t]);
    if (is_odd(s.parity(cur[0])) && is_odd(rest)) curSign = -curSign;
    std::rotate(cur.begin(), cur.begin() + 1, cur.end());
    if (cur < best) {
      best = cur;
      bestSign = curSign;
    } else if (cur == best && curSign != bestSign) {
      zero = true;
    }
  }
  return {best, bestSign, zero};
}

// Formal rational combination of canonical cyclic words.
class WordSum {
 public:
  explicit WordSum(SuperSpace space) : space_(std::move(space)) {}

  const SuperSpace& space() const { return space_; }

  void add(const Letters& w, const Rational& c) {
    if (c.is_zero()) return;
    CanonicalWord cw = canonical_rotation(space_, w);
    if (cw.zero) return;
    Rational v = (cw.sign > 0) ? c : -c;
    auto it = terms_.find(cw.word);
    if (it == terms_.end()) terms_.emplace(cw.word, v);
    else {
      it->second += v;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  WordSum& operator+=(const WordSum& o) {
    for (const auto& [w, c] : o.terms_) add(w, c);
    return *this;
  }

  WordSum scaled(const Rational& s) const {
    WordSum r(space_);
    if (s.is_zero()) return r;
    for (const auto& [w, c] : terms_) r.terms_.emplace(w, c * s);
    return r;
  }

  bool is_zero() const { return terms_.empty(); }
  const std::map<Letters, Rational>& terms() const { return terms_; }
  Rational coefficient(const Letters& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  friend bool operator==(const WordSum& a, const WordSum& b) { return a.terms_ == b.terms_; }

 private:
  SuperSpace space_;
  std::map<Letters, Rational> terms_;
};

inline Parity word_parity(const SuperSpace& s, const Letters& w) {
  Parity p = Parity::Even;
  for (int i : w) p = p + s.parity(i);
  return p;
}

// The explicit bracket on cyclic words: pair one letter of each word with
// the symplectic form, rotate what remains so it starts after the removed
// letter, and concatenate.
inline WordSum bracket_words(const SuperSpace& s, const Letters& a, const Letters& b) {
  if (!s.tagged()) throw std::invalid_argument("bracket: space not symplectically tagged");
  WordSum out(s);
  int k = static_cast<int>(a.size()), l = static_cast<int>(b.size());
  auto rotated_remainder = [&s](const Letters& w, int i) {
    // remove letter i (0-based), then shift the prefix before i to the end
    Letters rem;
    int L = static_cast<int>(w.size());
    int sign = 1;
    for (int t = i + 1; t < L; ++t) rem.push_back(w[t]);
    for (int t = 0; t < i; ++t) rem.push_back(w[t]);
    // sign: removing w[i] then applying z^{i}-style shifts. Rotating
    // w_1..w_{i-1} past w_{i+1}..w_L one letter at a time:
    Parity tailPar = Parity::Even;
    for (int t = i + 1; t < L; ++t) tailPar = tailPar + s.parity(w[t]);
    Parity movedPar = Parity::Even;
    for (int t = 0; t < i; ++t) movedPar = movedPar + s.parity(w[t]);
    // each moved letter crosses everything that sits after it at move time;
    // accumulated sign equals parity(moved block) * parity(rest of word
    // without the moved block):
    Parity restPar = tailPar;
    if (is_odd(movedPar) && is_odd(restPar)) sign = -sign;
    return std::make_pair(rem, sign);
  };
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < l; ++j) {
      Rational pairing = s.form(a[i], b[j]);
      if (pairing.is_zero()) continue;
      // p = |a_i| (|a_{i+1}| + .. + |a_k| + |b_1| + .. + |b_{j-1}|)
      Parity acc = Parity::Even;
      for (int t = i + 1; t < k; ++t) acc = acc + s.parity(a[t]);
      for (int t = 0; t < j; ++t) acc = acc + s.parity(b[t]);
      int sign = (is_odd(s.parity(a[i])) && is_odd(acc)) ? -1 : 1;
      auto [ra, sa] = rotated_remainder(a, i);
      auto [rb, sb] = rotated_remainder(b, j);
      Letters cat = ra;
      cat.insert(cat.end(), rb.begin(), rb.end());
      out.add(cat, pairing * Rational(sign * sa * sb));
    }
  }
  return out;
}

inline WordSum bracket(const WordSum& a, const WordSum& b) {
  WordSum out(a.space());
  for (const auto& [wa, ca] : a.terms())
    for (const auto& [wb, cb] : b.terms()) {
      WordSum t = bracket_words(a.space(), wa, wb);
      out += t.scaled(ca * cb);
    }
  return out;
}

// ---- Chevalley-Eilenberg chains ---------------------------------------------

// Exterior monomial of canonical words: kept sorted, with the super exterior
// sign g ^ h = -(-1)^{|g||h|} h ^ g folded into coefficients. A repeated even
// word kills the monomial; repeated odd words are fine.
using Monomial = std::vector<Letters>;

struct CanonicalMonomial {
  Monomial monomial;
  int sign;
  bool zero;
};

inline CanonicalMonomial canonical_monomial(const SuperSpace& s, Monomial m) {
  int sign = 1;
  // insertion sort, tracking the exterior swap sign
  for (std::size_t i = 1; i < m.size(); ++i) {
    for (std::size_t j = i; j > 0 && m[j] < m[j - 1]; --j) {
      bool bothOdd = is_odd(word_parity(s, m[j])) && is_odd(word_parity(s, m[j - 1]));
      // swap sign: -(-1)^{|g||h|} = -1 unless both odd
      if (!bothOdd) sign = -sign;
      std::swap(m[j], m[j - 1]);
    }
  }
  for (std::size_t i = 1; i < m.size(); ++i)
    if (m[i] == m[i - 1] && !is_odd(word_parity(s, m[i]))) return {m, sign, true};
  return {m, sign, false};
}

class CEChain {
 public:
  explicit CEChain(SuperSpace space) : space_(std::move(space)) {}

  const SuperSpace& space() const { return space_; }

  // Adds coeff * (w_1 ^ ... ^ w_m); words may be arbitrary rotations.
  void add(const Monomial& words, const Rational& coeff) {
    if (coeff.is_zero()) return;
    Rational c = coeff;
    Monomial canon;
    for (const Letters& w : words) {
      CanonicalWord cw = canonical_rotation(space_, w);
      if (cw.zero) return;
      if (cw.sign < 0) c = -c;
      canon.push_back(cw.word);
    }
    CanonicalMonomial cm = canonical_monomial(space_, std::move(canon));
    if (cm.zero) return;
    if (cm.sign < 0) c = -c;
    auto it = terms_.find(cm.monomial);
    if (it == terms_.end()) terms_.emplace(cm.monomial, c);
    else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  CEChain& operator+=(const CEChain& o) {
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }

  CEChain scaled(const Rational& s) const {
    CEChain r(space_);
    if (s.is_zero()) return r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, c * s);
    return r;
  }

  bool is_zero() const { return terms_.empty(); }
  const std::map<Monomial, Rational>& terms() const { return terms_; }

  friend bool operator==(const CEChain& a, const CEChain& b) { return a.terms_ == b.terms_; }

 private:
  SuperSpace space_;
  std::map<Monomial, Rational> terms_;
};

// d(g_1 ^ ... ^ g_m) = sum_{i<j} (-1)^{p} [g_i,g_j] ^ g_1 ^ .. g^_i .. g^_j .. ^ g_m,
// p = |g_i|(|g_1|+..+|g_{i-1}|) + |g_j|(|g_1|+..+|g_{j-1}|) + |g_i||g_j| + i + j - 1.
inline CEChain ce_differential(const CEChain& x) {
  const SuperSpace& s = x.space();
  CEChain out(s);
  for (const auto& [m, coeff] : x.terms()) {
    int n = static_cast<int>(m.size());
    std::vector<Parity> par(n);
    for (int t = 0; t < n; ++t) par[t] = word_parity(s, m[t]);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        int p = (i + 1) + (j + 1) - 1;  // formula indices are 1-based
        Parity before_i = Parity::Even, before_j = Parity::Even;
        for (int t = 0; t < i; ++t) before_i = before_i + par[t];
        for (int t = 0; t < j; ++t) before_j = before_j + par[t];
        if (is_odd(par[i]) && is_odd(before_i)) ++p;
        if (is_odd(par[j]) && is_odd(before_j)) ++p;
        if (is_odd(par[i]) && is_odd(par[j])) ++p;
        Rational c = (p & 1) ? -coeff : coeff;
        WordSum br = bracket_words(s, m[i], m[j]);
        for (const auto& [w, bc] : br.terms()) {
          Monomial rest;
          rest.push_back(w);
          for (int t = 0; t < n; ++t)
            if (t != i && t != j) rest.push_back(m[t]);
          out.add(rest, c * bc);
        }
      }
  }
  return out;
}

// Adjoint action of a word g on chains: brackets into each factor with the
// Koszul prefix sign.
inline CEChain ce_adjoint(const SuperSpace& s, const Letters& g, const CEChain& x) {
  CEChain out(s);
  Parity gp = word_parity(s, g);
  for (const auto& [m, coeff] : x.terms()) {
    int n = static_cast<int>(m.size());
    Parity acc = Parity::Even;
    for (int i = 0; i < n; ++i) {
      int sign = (is_odd(gp) && is_odd(acc)) ? -1 : 1;
      WordSum br = bracket_words(s, g, m[i]);
      for (const auto& [w, bc] : br.terms()) {
        Monomial t;
        for (int u = 0; u < n; ++u) t.push_back(u == i ? w : m[u]);
        out.add(t, coeff * bc * Rational(sign));
      }
      acc = acc + word_parity(s, m[i]);
    }
  }
  return out;
}

// Index shift embedding x -> bigger space: hyperbolic indices shift by dn,
// odd indices by dm.
inline Letters shift_letters(const SymplecticTag& from, const SymplecticTag& to,
                             const Letters& w, int dn, int dm) {
  Letters out;
  out.reserve(w.size());
  for (int i : w) {
    if (i < from.n) out.push_back(i + dn);                                  // p block
    else if (i < 2 * from.n) out.push_back(i - from.n + to.n + dn);         // q block
    else out.push_back(i - 2 * from.n + 2 * to.n + dm);                     // x block
  }
  return out;
}

// Stable product: embed x on the left, y shifted to the right, and wedge.
inline CEChain stable_product(const CEChain& x, const CEChain& y) {
  const SymplecticTag& ta = x.space().tag();
  const SymplecticTag& tb = y.space().tag();
  std::vector<Rational> diag = ta.odd_diagonal;
  diag.insert(diag.end(), tb.odd_diagonal.begin(), tb.odd_diagonal.end());
  SuperSpace sum = SuperSpace::symplectic(ta.n + tb.n, ta.m + tb.m, diag);
  const SymplecticTag& ts = sum.tag();
  CEChain out(sum);
  for (const auto& [ma, ca] : x.terms())
    for (const auto& [mb, cb] : y.terms()) {
      Monomial m;
      for (const Letters& w : ma) m.push_back(shift_letters(ta, ts, w, 0, 0));
      for (const Letters& w : mb) m.push_back(shift_letters(tb, ts, w, ta.n, ta.m));
      out.add(m, ca * cb);
    }
  return out;
}

// Re-embeds a chain into a larger canonical space (stability padding).
inline CEChain pad_chain(const CEChain& x, int n, int m) {
  const SymplecticTag& t = x.space().tag();
  if (n < t.n || m < t.m) throw std::invalid_argument("pad_chain: target too small");
  std::vector<Rational> diag = t.odd_diagonal;
  for (int j = t.m; j < m; ++j) diag.push_back(Rational(1));
  SuperSpace big = SuperSpace::symplectic(n, m, diag);
  CEChain out(big);
  for (const auto& [mo, c] : x.terms()) {
    Monomial mm;
    for (const Letters& w : mo) mm.push_back(shift_letters(t, big.tag(), w, 0, 0));
    out.add(mm, c);
  }
  return out;
}

// eps o T(N): for each monomial, sum over permutations of the norm-summed
// word blocks with sgn and block Koszul signs. Output grouped by the block
// length profile, as summands of T(T+(V)).
inline std::map<std::vector<int>, GradedTensor> eps_TN(const CEChain& x) {
  const SuperSpace& s = x.space();
  std::map<std::vector<int>, GradedTensor> out;
  for (const auto& [mono, coeff] : x.terms()) {
    int m = static_cast<int>(mono.size());
    // norm tensors: all signed rotations of each word
    std::vector<std::vector<std::pair<Letters, int>>> norms(m);
    std::vector<Parity> wpar(m);
    for (int i = 0; i < m; ++i) {
      wpar[i] = word_parity(s, mono[i]);
      Letters cur = mono[i];
      int sign = 1;
      int L = static_cast<int>(cur.size());
      for (int r = 0; r < L; ++r) {
        norms[i].push_back({cur, sign});
        Parity rest = Parity::Even;
        for (int t = 1; t < L; ++t) rest = rest + s.parity(cur[t]);
        if (is_odd(s.parity(cur[0])) && is_odd(rest)) sign = -sign;
        std::rotate(cur.begin(), cur.begin() + 1, cur.end());
      }
    }
    Perm sigma = identity_perm(m);
    std::vector<int> counters(m, 0);
    do {
      Perm inv = inverse_perm(sigma);
      int sgn = perm_sign(sigma);
      // block Koszul sign: pairs i<j with sigma(i) > sigma(j), both odd
      int bk = 1;
      for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
          if (sigma[i] > sigma[j] && is_odd(wpar[i]) && is_odd(wpar[j])) bk = -bk;
      std::vector<int> profile(m);
      int total = 0;
      for (int slot = 0; slot < m; ++slot) {
        profile[slot] = static_cast<int>(mono[inv[slot]].size());
        total += profile[slot];
      }
      auto it = out.find(profile);
      if (it == out.end())
        it = out.emplace(profile, GradedTensor(s, total, word_parity(s, [&] {
                           Letters all;
                           for (const auto& w : mono) all.insert(all.end(), w.begin(), w.end());
                           return all;
                         }()))).first;
      // cartesian product over rotations
      std::fill(counters.begin(), counters.end(), 0);
      while (true) {
        IndexTuple tuple;
        tuple.reserve(total);
        int rs = 1;
        for (int slot = 0; slot < m; ++slot) {
          const auto& [w, wsign] = norms[inv[slot]][counters[inv[slot]]];
          rs *= wsign;
          tuple.insert(tuple.end(), w.begin(), w.end());
        }
        Rational v = coeff * Rational(sgn * bk * rs);
        it->second.add(tuple, v);
        int t = m - 1;
        while (t >= 0 && counters[t] + 1 == static_cast<int>(norms[t].size())) {
          counters[t] = 0;
          --t;
        }
        if (t < 0) break;
        ++counters[t];
      }
    } while (std::next_permutation(sigma.begin(), sigma.end()));
  }
  // drop zero tensors
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

}  // namespace rgc
