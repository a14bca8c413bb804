#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rgc/ainfinity.hpp"
#include "rgc/darboux.hpp"
#include "rgc/feynman.hpp"

namespace rgc {

// Ribbon graph with labelled external legs. Internal half-edges occupy
// 1..S (S = sum of internal valences, consecutive vertex blocks); external
// half-edges occupy S+1..S+in+out with the incoming labels first. The
// orientation datum is the internal vertex order together with the internal
// edge directions, modulo even total change; legs are rigid and carry no
// orientation data. (An orientation living on the internal-edge ORDER alone
// cannot support either a well-defined vertex expansion or a correlation
// function with odd vertex tensors: vertex swaps must cost a sign.)
struct LeggedGraph {
  std::vector<int> valences;
  std::vector<std::pair<int, int>> internal_edges;  // directed, ordered
  std::vector<std::pair<int, int>> leg_edges;       // touch >= 1 external id
  int in_count = 0;
  int out_count = 0;

  int internal_half_edges() const {
    int s = 0;
    for (int v : valences) s += v;
    return s;
  }
  int total_half_edges() const { return internal_half_edges() + in_count + out_count; }
  int in_leg(int label) const { return internal_half_edges() + label; }           // 1-based label
  int out_leg(int label) const { return internal_half_edges() + in_count + label; }
};

inline void validate_legged(const LeggedGraph& g) {
  for (int v : g.valences)
    if (v < 3) throw std::invalid_argument("legged graph: internal valence below 3");
  int S = g.internal_half_edges();
  int T = g.total_half_edges();
  std::vector<char> seen(T + 1, 0);
  auto touch = [&](int h) {
    if (h < 1 || h > T) throw std::invalid_argument("legged graph: id out of range");
    if (seen[h]) throw std::invalid_argument("legged graph: ids do not partition");
    seen[h] = 1;
  };
  for (auto [a, b] : g.internal_edges) {
    if (a > S || b > S) throw std::invalid_argument("legged graph: internal edge touches a leg");
    touch(a);
    touch(b);
  }
  for (auto [a, b] : g.leg_edges) {
    if (a <= S && b <= S) throw std::invalid_argument("legged graph: leg edge with no external end");
    touch(a);
    touch(b);
  }
  for (int h = 1; h <= T; ++h)
    if (!seen[h]) throw std::invalid_argument("legged graph: unmatched half-edge");
}

struct LeggedCanonical {
  std::vector<int> key;
  int sign;
  bool zero;
  long aut;
};

namespace detail {

struct LeggedCandidate {
  std::vector<int> key;
  int sign;
};

inline LeggedCandidate legged_candidate(const LeggedGraph& g, const std::vector<int>& order,
                                        const std::vector<int>& rot) {
  int S = g.internal_half_edges();
  std::vector<int> starts(g.valences.size() + 1, 0);
  for (std::size_t v = 0; v < g.valences.size(); ++v) starts[v + 1] = starts[v] + g.valences[v];
  std::vector<int> L(g.total_half_edges() + 1, 0);
  for (int h = S + 1; h <= g.total_half_edges(); ++h) L[h] = h;  // legs rigid
  int next = 0;
  std::vector<int> newStarts;
  for (std::size_t slot = 0; slot < order.size(); ++slot) {
    int v = order[slot];
    int k = g.valences[v];
    newStarts.push_back(next);
    for (int s = 0; s < k; ++s) L[starts[v] + 1 + ((s + rot[slot]) % k)] = ++next;
  }
  LeggedCandidate cand;
  cand.sign = 1;
  // vertex arrangement sign
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = i + 1; j < order.size(); ++j)
      if (order[i] > order[j]) cand.sign = -cand.sign;
  std::vector<std::pair<int, int>> internals;
  for (auto [a, b] : g.internal_edges) {
    int la = L[a], lb = L[b];
    if (la > lb) {
      std::swap(la, lb);
      cand.sign = -cand.sign;
    }
    internals.emplace_back(la, lb);
  }
  std::sort(internals.begin(), internals.end());  // list order carries no sign
  std::vector<std::pair<int, int>> legs;
  for (auto [a, b] : g.leg_edges) {
    int la = L[a], lb = L[b];
    if (la > lb) std::swap(la, lb);
    legs.emplace_back(la, lb);
  }
  std::sort(legs.begin(), legs.end());

  cand.key.push_back(static_cast<int>(g.valences.size()));
  for (std::size_t slot = 0; slot < order.size(); ++slot) cand.key.push_back(g.valences[order[slot]]);
  cand.key.push_back(g.in_count);
  cand.key.push_back(g.out_count);
  for (auto [a, b] : internals) {
    cand.key.push_back(a);
    cand.key.push_back(b);
  }
  cand.key.push_back(-1);
  for (auto [a, b] : legs) {
    cand.key.push_back(a);
    cand.key.push_back(b);
  }
  return cand;
}

}  // namespace detail

// Exhaustive canonicalisation over internal vertex orders and rotations;
// legs never move. Vertex permutations are sign-free in this convention.
inline LeggedCanonical legged_canonical_form(const LeggedGraph& g) {
  validate_legged(g);
  int m = static_cast<int>(g.valences.size());
  LeggedCanonical out;
  out.sign = 1;
  out.zero = false;
  out.aut = 0;
  bool have = false;
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> perm = order;
  // enumerate arrangements sorted by valence (all permutations, pruned by
  // valence equality against the sorted profile)
  std::vector<int> target = g.valences;
  std::sort(target.begin(), target.end());
  std::function<void(std::vector<int>&, std::vector<char>&, std::vector<int>&)> rec =
      [&](std::vector<int>& arr, std::vector<char>& used, std::vector<int>& rot) {
        std::size_t slot = arr.size();
        if (slot == static_cast<std::size_t>(m)) {
          detail::LeggedCandidate cand = detail::legged_candidate(g, arr, rot);
          if (!have || cand.key < out.key) {
            have = true;
            out.key = cand.key;
            out.sign = cand.sign;
            out.aut = 1;
            out.zero = false;
          } else if (cand.key == out.key) {
            ++out.aut;
            if (cand.sign != out.sign) out.zero = true;
          }
          return;
        }
        for (int v = 0; v < m; ++v) {
          if (used[v] || g.valences[v] != target[slot]) continue;
          used[v] = 1;
          arr.push_back(v);
          for (int r = 0; r < g.valences[v]; ++r) {
            rot.push_back(r);
            rec(arr, used, rot);
            rot.pop_back();
          }
          arr.pop_back();
          used[v] = 0;
        }
      };
  std::vector<int> arr;
  std::vector<char> used(m, 0);
  std::vector<int> rot;
  if (m == 0) {
    detail::LeggedCandidate cand = detail::legged_candidate(g, {}, {});
    out.key = cand.key;
    out.sign = cand.sign;
    out.aut = 1;
    return out;
  }
  rec(arr, used, rot);
  if (out.zero) out.aut /= 2;
  return out;
}

inline LeggedGraph decode_legged_key(const std::vector<int>& key) {
  LeggedGraph g;
  std::size_t p = 0;
  int m = key.at(p++);
  for (int v = 0; v < m; ++v) g.valences.push_back(key.at(p++));
  g.in_count = key.at(p++);
  g.out_count = key.at(p++);
  while (p < key.size() && key[p] != -1) {
    int a = key.at(p++);
    int b = key.at(p++);
    g.internal_edges.emplace_back(a, b);
  }
  if (p < key.size()) ++p;  // skip separator
  while (p < key.size()) {
    int a = key.at(p++);
    int b = key.at(p++);
    g.leg_edges.emplace_back(a, b);
  }
  return g;
}

// ---- gluing -----------------------------------------------------------------

// Glues a's outgoing legs to b's incoming legs, label by label. Welds that
// close a vertex-free circle are rejected.
inline LeggedGraph glue(const LeggedGraph& a, const LeggedGraph& b) {
  if (a.out_count != b.in_count) throw std::invalid_argument("glue: leg count mismatch");
  validate_legged(a);
  validate_legged(b);
  int n = a.out_count;
  int Sa = a.internal_half_edges();
  int Sb = b.internal_half_edges();
  int S = Sa + Sb;

  // combined id space: a-internals 1..Sa, b-internals Sa+1..Sa+Sb, then the
  // final external ids (a's in, then b's out)
  LeggedGraph out;
  out.valences = a.valences;
  out.valences.insert(out.valences.end(), b.valences.begin(), b.valences.end());
  out.in_count = a.in_count;
  out.out_count = b.out_count;

  // temporary ids for the legs being welded or kept
  // a-in label l        -> S + l
  // b-out label l       -> S + a.in_count + l
  // a-out label l       -> weld node W + l
  // b-in label l        -> weld node W + l (same node: they fuse)
  int W = S + a.in_count + b.out_count;
  auto mapA = [&](int h) {
    if (h <= Sa) return h;
    if (h <= Sa + a.in_count) return S + (h - Sa);
    return W + (h - Sa - a.in_count);
  };
  auto mapB = [&](int h) {
    if (h <= Sb) return Sa + h;
    if (h <= Sb + b.in_count) return W + (h - Sb);
    return S + a.in_count + (h - Sb - b.in_count);
  };

  // edges as endpoint pairs over the temporary id space
  std::vector<std::pair<int, int>> pool;
  for (auto [x, y] : a.internal_edges) pool.emplace_back(mapA(x), mapA(y));
  for (auto [x, y] : b.internal_edges) pool.emplace_back(mapB(x), mapB(y));
  int abInternalCount = static_cast<int>(pool.size());
  for (auto [x, y] : a.leg_edges) pool.emplace_back(mapA(x), mapA(y));
  for (auto [x, y] : b.leg_edges) pool.emplace_back(mapB(x), mapB(y));

  // weld at nodes W+1..W+n: each weld node joins exactly two edge endpoints
  for (int l = 1; l <= n; ++l) {
    int node = W + l;
    std::vector<int> hits;
    for (std::size_t e = 0; e < pool.size(); ++e) {
      if (pool[e].first == node) hits.push_back(static_cast<int>(e) * 2);
      if (pool[e].second == node) hits.push_back(static_cast<int>(e) * 2 + 1);
    }
    if (hits.size() != 2) throw std::logic_error("glue: weld node degree != 2");
    int e1 = hits[0] / 2, e2 = hits[1] / 2;
    if (e1 == e2) throw std::invalid_argument("glue: weld closes a vertex-free circle");
    // orient the fused edge from the a-side endpoint to the b-side endpoint:
    // the free end of e1 (an a-side edge or earlier fused edge) first
    int farA = (hits[0] % 2 == 0) ? pool[e1].second : pool[e1].first;
    int farB = (hits[1] % 2 == 0) ? pool[e2].second : pool[e2].first;
    pool[e2] = {farA, farB};
    pool.erase(pool.begin() + e1);
    if (e1 < abInternalCount) --abInternalCount;
  }

  // split into internal and leg edges; fused edges with both endpoints
  // internal are appended after the surviving internal edges, in pool order
  for (int pass = 0; pass < 2; ++pass)
    for (std::size_t e = 0; e < pool.size(); ++e) {
      bool internal = pool[e].first <= S && pool[e].second <= S;
      bool preexisting = static_cast<int>(e) < abInternalCount;
      if (pass == 0 && internal && preexisting) out.internal_edges.push_back(pool[e]);
      if (pass == 1 && internal && !preexisting) out.internal_edges.push_back(pool[e]);
      if (pass == 1 && !internal) out.leg_edges.push_back(pool[e]);
    }
  validate_legged(out);
  return out;
}

// ---- coboundary --------------------------------------------------------------

struct LeggedChain {
  std::map<std::vector<int>, Rational> terms;

  void add(const LeggedGraph& g, const Rational& c) {
    if (c.is_zero()) return;
    LeggedCanonical cf = legged_canonical_form(g);
    if (cf.zero) return;
    Rational v = (cf.sign > 0) ? c : -c;
    auto it = terms.find(cf.key);
    if (it == terms.end()) terms.emplace(cf.key, v);
    else {
      it->second += v;
      if (it->second.is_zero()) terms.erase(it);
    }
  }

  bool is_zero() const { return terms.empty(); }
};

struct SignedLeggedGraph {
  LeggedGraph graph;
  int sign;
};

// Ideal-edge expansions of internal vertices. The split pair goes first in
// the vertex order, the new edge is directed from the first arc; the sign is
// the character of moving the split vertex to the front.
inline std::vector<SignedLeggedGraph> legged_expansions(const LeggedGraph& g) {
  std::vector<SignedLeggedGraph> out;
  int S = g.internal_half_edges();
  int m = static_cast<int>(g.valences.size());
  std::vector<int> starts(g.valences.size() + 1, 0);
  for (int v = 0; v < m; ++v) starts[v + 1] = starts[v] + g.valences[v];
  for (int v = 0; v < m; ++v) {
    int k = g.valences[v];
    auto he = [&](int pos) { return starts[v] + 1 + (pos % k); };
    for (int g1 = 0; g1 < k; ++g1)
      for (int g2 = g1 + 2; g2 < k && g2 <= g1 + k - 2; ++g2) {
        std::vector<int> arcA, arcB;
        for (int s = g1; s < g2; ++s) arcA.push_back(he(s));
        for (int s = g2; s < g1 + k; ++s) arcB.push_back(he(s));
        LeggedGraph ex;
        ex.in_count = g.in_count;
        ex.out_count = g.out_count;
        ex.valences.push_back(static_cast<int>(arcA.size()) + 1);
        ex.valences.push_back(static_cast<int>(arcB.size()) + 1);
        for (int u = 0; u < m; ++u)
          if (u != v) ex.valences.push_back(g.valences[u]);
        std::vector<int> L(g.total_half_edges() + 1, 0);
        int next = 0;
        for (std::size_t s = 0; s < arcA.size(); ++s) L[arcA[s]] = ++next;
        int newA = ++next;
        for (std::size_t s = 0; s < arcB.size(); ++s) L[arcB[s]] = ++next;
        int newB = ++next;
        for (int u = 0; u < m; ++u) {
          if (u == v) continue;
          for (int s = 0; s < g.valences[u]; ++s) L[starts[u] + 1 + s] = ++next;
        }
        int Snew = ex.internal_half_edges();
        for (int h = S + 1; h <= g.total_half_edges(); ++h) L[h] = h - S + Snew;
        for (auto [x, y] : g.internal_edges) ex.internal_edges.emplace_back(L[x], L[y]);
        ex.internal_edges.emplace_back(newA, newB);
        for (auto [x, y] : g.leg_edges) ex.leg_edges.emplace_back(L[x], L[y]);
        validate_legged(ex);
        out.push_back(SignedLeggedGraph{std::move(ex), (v % 2) ? -1 : 1});
      }
  }
  return out;
}

// delta on the unweighted basis of legged classes, with legged automorphism
// weights (legs rigid).
inline LeggedChain legged_coboundary(const LeggedGraph& g) {
  LeggedChain out;
  LeggedCanonical cg = legged_canonical_form(g);
  for (const SignedLeggedGraph& ex : legged_expansions(g)) {
    LeggedCanonical ce = legged_canonical_form(ex.graph);
    if (ce.zero) continue;
    Rational w = Rational(ce.aut, cg.aut);
    out.add(ex.graph, ex.sign > 0 ? w : -w);
  }
  return out;
}

// ---- correlation functions ----------------------------------------------------

// Attach h_k at internal vertices, contract internal edges with the dual
// pairing, keep leg slots free in label order (incoming then outgoing).
// A through-edge contributes the inverse of the dual pairing on its two leg
// slots. Missing h_k gives the zero tensor.
inline GradedTensor correlation(const AInfinityAlgebra& alg, const LeggedGraph& g) {
  validate_legged(g);
  const SuperSpace& sp = alg.pi_u;
  InnerProduct dual = sp.dim() ? inverse_pairing(alg.pairing) : alg.pairing;
  Matrix dualInv = sp.dim() ? inverse(dual.matrix()) : Matrix{};

  int m = static_cast<int>(g.valences.size());
  int S = g.internal_half_edges();
  int legs = g.in_count + g.out_count;

  // slot plan over the sequence [internal half-edges][through-pair slots]
  // target order: contracted pairs first (internal edges in order), then the
  // free slots by leg label.
  int nThrough = 0;
  for (auto [x, y] : g.leg_edges)
    if (x > S && y > S) ++nThrough;
  int totalSlots = S + 2 * nThrough;

  // free-slot position per external id
  std::map<int, int> slotOfExternal;  // external id -> source slot index (0-based)
  std::vector<std::pair<int, int>> throughPairs;
  {
    int extSlot = S;
    for (auto [x, y] : g.leg_edges)
      if (x > S && y > S) {
        slotOfExternal[x] = extSlot++;
        slotOfExternal[y] = extSlot++;
        throughPairs.emplace_back(x, y);
      }
  }

  Perm target(totalSlots, -1);
  int pos = 0;
  for (auto [x, y] : g.internal_edges) {
    target[x - 1] = pos++;
    target[y - 1] = pos++;
  }
  // leg edges with one internal end expose that internal slot
  std::map<int, int> internalOfExternal;
  for (auto [x, y] : g.leg_edges) {
    if (x > S && y > S) continue;
    int internal = (x <= S) ? x : y;
    int external = (x <= S) ? y : x;
    internalOfExternal[external] = internal;
  }
  // free slots in label order
  std::vector<int> freeSource;  // source slot per output slot
  for (int l = 1; l <= g.in_count; ++l) {
    int e = g.in_leg(l);
    if (internalOfExternal.count(e)) freeSource.push_back(internalOfExternal[e] - 1);
    else freeSource.push_back(slotOfExternal.at(e));
  }
  for (int l = 1; l <= g.out_count; ++l) {
    int e = g.out_leg(l);
    if (internalOfExternal.count(e)) freeSource.push_back(internalOfExternal[e] - 1);
    else freeSource.push_back(slotOfExternal.at(e));
  }
  for (int t = 0; t < legs; ++t) target[freeSource[t]] = pos++;
  if (pos != totalSlots) throw std::logic_error("correlation: slot plan incomplete");

  // enumerate sparse entries: product of h_k entries and through-pair tensors
  std::vector<const GradedTensor*> at(m);
  Parity outParity = Parity::Even;
  for (int v = 0; v < m; ++v) {
    at[v] = alg.h_at(g.valences[v]);
    if (!at[v]) {
      // zero tensor of the right order; parity of the would-be output is the
      // sum of odd h-parities, keep it odd iff m is odd
      return GradedTensor(sp, legs, (m % 2) ? Parity::Odd : Parity::Even);
    }
    outParity = outParity + Parity::Odd;
  }

  GradedTensor out(sp, legs, outParity);
  IndexTuple slotsTuple(totalSlots, 0);
  std::vector<Parity> par(totalSlots);
  std::function<void(int, Rational)> emit = [&](int, Rational coeff) {
    // contract internal edges
    Rational prod = coeff;
    for (auto [x, y] : g.internal_edges) {
      prod *= dual.at(slotsTuple[x - 1], slotsTuple[y - 1]);
      if (prod.is_zero()) return;
    }
    for (int i = 0; i < totalSlots; ++i) par[i] = sp.parity(slotsTuple[i]);
    int sign = koszul_sign(target, par);
    IndexTuple freeTuple(legs);
    for (int t = 0; t < legs; ++t) freeTuple[t] = slotsTuple[freeSource[t]];
    out.add(freeTuple, prod * Rational(sign));
  };
  std::function<void(int, int, Rational)> recV = [&](int v, int base, Rational coeff) {
    if (v == m) {
      // through-pair slots
      std::function<void(int, Rational)> recT = [&](int t, Rational c2) {
        if (t == nThrough) {
          emit(0, c2);
          return;
        }
        int sa = S + 2 * t, sb = S + 2 * t + 1;
        for (int ia = 0; ia < sp.dim(); ++ia)
          for (int ib = 0; ib < sp.dim(); ++ib) {
            const Rational& w = dualInv[ia][ib];
            if (w.is_zero()) continue;
            slotsTuple[sa] = ia;
            slotsTuple[sb] = ib;
            recT(t + 1, c2 * w);
          }
      };
      recT(0, coeff);
      return;
    }
    for (const auto& [t, c] : at[v]->entries()) {
      for (int i = 0; i < g.valences[v]; ++i) slotsTuple[base + i] = t[i];
      recV(v + 1, base + g.valences[v], coeff * c);
    }
  };
  recV(0, 0, Rational(1));
  return out;
}

// Slot contraction of two correlation tensors along matched out/in legs,
// using the dual pairing, with free slots ordered (in of t1, out of t2).
inline GradedTensor compose_correlations(const AInfinityAlgebra& alg, const GradedTensor& t1,
                                         int in1, int out1, const GradedTensor& t2, int in2,
                                         int out2) {
  if (out1 != in2) throw std::invalid_argument("compose: slot mismatch");
  const SuperSpace& sp = alg.pi_u;
  InnerProduct dual = sp.dim() ? inverse_pairing(alg.pairing) : alg.pairing;
  int legs = in1 + out2;
  Parity p = t1.parity() + t2.parity();
  GradedTensor out(sp, legs, p);
  int total = in1 + out1 + in2 + out2;
  Perm target(total, -1);
  int pos = 0;
  for (int l = 0; l < out1; ++l) {
    target[in1 + l] = pos++;        // out_l of t1
    target[in1 + out1 + l] = pos++; // in_l of t2
  }
  for (int l = 0; l < in1; ++l) target[l] = pos++;
  for (int l = 0; l < out2; ++l) target[in1 + out1 + in2 + l] = pos++;

  std::vector<Parity> par(total);
  for (const auto& [u, cu] : t1.entries())
    for (const auto& [v, cv] : t2.entries()) {
      Rational prod = cu * cv;
      bool dead = false;
      for (int l = 0; l < out1 && !dead; ++l) {
        prod *= dual.at(u[in1 + l], v[l]);
        if (prod.is_zero()) dead = true;
      }
      if (dead) continue;
      IndexTuple all;
      all.reserve(total);
      all.insert(all.end(), u.begin(), u.end());
      all.insert(all.end(), v.begin(), v.end());
      for (int i = 0; i < total; ++i) par[i] = sp.parity(all[i]);
      int sign = koszul_sign(target, par);
      IndexTuple freeTuple;
      freeTuple.reserve(legs);
      for (int l = 0; l < in1; ++l) freeTuple.push_back(u[l]);
      for (int l = 0; l < out2; ++l) freeTuple.push_back(v[in2 + l]);
      out.add(freeTuple, prod * Rational(sign));
    }
  return out;
}

}  // namespace rgc
