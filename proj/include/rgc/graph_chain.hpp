#pragma once

#include <map>
#include <utility>
#include <vector>

#include "rgc/rational.hpp"
#include "rgc/ribbon.hpp"

namespace rgc {

// Formal rational combination of canonical oriented ribbon graphs. Zero
// graphs never appear; presentations are folded in through canonical_form
// with their orientation sign.
class GraphChain {
 public:
  GraphChain() = default;

  void add(const FullyOrderedGraph& g, const Rational& coeff) {
    if (coeff.is_zero()) return;
    const CanonicalForm& cf = canonical_form(g);
    if (cf.zero) return;
    add_key(cf.key, cf.sign > 0 ? coeff : -coeff);
  }

  void add_key(const GraphKey& key, const Rational& coeff) {
    if (coeff.is_zero()) return;
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      terms_.emplace(key, coeff);
    } else {
      it->second += coeff;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  GraphChain& operator+=(const GraphChain& o) {
    for (const auto& [k, v] : o.terms_) add_key(k, v);
    return *this;
  }

  GraphChain scaled(const Rational& s) const {
    GraphChain r;
    if (s.is_zero()) return r;
    for (const auto& [k, v] : terms_) r.terms_.emplace(k, v * s);
    return r;
  }

  Rational coefficient(const GraphKey& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  bool is_zero() const { return terms_.empty(); }
  const std::map<GraphKey, Rational>& terms() const { return terms_; }

  friend bool operator==(const GraphChain& a, const GraphChain& b) { return a.terms_ == b.terms_; }

 private:
  std::map<GraphKey, Rational> terms_;
};

// del: sum of contractions over non-loop edges; bidegree (-1,-1).
inline GraphChain boundary(const GraphChain& x) {
  GraphChain out;
  for (const auto& [key, coeff] : x.terms()) {
    FullyOrderedGraph g = decode_key(key);
    auto vertexOf = vertex_table(g);
    for (int e = 0; e < g.num_edges(); ++e) {
      if (vertexOf[g.chords[e].first] == vertexOf[g.chords[e].second]) continue;
      SignedGraph c = contract_edge(g, e);
      out.add(c.graph, c.sign > 0 ? coeff : -coeff);
    }
  }
  return out;
}

// delta in the unweighted basis: delta(G) = sum_i |Aut(G\i)|/|Aut(G)| (G\i);
// bidegree (+1,+1). Matches the <G> := |Aut(G)| G reweighted differential.
inline GraphChain coboundary(const GraphChain& x) {
  GraphChain out;
  for (const auto& [key, coeff] : x.terms()) {
    FullyOrderedGraph g = decode_key(key);
    const CanonicalForm& cg = canonical_form(g);
    for (const IdealEdge& ie : enumerate_ideal_edges(g)) {
      SignedGraph ex = expand_ideal_edge(g, ie);
      const CanonicalForm& ce = canonical_form(ex.graph);
      if (ce.zero) continue;
      Rational w = Rational(ce.aut, cg.aut);
      Rational c = coeff * w;
      if (ex.sign * ce.sign < 0) c = -c;
      out.add_key(ce.key, c);
    }
  }
  return out;
}

// Orthonormal-style pairing on canonical keys; orientation mismatches are
// already folded into the stored coefficients.
inline Rational graph_pairing(const GraphChain& x, const GraphChain& y) {
  Rational acc(0);
  const auto& a = x.terms();
  const auto& b = y.terms();
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first < ib->first) ++ia;
    else if (ib->first < ia->first) ++ib;
    else { acc += ia->second * ib->second; ++ia; ++ib; }
  }
  return acc;
}

// Disjoint-union product of chains.
inline GraphChain chain_union(const GraphChain& x, const GraphChain& y) {
  GraphChain out;
  for (const auto& [ka, ca] : x.terms()) {
    FullyOrderedGraph a = decode_key(ka);
    for (const auto& [kb, cb] : y.terms()) {
      FullyOrderedGraph b = decode_key(kb);
      out.add(disjoint_union(a, b), ca * cb);
    }
  }
  return out;
}

// Hopf coproduct: splits the multiset of connected components into ordered
// pairs, with the sign of regrouping the vertex blocks.
using CoproductTerms = std::map<std::pair<GraphKey, GraphKey>, Rational>;

inline CoproductTerms coproduct(const FullyOrderedGraph& g) {
  CoproductTerms out;
  ComponentSplit split = connected_components(g);
  int r = static_cast<int>(split.components.size());
  // Component sizes in vertices, for the regrouping sign.
  std::vector<int> vcount;
  for (const auto& vs : split.vertex_sets) vcount.push_back(static_cast<int>(vs.size()));

  for (int mask = 0; mask < (1 << r); ++mask) {
    // Sign: move the selected components' vertex blocks to the front,
    // preserving relative order. A swap of adjacent blocks of sizes u,v
    // contributes (-1)^{uv}.
    long inversions = 0;
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j)
        if (!(mask & (1 << i)) && (mask & (1 << j)))
          inversions += static_cast<long>(vcount[i]) * vcount[j];
    FullyOrderedGraph left, right;
    for (int i = 0; i < r; ++i) {
      if (mask & (1 << i)) left = disjoint_union(left, split.components[i]);
      else right = disjoint_union(right, split.components[i]);
    }
    const CanonicalForm& cl = canonical_form(left);
    const CanonicalForm& cr = canonical_form(right);
    if (cl.zero || cr.zero) continue;
    int sign = split.sign * cl.sign * cr.sign * ((inversions & 1) ? -1 : 1);
    auto key = std::make_pair(cl.key, cr.key);
    auto it = out.find(key);
    Rational add = Rational(sign);
    if (it == out.end()) out.emplace(key, add);
    else {
      it->second += add;
      if (it->second.is_zero()) out.erase(it);
    }
  }
  return out;
}

}  // namespace rgc
