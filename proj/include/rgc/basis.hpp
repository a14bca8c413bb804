#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include "rgc/graph_chain.hpp"
#include "rgc/linalg.hpp"

namespace rgc {

// One bigraded cell of the graph complex: canonical keys in lexicographic
// order with cached automorphism-group orders. gen_keys additionally holds
// the zero classes: they vanish in the complex but their expansions need not,
// so the recursive enumeration must pass through them.
struct BasisCell {
  std::vector<GraphKey> keys;
  std::vector<long> aut;
  std::vector<GraphKey> gen_keys;

  int dim() const { return static_cast<int>(keys.size()); }
  int index_of(const GraphKey& k) const {
    auto it = std::lower_bound(keys.begin(), keys.end(), k);
    if (it == keys.end() || *it != k) return -1;
    return static_cast<int>(it - keys.begin());
  }
};

inline bool cell_feasible(int vertices, int edges) {
  if (vertices == 0) return edges == 0;
  return 2 * edges >= 3 * vertices && edges >= vertices;  // handshake, valence >= 3
}

// Builds cells recursively: every class with a non-loop edge is an ideal-edge
// expansion of a class one vertex and one edge down; classes whose edges are
// all loops are disjoint unions of one-vertex loop graphs.
class BasisBuilder {
 public:
  const BasisCell& cell(int vertices, int edges) {
    auto key = std::make_pair(vertices, edges);
    auto it = cells_.find(key);
    if (it != cells_.end()) return it->second;
    BasisCell c = build(vertices, edges);
    return cells_.emplace(key, std::move(c)).first->second;
  }

  // All cells with edge count <= max_edges, in (vertices, edges) order.
  std::vector<std::pair<int, int>> cells_in_range(int max_edges) {
    std::vector<std::pair<int, int>> out;
    out.emplace_back(0, 0);
    for (int i = 1; 3 * i <= 2 * max_edges; ++i)
      for (int j = (3 * i + 1) / 2; j <= max_edges; ++j)
        if (cell_feasible(i, j)) out.emplace_back(i, j);
    return out;
  }

 private:
  BasisCell build(int vertices, int edges) {
    BasisCell out;
    if (!cell_feasible(vertices, edges)) return out;
    if (vertices == 0) {
      out.keys.push_back(encode_key(FullyOrderedGraph{}));
      out.aut.push_back(1);
      out.gen_keys = out.keys;
      return out;
    }
    std::set<GraphKey> seen;
    if (vertices == 1) {
      enumerate_loop_classes(2 * edges, seen);
    } else {
      const BasisCell& below = cell(vertices - 1, edges - 1);
      for (const GraphKey& k : below.gen_keys) {
        FullyOrderedGraph g = decode_key(k);
        for (const IdealEdge& ie : enumerate_ideal_edges(g)) {
          SignedGraph ex = expand_ideal_edge(g, ie);
          seen.insert(canonical_form(ex.graph).key);
        }
      }
      all_loop_unions(vertices, edges, seen);
    }
    for (const GraphKey& k : seen) {
      out.gen_keys.push_back(k);
      const CanonicalForm& cf = canonical_form(decode_key(k));
      if (cf.zero) continue;
      out.keys.push_back(k);
      out.aut.push_back(cf.aut);
    }
    return out;
  }

  // Perfect matchings of {1..2j} on a single vertex of valence 2j.
  void enumerate_loop_classes(int points, std::set<GraphKey>& seen) {
    if (points < 4) return;  // valence >= 3 forces at least two loops
    std::vector<std::pair<int, int>> chords;
    std::vector<char> taken(points + 1, 0);
    std::function<void()> rec = [&]() {
      int a = 0;
      for (int h = 1; h <= points; ++h)
        if (!taken[h]) { a = h; break; }
      if (a == 0) {
        FullyOrderedGraph g{{points}, chords};
        seen.insert(canonical_form(g).key);
        return;
      }
      taken[a] = 1;
      for (int b = a + 1; b <= points; ++b) {
        if (taken[b]) continue;
        taken[b] = 1;
        chords.emplace_back(a, b);
        rec();
        chords.pop_back();
        taken[b] = 0;
      }
      taken[a] = 0;
    };
    rec();
  }

  // Unions of one-vertex all-loop graphs: partitions of `edges` into
  // `vertices` parts of size >= 2.
  void all_loop_unions(int vertices, int edges, std::set<GraphKey>& seen) {
    std::vector<int> parts;
    std::function<void(int, int, int)> rec = [&](int remaining, int slots, int maxPart) {
      if (slots == 0) {
        if (remaining != 0) return;
        combine_loop_parts(parts, seen);
        return;
      }
      for (int p = std::min(maxPart, remaining - 2 * (slots - 1)); p >= 2; --p) {
        parts.push_back(p);
        rec(remaining - p, slots - 1, p);
        parts.pop_back();
      }
    };
    rec(edges, vertices, edges);
  }

  void combine_loop_parts(const std::vector<int>& parts, std::set<GraphKey>& seen) {
    std::vector<const BasisCell*> factors;
    for (int p : parts) {
      const BasisCell& c = cell(1, p);
      if (c.gen_keys.empty()) return;
      factors.push_back(&c);
    }
    std::vector<int> pick(parts.size(), 0);
    while (true) {
      FullyOrderedGraph g;
      for (std::size_t t = 0; t < parts.size(); ++t)
        g = disjoint_union(g, decode_key(factors[t]->gen_keys[pick[t]]));
      seen.insert(canonical_form(g).key);
      int t = static_cast<int>(parts.size()) - 1;
      while (t >= 0 && pick[t] + 1 == static_cast<int>(factors[t]->gen_keys.size())) {
        pick[t] = 0;
        --t;
      }
      if (t < 0) break;
      ++pick[t];
    }
  }

  std::map<std::pair<int, int>, BasisCell> cells_;
};

// Matrix of del from cell (i,j) to cell (i-1,j-1): column per source key.
inline Matrix boundary_matrix(BasisBuilder& bb, int i, int j) {
  const BasisCell& src = bb.cell(i, j);
  const BasisCell& dst = bb.cell(i - 1, j - 1);
  Matrix m = zero_matrix(dst.dim(), src.dim());
  for (int col = 0; col < src.dim(); ++col) {
    GraphChain unit;
    unit.add_key(src.keys[col], Rational(1));
    GraphChain img = boundary(unit);
    for (const auto& [k, v] : img.terms()) {
      int row = dst.index_of(k);
      if (row >= 0) m[row][col] = v;
    }
  }
  return m;
}

inline Matrix coboundary_matrix(BasisBuilder& bb, int i, int j) {
  const BasisCell& src = bb.cell(i, j);
  const BasisCell& dst = bb.cell(i + 1, j + 1);
  Matrix m = zero_matrix(dst.dim(), src.dim());
  for (int col = 0; col < src.dim(); ++col) {
    GraphChain unit;
    unit.add_key(src.keys[col], Rational(1));
    GraphChain img = coboundary(unit);
    for (const auto& [k, v] : img.terms()) {
      int row = dst.index_of(k);
      if (row >= 0) m[row][col] = v;
    }
  }
  return m;
}

struct HomologyRow {
  int chi, vertices, edges;
  int dim, dim_ker, rank_d, dim_h;
};

// Exact homology dimensions of the del-complex along one Euler
// characteristic: dim H_{ij} = dim ker del_{ij} - rank del_{i+1,j+1}.
inline std::vector<HomologyRow> homology_dims(BasisBuilder& bb, int chi, int max_edges) {
  std::vector<HomologyRow> rows;
  for (int i = 1; i <= -2 * chi; ++i) {
    int j = i - chi;
    if (j > max_edges) break;
    if (!cell_feasible(i, j)) continue;
    const BasisCell& c = bb.cell(i, j);
    int dim = c.dim();
    int r_out = cell_feasible(i - 1, j - 1) ? rank(boundary_matrix(bb, i, j)) : 0;
    int dim_ker = dim - r_out;
    int r_in = cell_feasible(i + 1, j + 1) ? rank(boundary_matrix(bb, i + 1, j + 1)) : 0;
    rows.push_back(HomologyRow{chi, i, j, dim, dim_ker, r_out, dim_ker - r_in});
  }
  return rows;
}

}  // namespace rgc
