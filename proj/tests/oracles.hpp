#pragma once

// Test-only oracles, independent of the library's canonicalisation and
// enumeration paths.

#include <algorithm>
#include <functional>
#include <set>
#include <vector>

#include "rgc/ribbon.hpp"

namespace oracle {

using rgc::FullyOrderedGraph;

// All perfect matchings of {1..2k} as sorted (a<b) pair lists.
inline std::vector<std::vector<std::pair<int, int>>> all_matchings(int points) {
  std::vector<std::vector<std::pair<int, int>>> out;
  std::vector<std::pair<int, int>> cur;
  std::vector<char> taken(points + 1, 0);
  std::function<void()> rec = [&]() {
    int a = 0;
    for (int h = 1; h <= points; ++h)
      if (!taken[h]) { a = h; break; }
    if (a == 0) { out.push_back(cur); return; }
    taken[a] = 1;
    for (int b = a + 1; b <= points; ++b) {
      if (taken[b]) continue;
      taken[b] = 1;
      cur.emplace_back(a, b);
      rec();
      cur.pop_back();
      taken[b] = 0;
    }
    taken[a] = 0;
  };
  rec();
  return out;
}

// Ribbon isomorphism test by exhaustive search over all structure-compatible
// half-edge bijections (vertex bijections x cyclic rotations); ignores
// orientation. Baseline for the canonical-form key.
inline bool ribbon_isomorphic(const FullyOrderedGraph& a, const FullyOrderedGraph& b) {
  if (a.valences.size() != b.valences.size() || a.chords.size() != b.chords.size()) return false;
  auto sa = a.valences, sb = b.valences;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) return false;

  int m = a.num_vertices();
  auto startsA = rgc::block_starts(a.valences);
  auto startsB = rgc::block_starts(b.valences);
  auto partnerB = rgc::partner_table(b);

  std::set<std::pair<int, int>> edgesB;
  for (auto [x, y] : b.chords) edgesB.insert({std::min(x, y), std::max(x, y)});

  std::vector<int> img(m, -1);
  std::vector<char> used(m, 0);
  std::vector<int> rot(m, 0);
  std::vector<int> L(a.half_edges() + 1, 0);
  bool found = false;
  std::function<void(int)> rec = [&](int v) {
    if (found) return;
    if (v == m) {
      for (int u = 0; u < m; ++u) {
        int w = img[u];
        int k = a.valences[u];
        for (int s = 0; s < k; ++s)
          L[startsA[u] + 1 + s] = startsB[w] + 1 + ((s + rot[u]) % k);
      }
      for (auto [x, y] : a.chords) {
        int lx = L[x], ly = L[y];
        if (!edgesB.count({std::min(lx, ly), std::max(lx, ly)})) return;
      }
      found = true;
      return;
    }
    for (int w = 0; w < m && !found; ++w) {
      if (used[w] || b.valences[w] != a.valences[v]) continue;
      used[w] = 1;
      img[v] = w;
      for (int r = 0; r < a.valences[v] && !found; ++r) {
        rot[v] = r;
        rec(v + 1);
      }
      used[w] = 0;
    }
  };
  rec(0);
  (void)partnerB;
  return found;
}

// Naive class enumeration for one cell: every chord diagram against every
// valence profile, quotiented by the brute-force isomorphism above. Returns
// one representative per ribbon isomorphism class (zero graphs included).
inline std::vector<FullyOrderedGraph> naive_classes(int vertices, int edges) {
  std::vector<FullyOrderedGraph> reps;
  // valence profiles: partitions of 2*edges into `vertices` parts >= 3,
  // non-increasing to avoid trivial reorderings
  std::vector<std::vector<int>> profiles;
  std::vector<int> cur;
  std::function<void(int, int, int)> parts = [&](int remaining, int slots, int maxPart) {
    if (slots == 0) {
      if (remaining == 0) profiles.push_back(cur);
      return;
    }
    for (int p = std::min(maxPart, remaining - 3 * (slots - 1)); p >= 3; --p) {
      cur.push_back(p);
      parts(remaining - p, slots - 1, p);
      cur.pop_back();
    }
  };
  parts(2 * edges, vertices, 2 * edges);

  for (const auto& prof : profiles)
    for (const auto& matching : all_matchings(2 * edges)) {
      FullyOrderedGraph g{prof, matching};
      bool known = false;
      for (const auto& rep : reps)
        if (ribbon_isomorphic(g, rep)) { known = true; break; }
      if (!known) reps.push_back(g);
    }
  return reps;
}

// Orientation-reversing-automorphism test by raw search over all half-edge
// bijections preserving vertices, edges and cyclic orders. Only for tiny
// graphs.
inline long count_all_bijection_automorphisms(const FullyOrderedGraph& g) {
  int n = g.half_edges();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  auto vertexOf = rgc::vertex_table(g);
  auto starts = rgc::block_starts(g.valences);
  auto partner = rgc::partner_table(g);
  long count = 0;
  do {
    // map h -> perm[h-1]+1 ; vertices to vertices
    bool ok = true;
    for (int v = 0; v < g.num_vertices() && ok; ++v) {
      int k = g.valences[v];
      int w = vertexOf[perm[starts[v]] + 1];
      if (g.valences[w] != k) { ok = false; break; }
      for (int s = 0; s < k; ++s)
        if (vertexOf[perm[starts[v] + s] + 1] != w) { ok = false; break; }
      if (!ok) break;
      // cyclic order preserved: image sequence must be a rotation
      int firstPos = perm[starts[v]] + 1 - (starts[w] + 1);
      for (int s = 0; s < k; ++s) {
        int expect = starts[w] + 1 + ((firstPos + s) % k);
        if (perm[starts[v] + s] + 1 != expect) { ok = false; break; }
      }
    }
    if (!ok) continue;
    for (int h = 1; h <= n && ok; ++h)
      if (perm[partner[h] - 1] + 1 != partner[perm[h - 1] + 1]) ok = false;
    if (ok) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

}  // namespace oracle
