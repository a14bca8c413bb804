#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rgc/tensor.hpp"

namespace rgc {

// A graph presented with every ordering choice made: vertices listed in
// order, half-edges within a vertex in order, edges directed. Half-edges are
// the dense integers 1..2k; vertex r occupies the block of ids
// [start_r+1, start_r+valence_r] where start_r is the valence prefix sum, so
// the presentation is determined by the valence profile and the directed
// chord diagram.
struct FullyOrderedGraph {
  std::vector<int> valences;
  std::vector<std::pair<int, int>> chords;

  int half_edges() const { return 2 * static_cast<int>(chords.size()); }
  int num_vertices() const { return static_cast<int>(valences.size()); }
  int num_edges() const { return static_cast<int>(chords.size()); }
};

using OrientedChordDiagram = std::vector<std::pair<int, int>>;

inline void validate_graph(const FullyOrderedGraph& g, int min_valence = 3) {
  long sum = 0;
  for (int v : g.valences) {
    if (v < min_valence)
      throw std::invalid_argument("graph: vertex valence below " + std::to_string(min_valence));
    sum += v;
  }
  if (sum != g.half_edges())
    throw std::invalid_argument("graph: valence sum does not match half-edge count");
  std::vector<char> seen(g.half_edges() + 1, 0);
  for (auto [a, b] : g.chords) {
    for (int h : {a, b}) {
      if (h < 1 || h > g.half_edges()) throw std::invalid_argument("graph: half-edge id out of range");
      if (seen[h]) throw std::invalid_argument("graph: chords do not partition the half-edges");
      seen[h] = 1;
    }
  }
}

// The construction Gamma_{k_1..k_m}(c): vertices are consecutive blocks of
// half-edges, edges are the chords, all orderings read off the data.
inline FullyOrderedGraph graph_from_chords(const OrientedChordDiagram& c,
                                           const std::vector<int>& valences,
                                           int min_valence = 3) {
  FullyOrderedGraph g{valences, c};
  validate_graph(g, min_valence);
  return g;
}

inline OrientedChordDiagram chords_from_graph(const FullyOrderedGraph& g) { return g.chords; }

inline std::vector<int> block_starts(const std::vector<int>& valences) {
  std::vector<int> s(valences.size() + 1, 0);
  for (std::size_t i = 0; i < valences.size(); ++i) s[i + 1] = s[i] + valences[i];
  return s;
}

// vertex_of[h] for 1-based half-edge ids.
inline std::vector<int> vertex_table(const FullyOrderedGraph& g) {
  std::vector<int> vo(g.half_edges() + 1, -1);
  auto st = block_starts(g.valences);
  for (int v = 0; v < g.num_vertices(); ++v)
    for (int h = st[v] + 1; h <= st[v + 1]; ++h) vo[h] = v;
  return vo;
}

inline std::vector<int> partner_table(const FullyOrderedGraph& g) {
  std::vector<int> p(g.half_edges() + 1, 0);
  for (auto [a, b] : g.chords) { p[a] = b; p[b] = a; }
  return p;
}

// Canonical-form key: [m, valences..., a_1, b_1, ..., a_k, b_k] with chords
// normalised to (small, large) and sorted. The key doubles as a presentation.
using GraphKey = std::vector<int>;

inline GraphKey encode_key(const FullyOrderedGraph& g) {
  GraphKey k;
  k.push_back(g.num_vertices());
  for (int v : g.valences) k.push_back(v);
  auto chords = g.chords;
  for (auto& c : chords)
    if (c.first > c.second) std::swap(c.first, c.second);
  std::sort(chords.begin(), chords.end());
  for (auto [a, b] : chords) { k.push_back(a); k.push_back(b); }
  return k;
}

inline FullyOrderedGraph decode_key(const GraphKey& k) {
  FullyOrderedGraph g;
  if (k.empty()) throw std::invalid_argument("decode_key: empty key");
  int m = k[0];
  g.valences.assign(k.begin() + 1, k.begin() + 1 + m);
  for (std::size_t i = 1 + m; i + 1 < k.size(); i += 2) g.chords.emplace_back(k[i], k[i + 1]);
  return g;
}

struct CanonicalForm {
  GraphKey key;    // canonical presentation
  int sign;        // [input] = sign * [canonical] in the graph complex
  bool zero;       // an orientation-reversing automorphism exists
  long aut;        // order of the orientation-preserving automorphism group
  long ribbon_aut; // order of the full ribbon automorphism group
};

namespace detail {

struct CanonSearch {
  const FullyOrderedGraph& g;
  int m, n2;
  std::vector<int> starts, vertexOf, partner;
  std::vector<char> isFirst;
  std::vector<int> targetVal;   // ascending valence profile; shared by all candidates
  std::vector<int> slotOfVal;   // ordering of old vertices by valence (candidate pools)

  std::vector<int> label;       // old half-edge -> new label (0 = unassigned)
  std::vector<char> used;
  std::vector<int> enc;         // new label -> partner's new label, or 0 if later
  std::vector<int> arrangement; // slot -> old vertex
  int flips = 0;

  std::vector<int> best;
  bool haveBest = false;
  int bestSign = 1;
  long mult = 0;
  bool bothSigns = false;
  long generation = 0;  // bumped whenever best is replaced

  explicit CanonSearch(const FullyOrderedGraph& graph)
      : g(graph), m(graph.num_vertices()), n2(graph.half_edges()) {
    starts = block_starts(g.valences);
    vertexOf = vertex_table(g);
    partner = partner_table(g);
    isFirst.assign(n2 + 1, 0);
    for (auto [a, b] : g.chords) isFirst[a] = 1;
    targetVal = g.valences;
    std::sort(targetVal.begin(), targetVal.end());
    label.assign(n2 + 1, 0);
    used.assign(m, 0);
    enc.assign(n2 + 1, 0);
    arrangement.assign(m, -1);
  }

  int arrangement_sign() const {
    int s = 1;
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j)
        if (arrangement[i] > arrangement[j]) s = -s;
    return s;
  }

  void finish(int cmp) {
    int sign = arrangement_sign() * ((flips & 1) ? -1 : 1);
    if (!haveBest || cmp < 0) {
      best.assign(enc.begin(), enc.end());
      haveBest = true;
      bestSign = sign;
      mult = 1;
      bothSigns = false;
      ++generation;
    } else {
      ++mult;
      if (sign != bestSign) bothSigns = true;
    }
  }

  // slot: next vertex position to fill; pos: labels assigned so far;
  // cmp: -1 when the current prefix is strictly below best, 0 when tied.
  // Any new best recorded inside a subtree starts with the subtree's prefix,
  // so the frame's comparison state resets to "tied" afterwards.
  void dfs(int slot, int pos, int cmp) {
    if (slot == m) { finish(cmp); return; }
    int want = targetVal[slot];
    for (int w = 0; w < m; ++w) {
      if (used[w] || g.valences[w] != want) continue;
      used[w] = 1;
      arrangement[slot] = w;
      int k = g.valences[w];
      for (int rot = 0; rot < k; ++rot) {
        int newFlips = 0, cmp2 = cmp, p = pos, assigned = 0;
        bool pruned = false;
        for (int s = 0; s < k; ++s) {
          int h = starts[w] + 1 + ((s + rot) % k);
          ++p;
          label[h] = p;
          ++assigned;
          int pl = label[partner[h]];
          int e = (pl && pl < p) ? pl : 0;
          enc[p] = e;
          if (e && isFirst[h]) ++newFlips;  // stored direction ran later->earlier
          if (cmp2 == 0 && haveBest) {
            if (e > best[p]) { pruned = true; break; }
            if (e < best[p]) cmp2 = -1;
          }
        }
        if (!pruned) {
          long gen = generation;
          flips += newFlips;
          dfs(slot + 1, pos + k, cmp2);
          flips -= newFlips;
          if (generation != gen) cmp = 0;  // best now shares our prefix
        }
        for (int s = 0; s < assigned; ++s) label[starts[w] + 1 + ((s + rot) % k)] = 0;
      }
      used[w] = 0;
      arrangement[slot] = -1;
    }
  }
};

}  // namespace detail

// Classifies an oriented ribbon graph presentation up to orientation-
// preserving isomorphism. Backtracking over vertex orders and cyclic
// rotations, minimising the relabelled chord encoding lexicographically.
inline CanonicalForm canonical_form_uncached(const FullyOrderedGraph& g) {
  if (g.num_vertices() == 0) {
    return CanonicalForm{encode_key(g), 1, false, 1, 1};
  }
  detail::CanonSearch search(g);
  search.dfs(0, 0, search.haveBest ? 0 : -1);
  FullyOrderedGraph canon;
  canon.valences = search.targetVal;
  for (int L = 1; L <= search.n2; ++L)
    if (search.best[L] > 0) canon.chords.emplace_back(search.best[L], L);
  std::sort(canon.chords.begin(), canon.chords.end());
  bool zero = search.bothSigns;
  long aut = zero ? search.mult / 2 : search.mult;
  return CanonicalForm{encode_key(canon), search.bestSign, zero, aut, search.mult};
}

namespace detail {

struct KeyHash {
  std::size_t operator()(const GraphKey& k) const {
    std::size_t h = 1469598103934665603ull;
    for (int v : k) {
      h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

// Sharded, size-capped presentation cache. canonical_form is pure, so a
// cleared shard only costs recomputation.
struct CanonCache {
  static constexpr int kShards = 64;
  static constexpr std::size_t kShardCap = 1 << 15;
  struct Shard {
    std::mutex mu;
    std::unordered_map<GraphKey, CanonicalForm, KeyHash> map;
  };
  Shard shards[kShards];

  CanonicalForm get(const FullyOrderedGraph& g) {
    GraphKey raw;
    raw.reserve(1 + g.valences.size() + 2 * g.chords.size());
    raw.push_back(g.num_vertices());
    for (int v : g.valences) raw.push_back(v);
    for (auto [a, b] : g.chords) { raw.push_back(a); raw.push_back(b); }
    Shard& s = shards[KeyHash{}(raw) % kShards];
    {
      std::lock_guard<std::mutex> lock(s.mu);
      auto it = s.map.find(raw);
      if (it != s.map.end()) return it->second;
    }
    CanonicalForm cf = canonical_form_uncached(g);
    std::lock_guard<std::mutex> lock(s.mu);
    if (s.map.size() >= kShardCap) s.map.clear();
    s.map.emplace(std::move(raw), cf);
    return cf;
  }
};

inline CanonCache& canon_cache() {
  static CanonCache cache;
  return cache;
}

}  // namespace detail

inline CanonicalForm canonical_form(const FullyOrderedGraph& g) {
  return detail::canon_cache().get(g);
}

struct GraphAut {
  Perm map;       // 0-based half-edge permutation
  int character;  // action on the orientation
};

// All ribbon automorphisms (vertex-order and rotation moves preserving the
// edge set), each tagged by its orientation character.
inline std::vector<GraphAut> automorphism_group(const FullyOrderedGraph& g) {
  std::vector<GraphAut> out;
  int m = g.num_vertices();
  if (m == 0) {
    out.push_back(GraphAut{{}, 1});
    return out;
  }
  auto starts = block_starts(g.valences);
  auto partner = partner_table(g);
  std::vector<char> isFirst(g.half_edges() + 1, 0);
  for (auto [a, b] : g.chords) isFirst[a] = 1;

  std::vector<int> pi(m, -1);
  std::vector<int> rot(m, 0);
  std::vector<char> used(m, 0);
  std::vector<int> L(g.half_edges() + 1, 0);

  // Slot t receives old vertex pi[t] read from rotation rot[t]; a full
  // assignment is an automorphism when the induced relabelling maps the edge
  // set to itself.
  std::function<void(int)> rec = [&](int slot) {
    if (slot == m) {
      for (int t = 0; t < m; ++t) {
        int w = pi[t];
        int k = g.valences[t];
        for (int s = 0; s < k; ++s) L[starts[w] + 1 + ((s + rot[t]) % k)] = starts[t] + 1 + s;
      }
      int flips = 0;
      for (auto [a, b] : g.chords) {
        int la = L[a], lb = L[b];
        if (partner[la] != lb) return;  // image pair is not an edge
        // the image of the directed edge (a,b) runs la->lb; the stored
        // direction of the edge {la,lb} runs la->lb only when la is first
        if (!isFirst[la]) ++flips;
      }
      int s = 1;
      for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
          if (pi[i] > pi[j]) s = -s;
      if (flips & 1) s = -s;
      Perm p(g.half_edges());
      for (int h = 1; h <= g.half_edges(); ++h) p[h - 1] = L[h] - 1;
      out.push_back(GraphAut{std::move(p), s});
      return;
    }
    for (int w = 0; w < m; ++w) {
      if (used[w] || g.valences[w] != g.valences[slot]) continue;
      used[w] = 1;
      pi[slot] = w;
      for (int r = 0; r < g.valences[w]; ++r) {
        rot[slot] = r;
        rec(slot + 1);
      }
      used[w] = 0;
    }
  };
  rec(0);
  return out;
}

// ---- structural operations -------------------------------------------------

struct SignedGraph {
  FullyOrderedGraph graph;
  int sign;
};

// Contracts the non-loop edge with index e. The merged vertex goes first in
// the vertex order; the accumulated sign is the character of the vertex
// reordering that realises the required presentation.
inline SignedGraph contract_edge(const FullyOrderedGraph& g, int e) {
  auto [a, b] = g.chords.at(e);
  auto vertexOf = vertex_table(g);
  int va = vertexOf[a], vb = vertexOf[b];
  if (va == vb) throw std::invalid_argument("contract_edge: loops cannot be contracted");
  auto starts = block_starts(g.valences);

  // Order vertices (va, vb, rest); sign of that reordering.
  std::vector<int> order;
  order.push_back(va);
  order.push_back(vb);
  for (int v = 0; v < g.num_vertices(); ++v)
    if (v != va && v != vb) order.push_back(v);
  int sign = 1;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = i + 1; j < order.size(); ++j)
      if (order[i] > order[j]) sign = -sign;

  // Rotate va so a is last, vb so b is last; collect surviving half-edges.
  auto rotated_minus = [&](int v, int last) {
    int k = g.valences[v];
    int posLast = last - (starts[v] + 1);
    std::vector<int> r;
    for (int s = 1; s < k; ++s) r.push_back(starts[v] + 1 + ((posLast + s) % k));
    return r;
  };
  std::vector<std::vector<int>> blocks;
  std::vector<int> merged = rotated_minus(va, a);
  std::vector<int> tail = rotated_minus(vb, b);
  merged.insert(merged.end(), tail.begin(), tail.end());
  blocks.push_back(merged);
  for (std::size_t t = 2; t < order.size(); ++t) {
    int v = order[t];
    std::vector<int> blk;
    for (int h = starts[v] + 1; h <= starts[v + 1]; ++h) blk.push_back(h);
    blocks.push_back(blk);
  }

  std::vector<int> newLabel(g.half_edges() + 1, 0);
  FullyOrderedGraph out;
  int next = 0;
  for (const auto& blk : blocks) {
    out.valences.push_back(static_cast<int>(blk.size()));
    for (int h : blk) newLabel[h] = ++next;
  }
  for (int i = 0; i < g.num_edges(); ++i) {
    if (i == e) continue;
    out.chords.emplace_back(newLabel[g.chords[i].first], newLabel[g.chords[i].second]);
  }
  return SignedGraph{std::move(out), sign};
}

// An ideal edge: an unordered split of one vertex's cyclic order into two
// arcs of length >= 2. Stored with the arc at the lower cut first; expansion
// results for the two arc roles agree up to an orientation-preserving
// isomorphism.
struct IdealEdge {
  int vertex;
  std::vector<int> arc_a;  // half-edge ids, in cyclic order
  std::vector<int> arc_b;
};

inline std::vector<IdealEdge> enumerate_ideal_edges(const FullyOrderedGraph& g) {
  std::vector<IdealEdge> out;
  auto starts = block_starts(g.valences);
  for (int v = 0; v < g.num_vertices(); ++v) {
    int k = g.valences[v];
    auto he = [&](int pos) { return starts[v] + 1 + (pos % k); };
    // cuts before positions g1 < g2; arcs [g1..g2) and [g2..g1+k)
    for (int g1 = 0; g1 < k; ++g1)
      for (int g2 = g1 + 2; g2 < k && g2 <= g1 + k - 2; ++g2) {
        IdealEdge ie;
        ie.vertex = v;
        for (int s = g1; s < g2; ++s) ie.arc_a.push_back(he(s));
        for (int s = g2; s < g1 + k; ++s) ie.arc_b.push_back(he(s));
        out.push_back(std::move(ie));
      }
  }
  return out;
}

// Expansion at an ideal edge: the split vertex's two halves become vertices
// (arc_a, a) and (arc_b, b), first and second in the vertex order, joined by
// the new edge (a, b).
inline SignedGraph expand_ideal_edge(const FullyOrderedGraph& g, const IdealEdge& ie) {
  if (ie.arc_a.size() < 2 || ie.arc_b.size() < 2)
    throw std::invalid_argument("expand_ideal_edge: arcs must have length >= 2");
  int v = ie.vertex;
  if (v < 0 || v >= g.num_vertices()) throw std::invalid_argument("expand_ideal_edge: bad vertex");
  if (ie.arc_a.size() + ie.arc_b.size() != static_cast<std::size_t>(g.valences[v]))
    throw std::invalid_argument("expand_ideal_edge: arcs do not partition the vertex");

  auto starts = block_starts(g.valences);
  // Validate the split: juxtaposition arc_a . arc_b must be a rotation of the
  // stored cyclic order at v.
  {
    std::vector<int> juxt = ie.arc_a;
    juxt.insert(juxt.end(), ie.arc_b.begin(), ie.arc_b.end());
    int k = g.valences[v];
    bool ok = false;
    for (int rot = 0; rot < k && !ok; ++rot) {
      bool match = true;
      for (int s = 0; s < k; ++s)
        if (juxt[s] != starts[v] + 1 + ((s + rot) % k)) { match = false; break; }
      ok = match;
    }
    if (!ok) throw std::invalid_argument("expand_ideal_edge: not an ideal edge of the vertex");
  }

  // Vertex order (v_a, v_b, others); moving v to the front carries a sign.
  int sign = 1;
  for (int u = 0; u < v; ++u) sign = -sign;  // v moves past the vertices before it

  std::vector<std::vector<int>> blocks;
  const int NEW_A = -1, NEW_B = -2;
  std::vector<int> blkA = ie.arc_a;
  blkA.push_back(NEW_A);
  std::vector<int> blkB = ie.arc_b;
  blkB.push_back(NEW_B);
  blocks.push_back(blkA);
  blocks.push_back(blkB);
  for (int u = 0; u < g.num_vertices(); ++u) {
    if (u == v) continue;
    std::vector<int> blk;
    for (int h = starts[u] + 1; h <= starts[u + 1]; ++h) blk.push_back(h);
    blocks.push_back(blk);
  }

  std::vector<int> newLabel(g.half_edges() + 1, 0);
  int labelA = 0, labelB = 0;
  FullyOrderedGraph out;
  int next = 0;
  for (const auto& blk : blocks) {
    out.valences.push_back(static_cast<int>(blk.size()));
    for (int h : blk) {
      ++next;
      if (h == NEW_A) labelA = next;
      else if (h == NEW_B) labelB = next;
      else newLabel[h] = next;
    }
  }
  for (auto [x, y] : g.chords) out.chords.emplace_back(newLabel[x], newLabel[y]);
  out.chords.emplace_back(labelA, labelB);
  return SignedGraph{std::move(out), sign};
}

// The canonical ideal edge of g/e determined by contracting e: the two arcs
// of the merged vertex that came from the endpoints of e.
inline IdealEdge contraction_ideal_edge(const FullyOrderedGraph& g, int e) {
  auto [a, b] = g.chords.at(e);
  auto vertexOf = vertex_table(g);
  int va = vertexOf[a], vb = vertexOf[b];
  if (va == vb) throw std::invalid_argument("contraction_ideal_edge: loop");
  int ka = g.valences[va], kb = g.valences[vb];
  IdealEdge ie;
  ie.vertex = 0;
  for (int s = 0; s < ka - 1; ++s) ie.arc_a.push_back(s + 1);
  for (int s = 0; s < kb - 1; ++s) ie.arc_b.push_back(ka - 1 + s + 1);
  return ie;
}

inline FullyOrderedGraph disjoint_union(const FullyOrderedGraph& a, const FullyOrderedGraph& b) {
  FullyOrderedGraph out = a;
  int off = a.half_edges();
  for (int v : b.valences) out.valences.push_back(v);
  for (auto [x, y] : b.chords) out.chords.emplace_back(x + off, y + off);
  return out;
}

// Connected components in order of first vertex occurrence, each relabelled
// densely, plus the sign of the vertex permutation that groups the blocks.
struct ComponentSplit {
  std::vector<FullyOrderedGraph> components;
  std::vector<std::vector<int>> vertex_sets;  // old vertex indices per component
  int sign;
};

inline ComponentSplit connected_components(const FullyOrderedGraph& g) {
  int m = g.num_vertices();
  std::vector<int> comp(m, -1);
  auto vertexOf = vertex_table(g);
  // union-find
  std::vector<int> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (auto [a, b] : g.chords) {
    int ra = find(vertexOf[a]), rb = find(vertexOf[b]);
    if (ra != rb) parent[ra] = rb;
  }
  std::vector<int> roots;
  for (int v = 0; v < m; ++v) {
    int r = find(v);
    if (comp[r] < 0) { comp[r] = static_cast<int>(roots.size()); roots.push_back(r); }
  }
  int c = static_cast<int>(roots.size());
  ComponentSplit out;
  out.vertex_sets.resize(c);
  for (int v = 0; v < m; ++v) out.vertex_sets[comp[find(v)]].push_back(v);

  // Sign of sorting vertices stably by component.
  std::vector<int> grouped;
  for (const auto& vs : out.vertex_sets) grouped.insert(grouped.end(), vs.begin(), vs.end());
  int sign = 1;
  for (std::size_t i = 0; i < grouped.size(); ++i)
    for (std::size_t j = i + 1; j < grouped.size(); ++j)
      if (grouped[i] > grouped[j]) sign = -sign;
  out.sign = sign;

  auto starts = block_starts(g.valences);
  for (int t = 0; t < c; ++t) {
    FullyOrderedGraph sub;
    std::vector<int> newLabel(g.half_edges() + 1, 0);
    int next = 0;
    for (int v : out.vertex_sets[t]) {
      sub.valences.push_back(g.valences[v]);
      for (int h = starts[v] + 1; h <= starts[v + 1]; ++h) newLabel[h] = ++next;
    }
    for (auto [a, b] : g.chords)
      if (newLabel[a] && newLabel[b]) sub.chords.emplace_back(newLabel[a], newLabel[b]);
    out.components.push_back(std::move(sub));
  }
  return out;
}

inline bool is_connected(const FullyOrderedGraph& g) {
  return g.num_vertices() > 0 && connected_components(g).components.size() == 1;
}

// One-line graph literal, the external presentation format.
inline std::string graph_literal(const FullyOrderedGraph& g) {
  std::string s = "valences=[";
  for (std::size_t i = 0; i < g.valences.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(g.valences[i]);
  }
  s += "]; chords=[";
  for (std::size_t i = 0; i < g.chords.size(); ++i) {
    if (i) s += ",";
    s += "(" + std::to_string(g.chords[i].first) + "," + std::to_string(g.chords[i].second) + ")";
  }
  s += "]";
  return s;
}

}  // namespace rgc
