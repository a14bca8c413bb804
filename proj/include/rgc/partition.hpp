#pragma once

#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "rgc/ainfinity.hpp"
#include "rgc/basis.hpp"
#include "rgc/feynman.hpp"

namespace rgc {

// Evaluation context for one algebra: caches the dual pairing used to
// contract tensors along edges.
class PartitionContext {
 public:
  explicit PartitionContext(const AInfinityAlgebra& a)
      : algebra_(&a), dual_(a.pi_u.dim() ? inverse_pairing(a.pairing) : a.pairing) {}

  const AInfinityAlgebra& algebra() const { return *algebra_; }
  Rational dual_form(int i, int j) const { return dual_.at(i, j); }

  // Z_A on the canonical representative of a nonzero class: attach h_k at the
  // vertices, permute into contraction order, contract with the dual pairing,
  // divide by |Aut|.
  Rational value(const GraphKey& key) const {
    FullyOrderedGraph g = decode_key(key);
    const CanonicalForm& cf = canonical_form(g);
    if (cf.zero) throw std::invalid_argument("partition_value: zero graph");
    Rational amp = raw_amplitude(g);
    return amp / Rational(cf.aut);
  }

  // The unnormalised amplitude on any fully ordered representative.
  Rational raw_amplitude(const FullyOrderedGraph& g) const {
    const SuperSpace& s = algebra_->pi_u;
    int m = g.num_vertices();
    if (m == 0) return Rational(1);  // empty product
    std::vector<const GradedTensor*> at(m);
    for (int v = 0; v < m; ++v) {
      at[v] = algebra_->h_at(g.valences[v]);
      if (!at[v]) return Rational(0);  // a missing h_k is the zero tensor
    }
    Perm sigma = sigma_of_chords(g.chords);
    Rational acc(0);
    IndexTuple tuple(g.half_edges());
    std::vector<Parity> par(g.half_edges());
    std::function<void(int, int, Rational)> rec = [&](int v, int pos, Rational coeff) {
      if (v == m) {
        Rational prod = coeff;
        for (const auto& [a, b] : g.chords) {
          prod *= dual_.at(tuple[a - 1], tuple[b - 1]);
          if (prod.is_zero()) return;
        }
        for (int i = 0; i < g.half_edges(); ++i) par[i] = s.parity(tuple[i]);
        int sign = koszul_sign(sigma, par);
        acc += prod * Rational(sign);
        return;
      }
      for (const auto& [t, c] : at[v]->entries()) {
        for (int i = 0; i < g.valences[v]; ++i) tuple[pos + i] = t[i];
        rec(v + 1, pos + g.valences[v], coeff * c);
      }
    };
    rec(0, 0, Rational(1));
    return acc;
  }

 private:
  const AInfinityAlgebra* algebra_;
  InnerProduct dual_;
};

inline Rational partition_value(const AInfinityAlgebra& a, const GraphKey& key) {
  return PartitionContext(a).value(key);
}

struct PartitionChain {
  std::string algebra;
  int max_edges = 0;
  GraphChain chain;
};

// Z~_A through the given edge bound, empty graph included.
inline PartitionChain partition_chain(const AInfinityAlgebra& a, int max_edges,
                                      BasisBuilder& bb) {
  PartitionContext ctx(a);
  PartitionChain out{a.name, max_edges, {}};
  for (auto [i, j] : bb.cells_in_range(max_edges)) {
    const BasisCell& cell = bb.cell(i, j);
    for (const GraphKey& k : cell.keys) {
      Rational v = ctx.value(k);
      if (!v.is_zero()) out.chain.add_key(k, v);
    }
  }
  return out;
}

inline PartitionChain connected_partition_chain(const AInfinityAlgebra& a, int max_edges,
                                                BasisBuilder& bb) {
  PartitionChain all = partition_chain(a, max_edges, bb);
  PartitionChain out{a.name, max_edges, {}};
  for (const auto& [k, v] : all.chain.terms())
    if (is_connected(decode_key(k))) out.chain.add_key(k, v);
  return out;
}

// exp under disjoint union, truncated by edge count; exact division by n!.
inline GraphChain exp_chain(const GraphChain& connected, int max_edges) {
  auto truncate = [max_edges](const GraphChain& c) {
    GraphChain out;
    for (const auto& [k, v] : c.terms())
      if (decode_key(k).num_edges() <= max_edges) out.add_key(k, v);
    return out;
  };
  GraphChain result;
  result.add(FullyOrderedGraph{}, Rational(1));
  GraphChain power = result;
  for (int n = 1;; ++n) {
    power = truncate(chain_union(power, connected));
    if (power.is_zero()) break;
    result += power.scaled(Rational(1) / factorial(n));
  }
  return result;
}

// ---- characteristic classes ---------------------------------------------------

struct CharacteristicClass {
  SuperSpace letters;
  int degree_bound = 0;
  CEChain chain;  // 1 + h' + h'^2/2 + ... truncated

  CharacteristicClass(SuperSpace l, int bound) : letters(std::move(l)), degree_bound(bound), chain(letters) {}
};

// Restriction to the monomials that can pair against graphs in range: at
// most max_monomials wedge factors and max_letters letters. Pairings against
// a fixed graph depend on exactly one (vertices, letters) component, so the
// truncation is lossless for every in-range check.
inline CEChain truncate_chain(const CEChain& x, int max_monomials, int max_letters) {
  CEChain out(x.space());
  for (const auto& [m, c] : x.terms()) {
    if (static_cast<int>(m.size()) > max_monomials) continue;
    int letters = 0;
    for (const Letters& w : m) letters += static_cast<int>(w.size());
    if (letters > max_letters) continue;
    out.add(m, c);
  }
  return out;
}

inline CharacteristicClass characteristic_class(const AInfinityAlgebra& a, int degree_bound) {
  HamiltonianCoordinates hc = hamiltonian_coordinates(a);
  CharacteristicClass out(hc.letters, degree_bound);
  CEChain h1 = hc.as_chain();
  CEChain power(hc.letters);
  power.add(Monomial{}, Rational(1));
  out.chain += power;
  for (int r = 1; r <= degree_bound; ++r) {
    // power <- power ^ h' / r
    CEChain next(hc.letters);
    for (const auto& [m, c] : power.terms())
      for (const auto& [m2, c2] : h1.terms()) {
        Monomial cat = m;
        cat.insert(cat.end(), m2.begin(), m2.end());
        next.add(cat, c * c2);
      }
    power = next.scaled(Rational(1) / Rational(r));
    if (power.is_zero()) break;
    out.chain += power;
  }
  return out;
}

// ---- verification reports ------------------------------------------------------

struct CheckReport {
  bool ok = true;
  long checks = 0;
  std::vector<std::string> failures;

  void count(bool pass, const std::string& witness) {
    ++checks;
    if (!pass) {
      ok = false;
      failures.push_back(witness);
    }
  }
};

// Z_A(delta Gamma) = 0 for every basis graph in range.
inline CheckReport verify_cycle_condition(const AInfinityAlgebra& a, int max_edges,
                                          BasisBuilder& bb) {
  PartitionContext ctx(a);
  CheckReport rep;
  for (auto [i, j] : bb.cells_in_range(max_edges)) {
    for (const GraphKey& k : bb.cell(i, j).keys) {
      GraphChain unit;
      unit.add_key(k, Rational(1));
      GraphChain dk = coboundary(unit);
      Rational acc(0);
      for (const auto& [k2, c] : dk.terms()) acc += c * ctx.value(k2);
      rep.count(acc.is_zero(), "cycle: Z(delta G) != 0 at " + graph_literal(decode_key(k)));
    }
  }
  return rep;
}

// exp(Z~C) = Z~ coefficientwise through the edge bound.
inline CheckReport verify_exp_relation(const AInfinityAlgebra& a, int max_edges,
                                       BasisBuilder& bb) {
  CheckReport rep;
  PartitionChain all = partition_chain(a, max_edges, bb);
  PartitionChain conn = connected_partition_chain(a, max_edges, bb);
  GraphChain expd = exp_chain(conn.chain, max_edges);
  GraphChain diff = expd;
  diff += all.chain.scaled(Rational(-1));
  rep.count(diff.is_zero(), "exp: exp(Z~C) differs from Z~ for " + a.name);
  return rep;
}

// F_Gamma(c_A) = |Aut Gamma| Z_A(Gamma) for every basis graph in range,
// through the two independent pipelines.
inline CheckReport verify_equivalence(const AInfinityAlgebra& a, int max_edges,
                                      BasisBuilder& bb) {
  CheckReport rep;
  PartitionContext ctx(a);
  int degree_bound = (2 * max_edges) / 3;
  CharacteristicClass ca = characteristic_class(a, degree_bound);
  ProfiledTensor etn = eps_TN(truncate_chain(ca.chain, degree_bound, 2 * max_edges));
  for (auto [i, j] : bb.cells_in_range(max_edges)) {
    for (const GraphKey& k : bb.cell(i, j).keys) {
      Rational lhs = feynman_oriented(k, etn);
      const CanonicalForm& cf = canonical_form(decode_key(k));
      Rational rhs = Rational(cf.aut) * ctx.value(k);
      rep.count(lhs == rhs, "equivalence fails at " + graph_literal(decode_key(k)));
    }
  }
  return rep;
}

// Pairings of c_{A+B} against every graph in range match those of the
// stable product c_A . c_B.
inline CheckReport verify_direct_sum(const AInfinityAlgebra& a, const AInfinityAlgebra& b,
                                     int max_edges, BasisBuilder& bb) {
  CheckReport rep;
  AInfinityAlgebra sum = direct_sum(a, b);
  int degree_bound = (2 * max_edges) / 3;
  int max_letters = 2 * max_edges;
  CharacteristicClass cs = characteristic_class(sum, degree_bound);
  CharacteristicClass caa = characteristic_class(a, degree_bound);
  CharacteristicClass cbb = characteristic_class(b, degree_bound);
  CEChain prod = truncate_chain(stable_product(caa.chain, cbb.chain), degree_bound, max_letters);
  ProfiledTensor etnSum = eps_TN(truncate_chain(cs.chain, degree_bound, max_letters));
  ProfiledTensor etnProd = eps_TN(prod);
  for (auto [i, j] : bb.cells_in_range(max_edges)) {
    for (const GraphKey& k : bb.cell(i, j).keys) {
      Rational lhs = ce_graph_pairing(etnSum, k);
      Rational rhs = ce_graph_pairing(etnProd, k);
      rep.count(lhs == rhs, "direct sum fails at " + graph_literal(decode_key(k)));
    }
  }
  return rep;
}

// ---- homotopy invariance --------------------------------------------------------

// exp(ad_g) applied to a Hamiltonian word packet, truncated by word length.
inline WordSum conjugate_hamiltonian(const SuperSpace& letters, const WordSum& words,
                                     const Letters& g, int max_letters) {
  WordSum result = words;
  WordSum current = words;
  Rational inv_factorial(1);
  for (int r = 1;; ++r) {
    WordSum next(letters);
    for (const auto& [w, c] : current.terms()) {
      WordSum br = bracket_words(letters, g, w);
      for (const auto& [w2, c2] : br.terms())
        if (static_cast<int>(w2.size()) <= max_letters) next.add(w2, c * c2);
    }
    if (next.is_zero()) break;
    current = next;
    inv_factorial = inv_factorial / Rational(r);
    result += current.scaled(inv_factorial);
  }
  return result;
}

// Random even word of length 3 or 4 over the letter space, suitable as the
// Hamiltonian of an order >= 2 symplectic vector field.
inline Letters random_even_generator(const SuperSpace& letters, std::mt19937& rng) {
  for (int tries = 0; tries < 1000; ++tries) {
    int len = 3 + static_cast<int>(rng() % 2);
    Letters w(len);
    for (int& l : w) l = static_cast<int>(rng() % letters.dim());
    if (word_parity(letters, w) != Parity::Even) continue;
    if (canonical_rotation(letters, w).zero) continue;
    return w;
  }
  throw std::logic_error("random_even_generator: no generator found");
}

// Z~_{A'} - Z~_A lies in the image of del within every bigraded cell in
// range, certified by exact rank computations.
inline CheckReport verify_homotopy_invariance(const AInfinityAlgebra& a, int max_edges,
                                              int conjugations, unsigned seed,
                                              BasisBuilder& bb) {
  CheckReport rep;
  HamiltonianCoordinates hc = hamiltonian_coordinates(a);
  // pad so that quadratic-plus generators exist; residues ride along
  const SymplecticTag& t = hc.letters.tag();
  int n = std::max(1, t.n), m = std::max(2, t.m);
  std::vector<Rational> diag = t.odd_diagonal;
  while (static_cast<int>(diag.size()) < m) diag.push_back(Rational(1));
  SuperSpace big = SuperSpace::symplectic(n, m, diag);
  WordSum base(big);
  for (const auto& [w, c] : hc.words.terms())
    base.add(shift_letters(t, big.tag(), w, 0, 0), c);
  AInfinityAlgebra padded = algebra_on_letters(big, base, a.name + "~pad");
  PartitionChain za = partition_chain(padded, max_edges, bb);

  std::mt19937 rng(seed);
  for (int c = 0; c < conjugations; ++c) {
    // draw generators until the flow visibly moves the partition chain, so
    // the membership check below is not vacuous
    Letters g;
    WordSum conj(big);
    GraphChain diff;
    PartitionChain zb;
    for (int tries = 0;; ++tries) {
      g = random_even_generator(big, rng);
      conj = conjugate_hamiltonian(big, base, g, 2 * max_edges);
      if (!(conj == base)) {
        AInfinityAlgebra movedProbe = algebra_on_letters(big, conj, a.name + "~conj");
        zb = partition_chain(movedProbe, max_edges, bb);
        diff = zb.chain;
        diff += za.chain.scaled(Rational(-1));
        if (!diff.is_zero()) break;
      }
      if (tries > 200) throw std::logic_error("homotopy: no moving generator found");
    }
    {
      // the truncated flow satisfies the master equation below the
      // truncation length; residual terms above it are truncation artifacts
      WordSum master = bracket(conj, conj);
      bool ok = true;
      for (const auto& [w, c2] : master.terms())
        if (static_cast<int>(w.size()) <= 2 * max_edges && !c2.is_zero()) ok = false;
      rep.count(ok, "conjugated Hamiltonian broke the master equation in range");
    }
    // per-cell membership in the image of del
    for (auto [i, j] : bb.cells_in_range(max_edges)) {
      const BasisCell& cell = bb.cell(i, j);
      std::vector<Rational> v(cell.dim(), Rational(0));
      bool any = false;
      for (int idx = 0; idx < cell.dim(); ++idx) {
        v[idx] = diff.coefficient(cell.keys[idx]);
        if (!v[idx].is_zero()) any = true;
      }
      if (!any) continue;
      if (!cell_feasible(i + 1, j + 1)) {
        rep.count(false, "difference not a boundary: no source cell above");
        continue;
      }
      Matrix dmat = boundary_matrix(bb, i + 1, j + 1);
      rep.count(in_column_space(dmat, v),
                "difference not in im(del) at cell " + std::to_string(i) + "," + std::to_string(j));
    }
  }
  return rep;
}

// Odd-vertex vanishing, coefficientwise.
inline CheckReport verify_odd_vertex_vanishing(const AInfinityAlgebra& a, int max_edges,
                                               BasisBuilder& bb) {
  CheckReport rep;
  PartitionContext ctx(a);
  for (auto [i, j] : bb.cells_in_range(max_edges)) {
    if (i % 2 == 0) continue;
    for (const GraphKey& k : bb.cell(i, j).keys)
      rep.count(ctx.value(k).is_zero(),
                "odd-vertex coefficient nonzero at " + graph_literal(decode_key(k)));
  }
  return rep;
}

// Representative independence: the raw amplitude over random orientation-
// preserving re-presentations of each basis graph is constant.
inline CheckReport verify_representative_independence(const AInfinityAlgebra& a, int max_edges,
                                                      int samples, unsigned seed,
                                                      BasisBuilder& bb) {
  CheckReport rep;
  PartitionContext ctx(a);
  std::mt19937 rng(seed);
  for (auto [i, j] : bb.cells_in_range(max_edges)) {
    for (const GraphKey& k : bb.cell(i, j).keys) {
      FullyOrderedGraph g = decode_key(k);
      Rational base = ctx.raw_amplitude(g);
      for (int t = 0; t < samples; ++t) {
        // random re-presentation with tracked character
        FullyOrderedGraph r = g;
        int chi = 1;
        // random rotations (no sign)
        auto starts = block_starts(g.valences);
        std::vector<int> newLabel(g.half_edges() + 1, 0);
        int next = 0;
        std::vector<int> order(g.num_vertices());
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        for (std::size_t ii = 0; ii < order.size(); ++ii)
          for (std::size_t jj = ii + 1; jj < order.size(); ++jj)
            if (order[ii] > order[jj]) chi = -chi;
        r.valences.clear();
        for (int v : order) {
          int kk = g.valences[v];
          int rot = static_cast<int>(rng() % kk);
          r.valences.push_back(kk);
          for (int s = 0; s < kk; ++s) newLabel[starts[v] + 1 + ((s + rot) % kk)] = ++next;
        }
        r.chords.clear();
        for (auto [x, y] : g.chords) {
          if (rng() & 1) {
            r.chords.emplace_back(newLabel[y], newLabel[x]);
            chi = -chi;
          } else {
            r.chords.emplace_back(newLabel[x], newLabel[y]);
          }
        }
        Rational got = ctx.raw_amplitude(r);
        rep.count(got == (chi > 0 ? base : -base),
                  "representative dependence at " + graph_literal(g));
      }
    }
  }
  return rep;
}

}  // namespace rgc
