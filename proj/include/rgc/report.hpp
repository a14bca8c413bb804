#pragma once

#include <future>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "rgc/basis.hpp"
#include "rgc/io.hpp"
#include "rgc/partition.hpp"

namespace rgc {

inline constexpr const char* kToolVersion = "1.0.0";

// Desk-scale caps: refuse anything beyond them with a clear message.
inline constexpr int kMaxEdgesCap = 9;
inline constexpr int kMinChiCap = -5;
inline constexpr int kMaxChainMonomials = 5;
inline constexpr int kMaxChainLetters = 14;

struct RunConfig {
  std::string command;
  std::string algebra = "builtin:ground";
  std::string graph;          // legged literal for `correlate`
  int max_edges = 5;
  int chi_min = -2;
  int degree_bound = 4;
  std::string format = "tsv";  // tsv | json
  unsigned seed = 20240811;
  int jobs = 1;
  std::string suite = "all";
  bool matrices = false;

  void check_bounds() const {
    if (max_edges < 0 || max_edges > kMaxEdgesCap)
      throw std::invalid_argument("max-edges out of range: desk-scale cap is " +
                                  std::to_string(kMaxEdgesCap));
    if (chi_min < kMinChiCap)
      throw std::invalid_argument("chi-min below the desk-scale cap " +
                                  std::to_string(kMinChiCap));
    if (jobs < 1) throw std::invalid_argument("jobs must be positive");
  }
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

inline std::string render_tsv(const RunConfig& cfg, const Table& t) {
  std::ostringstream os;
  os << "# tool=rgc version=" << kToolVersion << " command=" << cfg.command
     << " seed=" << cfg.seed << "\n";
  for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "\t" : "") << t.header[i];
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "\t" : "") << row[i];
    os << "\n";
  }
  return os.str();
}

inline std::string render_json(const RunConfig& cfg, const Table& t) {
  nlohmann::ordered_json j;
  j["meta"] = {{"tool", "rgc"}, {"version", kToolVersion}, {"command", cfg.command}, {"seed", cfg.seed}};
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json r;
    for (std::size_t i = 0; i < row.size(); ++i) r[t.header[i]] = row[i];
    j["rows"].push_back(r);
  }
  return j.dump(2) + "\n";
}

inline std::string render(const RunConfig& cfg, const Table& t) {
  if (cfg.format == "json") return render_json(cfg, t);
  if (cfg.format == "tsv") return render_tsv(cfg, t);
  throw std::invalid_argument("unknown format: " + cfg.format);
}

// Compact single-token key for a canonical class.
inline std::string key_token(const GraphKey& k) {
  std::string s = graph_literal(decode_key(k));
  std::string out;
  for (char c : s)
    if (c != ' ') out += c;
  return out;
}

// ---- commands ------------------------------------------------------------------

inline std::string run_enumerate(const RunConfig& cfg) {
  cfg.check_bounds();
  BasisBuilder bb;
  Table t;
  t.header = {"vertices", "edges", "dim", "aut_orders"};
  for (int i = 1; 3 * i <= 2 * cfg.max_edges; ++i)
    for (int j = i; j <= cfg.max_edges; ++j) {
      const BasisCell& cell = bb.cell(i, j);  // infeasible cells are empty
      std::string auts;
      for (std::size_t a = 0; a < cell.aut.size(); ++a)
        auts += (a ? "," : "") + std::to_string(cell.aut[a]);
      if (auts.empty()) auts = "-";
      t.rows.push_back({std::to_string(i), std::to_string(j), std::to_string(cell.dim()), auts});
    }
  return render(cfg, t);
}

inline std::string run_homology(const RunConfig& cfg) {
  cfg.check_bounds();
  BasisBuilder bb;
  std::ostringstream extra;
  Table t;
  t.header = {"chi", "i", "j", "dim_ker", "rank_d", "dim_H"};
  for (int chi = 0; chi >= cfg.chi_min; --chi) {
    for (const HomologyRow& r : homology_dims(bb, chi, cfg.max_edges)) {
      t.rows.push_back({std::to_string(r.chi), std::to_string(r.vertices), std::to_string(r.edges),
                        std::to_string(r.dim_ker), std::to_string(r.rank_d), std::to_string(r.dim_h)});
      if (cfg.matrices && cell_feasible(r.vertices - 1, r.edges - 1)) {
        Matrix m = boundary_matrix(bb, r.vertices, r.edges);
        extra << "# matrix del: (" << r.vertices << "," << r.edges << ") -> (" << r.vertices - 1
              << "," << r.edges - 1 << ")  rows=" << m.size()
              << " cols=" << (m.empty() ? 0 : m[0].size()) << "\n";
        for (std::size_t row = 0; row < m.size(); ++row)
          for (std::size_t col = 0; col < m[row].size(); ++col)
            if (!m[row][col].is_zero())
              extra << row << " " << col << " " << m[row][col].str() << "\n";
      }
    }
  }
  return render(cfg, t) + extra.str();
}

inline std::string run_partition(const RunConfig& cfg) {
  cfg.check_bounds();
  BasisBuilder bb;
  AInfinityAlgebra alg = load_algebra(cfg.algebra);
  ValidationReport v = validate(alg);
  if (!v.ok) throw std::invalid_argument("algebra fails validation: " + v.failures.front());
  PartitionContext ctx(alg);

  Table t;
  t.header = {"graph_key", "vertices", "edges", "value"};
  for (auto [i, j] : bb.cells_in_range(cfg.max_edges)) {
    const BasisCell& cell = bb.cell(i, j);
    // evaluate cells in parallel chunks, merge deterministically in key order
    std::vector<Rational> values(cell.dim());
    int jobs = std::max(1, cfg.jobs);
    std::vector<std::future<void>> futs;
    for (int w = 0; w < jobs; ++w)
      futs.push_back(std::async(std::launch::async, [&, w]() {
        for (int idx = w; idx < cell.dim(); idx += jobs) values[idx] = ctx.value(cell.keys[idx]);
      }));
    for (auto& f : futs) f.get();
    for (int idx = 0; idx < cell.dim(); ++idx) {
      if (values[idx].is_zero()) continue;
      t.rows.push_back({key_token(cell.keys[idx]), std::to_string(i), std::to_string(j),
                        values[idx].str()});
    }
  }
  return render(cfg, t);
}

inline std::string run_characteristic(const RunConfig& cfg) {
  cfg.check_bounds();
  if (cfg.degree_bound > kMaxChainMonomials)
    throw std::invalid_argument("degree-bound exceeds the desk-scale chain cap " +
                                std::to_string(kMaxChainMonomials));
  AInfinityAlgebra alg = load_algebra(cfg.algebra);
  CharacteristicClass c = characteristic_class(alg, cfg.degree_bound);
  std::ostringstream os;
  os << "# tool=rgc version=" << kToolVersion << " command=characteristic seed=" << cfg.seed
     << " algebra=" << alg.name << " degree_bound=" << cfg.degree_bound << "\n";
  const SymplecticTag& tag = c.letters.tag();
  os << "# letters: 2n=" << 2 * tag.n << " m=" << tag.m << " odd_diagonal=";
  for (int i = 0; i < tag.m; ++i) os << (i ? "," : "") << tag.odd_diagonal[i].str();
  os << "\n";
  os << chain_literal(c.letters, c.chain);
  return os.str();
}

inline std::string run_correlate(const RunConfig& cfg) {
  cfg.check_bounds();
  AInfinityAlgebra alg = load_algebra(cfg.algebra);
  LeggedGraph g = parse_legged_literal(cfg.graph);
  if (g.internal_half_edges() + g.in_count + g.out_count > kMaxChainLetters)
    throw std::invalid_argument("graph exceeds the desk-scale contraction cap of " +
                                std::to_string(kMaxChainLetters) + " half-edges");
  GradedTensor t = correlation(alg, g);
  Table table;
  table.header = {"slots", "value"};
  for (const auto& [tuple, v] : t.entries()) {
    std::string slots;
    for (std::size_t i = 0; i < tuple.size(); ++i)
      slots += (i ? "," : "") + alg.pi_u.label(tuple[i]);
    if (slots.empty()) slots = "-";
    table.rows.push_back({slots, v.str()});
  }
  return render(cfg, table);
}

// ---- verify ---------------------------------------------------------------------

struct SuiteOutcome {
  std::string name;
  CheckReport report;
};

inline std::vector<SuiteOutcome> run_suites(const RunConfig& cfg) {
  cfg.check_bounds();
  BasisBuilder bb;
  AInfinityAlgebra alg = load_algebra(cfg.algebra);
  std::vector<SuiteOutcome> out;
  auto want = [&](const std::string& s) { return cfg.suite == "all" || cfg.suite == s; };
  bool known = cfg.suite == "all";
  if (want("cycle")) {
    out.push_back({"cycle", verify_cycle_condition(alg, cfg.max_edges, bb)});
    known = true;
  }
  if (want("exp")) {
    out.push_back({"exp", verify_exp_relation(alg, cfg.max_edges, bb)});
    known = true;
  }
  if (want("equiv")) {
    out.push_back({"equiv", verify_equivalence(alg, cfg.max_edges, bb)});
    known = true;
  }
  if (want("dsum")) {
    out.push_back({"dsum", verify_direct_sum(alg, builtin_ground(), cfg.max_edges, bb)});
    known = true;
  }
  if (want("homotopy")) {
    out.push_back({"homotopy", verify_homotopy_invariance(alg, cfg.max_edges, 3, cfg.seed, bb)});
    known = true;
  }
  if (want("master")) {
    CheckReport r;
    WordSum residual = check_master_equation(alg);
    r.count(residual.is_zero(), "master equation residual nonzero for " + alg.name);
    out.push_back({"master", r});
    known = true;
  }
  if (!known) throw std::invalid_argument("unknown suite: " + cfg.suite);
  return out;
}

inline std::string run_verify(const RunConfig& cfg, bool* all_ok = nullptr) {
  std::ostringstream os;
  os << "# tool=rgc version=" << kToolVersion << " command=verify seed=" << cfg.seed
     << " algebra=" << cfg.algebra << " max_edges=" << cfg.max_edges << "\n";
  bool ok = true;
  for (const SuiteOutcome& s : run_suites(cfg)) {
    os << (s.report.ok ? "PASS" : "FAIL") << "\t" << s.name << "\t" << s.report.checks
       << " checks\n";
    if (!s.report.ok) {
      ok = false;
      for (const std::string& w : s.report.failures) os << "  witness: " << w << "\n";
    }
  }
  if (all_ok) *all_ok = ok;
  return os.str();
}

}  // namespace rgc
