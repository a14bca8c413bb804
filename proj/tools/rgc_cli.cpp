// rgc: exact-arithmetic ribbon graph complexes, partition functions and
// characteristic classes of minimal symplectic A-infinity algebras.

#include <cstdio>
#include <iostream>

#include "CLI11.hpp"
#include "rgc/report.hpp"

int main(int argc, char** argv) {
  CLI::App app{"ribbon graph complexes and A-infinity partition functions"};
  app.require_subcommand(1);

  rgc::RunConfig cfg;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--max-edges", cfg.max_edges, "edge bound (desk-scale cap 9)");
    cmd->add_option("--format", cfg.format, "tsv or json")->check(CLI::IsMember({"tsv", "json"}));
    cmd->add_option("--seed", cfg.seed, "seed recorded in reports and used by fuzz corpora");
    cmd->add_option("--jobs", cfg.jobs, "worker threads; output is byte-identical for any value");
  };

  CLI::App* enumerate = app.add_subcommand("enumerate", "basis cells with dimensions and |Aut| data");
  add_common(enumerate);

  CLI::App* homology = app.add_subcommand("homology", "exact homology table per Euler characteristic");
  add_common(homology);
  homology->add_option("--chi-min", cfg.chi_min, "most negative Euler characteristic (cap -5)");
  homology->add_flag("--matrices", cfg.matrices, "emit per-cell sparse boundary matrices");

  CLI::App* partition = app.add_subcommand("partition", "partition function of an algebra");
  add_common(partition);
  partition->add_option("--algebra", cfg.algebra, "builtin:<name> or an .alg file");

  CLI::App* characteristic =
      app.add_subcommand("characteristic", "characteristic class as cyclic-word chains");
  add_common(characteristic);
  characteristic->add_option("--algebra", cfg.algebra, "builtin:<name> or an .alg file");
  characteristic->add_option("--degree-bound", cfg.degree_bound, "exterior degree truncation");

  CLI::App* correlate = app.add_subcommand("correlate", "correlation tensor of a legged graph");
  add_common(correlate);
  correlate->add_option("--algebra", cfg.algebra, "builtin:<name> or an .alg file");
  correlate->add_option("--graph", cfg.graph, "legged graph literal")->required();

  CLI::App* verify = app.add_subcommand("verify", "run verification suites");
  add_common(verify);
  verify->add_option("--algebra", cfg.algebra, "builtin:<name> or an .alg file");
  verify->add_option("--suite", cfg.suite, "cycle|exp|equiv|dsum|homotopy|master|all");

  CLI11_PARSE(app, argc, argv);

  try {
    if (enumerate->parsed()) {
      cfg.command = "enumerate";
      std::cout << rgc::run_enumerate(cfg);
    } else if (homology->parsed()) {
      cfg.command = "homology";
      std::cout << rgc::run_homology(cfg);
    } else if (partition->parsed()) {
      cfg.command = "partition";
      std::cout << rgc::run_partition(cfg);
    } else if (characteristic->parsed()) {
      cfg.command = "characteristic";
      std::cout << rgc::run_characteristic(cfg);
    } else if (correlate->parsed()) {
      cfg.command = "correlate";
      std::cout << rgc::run_correlate(cfg);
    } else if (verify->parsed()) {
      cfg.command = "verify";
      bool ok = true;
      std::cout << rgc::run_verify(cfg, &ok);
      return ok ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
