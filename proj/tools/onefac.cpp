// onefac: factorize, verify and export Cayley graphs from the command line.

#include <cstdint>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "onefac/cli.hpp"

int main(int argc, char** argv) {
  using namespace onefac::cli;
  CLI::App app{"1-factorizations of Cayley graphs of Q x H groups"};
  app.require_subcommand(1);

  const std::map<std::string, Format> formats{{"json", Format::kJson}, {"dot", Format::kDot}};

  FactorizeArgs fa;
  std::uint64_t seed = 0;
  auto* factorize = app.add_subcommand("factorize", "construct and verify a 1-factorization");
  factorize->add_option("--spec", fa.spec, "group spec, e.g. Z4*Z3 or Q8")->required();
  factorize->add_option("--gens", fa.gens, "generators: ids, labels or tuples like (1,1)")->required();
  factorize->add_flag("--exact", fa.exact, "use the exhaustive solver only");
  factorize->add_flag("--components", fa.components, "factor each coset component of a disconnected graph");
  factorize->add_option("--budget", fa.budget, "exact solver node budget");
  auto* seed_opt = factorize->add_option("--seed", seed, "seed for the completion search");
  factorize->add_option("--format", fa.format, "output format: json or dot")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case).description(""))
      ->option_text("json|dot");
  factorize->add_option("--out", fa.out_path, "output path (default: stdout)");
  factorize->add_option("--dot", fa.dot_path, "also write colored DOT here");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "check a factorization document");
  verify->add_option("factorization", va.factorization_path, "factorization JSON")->required();
  verify->add_option("--graph", va.graph_path, "graph JSON (default: rebuild from the group spec)");

  ExportArgs ea;
  auto* exp = app.add_subcommand("export", "write a Cayley graph as JSON or DOT");
  exp->add_option("--spec", ea.spec, "group spec")->required();
  exp->add_option("--gens", ea.gens, "generators")->required();
  exp->add_option("--format", ea.format, "output format: json or dot")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case).description(""))
      ->option_text("json|dot");
  exp->add_option("--out", ea.out_path, "output path (default: stdout)");

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "time the pipeline against the exact solver (CSV)");
  bench->add_option("--filter", ba.filter, "comma separated catalog groups, or all");
  bench->add_option("--seed", ba.seed, "base seed");
  bench->add_option("--trials", ba.trials, "generating sets per group");
  bench->add_option("--budget", ba.budget, "exact solver node budget");

  CLI11_PARSE(app, argc, argv);

  if (*factorize) {
    if (*seed_opt) fa.seed = seed;
    return cmd_factorize(fa, std::cout, std::cerr);
  }
  if (*verify) return cmd_verify(va, std::cout, std::cerr);
  if (*exp) return cmd_export(ea, std::cout, std::cerr);
  return cmd_bench(ba, std::cout, std::cerr);
}
