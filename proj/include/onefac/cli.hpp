#pragma once

// Command implementations behind tools/onefac. Each returns the process exit
// code and writes artifacts to `out` and diagnostics to `err`.
//
// factorize: 0 verified, 1 error or failed verification, 2 out of scope or
//            disconnected (without --components), 3 search budget exhausted
// verify:    0 violation-free, 1 violations, 4 unreadable or schema mismatch
// export:    0 ok, 1 error
// bench:     0

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "onefac/cayley.hpp"
#include "onefac/error.hpp"
#include "onefac/factorizer.hpp"
#include "onefac/io.hpp"
#include "onefac/sampling.hpp"
#include "onefac/spec_parser.hpp"

namespace onefac::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitOutOfScope = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitSchema = 4;

enum class Format { kJson, kDot };

struct FactorizeArgs {
  std::string spec;
  std::string gens;
  bool exact = false;
  bool components = false;
  std::uint64_t budget = kDefaultExactBudget;
  std::optional<std::uint64_t> seed;
  Format format = Format::kJson;
  std::string out_path;  // empty: standard output
  std::string dot_path;
};

struct VerifyArgs {
  std::string graph_path;  // empty: rebuild the graph from the factorization's group spec
  std::string factorization_path;
};

struct ExportArgs {
  std::string spec;
  std::string gens;
  Format format = Format::kJson;
  std::string out_path;
};

struct BenchArgs {
  std::string filter;  // comma separated catalog names; empty or "all" for every group
  std::uint64_t seed = 0;
  std::size_t trials = 1;
  std::uint64_t budget = kDefaultExactBudget;
};

// "quotient-lift(lemma1-general)" style summary of a certificate tree.
inline std::string branch_trace(const Certificate& c) {
  std::string s = to_string(c.branch);
  if (!c.children.empty()) {
    s += "(";
    for (std::size_t i = 0; i < c.children.size(); ++i) {
      if (i) s += ",";
      s += branch_trace(c.children[i]);
    }
    s += ")";
  }
  return s;
}

namespace detail {

inline bool write_text(const std::string& path, const std::string& text, std::ostream& fallback,
                       std::ostream& err) {
  if (path.empty() || path == "-") {
    fallback << text;
    return true;
  }
  std::ofstream f(path);
  if (!f) {
    err << "error: cannot write " << path << "\n";
    return false;
  }
  f << text;
  return static_cast<bool>(f);
}

inline std::optional<std::string> read_text(const std::string& path) {
  std::ifstream f(path);
  if (!f) return std::nullopt;
  std::stringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

inline std::string ids_text(const std::vector<Element>& xs) {
  std::string s = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(xs[i].id);
  }
  return s + "]";
}

inline std::string dot_text(const SimpleGraph& g, const Group& group, const Factorization* f) {
  std::ostringstream s;
  write_dot(s, g, &group, f);
  return s.str();
}

struct Resolved {
  GroupSpec spec;
  GeneratingSet gens;
};

inline Resolved resolve(const std::string& spec, const std::string& gens) {
  Resolved r{parse_group_spec(spec), {}};
  r.gens = GeneratingSet::of(r.spec.group, parse_generators(r.spec, gens));
  if (r.gens.empty()) throw InvalidArgumentError("no generators given");
  return r;
}

}  // namespace detail

inline int cmd_factorize(const FactorizeArgs& args, std::ostream& out, std::ostream& err) {
  detail::Resolved in;
  try {
    in = detail::resolve(args.spec, args.gens);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  const Group& g = in.spec.group;
  FactorizeOptions options;
  options.exact_budget = args.budget;
  if (args.seed) options.completion.seed = *args.seed;

  const auto start = std::chrono::steady_clock::now();
  FactorizeOutcome outcome;
  try {
    if (args.exact) {
      outcome = factorize_exact(g, in.gens, args.budget);
    } else if (args.components) {
      if (g.order() % 2 != 0) throw OutOfScopeError("group order is odd");
      outcome = factorize_components(g, in.gens, options);
    } else {
      outcome = factorize_nilpotent(g, in.gens, options);
    }
  } catch (const OutOfScopeError& e) {
    err << "out of scope: " << e.what() << " (use --exact to run the exhaustive solver)\n";
    return kExitOutOfScope;
  } catch (const NotConnectedError& e) {
    err << "out of scope: " << e.what() << " (use --components)\n";
    return kExitOutOfScope;
  } catch (const BudgetExceededError& e) {
    err << "budget exhausted: " << e.what() << "\n";
    return kExitBudget;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();

  // Recomputed here, independent of the pipeline's own checks.
  const CayleyGraph gamma = build_cayley(g, in.gens);
  VerifyReport report = verify_factorization(gamma, outcome.factorization);
  report.append(replay_certificate(g, outcome.certificate), "certificate");

  err << "spec=" << in.spec.text << " gens=" << detail::ids_text(in.gens.members)
      << " order=" << g.order() << " valence=" << gamma.valence
      << " classes=" << outcome.factorization.classes.size()
      << " branches=" << branch_trace(outcome.certificate) << " time_us=" << micros
      << " verify=" << (report.ok() ? "ok" : "FAILED") << "\n";
  for (const auto& v : report.violations) err << "  " << to_string(v.kind) << ": " << v.message << "\n";

  const std::string primary =
      args.format == Format::kDot
          ? detail::dot_text(gamma.graph, g, &outcome.factorization)
          : factorization_to_json(in.spec.text, gamma, outcome.factorization, outcome.certificate)
                    .dump(2) +
                "\n";
  if (!detail::write_text(args.out_path, primary, out, err)) return kExitFailure;
  if (!args.dot_path.empty()) {
    if (!detail::write_text(args.dot_path, detail::dot_text(gamma.graph, g, &outcome.factorization),
                            out, err)) {
      return kExitFailure;
    }
  }
  return report.ok() ? kExitOk : kExitFailure;
}

inline int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  FactorizationDocument fdoc;
  SimpleGraph graph;
  std::size_t valence = 0;
  std::optional<Group> group;
  try {
    auto ftext = detail::read_text(args.factorization_path);
    if (!ftext) throw SchemaError("cannot read " + args.factorization_path);
    fdoc = factorization_from_json(parse_json_text(*ftext));
    if (!args.graph_path.empty()) {
      auto gtext = detail::read_text(args.graph_path);
      if (!gtext) throw SchemaError("cannot read " + args.graph_path);
      GraphDocument gdoc = graph_from_json(parse_json_text(*gtext));
      graph = std::move(gdoc.graph);
      valence = gdoc.valence;
    }
    if (fdoc.spec) {
      try {
        group = parse_group_spec(*fdoc.spec).group;
      } catch (const Error& e) {
        if (args.graph_path.empty()) throw SchemaError(std::string("group spec: ") + e.what());
      }
    }
    if (args.graph_path.empty()) {
      if (!group) throw SchemaError("no graph document and no group spec to rebuild it from");
      const CayleyGraph gamma = build_cayley(*group, GeneratingSet::of(*group, fdoc.generators));
      graph = gamma.graph;
      valence = gamma.valence;
    }
  } catch (const SchemaError& e) {
    err << "schema error: " << e.what() << "\n";
    return kExitSchema;
  } catch (const Error& e) {
    err << "schema error: " << e.what() << "\n";
    return kExitSchema;
  }

  VerifyReport report = verify_factorization(graph, fdoc.factorization, valence);
  if (fdoc.vertex_count != graph.vertex_count) {
    report.add(ViolationKind::kForeignEdge, "document vertex_count " +
                                                std::to_string(fdoc.vertex_count) +
                                                " does not match the graph");
  }
  if (fdoc.valence != valence) {
    report.add(ViolationKind::kClassCount, "document valence " + std::to_string(fdoc.valence) +
                                               " does not match the graph");
  }
  if (fdoc.certificate && group) {
    report.append(replay_certificate(*group, *fdoc.certificate), "certificate");
    if (fdoc.certificate->factorization.canonical() != fdoc.factorization.canonical()) {
      report.add(ViolationKind::kCertificate, "certificate root differs from the classes");
    }
  }
  if (report.ok()) {
    out << "ok: " << fdoc.factorization.classes.size() << " classes, " << graph.edges.size()
        << " edges, " << graph.vertex_count << " vertices\n";
    return kExitOk;
  }
  out << report.violations.size() << " violation(s)\n";
  for (const auto& v : report.violations) out << to_string(v.kind) << ": " << v.message << "\n";
  return kExitFailure;
}

inline int cmd_export(const ExportArgs& args, std::ostream& out, std::ostream& err) {
  try {
    const auto in = detail::resolve(args.spec, args.gens);
    const CayleyGraph gamma = build_cayley(in.spec.group, in.gens);
    const std::string text = args.format == Format::kDot
                                 ? detail::dot_text(gamma.graph, in.spec.group, nullptr)
                                 : graph_to_json(in.spec.text, gamma).dump(2) + "\n";
    return detail::write_text(args.out_path, text, out, err) ? kExitOk : kExitFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

inline constexpr const char* kBenchHeader =
    "group,order,size_s,valence,pipeline_us,exact_us,exact,verified";

inline std::vector<std::string> bench_groups(const std::string& filter) {
  const auto all = nilpotent_catalog();
  if (filter.empty() || filter == "all") return all;
  std::vector<std::string> wanted;
  for (auto [piece, at] : onefac::detail::split_top(filter, ',', 0)) {
    wanted.emplace_back(onefac::detail::trim(piece));
  }
  std::vector<std::string> out;
  for (const auto& name : all) {
    if (std::find(wanted.begin(), wanted.end(), name) != wanted.end()) out.push_back(name);
  }
  return out;
}

inline int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
  using clock = std::chrono::steady_clock;
  const auto all = nilpotent_catalog();
  out << kBenchHeader << "\n";
  for (const auto& name : bench_groups(args.filter)) {
    const auto group_index =
        static_cast<std::uint64_t>(std::find(all.begin(), all.end(), name) - all.begin());
    const Group g = parse_group_spec(name).group;
    for (std::size_t trial = 0; trial < args.trials; ++trial) {
      auto rng = case_rng(args.seed, group_index, trial);
      const GeneratingSet s = sample_generating_set(g, rng);
      const CayleyGraph gamma = build_cayley(g, s);

      FactorizeOptions options;
      options.exact_budget = args.budget;
      bool verified = false;
      auto t0 = clock::now();
      try {
        const auto outcome = factorize(g, s, options);
        verified = verify_factorization(gamma, outcome.factorization).ok();
      } catch (const Error& e) {
        err << name << " trial " << trial << ": " << e.what() << "\n";
      }
      const auto pipeline_us =
          std::chrono::duration_cast<std::chrono::microseconds>(clock::now() - t0).count();

      t0 = clock::now();
      const auto exact = exact_one_factorize(gamma.graph, args.budget);
      const auto exact_us =
          std::chrono::duration_cast<std::chrono::microseconds>(clock::now() - t0).count();

      out << name << "," << g.order() << "," << s.size() << "," << gamma.valence << ","
          << pipeline_us << "," << exact_us << "," << to_string(exact.status) << ","
          << (verified ? "true" : "false") << "\n";
    }
  }
  return kExitOk;
}

}  // namespace onefac::cli
