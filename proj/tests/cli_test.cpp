#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>
#include <string>

#include "onefac/cli.hpp"
#include "onefac/io.hpp"
#include "onefac/spec_parser.hpp"

namespace onefac {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("onefac_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream(path) << text;
}

// Drops the timing columns (pipeline_us, exact_us) from a bench CSV.
std::string without_timing(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::string out;
  while (std::getline(in, line)) {
    std::vector<std::string> cols;
    std::stringstream ls(line);
    std::string c;
    while (std::getline(ls, c, ',')) cols.push_back(c);
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (i == 4 || i == 5) continue;
      out += cols[i] + ",";
    }
    out += "\n";
  }
  return out;
}

TEST(ParseGroupSpec, Examples) {
  EXPECT_EQ(parse_group_spec("Z4*Z3").group.order(), 12u);
  const auto z4 = parse_group_spec("perm:(0 1 2 3)").group;
  EXPECT_EQ(z4.order(), 4u);
  EXPECT_EQ(element_order(z4, Element{1}), 4u);
  const auto q8z3 = parse_group_spec("Q8*Z3");
  EXPECT_EQ(q8z3.group.order(), 24u);
  EXPECT_EQ(q8z3.factors.size(), 2u);
  EXPECT_EQ(q8z3.group.label(Element{1 * 3 + 2}), "(i,2)");
}

TEST(ParseGroupSpec, ProductsAreLeftAssociatedRowMajor) {
  const auto flat = parse_group_spec("Z2*Z3*Z4").group;
  const auto nested = direct_product(direct_product(build_cyclic(2), build_cyclic(3)), build_cyclic(4));
  EXPECT_EQ(flat.table(), nested.table());
}

TEST(ParseGroupSpec, CatalogAndPermutationAtoms) {
  EXPECT_EQ(parse_group_spec("D4").group.order(), 8u);
  EXPECT_EQ(parse_group_spec("S3").group.order(), 6u);
  EXPECT_EQ(parse_group_spec("V4").group.order(), 4u);
  EXPECT_EQ(parse_group_spec("perm:(0 1)(2 3),(0 2)(1 3)").group.order(), 4u);
  EXPECT_EQ(parse_group_spec(" perm:(0 1 2) * Z2 ").group.order(), 6u);
}

TEST(ParseGroupSpec, Errors) {
  try {
    parse_group_spec("Z4*Zx");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
  EXPECT_THROW(parse_group_spec(""), ParseError);
  EXPECT_THROW(parse_group_spec("Z4**Z3"), ParseError);
  EXPECT_THROW(parse_group_spec("X7"), ParseError);
  EXPECT_THROW(parse_group_spec("perm:(0 1"), ParseError);
  EXPECT_THROW(parse_group_spec("perm:(0 1 0)"), ParseError);
  EXPECT_THROW(parse_group_spec("Z600"), SizeLimitError);
  EXPECT_THROW(parse_group_spec("Z32*Z32"), SizeLimitError);
  EXPECT_THROW(parse_group_spec("Z0"), InvalidArgumentError);
}

TEST(ParseGroupSpec, TableFiles) {
  TempDir dir;
  const auto path = dir.file("z3.txt");
  spit(path, "# Z3\n3\n0 1 2  # row 0\n1 2 0\n2 0 1\n");
  const auto g = parse_group_spec("table:" + path + "*Z2").group;
  EXPECT_EQ(g.order(), 6u);

  spit(dir.file("short.txt"), "3\n0 1 2\n1 2 0\n");
  EXPECT_THROW(parse_group_spec("table:" + dir.file("short.txt")), InvalidArgumentError);
  spit(dir.file("bad.txt"), "2\n0 1\n1 1\n");
  EXPECT_THROW(parse_group_spec("table:" + dir.file("bad.txt")), InvalidArgumentError);
  EXPECT_THROW(parse_group_spec("table:" + dir.file("missing.txt")), InvalidArgumentError);
}

TEST(ParseGenerators, Forms) {
  const auto spec = parse_group_spec("Z4*Z3");
  EXPECT_EQ(parse_generators(spec, "(1,1),(0,1)"), (std::vector<Element>{Element{4}, Element{1}}));
  EXPECT_EQ(parse_generators(spec, "4, 1"), (std::vector<Element>{Element{4}, Element{1}}));

  const auto q = parse_group_spec("Q8*Z3");
  EXPECT_EQ(parse_generators(q, "(i,1)"), std::vector<Element>{Element{1 * 3 + 1}});
  EXPECT_EQ(parse_generators(q, "(-k,0)"), std::vector<Element>{Element{7 * 3 + 0}});

  const auto s3 = parse_group_spec("S3");
  const auto g = parse_generators(s3, "(01),(012)");
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(s3.group.label(g[0]), "(0 1)");
  EXPECT_EQ(s3.group.label(g[1]), "(0 1 2)");

  const auto d4z3 = parse_group_spec("D4*Z3");
  const auto mixed = parse_generators(d4z3, "((0 1 2 3),1)");
  ASSERT_EQ(mixed.size(), 1u);
  EXPECT_EQ(d4z3.group.label(mixed[0]), "((0 1 2 3),1)");

  EXPECT_THROW(parse_generators(spec, "(1,1,1)"), ParseError);
  EXPECT_THROW(parse_generators(spec, "12"), ParseError);
  EXPECT_THROW(parse_generators(spec, "(9,0)"), ParseError);
  EXPECT_THROW(parse_generators(spec, "1,,2"), ParseError);
}

TEST(NilpotentCatalog, FortyTwoGroups) {
  const auto all = nilpotent_catalog();
  EXPECT_EQ(all.size(), 42u);
  for (const auto& s : all) EXPECT_LE(parse_group_spec(s).group.order(), 72u) << s;
}

TEST(CmdFactorize, ExamplesAndExitCodes) {
  TempDir dir;
  std::ostringstream out;
  std::ostringstream err;
  cli::FactorizeArgs a;
  a.spec = "Z4";
  a.gens = "1";
  a.out_path = dir.file("z4.json");
  ASSERT_EQ(cli::cmd_factorize(a, out, err), cli::kExitOk) << err.str();
  const auto doc = json::parse(slurp(a.out_path));
  EXPECT_EQ(doc["version"], "cayley-factor/1");
  EXPECT_EQ(doc["classes"].size(), 2u);
  EXPECT_EQ(doc["certificate"]["branch"], "base-cycle");

  a.spec = "Z4*Z3";
  a.gens = "(1,1),(0,1)";
  ASSERT_EQ(cli::cmd_factorize(a, out, err), cli::kExitOk) << err.str();
  EXPECT_EQ(json::parse(slurp(a.out_path))["classes"].size(), 4u);

  a.spec = "S3";
  a.gens = "(01),(012)";
  EXPECT_EQ(cli::cmd_factorize(a, out, err), cli::kExitOutOfScope);
  a.exact = true;
  EXPECT_EQ(cli::cmd_factorize(a, out, err), cli::kExitOk);
  a.budget = 1;
  EXPECT_EQ(cli::cmd_factorize(a, out, err), cli::kExitBudget);

  cli::FactorizeArgs disc;
  disc.spec = "Z4";
  disc.gens = "2";
  disc.out_path = dir.file("disc.json");
  EXPECT_EQ(cli::cmd_factorize(disc, out, err), cli::kExitOutOfScope);
  disc.components = true;
  EXPECT_EQ(cli::cmd_factorize(disc, out, err), cli::kExitOk);

  cli::FactorizeArgs bad;
  bad.spec = "Z4*";
  bad.gens = "1";
  EXPECT_EQ(cli::cmd_factorize(bad, out, err), cli::kExitFailure);
}

TEST(CmdFactorize, RunReportGoesToErr) {
  std::ostringstream out;
  std::ostringstream err;
  cli::FactorizeArgs a;
  a.spec = "Z4*Z3";
  a.gens = "(1,1),(0,1)";
  ASSERT_EQ(cli::cmd_factorize(a, out, err), cli::kExitOk);
  EXPECT_NE(err.str().find("branches=quotient-lift(lemma1-general)"), std::string::npos);
  EXPECT_NE(err.str().find("verify=ok"), std::string::npos);
  EXPECT_EQ(json::parse(out.str())["valence"], 4);
}

TEST(CmdFactorize, DotHasOneColorPerClass) {
  std::ostringstream out;
  std::ostringstream err;
  cli::FactorizeArgs a;
  a.spec = "Q8*Z3";
  a.gens = "(i,1),(j,0),(-e,2)";
  a.format = cli::Format::kDot;
  ASSERT_EQ(cli::cmd_factorize(a, out, err), cli::kExitOk) << err.str();
  const auto dot = out.str();
  EXPECT_EQ(dot.rfind("graph cayley {", 0), 0u);
  std::set<std::string> colors;
  std::set<std::pair<int, int>> edges;
  std::size_t edge_lines = 0;
  const std::regex edge_re(R"((\d+) -- (\d+) \[color=(c\d+)\])");
  for (std::sregex_iterator it(dot.begin(), dot.end(), edge_re), end; it != end; ++it) {
    colors.insert((*it)[3]);
    edges.emplace(std::stoi((*it)[1]), std::stoi((*it)[2]));
    ++edge_lines;
  }
  const auto spec = parse_group_spec(a.spec);
  const auto gamma = build_cayley(spec.group, GeneratingSet::of(spec.group, parse_generators(spec, a.gens)));
  EXPECT_EQ(colors.size(), gamma.valence);
  EXPECT_EQ(edge_lines, gamma.edges().size());
  EXPECT_EQ(edges.size(), gamma.edges().size());
}

TEST(CmdVerify, RoundTripTamperAndSchema) {
  TempDir dir;
  std::ostringstream out;
  std::ostringstream err;
  cli::FactorizeArgs fa;
  fa.spec = "D4*Z3";
  fa.gens = "((0 1 2 3),1),((1 3),0)";
  fa.out_path = dir.file("f.json");
  ASSERT_EQ(cli::cmd_factorize(fa, out, err), cli::kExitOk) << err.str();
  cli::ExportArgs ea{fa.spec, fa.gens, cli::Format::kJson, dir.file("g.json")};
  ASSERT_EQ(cli::cmd_export(ea, out, err), cli::kExitOk);

  cli::VerifyArgs va{dir.file("g.json"), dir.file("f.json")};
  EXPECT_EQ(cli::cmd_verify(va, out, err), cli::kExitOk) << out.str() << err.str();
  cli::VerifyArgs self{"", dir.file("f.json")};
  EXPECT_EQ(cli::cmd_verify(self, out, err), cli::kExitOk);

  auto doc = json::parse(slurp(dir.file("f.json")));
  std::swap(doc["classes"][0][0], doc["classes"][1][0]);
  spit(dir.file("tampered.json"), doc.dump());
  std::ostringstream report;
  EXPECT_EQ(cli::cmd_verify({dir.file("g.json"), dir.file("tampered.json")}, report, err),
            cli::kExitFailure);
  EXPECT_NE(report.str().find("violation"), std::string::npos);

  auto cert = json::parse(slurp(dir.file("f.json")));
  cert["certificate"]["children"][0]["classes"][0].erase(0);
  spit(dir.file("badcert.json"), cert.dump());
  EXPECT_EQ(cli::cmd_verify({"", dir.file("badcert.json")}, out, err), cli::kExitFailure);

  const auto text = slurp(dir.file("f.json"));
  spit(dir.file("truncated.json"), text.substr(0, text.size() / 2));
  EXPECT_EQ(cli::cmd_verify({dir.file("g.json"), dir.file("truncated.json")}, out, err),
            cli::kExitSchema);

  auto wrong = json::parse(text);
  wrong["version"] = "cayley-factor/0";
  spit(dir.file("wrong.json"), wrong.dump());
  EXPECT_EQ(cli::cmd_verify({dir.file("g.json"), dir.file("wrong.json")}, out, err), cli::kExitSchema);
  EXPECT_EQ(cli::cmd_verify({dir.file("g.json"), dir.file("nope.json")}, out, err), cli::kExitSchema);
  // Graph document passed where a factorization is expected.
  EXPECT_EQ(cli::cmd_verify({dir.file("g.json"), dir.file("g.json")}, out, err), cli::kExitSchema);
}

TEST(CertificateJson, RoundTrips) {
  const auto spec = parse_group_spec("Z8*Z3");
  const auto s = GeneratingSet::of(spec.group, parse_generators(spec, "(1,1),(2,0),(0,1)"));
  const auto outcome = factorize(spec.group, s);
  const auto doc = certificate_to_json(outcome.certificate);
  const auto back = certificate_from_json(json::parse(doc.dump()));
  EXPECT_EQ(certificate_to_json(back).dump(), doc.dump());
  EXPECT_TRUE(replay_certificate(spec.group, back).ok());
}

TEST(CmdExport, DotWithoutColors) {
  std::ostringstream out;
  std::ostringstream err;
  cli::ExportArgs ea{"Z6", "1", cli::Format::kDot, ""};
  ASSERT_EQ(cli::cmd_export(ea, out, err), cli::kExitOk);
  EXPECT_EQ(out.str().find("color="), std::string::npos);
  EXPECT_NE(out.str().find("0 -- 1;"), std::string::npos);
}

TEST(CmdBench, Examples) {
  std::ostringstream out;
  std::ostringstream err;
  cli::BenchArgs b;
  b.seed = 42;
  b.trials = 1;
  b.filter = "Z4*Z3";
  ASSERT_EQ(cli::cmd_bench(b, out, err), cli::kExitOk);
  std::istringstream lines(out.str());
  std::string header;
  std::string row;
  std::string extra;
  std::getline(lines, header);
  std::getline(lines, row);
  EXPECT_FALSE(std::getline(lines, extra));
  EXPECT_EQ(header, cli::kBenchHeader);
  EXPECT_EQ(row.rfind("Z4*Z3,12,", 0), 0u);
  EXPECT_EQ(row.substr(row.size() - 5), ",true");

  std::ostringstream none;
  b.trials = 0;
  cli::cmd_bench(b, none, err);
  EXPECT_EQ(none.str(), std::string(cli::kBenchHeader) + "\n");

  std::ostringstream nothing;
  b.trials = 3;
  b.filter = "Z5*Z5";
  cli::cmd_bench(b, nothing, err);
  EXPECT_EQ(nothing.str(), std::string(cli::kBenchHeader) + "\n");
}

TEST(CmdBench, DeterministicModuloTiming) {
  cli::BenchArgs b;
  b.seed = 7;
  b.trials = 3;
  b.filter = "Z2*Z3,Q8*Z1,D4*Z3,Z2*Z2*Z5";
  std::ostringstream first;
  std::ostringstream second;
  std::ostringstream err;
  cli::cmd_bench(b, first, err);
  cli::cmd_bench(b, second, err);
  EXPECT_EQ(without_timing(first.str()), without_timing(second.str()));
  const std::string text = first.str();
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 1 + 4 * 3);
}

}  // namespace
}  // namespace onefac
