#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "closure/cli.hpp"

using namespace closure;
using cli::JobConfig;
using nlohmann::json;

namespace {

std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name; }

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("closure_forge_test_" + name)).string();
}

struct Outcome {
  int code;
  std::string out;
  std::string err;
  json report() const { return json::parse(out); }
};

Outcome run(JobConfig c) {
  c.json = true;
  std::ostringstream out, err;
  const int code = cli::run(c, out, err);
  return {code, out.str(), err.str()};
}

Outcome run_args(std::vector<std::string> args) {
  args.insert(args.begin(), "closure_forge");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

JobConfig job(std::vector<std::string> command, const std::string& in = "") {
  JobConfig c;
  c.command = std::move(command);
  if (!in.empty()) c.in = fixture(in);
  return c;
}

std::vector<std::string> strings(const json& a) {
  std::vector<std::string> out;
  for (const auto& x : a) out.push_back(x.get<std::string>());
  return out;
}

}  // namespace

TEST(Cli, ArtinSchreierFixture) {
  JobConfig c = job({"solve-series"}, "artin_schreier.json");
  c.target = Exponent(20);
  const auto o = run(c);
  ASSERT_EQ(o.code, cli::kOk) << o.err;
  const json r = o.report();
  EXPECT_EQ(r["schema"], "closure-forge/1");
  ASSERT_EQ(r["roots"].size(), 2u);
  std::vector<std::vector<std::string>> supports;
  for (const auto& root : r["roots"]) {
    EXPECT_EQ(root["status"], "certified");
    std::vector<std::string> below;
    for (const auto& e : strings(root["support"]))
      if (Exponent::parse(e) < Exponent(20)) below.push_back(e);
    supports.push_back(below);
  }
  const std::vector<std::string> y{"1", "2", "4", "8", "16"}, y1{"0", "1", "2", "4", "8", "16"};
  EXPECT_TRUE((supports[0] == y && supports[1] == y1) || (supports[0] == y1 && supports[1] == y));
}

TEST(Cli, ByteIdenticalOutput) {
  const std::vector<std::string> args{"solve-series", "--in", fixture("artin_schreier.json"), "--target", "20", "--json"};
  const auto a = run_args(args), b = run_args(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const auto t1 = run_args({"selfcheck", "--seed", "99"}), t2 = run_args({"selfcheck", "--seed", "99"});
  EXPECT_EQ(t1.out, t2.out);
  EXPECT_NE(t1.out.find("seed: 99"), std::string::npos);
}

TEST(Cli, SeedIsRecorded) {
  JobConfig c = job({"lampert"});
  c.p = 2;
  c.seed = 1234;
  c.target = Exponent(2);
  EXPECT_EQ(run(c).report()["seed"], 1234);
}

TEST(Cli, ExitCodes) {
  JobConfig c = job({"lampert"});
  c.p = 4;
  EXPECT_EQ(run(c).code, cli::kInvalid);

  c = job({"solve-series"}, "artin_schreier.json");
  c.target = Exponent(50);
  const auto low = run(c);
  EXPECT_EQ(low.code, cli::kExhausted);
  EXPECT_EQ(low.report()["error"]["kind"], "precision");

  c.target = Exponent(20);
  c.max_steps = 3;
  const auto budget = run(c);
  EXPECT_EQ(budget.code, cli::kExhausted);
  EXPECT_TRUE(budget.report()["exhausted"].get<bool>());
  EXPECT_FALSE(budget.report()["roots"].empty());

  EXPECT_EQ(run(job({"nonsense"})).code, cli::kInvalid);
  EXPECT_EQ(run(job({"solve-series"}, "missing.json")).code, cli::kInvalid);

  const std::string path = temp_path("nonunit.json");
  std::ofstream(path) << R"j({"ring": "W(2,2,1)", "d": [2, 1]})j";
  c = job({"recur", "solve"});
  c.in = path;
  EXPECT_EQ(run(c).code, cli::kInvalid);

  EXPECT_EQ(run_args({"solve-series", "--bogus"}).code, cli::kInvalid);
  EXPECT_EQ(run_args({"solve-series", "--in", fixture("artin_schreier.json"), "--target", "1/0"}).code, cli::kInvalid);
}

TEST(Cli, VerifyRoundTrip) {
  struct Case {
    std::vector<std::string> command;
    std::string input;
  };
  for (const auto& k : {Case{{"solve-series"}, "artin_schreier.json"}, Case{{"solve-padic"}, "sqrt_p.json"},
                        Case{{"solve-witt"}, "witt_linear.json"}}) {
    JobConfig c = job(k.command, k.input);
    c.target = Exponent(6);
    c.out = temp_path("roots.json");
    ASSERT_EQ(run(c).code, cli::kOk);

    JobConfig v = job({"analyze", "verify"});
    v.in = c.out;
    const auto o = run(v);
    EXPECT_EQ(o.code, cli::kOk) << o.out;
    EXPECT_TRUE(o.report()["all_match"].get<bool>());

    // A forged certificate is caught.
    json report;
    std::ifstream(c.out) >> report;
    report["roots"][0]["certificate"]["substitution_valuation"] = "1000";
    std::ofstream(c.out) << report.dump();
    EXPECT_EQ(run(v).code, cli::kInternal);
  }
}

TEST(Cli, Lampert) {
  JobConfig c = job({"lampert"});
  c.p = 2;
  c.target = Exponent(6);
  const auto o = run(c);
  const json r = o.report();
  EXPECT_TRUE(o.code == cli::kOk || o.code == cli::kExhausted);
  EXPECT_FALSE(r["roots"].empty());
  EXPECT_FALSE(r["support_union"].empty());
  EXPECT_TRUE(r.contains("sab_fit"));
  EXPECT_TRUE(r["certificate"].contains("min_substitution_valuation"));
  // The support climbs 1/2, 3/4, 7/8, ... towards 1.
  EXPECT_EQ(r["support_union"][0], "1/2");
  EXPECT_EQ(r["support_union"][1], "3/4");
}

TEST(Cli, Selfcheck) {
  const auto o = run(job({"selfcheck"}));
  EXPECT_EQ(o.code, cli::kOk) << o.out;
  EXPECT_TRUE(o.report()["passed"].get<bool>());
}

TEST(Cli, Recurrences) {
  const auto solved = run(job({"recur", "solve"}, "relation_w2f4.json"));
  ASSERT_EQ(solved.code, cli::kOk) << solved.err;
  EXPECT_EQ(solved.report()["rank"], 2);
  EXPECT_TRUE(solved.report()["verified"].get<bool>());

  JobConfig c = job({"recur", "combine"}, "relation_pair.json");
  for (const char* op : {"sum", "product"}) {
    c.op = op;
    const auto o = run(c);
    ASSERT_EQ(o.code, cli::kOk) << o.err;
    EXPECT_EQ(o.report()["relation"]["ring"], "W(2,2,2)");
  }
  c.op = "xor";
  EXPECT_EQ(run(c).code, cli::kInvalid);

  const auto checked = run(job({"recur", "check"}, "constants_sequence.json"));
  ASSERT_EQ(checked.code, cli::kOk);
  EXPECT_TRUE(checked.report()["holds"].get<bool>());

  c = job({"recur", "split"}, "relation_w2f4.json");
  c.direction = "to";
  const auto to = run(c);
  ASSERT_EQ(to.code, cli::kOk) << to.err;
  const json comps = to.report()["components"];
  EXPECT_EQ(comps.size(), 2u);
  const std::string path = temp_path("components.json");
  std::ofstream(path) << json{{"components", comps}, {"m", 2}}.dump();
  c.direction = "from";
  c.in = path;
  const auto from = run(c);
  ASSERT_EQ(from.code, cli::kOk) << from.err;
  EXPECT_EQ(from.report()["relation"]["ring"].get<std::string>().substr(0, 6), "W(2,2,");
}

TEST(Cli, AnalyzeDigits) {
  const auto sup = run(job({"analyze", "support"}, "lampert_like_digits.json"));
  ASSERT_EQ(sup.code, cli::kOk) << sup.err;
  EXPECT_EQ(sup.report()["sab_fit"], (json{{"a", 1}, {"b", 1}}));
  EXPECT_EQ(sup.report()["support"].size(), 5u);

  const auto per = run(job({"analyze", "periodicity"}, "lampert_like_digits.json"));
  ASSERT_EQ(per.code, cli::kOk) << per.err;
  EXPECT_TRUE(per.report()["report"]["periodic_within_precision"].get<bool>());
}

TEST(Cli, TextOutput) {
  const auto o = run_args({"solve-series", "--in", fixture("artin_schreier.json"), "--target", "20"});
  EXPECT_EQ(o.code, 0);
  EXPECT_NE(o.out.find("schema: closure-forge/1"), std::string::npos);
  EXPECT_NE(o.out.find("status: certified"), std::string::npos);
}
