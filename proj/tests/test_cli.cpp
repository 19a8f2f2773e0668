#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"
#include "splitter/num_core.hpp"
#include "splitter/set_io.hpp"

namespace fs = std::filesystem;
using splitter::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path temp_path(const std::string& name) { return fs::temp_directory_path() / ("splitter_cli_" + name); }

void write_file(const fs::path& p, const std::string& content) {
  std::ofstream f(p);
  f << content;
}

}  // namespace

TEST(CliCheck, Verdicts) {
  const auto a = call({"check", "--q", "12721", "--k1", "3", "--k2", "5"});
  EXPECT_EQ(a.code, 0);
  EXPECT_NE(a.out.find("verdict: exists"), std::string::npos);
  EXPECT_NE(a.out.find("ord(-4/5) = 265"), std::string::npos);

  const auto b = call({"check", "--q", "103", "--k1", "0", "--k2", "3"});
  EXPECT_EQ(b.code, 0);
  EXPECT_NE(b.out.find("verdict: not-exists"), std::string::npos);

  EXPECT_EQ(call({"check", "--q", "9", "--k1", "0", "--k2", "2"}).code, 2);
  EXPECT_EQ(call({"check", "--q", "7", "--k1", "0", "--k2", "6"}).code, 0);
  EXPECT_EQ(call({"check", "--q", "7", "--k1", "0", "--k2", "6", "--allow-singular"}).code, 0);
  EXPECT_EQ(call({"check", "--q", "1201", "--k1", "0", "--k2", "6"}).code, 3);
  EXPECT_EQ(call({"check", "--q", "1201", "--k1", "0", "--k2", "6", "--oracle-bound", "2000"}).code, 0);
  EXPECT_EQ(call({"check"}).code, 2);
  EXPECT_EQ(call({"bogus"}).code, 2);
}

TEST(CliCheck, StructuredOutputIsStable) {
  const std::vector<std::string> args{"check", "--q", "12721", "--k1", "3", "--k2", "5", "--format", "json"};
  const auto a = call(args);
  const auto b = call(args);
  EXPECT_EQ(a.out, b.out);
  const auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j["command"], "check");
  EXPECT_EQ(j["inputs"]["q"], 12721);
  EXPECT_EQ(j["inputs"]["g"], 13);
  EXPECT_EQ(j["verdict"]["exists"], true);
  EXPECT_EQ(j["verdict"]["rule"], "B[-3,5]-subgroup");
  EXPECT_EQ(j["verdict"]["certificate"]["index<6,16>"], 8);
  EXPECT_FALSE(j.contains("timing"));

  auto timed = args;
  timed.push_back("--timing");
  EXPECT_TRUE(nlohmann::json::parse(call(timed).out).contains("timing"));
}

TEST(CliConstruct, RoundTripThroughVerify) {
  const fs::path file = temp_path("463.txt");
  const auto c = call({"construct", "--q", "463", "--k1", "1", "--k2", "5", "--out", file.string()});
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_NE(c.out.find("size: 77"), std::string::npos);
  EXPECT_EQ(splitter::read_set_file(file).elements.size(), 77u);
  const auto v = call({"verify", "--set", file.string()});
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find("kind: perfect"), std::string::npos);
  EXPECT_NE(v.out.find("singular: no"), std::string::npos);

  const fs::path jfile = temp_path("463.json");
  ASSERT_EQ(call({"construct", "--q", "463", "--k1", "1", "--k2", "5", "--out", jfile.string(), "--set-format",
                  "json"})
                .code,
            0);
  EXPECT_NE(call({"verify", "--set", jfile.string()}).out.find("kind: perfect"), std::string::npos);
  fs::remove(file);
  fs::remove(jfile);
}

TEST(CliConstruct, SmallAndFailing) {
  const auto t = call({"construct", "--q", "7", "--k1", "1", "--k2", "5"});
  EXPECT_EQ(t.code, 0);
  EXPECT_NE(t.out.find("elements: 1\n"), std::string::npos);
  EXPECT_EQ(call({"construct", "--q", "97", "--k1", "3", "--k2", "5"}).code, 2);
}

TEST(CliConstruct, LargeSetsGetGeneratorFile) {
  const fs::path file = temp_path("307009.txt");
  const auto c = call({"construct", "--q", "307009", "--k1", "2", "--k2", "6", "--out", file.string()});
  ASSERT_EQ(c.code, 0) << c.err;
  const fs::path gen = file.string() + ".generator.json";
  ASSERT_TRUE(fs::exists(gen));
  std::ifstream in(gen);
  const auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j["base"], 7);
  EXPECT_EQ(j["exponent_chains"].back()["step"], 64);
  EXPECT_NE(call({"verify", "--set", file.string()}).out.find("kind: perfect"), std::string::npos);
  fs::remove(file);
  fs::remove(gen);
}

TEST(CliVerify, Kinds) {
  // {13^(16i+j)} for q = 12721.
  const splitter::GroupCtx ctx(12721);
  std::string body = "# modulus=12721 k1=3 k2=5\n";
  std::vector<std::uint64_t> elems;
  for (std::uint64_t i = 0; i < 795; ++i)
    for (std::uint64_t j = 0; j < 2; ++j) elems.push_back(ctx.power(16 * i + j));
  for (auto e : elems) body += std::to_string(e) + "\n";
  const fs::path file = temp_path("12721.txt");
  write_file(file, body);
  EXPECT_NE(call({"verify", "--set", file.string()}).out.find("kind: perfect"), std::string::npos);

  write_file(file, body + std::to_string(elems.front()) + "\n");
  EXPECT_NE(call({"verify", "--set", file.string()}).out.find("kind: invalid"), std::string::npos);

  std::string dropped = "# modulus=12721 k1=3 k2=5\n";
  for (std::size_t i = 1; i < elems.size(); ++i) dropped += std::to_string(elems[i]) + "\n";
  write_file(file, dropped);
  EXPECT_NE(call({"verify", "--set", file.string()}).out.find("kind: valid-not-maximal"), std::string::npos);

  write_file(file, "1\n");
  EXPECT_EQ(call({"verify", "--set", file.string()}).code, 2);  // no modulus
  write_file(file, "# modulus=13 k1=2 k2=2\n13\n");
  EXPECT_EQ(call({"verify", "--set", file.string()}).code, 2);
  write_file(file, "# modulus=13 k1=2 k2=2\nabc\n");
  EXPECT_EQ(call({"verify", "--set", file.string()}).code, 2);
  fs::remove(file);
}

TEST(CliSearch, TinyRange) {
  const auto r = call({"search", "--min", "2", "--max", "10", "--k1", "0", "--k2", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("5 exists"), std::string::npos);
  EXPECT_NE(r.out.find("7 not-exists"), std::string::npos);
  EXPECT_EQ(call({"search", "--min", "10", "--max", "2", "--k1", "0", "--k2", "2"}).code, 2);
}

TEST(CliSearch, ParallelOutputIdentical) {
  const std::vector<std::string> base{"search", "--min", "10000", "--max", "40000", "--k1", "3", "--k2", "5",
                                      "--format", "json"};
  auto one = base, four = base;
  one.insert(one.end(), {"--jobs", "1"});
  four.insert(four.end(), {"--jobs", "4"});
  const auto a = call(one);
  const auto b = call(four);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  const auto j = nlohmann::json::parse(a.out);
  std::vector<std::uint64_t> found;
  std::uint64_t last = 0;
  for (const auto& rec : j["results"]) {
    EXPECT_GT(rec["q"].get<std::uint64_t>(), last);
    last = rec["q"];
    if (rec["verdict"]["exists"] == true) found.push_back(rec["q"]);
  }
  EXPECT_EQ(found, (std::vector<std::uint64_t>{12721, 26641}));
}

TEST(CliSearch, ResultsFile) {
  const fs::path file = temp_path("results.jsonl");
  const auto r = call({"search", "--min", "400", "--max", "1200", "--k1", "1", "--k2", "5", "--results",
                       file.string(), "--only-exists"});
  EXPECT_EQ(r.code, 0);
  std::ifstream in(file);
  std::vector<std::uint64_t> qs;
  std::string line;
  while (std::getline(in, line)) qs.push_back(nlohmann::json::parse(line)["q"]);
  EXPECT_EQ(qs, (std::vector<std::uint64_t>{463, 571, 1171}));
  fs::remove(file);
}

TEST(CliFactorTest, Examples) {
  const auto a = call({"factor-test", "--modulus", "420", "--set", "0,1,404,2,278", "--p", "5"});
  EXPECT_EQ(a.code, 0);
  EXPECT_NE(a.out.find("direct factor: yes"), std::string::npos);
  const auto b = call({"factor-test", "--modulus", "102", "--set", "0,44,39", "--p", "3"});
  EXPECT_NE(b.out.find("direct factor: no"), std::string::npos);
  const fs::path file = temp_path("complement.txt");
  const auto c = call({"factor-test", "--modulus", "4", "--set", "0,2", "--p", "2", "--complement", file.string()});
  EXPECT_NE(c.out.find("complement: 0 1\n"), std::string::npos);
  EXPECT_EQ(splitter::read_set_file(file).elements, (std::vector<std::uint64_t>{0, 1}));
  fs::remove(file);
  EXPECT_EQ(call({"factor-test", "--modulus", "12", "--set", "0,1,2", "--p", "2"}).code, 2);
  EXPECT_EQ(call({"factor-test", "--modulus", "12", "--set", "0,x", "--p", "2"}).code, 2);
}

TEST(CliQuasi, Examples) {
  EXPECT_NE(call({"quasi", "--k", "3", "--m", "6", "--family", "zero-k"}).out.find("conclusion: nonexistent"),
            std::string::npos);
  EXPECT_NE(call({"quasi", "--k", "2", "--m", "15", "--family", "shifted"}).out.find("conclusion: nonexistent"),
            std::string::npos);
  EXPECT_NE(call({"quasi", "--k", "3", "--m", "4", "--family", "zero-k"}).out.find("conclusion: no-conclusion"),
            std::string::npos);
}

TEST(CliConfig, EnvAndFile) {
  const fs::path cfg = temp_path("config.txt");
  write_file(cfg, "# defaults\noracle_bound = 2000\nformat=json\n");
  const auto r = call({"check", "--q", "1201", "--k1", "0", "--k2", "6", "--config", cfg.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(nlohmann::json::parse(r.out)["verdict"]["rule"], "bruteforce");

  write_file(cfg, "unknown=1\n");
  EXPECT_EQ(call({"check", "--q", "13", "--k1", "0", "--k2", "2", "--config", cfg.string()}).code, 2);
  fs::remove(cfg);

  ::setenv("SPLITTER_ORACLE_BOUND", "2000", 1);
  EXPECT_EQ(call({"check", "--q", "1201", "--k1", "0", "--k2", "6"}).code, 0);
  EXPECT_EQ(call({"check", "--q", "1201", "--k1", "0", "--k2", "6", "--oracle-bound", "100"}).code, 3);
  ::unsetenv("SPLITTER_ORACLE_BOUND");
}
