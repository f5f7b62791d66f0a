#include <gtest/gtest.h>

#include <algorithm>
#include <regex>
#include <sstream>

#include "hkecc/cli.hpp"
#include "hkecc/cost_model.hpp"
#include "hkecc/ecpm.hpp"

using namespace hkecc;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const std::string kGf8 = HKECC_DATA_DIR "/gf8.field";
const std::string kB163 = HKECC_DATA_DIR "/b163.curve";
const std::string kToy = HKECC_DATA_DIR "/toy5.curve";

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) v.push_back(l);
  return v;
}

}  // namespace

TEST(CliField, Arithmetic) {
  EXPECT_EQ(run({"field", "mul", "2", "3", kGf8}).out, "6\n");
  EXPECT_EQ(run({"field", "add", "a", "a", HKECC_DATA_DIR "/toy5.curve"}).out, "0\n");
  EXPECT_EQ(run({"field", "square", "4", kGf8}).out, "6\n");
  EXPECT_EQ(run({"field", "invert", "2", kGf8}).out, "5\n");
  const auto j = run({"field", "invert", "2", kGf8, "--json"});
  EXPECT_NE(j.out.find("\"iterations\""), std::string::npos);
  EXPECT_NE(j.out.find("\"result\":\"5\""), std::string::npos);
}

TEST(CliField, MatchesLibrary) {
  const auto c = ecpm::b163();
  const std::string a = gf2m::to_hex(c.g.x());
  const std::string b = gf2m::to_hex(c.g.y());
  EXPECT_EQ(run({"field", "mul", a, b, kB163}).out, gf2m::to_hex(gf2m::mul(c.g.x(), c.g.y(), c.field)) + "\n");
  EXPECT_EQ(run({"field", "invert", a, kB163}).out, gf2m::to_hex(gf2m::invert(c.g.x(), c.field)) + "\n");
}

TEST(CliField, Errors) {
  const auto z = run({"field", "invert", "0", kGf8});
  EXPECT_EQ(z.code, cli::kDomainError);
  EXPECT_TRUE(z.out.empty());
  EXPECT_EQ(lines(z.err).size(), 1U);
  EXPECT_EQ(run({"field", "mul", "8", "1", kGf8}).code, cli::kUsageError);   // width
  EXPECT_EQ(run({"field", "mul", "g", "1", kGf8}).code, cli::kUsageError);   // malformed
  EXPECT_EQ(run({"field", "pow", "2", "1", kGf8}).code, cli::kUsageError);   // unknown op
  EXPECT_EQ(run({"field", "mul", "2", kGf8}).code, cli::kUsageError);        // arity
  EXPECT_EQ(run({"field", "mul", "2", "3", "/nonexistent.curve"}).code, cli::kUsageError);
  EXPECT_EQ(run({}).code, cli::kUsageError);
  EXPECT_EQ(run({"bogus"}).code, cli::kUsageError);
  EXPECT_EQ(run({"--help"}).code, cli::kOk);
}

TEST(CliEcpm, KnownAnswers) {
  const auto c = ecpm::b163();
  EXPECT_EQ(run({"ecpm", "1", "G", kB163}).out, ecpm::format_point(c.g) + "\n");
  EXPECT_EQ(run({"ecpm", ecpm::to_hex_integer(c.n), "G", kB163}).out, "INF\n");
  const auto neg = run({"ecpm", ecpm::to_hex_integer(c.n - 1), "G", kB163, "--check"});
  EXPECT_EQ(neg.code, 0);
  EXPECT_NE(neg.out.find(ecpm::format_point(ecpm::negate(c.g))), std::string::npos);
  EXPECT_NE(neg.out.find("oracle: MATCH"), std::string::npos);
  const auto r = run({"ecpm", "123456789abcdef0fedcba9876543210", "G", kB163, "--check"});
  EXPECT_NE(r.out.find("oracle: MATCH"), std::string::npos);
  const auto q = ecpm::scalar_mul(ecpm::Scalar::from_hex("123456789abcdef0fedcba9876543210"), c.g, c);
  EXPECT_EQ(lines(r.out).front(), ecpm::format_point(q));
  const auto xonly = run({"ecpm", "123456789abcdef0fedcba9876543210", "G", kB163, "--no-recover-y"});
  EXPECT_EQ(xonly.out, gf2m::to_hex(q.x()) + "\n");
}

TEST(CliEcpm, ExplicitPointsAndErrors) {
  EXPECT_EQ(run({"ecpm", "2", "6,0", kToy}).out, run({"ecpm", "2", "G", kToy}).out);
  EXPECT_EQ(run({"ecpm", "5", "INF", kToy}).out, "INF\n");
  EXPECT_EQ(run({"ecpm", "2", "1,1", kToy}).code, cli::kDomainError);
  EXPECT_EQ(run({"ecpm", "2", "G", kGf8}).code, cli::kUsageError);  // field-only file
  EXPECT_EQ(run({"ecpm", "zz", "G", kToy}).code, cli::kUsageError);
  const auto j = run({"ecpm", "3", "G", kToy, "--json"});
  EXPECT_NE(j.out.find("\"point\""), std::string::npos);
}

TEST(CliCost, Reports) {
  const auto pm = run({"cost", "41", "--family", "pm"});
  EXPECT_EQ(pm.code, 0);
  EXPECT_NE(pm.out.find("1681"), std::string::npos);
  EXPECT_NE(pm.out.find("1600"), std::string::npos);
  const auto sweep = run({"cost", "163", "--sweep"});
  EXPECT_TRUE(std::regex_search(sweep.out, std::regex(R"(hm\s+163\s+164\s+2\s+41\s+15129\s+16024\s+Ta\+12)")))
      << sweep.out;
  EXPECT_NE(sweep.out.find("recommended: k=3 cutoff=21"), std::string::npos);
  const auto tables = run({"cost", "--tables"});
  for (const char* row : {"7762", "20.282", "157428.88", "9982", "18.129", "180963.68", "695", "10.562"}) {
    EXPECT_NE(tables.out.find(row), std::string::npos) << row;
  }
  const auto js = run({"cost", "163", "--sweep", "--json"});
  EXPECT_EQ(lines(js.out).size(), 9U);
  EXPECT_EQ(run({"cost", "163", "--family", "hm", "--k", "9"}).code, cli::kUsageError);
  EXPECT_EQ(run({"cost", "163", "--family", "zz"}).code, cli::kUsageError);
}

TEST(CliSched, WorstCaseAndTrace) {
  const auto r = run({"sched", "--worst-case", "--mode", "paper", kB163, "--freq", "213", "--trace"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(std::regex_search(r.out, std::regex(R"(total\s+1298\n)"))) << r.out;
  EXPECT_TRUE(std::regex_search(r.out, std::regex(R"(time_us\s+6\.09)")));
  // Header plus six cycle rows.
  const auto all = lines(r.out);
  const auto at = std::find_if(all.begin(), all.end(), [](const std::string& l) { return l.rfind("first", 0) == 0; });
  ASSERT_NE(at, all.end());
  EXPECT_EQ(all.end() - at, 8);
  const auto js = run({"sched", "--worst-case", kB163, "--trace", "--json"});
  EXPECT_EQ(lines(js.out).size(), 15U);
  EXPECT_NE(js.out.find("\"total\":1298"), std::string::npos);
  const auto honest = run({"sched", "--worst-case", "--mode", "honest", kB163});
  EXPECT_TRUE(std::regex_search(honest.out, std::regex(R"(init_cycles\s+3\n)")));
  EXPECT_EQ(run({"sched", kB163}).code, cli::kUsageError);
  EXPECT_EQ(run({"sched", "5", kB163, "--mode", "fast"}).code, cli::kUsageError);
}

TEST(CliBench, RowPerCutoffAndColumns) {
  const auto r = run({"bench", "--op", "mul", "--iters", "300", "--cutoff", "1,21,41,82,163"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto all = lines(r.out);
  ASSERT_EQ(all.size(), 7U);
  EXPECT_NE(all[1].find("ns/op"), std::string::npos);
  EXPECT_NE(all[1].find("ops/s"), std::string::npos);
  const char* cutoffs[] = {"1", "21", "41", "82", "163"};
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_TRUE(std::regex_search(all[2 + i], std::regex(std::string(R"(^mul\s+)") + cutoffs[i] + R"(\s)")))
        << all[2 + i];
  }
  const auto js = run({"bench", "--op", "square", "--iters", "100", "--json", "--cutoff", "41"});
  EXPECT_NE(js.out.find("\"ns_per_op\""), std::string::npos);
  EXPECT_NE(js.out.find("\"ops_per_s\""), std::string::npos);
  EXPECT_EQ(run({"bench", "--op", "frob"}).code, cli::kUsageError);
  EXPECT_EQ(run({"bench", "--cutoff", "200", "--iters", "10"}).code, cli::kUsageError);
}

TEST(CliBench, SeedDeterminism) {
  EXPECT_EQ(cli::bench_operands(7, 64, 163), cli::bench_operands(7, 64, 163));
  EXPECT_NE(cli::bench_operands(7, 64, 163), cli::bench_operands(8, 64, 163));
  for (const auto& e : cli::bench_operands(9, 64, 163)) EXPECT_EQ(e.width(), 163U);
}

TEST(CliBench, OtherOps) {
  for (const char* op : {"invert", "ecpm"}) {
    const auto r = run({"bench", "--op", op, "--iters", "30", "--curve", kToy});
    EXPECT_EQ(r.code, 0) << op << r.err;
  }
  const auto t = run({"bench", "--op", "mul", "--iters", "200", "--threads", "2"});
  EXPECT_NE(t.out.find("throughput"), std::string::npos);
}
