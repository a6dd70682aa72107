#include <gtest/gtest.h>

#include <json.hpp>
#include <sstream>

#include "mf/cli.hpp"
#include "mf/identities.hpp"
#include "mf/monte_carlo.hpp"
#include "mf/report.hpp"

namespace mf {
namespace {

nlohmann::json run_json(std::vector<std::string> args) {
  args.insert(args.begin(), "mf");
  args.insert(args.end(), {"--format", "json"});
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return nlohmann::json::parse(out.str());
}

TEST(Integration, VerifyCommandMatchesLibrarySuite) {
  TableStore tables;
  IdentitySuite suite(tables);
  SuiteOptions o;
  o.threads = 2;
  const auto reports = suite.run(o);
  const auto doc = run_json({"verify", "--identity", "all", "--n-max", "6", "--k-max", "3", "--threads", "3"});
  ASSERT_EQ(doc["results"].size(), reports.size());
  for (std::size_t i = 0; i < reports.size(); ++i) {
    auto lib = report::to_json(reports[i]);
    auto cli = doc["results"][i];
    lib.erase("elapsed_ns");
    cli.erase("elapsed_ns");
    EXPECT_EQ(lib, cli) << reports[i].label();
  }
  EXPECT_EQ(doc["overall"], "PASS");
}

TEST(Integration, McCommandMatchesLibrary) {
  TableStore tables;
  MomentEngine engine(tables);
  const auto lib = mc::mc_moment(parse_expression("U1*X1 + U2*X2"), 2, 40000, 5, engine);
  const auto doc = run_json({"mc", "--expr", "U1*X1 + U2*X2", "--n", "2", "--samples", "40000", "--seed", "5"});
  const auto& r = doc["results"][0];
  EXPECT_EQ(r["estimate"].get<double>(), lib.estimate);
  EXPECT_EQ(r["std_error"].get<double>(), lib.std_error);
  EXPECT_EQ(r["exact"], lib.exact.str());
}

TEST(Integration, TableCommandMatchesStore) {
  TableStore tables;
  const auto doc = run_json({"table", "--family", "s1", "--n-max", "6"});
  std::size_t rows = 0;
  for (const auto& row : doc["results"]) {
    EXPECT_EQ(row["value"], tables.stirling1(row["n"], row["k"]).str());
    ++rows;
  }
  EXPECT_EQ(rows, 28u);
}

TEST(Integration, MomentCommandFeedsIdentityValues) {
  // thm8 left side for k = 3, n = 2 through the CLI equals the library check.
  TableStore tables;
  IdentitySuite suite(tables);
  const auto doc = run_json({"moment", "--expr", "X1 + 2*X2 + 3*X3 - 3", "--n", "2"});
  EXPECT_EQ(doc["results"][0]["value"], exact_value_str(suite.verify_thm8(2, 3).lhs));
}

}  // namespace
}  // namespace mf
