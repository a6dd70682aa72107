#include <gtest/gtest.h>

#include "mf/identities.hpp"
#include "mf_test_support.hpp"

namespace mf {
namespace {

const Poly L = Poly::variable(Var::Lambda);
Poly P(long c) { return Poly(Rational(c)); }

const TableStore& tables() {
  static TableStore t;
  return t;
}

const IdentitySuite& suite() {
  static IdentitySuite s(tables());
  return s;
}

Rational lhs_r(const IdentityReport& r) { return std::get<Rational>(r.lhs); }
Rational rhs_r(const IdentityReport& r) { return std::get<Rational>(r.rhs); }
Poly lhs_p(const IdentityReport& r) { return std::get<Poly>(r.lhs); }
Poly rhs_p(const IdentityReport& r) { return std::get<Poly>(r.rhs); }

const LambdaMode kSym = LambdaMode::symbolic();

TEST(Thm1, Examples) {
  const auto r = suite().verify_thm1(1, 1);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(lhs_r(r), Rational(1, 2));
  EXPECT_EQ(rhs_r(r), Rational(1, 2));
  for (int k = 0; k <= 5; ++k) {
    const auto z = suite().verify_thm1(0, k);
    EXPECT_EQ(lhs_r(z), Rational(1));
    EXPECT_EQ(rhs_r(z), Rational(1));
  }
  EXPECT_TRUE(suite().verify_thm1(3, 2).passed());
  EXPECT_EQ(r.label(), "thm1 k=1 n=1");
}

TEST(Cor2, Examples) {
  const auto r = suite().verify_cor2(1, 1);
  EXPECT_TRUE(r.passed());
  EXPECT_EQ(rhs_r(r), Rational(1, 2));
  EXPECT_EQ(rhs_r(suite().verify_cor2(0, 2)), Rational(1));
  EXPECT_TRUE(suite().verify_cor2(4, 2).passed());
  EXPECT_THROW(suite().verify_cor2(2, 0), std::invalid_argument);
}

TEST(LemmaBn, Examples) {
  EXPECT_EQ(rhs_r(suite().verify_lemma_bn(2)), Rational(-1, 6));
  EXPECT_EQ(rhs_r(suite().verify_lemma_bn(0)), Rational(1));
  EXPECT_EQ(rhs_r(suite().verify_lemma_bn(3)), Rational(1, 4));
  for (int n = 0; n <= 8; ++n) EXPECT_TRUE(suite().verify_lemma_bn(n).passed());
}

TEST(Thm3, Examples) {
  const auto one = suite().verify_thm3(1);
  EXPECT_EQ(lhs_r(one), Rational(-1, 2));
  EXPECT_TRUE(one.passed());
  EXPECT_EQ(lhs_r(suite().verify_thm3(2)), Rational(-1, 6));
  EXPECT_TRUE(suite().verify_thm3(4).passed());
  EXPECT_THROW(suite().verify_thm3(0), std::invalid_argument);
}

TEST(Thm4, Examples) {
  const auto r = suite().verify_thm4(2, 1, kSym);
  EXPECT_EQ(lhs_p(r), P(0) - L);
  EXPECT_EQ(rhs_p(r), P(0) - L);
  for (int n = 0; n <= 6; ++n) {
    const auto d = suite().verify_thm4(n, n, kSym);
    EXPECT_EQ(lhs_p(d), P(1));
    EXPECT_EQ(rhs_p(d), P(1));
  }
  EXPECT_TRUE(suite().verify_thm4(4, 2, kSym).passed());
  EXPECT_THROW(suite().verify_thm4(1, 2, kSym), std::invalid_argument);
}

TEST(Thm5, Examples) {
  const auto a = suite().verify_thm5(1, 1);
  EXPECT_EQ(lhs_r(a), Rational(1, 2));
  EXPECT_EQ(rhs_r(a), Rational(1, 2));
  const auto b = suite().verify_thm5(2, 1);
  EXPECT_EQ(lhs_r(b), Rational(5, 6));
  EXPECT_EQ(rhs_r(b), Rational(5, 6));
  EXPECT_TRUE(suite().verify_thm5(3, 2).passed());
  EXPECT_TRUE(suite().verify_thm5(2, 5).passed());
  EXPECT_THROW(suite().verify_thm5(2, 0), std::invalid_argument);
}

TEST(Thm6, Examples) {
  const auto r = suite().verify_thm6(2, 1, kSym);
  EXPECT_EQ(lhs_p(r), P(1) - L);
  EXPECT_EQ(rhs_p(r), P(1) - L);
  EXPECT_EQ(rhs_p(suite().verify_thm6(3, 3, kSym)), P(1));
  EXPECT_TRUE(suite().verify_thm6(5, 2, kSym).passed());
  EXPECT_THROW(suite().verify_thm6(1, 2, kSym), std::invalid_argument);
}

TEST(Eq41, Examples) {
  const auto a = suite().verify_eq41(1, 1, kSym);
  EXPECT_EQ(lhs_p(a), P(1));
  EXPECT_EQ(rhs_p(a), P(1));
  const auto b = suite().verify_eq41(2, 1, kSym);
  EXPECT_EQ(lhs_p(b), P(1));
  EXPECT_EQ(rhs_p(b), P(1));
  EXPECT_TRUE(suite().verify_eq41(4, 2, kSym).passed());
  EXPECT_TRUE(suite().verify_eq41(2, 4, kSym).passed());
  EXPECT_THROW(suite().verify_eq41(0, 1, kSym), std::invalid_argument);
}

TEST(Limit, Examples) {
  const auto a = suite().verify_limit_identity(2, 1);
  EXPECT_EQ(lhs_r(a), Rational(1));
  EXPECT_EQ(rhs_r(a), Rational(1));
  EXPECT_TRUE(suite().verify_limit_identity(3, 3).passed());
  const auto c = suite().verify_limit_identity(3, 2);
  EXPECT_EQ(lhs_r(c), Rational(3, 2));
  EXPECT_TRUE(c.passed());
  EXPECT_THROW(suite().verify_limit_identity(1, 2), std::invalid_argument);
}

TEST(DerangementSums, Examples) {
  EXPECT_EQ(lhs_r(suite().verify_thm8(2, 1)), Rational(1));
  EXPECT_EQ(lhs_r(suite().verify_thm8(1, 1)), Rational(0));
  EXPECT_TRUE(suite().verify_thm8(2, 2).passed());
  EXPECT_EQ(rhs_r(suite().verify_thm9(1, 1)), Rational(0));
  EXPECT_EQ(rhs_r(suite().verify_thm9(0, 3)), Rational(1));
  EXPECT_TRUE(suite().verify_thm9(2, 3).passed());
  EXPECT_EQ(lhs_r(suite().verify_remark(1, 1)), Rational(0));
  EXPECT_TRUE(suite().verify_remark(2, 2).passed());
  EXPECT_TRUE(suite().verify_remark(3, 3).passed());
  EXPECT_THROW(suite().verify_thm8(1, 0), std::invalid_argument);
}

TEST(Eq52, Examples) {
  EXPECT_EQ(lhs_r(suite().verify_eq52(2, 2)), Rational(5));
  EXPECT_EQ(lhs_r(suite().verify_eq52(3, 1)), Rational(2));
  EXPECT_EQ(lhs_r(suite().verify_eq52(0, 3)), Rational(1));
  EXPECT_TRUE(suite().verify_eq52(6, 4).passed());
}

TEST(PartialFraction, Examples) {
  const auto one = suite().verify_partial_fraction(1, 5);
  EXPECT_TRUE(one.passed());
  for (int m = 0; m <= 5; ++m) EXPECT_EQ(lhs_p(one).coeff(m), Rational(1));
  EXPECT_EQ(lhs_p(suite().verify_partial_fraction(2, 3)).coeff(2), Rational(7));
  EXPECT_TRUE(suite().verify_partial_fraction(3, 4).passed());
}

TEST(Recurrences, AllFamilies) {
  const auto reports = suite().verify_recurrences(12);
  EXPECT_EQ(reports.size(), 78u + 78u + 12u);
  for (const auto& r : reports) EXPECT_TRUE(r.passed()) << r.label();
}

TEST(Suite, DefaultGridPasses) {
  SuiteOptions o;
  const auto reports = suite().run(o);
  EXPECT_FALSE(reports.empty());
  EXPECT_TRUE(all_passed(reports));
}

TEST(Suite, DegenerateGrid) {
  SuiteOptions o;
  o.n_max = 0;
  o.k_max = 0;
  const auto reports = suite().run(o);
  EXPECT_TRUE(all_passed(reports));
}

TEST(Suite, UnknownIdentityThrows) {
  SuiteOptions o;
  o.identities = {"thm7"};
  EXPECT_THROW(suite().run(o), std::invalid_argument);
}

bool same_ignoring_time(const IdentityReport& a, const IdentityReport& b) {
  return a.identity_id == b.identity_id && a.params == b.params && a.lhs == b.lhs && a.rhs == b.rhs &&
         a.verdict == b.verdict;
}

TEST(Suite, DeterministicAcrossRunsAndThreadCounts) {
  SuiteOptions o;
  o.n_max = 7;
  o.k_max = 3;
  const auto first = suite().run(o);
  o.threads = 4;
  const auto second = suite().run(o);
  ASSERT_EQ(first.size(), second.size());
  for (std::size_t i = 0; i < first.size(); ++i) EXPECT_TRUE(same_ignoring_time(first[i], second[i])) << first[i].label();
}

TEST(Suite, SymbolicImpliesSampled) {
  SuiteOptions sym;
  sym.n_max = 7;
  sym.k_max = 4;
  sym.identities = {"thm4", "thm6", "eq41"};
  const auto symbolic = suite().run(sym);
  ASSERT_TRUE(all_passed(symbolic));
  for (const Rational& v : {Rational(0), Rational(1), Rational(1, 2), Rational(-1, 3)}) {
    SuiteOptions s = sym;
    s.mode = LambdaMode::sampled(v);
    const auto sampled = suite().run(s);
    ASSERT_EQ(sampled.size(), symbolic.size());
    for (std::size_t i = 0; i < sampled.size(); ++i) {
      EXPECT_TRUE(sampled[i].passed()) << sampled[i].label();
      EXPECT_EQ(std::get<Rational>(sampled[i].lhs), lhs_p(symbolic[i]).eval(v));
      EXPECT_EQ(std::get<std::string>(sampled[i].params.at("lambda")), v.str());
    }
  }
}

TEST(Suite, PlanMatchesRun) {
  SuiteOptions o;
  o.n_max = 4;
  o.k_max = 2;
  std::vector<IdentityReport> from_plan;
  for (const auto& task : suite().plan(o)) {
    for (auto& r : task.run()) from_plan.push_back(std::move(r));
  }
  const auto reports = suite().run(o);
  ASSERT_EQ(from_plan.size(), reports.size());
  for (std::size_t i = 0; i < reports.size(); ++i) EXPECT_TRUE(same_ignoring_time(from_plan[i], reports[i]));
}

TEST(FaultInjection, SingleFaultFlipsTheCheck) {
  TableStore t;
  IdentitySuite s(t);
  ASSERT_TRUE(s.verify_thm9(4, 2).passed());
  t.inject_fault(Fault{EntryKey{Family::S2, 4, 2, {}}, 1});
  EXPECT_FALSE(s.verify_thm9(2, 2).passed());
  t.clear_fault();
  EXPECT_TRUE(s.verify_thm9(2, 2).passed());
}

TEST(FaultInjection, EveryReadEntryIsDetectedOnSmallGrid) {
  TableStore t;
  SuiteOptions o;
  o.n_max = 5;
  o.k_max = 3;
  const auto sweep = mf::testing::fault_sweep(t, o);
  EXPECT_EQ(sweep.baseline_failures, 0u);
  EXPECT_GT(sweep.entries, 50u);
  for (const auto& key : sweep.undetected) ADD_FAILURE() << "undetected fault at " << key.str();
}

}  // namespace
}  // namespace mf
