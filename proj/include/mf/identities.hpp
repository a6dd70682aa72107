#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "mf/moments.hpp"
#include "mf/poly.hpp"
#include "mf/rational.hpp"
#include "mf/special_numbers.hpp"

namespace mf {

/// How lambda-polynomial identities are compared: as polynomials, or after
/// substituting one rational value for lambda.
class LambdaMode {
 public:
  static LambdaMode symbolic() { return LambdaMode(); }
  static LambdaMode sampled(const Rational& value) {
    LambdaMode m;
    m.symbolic_ = false;
    m.value_ = value;
    return m;
  }

  bool is_symbolic() const { return symbolic_; }
  const Rational& value() const { return value_; }
  std::string str() const { return symbolic_ ? "symbolic" : "sampled"; }

 private:
  bool symbolic_ = true;
  Rational value_;
};

using ExactValue = std::variant<Rational, Poly>;
using ParamValue = std::variant<long, std::string>;

std::string exact_value_str(const ExactValue& v);

enum class Verdict { Pass, Fail };

inline const char* verdict_str(Verdict v) { return v == Verdict::Pass ? "PASS" : "FAIL"; }

struct IdentityReport {
  std::string identity_id;
  std::map<std::string, ParamValue> params;
  ExactValue lhs;
  ExactValue rhs;
  Verdict verdict = Verdict::Fail;
  std::chrono::nanoseconds elapsed{0};

  bool passed() const { return verdict == Verdict::Pass; }
  /// "thm1 n=3 k=2"
  std::string label() const;
};

/// Stable identity ids, in suite order.
const std::vector<std::string>& identity_ids();

struct SuiteOptions {
  int n_max = 6;
  int k_max = 3;
  LambdaMode mode = LambdaMode::symbolic();
  /// Empty means every id in identity_ids().
  std::vector<std::string> identities;
  /// 0 picks hardware concurrency.
  unsigned threads = 1;
};

/// One unit of suite work: a single check (or, for "recurrences", a batch).
struct CheckTask {
  std::string identity_id;
  std::function<std::vector<IdentityReport>()> run;
};

/// One check per identity. Each computes its two sides independently (table
/// values on one side, exact moments or a separate series on the other) and
/// compares them exactly. Preconditions on n, k throw std::invalid_argument;
/// a mismatch is a FAIL report, never an exception.
class IdentitySuite {
 public:
  explicit IdentitySuite(const TableStore& tables) : tables_(&tables), engine_(tables) {}

  IdentityReport verify_thm1(int n, int k) const;
  IdentityReport verify_cor2(int n, int k) const;
  IdentityReport verify_lemma_bn(int n) const;
  IdentityReport verify_thm3(int n) const;
  IdentityReport verify_thm4(int n, int k, const LambdaMode& mode) const;
  IdentityReport verify_thm5(int n, int k) const;
  IdentityReport verify_thm6(int n, int k, const LambdaMode& mode) const;
  IdentityReport verify_eq41(int n, int k, const LambdaMode& mode) const;
  IdentityReport verify_limit_identity(int n, int k) const;
  IdentityReport verify_thm8(int n, int k) const;
  IdentityReport verify_thm9(int n, int k) const;
  IdentityReport verify_remark(int n, int k) const;
  IdentityReport verify_eq52(int n, int k) const;
  IdentityReport verify_partial_fraction(int k, int order) const;
  /// One report per checked entry of the degenerate Stirling and derangement
  /// recurrences: stored values against the recurrence applied to the
  /// generating-function route.
  std::vector<IdentityReport> verify_recurrences(int n_max) const;

  /// The checks run() would execute, in report order. Tasks refer to this
  /// suite and must not outlive it.
  std::vector<CheckTask> plan(const SuiteOptions& options) const;

  /// Every selected identity over its admissible part of the grid
  /// 0 <= n <= n_max, 0 <= k <= k_max. Report order is deterministic and does
  /// not depend on the thread count.
  std::vector<IdentityReport> run(const SuiteOptions& options) const;

  const MomentEngine& engine() const { return engine_; }

 private:
  Rational thm1_lhs(int n, int k) const;
  Rational thm8_moment(int n, int k) const;
  Rational thm8_convolution(int n, int k) const;
  Rational thm9_sum(int n, int k) const;

  const TableStore* tables_;
  MomentEngine engine_;
};

/// True iff no report failed.
bool all_passed(const std::vector<IdentityReport>& reports);

}  // namespace mf
