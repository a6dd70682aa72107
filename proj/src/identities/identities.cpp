#include "mf/identities.hpp"

#include <functional>
#include <stdexcept>

#include "mf/generating_functions.hpp"
#include "mf/series.hpp"

namespace mf {

using Clock = std::chrono::steady_clock;

std::string exact_value_str(const ExactValue& v) {
  return std::visit([](const auto& x) { return x.str(); }, v);
}

std::string IdentityReport::label() const {
  std::string out = identity_id;
  for (const auto& [key, value] : params) {
    out += " " + key + "=";
    out += std::visit(
        [](const auto& x) {
          if constexpr (std::is_same_v<std::decay_t<decltype(x)>, long>) {
            return std::to_string(x);
          } else {
            return x;
          }
        },
        value);
  }
  return out;
}

const std::vector<std::string>& identity_ids() {
  static const std::vector<std::string> ids = {"thm1", "cor2",  "lemma-bn", "thm3",   "thm4",
                                               "thm5", "thm6",  "eq41",     "limit",  "thm8",
                                               "thm9", "remark", "eq52",    "pfrac", "recurrences"};
  return ids;
}

bool all_passed(const std::vector<IdentityReport>& reports) {
  for (const auto& r : reports) {
    if (!r.passed()) return false;
  }
  return true;
}

namespace {

using Params = std::map<std::string, ParamValue>;

IdentityReport make_report(std::string id, Params params, ExactValue lhs, ExactValue rhs,
                           Clock::time_point start) {
  IdentityReport report;
  report.identity_id = std::move(id);
  report.params = std::move(params);
  report.verdict = lhs == rhs ? Verdict::Pass : Verdict::Fail;
  report.lhs = std::move(lhs);
  report.rhs = std::move(rhs);
  report.elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start);
  return report;
}

IdentityReport make_lambda_report(std::string id, Params params, const Poly& lhs, const Poly& rhs,
                                  const LambdaMode& mode, Clock::time_point start) {
  params["lambda_mode"] = mode.str();
  if (mode.is_symbolic()) return make_report(std::move(id), std::move(params), lhs, rhs, start);
  params["lambda"] = mode.value().str();
  return make_report(std::move(id), std::move(params), lhs.eval(mode.value()), rhs.eval(mode.value()),
                     start);
}

Params nk(int n, int k) { return {{"n", long{n}}, {"k", long{k}}}; }

void require(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument(what);
}

Rational sign_power(int e) { return Rational(e % 2 == 0 ? 1 : -1); }

/// Calls visit(parts) for every composition of `total` into `parts` pieces,
/// each >= min_part, in lexicographic order.
void for_each_composition(int total, int parts, int min_part,
                          const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> current(static_cast<std::size_t>(parts));
  std::function<void(int, int)> rec = [&](int index, int remaining) {
    if (index + 1 == parts) {
      if (remaining < min_part) return;
      current[index] = remaining;
      visit(current);
      return;
    }
    for (int l = min_part; remaining - l >= min_part * (parts - index - 1); ++l) {
      current[index] = l;
      rec(index + 1, remaining - l);
    }
  };
  if (parts == 0) {
    if (total == 0) visit(current);
    return;
  }
  rec(0, total);
}

RVExpression uniform_sum(int k) { return RVExpression::sum_of(AtomKind::Uniform, k); }

RVExpression shifted_uniform_sum(int k_minus_1) { return uniform_sum(k_minus_1) + Rational(1); }

RVExpression uniform_gamma_products(int k) {
  std::vector<Term> terms;
  for (int i = 1; i <= k; ++i) {
    terms.push_back(Term{Rational(1), {Atom{AtomKind::Uniform, i}, Atom{AtomKind::ExpGamma, i}}});
  }
  return RVExpression(std::move(terms));
}

// X_1 + 2 X_2 + ... + k X_k - k
RVExpression weighted_gamma_sum(int k) {
  std::vector<Term> terms;
  for (int i = 1; i <= k; ++i) terms.push_back(Term{Rational(i), {Atom{AtomKind::ExpGamma, i}}});
  terms.push_back(Term{Rational(-k), {}});
  return RVExpression(std::move(terms));
}

}  // namespace

// --- uniform sums and Stirling numbers of the second kind ---------------

Rational IdentitySuite::thm1_lhs(int n, int k) const {
  Rational acc;
  for (int m = 0; m <= n; ++m) {
    Rational inner;
    for (int l = k; l <= m + k; ++l) inner += tables_->stirling2(l, k) * tables_->stirling2(m + k, l);
    if (inner.is_zero()) continue;
    acc += binomial(n, m) / binomial(m + k, m) * inner * tables_->bernoulli_higher(n - m, k);
  }
  return acc;
}

IdentityReport IdentitySuite::verify_thm1(int n, int k) const {
  require(n >= 0 && k >= 0, "thm1: need n, k >= 0");
  const auto start = Clock::now();
  const RVExpression sum = uniform_sum(k);
  Rational rhs;
  for (int m = 0; m <= n; ++m) rhs += tables_->stirling2(n, m) * engine_.moment(sum, m);
  return make_report("thm1", nk(n, k), thm1_lhs(n, k), rhs, start);
}

IdentityReport IdentitySuite::verify_cor2(int n, int k) const {
  require(n >= 0 && k >= 1, "cor2: need n >= 0, k >= 1");
  const auto start = Clock::now();
  Rational rhs;
  for (int m = 0; m <= n; ++m) {
    // sum over l_1 + ... + l_k = m + k, l_i >= 1, of m! / (l_1! ... l_k!)
    Rational inner;
    for_each_composition(m + k, k, 1, [&](const std::vector<int>& parts) {
      Rational term = factorial(m);
      for (int l : parts) term /= factorial(l);
      inner += term;
    });
    rhs += inner * tables_->stirling2(n, m);
  }
  return make_report("cor2", nk(n, k), thm1_lhs(n, k), rhs, start);
}

// --- Bernoulli numbers of the second kind --------------------------------

IdentityReport IdentitySuite::verify_lemma_bn(int n) const {
  require(n >= 0, "lemma-bn: need n >= 0");
  const auto start = Clock::now();
  Rational rhs;
  for (int k = 0; k <= n; ++k) rhs += engine_.atom_moment(AtomKind::Uniform, k) * tables_->stirling1(n, k);
  return make_report("lemma-bn", {{"n", long{n}}}, tables_->bernoulli_second_kind(n), rhs, start);
}

IdentityReport IdentitySuite::verify_thm3(int n) const {
  require(n >= 1, "thm3: need n >= 1");
  const auto start = Clock::now();
  const Rational lhs = engine_.atom_moment(AtomKind::Mixture, n) -
                       Rational(n) * engine_.atom_moment(AtomKind::Mixture, n - 1);
  const Rational rhs = sign_power(n) * tables_->bernoulli_second_kind(n);
  return make_report("thm3", {{"n", long{n}}}, lhs, rhs, start);
}

IdentityReport IdentitySuite::verify_thm5(int n, int k) const {
  require(n >= 0 && k >= 1, "thm5: need n >= 0, k >= 1");
  const auto start = Clock::now();
  const Rational lhs = engine_.moment(RVExpression::sum_of(AtomKind::Mixture, k), n);
  const Rational rhs = sign_power(n) * tables_->bernoulli_higher(n, n - k + 1, Rational(1 - k));
  return make_report("thm5", nk(n, k), lhs, rhs, start);
}

// --- degenerate Stirling numbers -----------------------------------------

IdentityReport IdentitySuite::verify_thm4(int n, int k, const LambdaMode& mode) const {
  require(k >= 0 && n >= k, "thm4: need n >= k >= 0");
  const auto start = Clock::now();
  const Rational coeff = sign_power(n - k) * binomial(n, k) * engine_.moment(uniform_gamma_products(k), n - k);
  const Poly rhs = Poly::monomial(coeff, n - k, Var::Lambda);
  return make_lambda_report("thm4", nk(n, k), tables_->stirling1_deg(n, k), rhs, mode, start);
}

IdentityReport IdentitySuite::verify_thm6(int n, int k, const LambdaMode& mode) const {
  require(k >= 0 && n >= k, "thm6: need n >= k >= 0");
  const auto start = Clock::now();
  const RVExpression sum = uniform_sum(k);
  Poly rhs(Var::Lambda);
  for (int m = k; m <= n; ++m) {
    rhs += tables_->stirling1_deg(n, m) * (binomial(m, k) * engine_.moment(sum, m - k));
  }
  return make_lambda_report("thm6", nk(n, k), tables_->stirling2_deg(n, k), rhs, mode, start);
}

IdentityReport IdentitySuite::verify_eq41(int n, int k, const LambdaMode& mode) const {
  require(n >= 1 && k >= 1, "eq41: need n, k >= 1");
  const auto start = Clock::now();
  const Poly lambda = Poly::variable(Var::Lambda);
  const Poly lhs = tables_->stirling2_deg(n, k) + Rational(n - 1) * lambda * tables_->stirling2_deg(n - 1, k);
  const RVExpression shifted = shifted_uniform_sum(k - 1);
  Poly rhs(Var::Lambda);
  for (int m = k - 1; m <= n - 1; ++m) {
    rhs += tables_->stirling1_deg(n - 1, m) * (binomial(m, k - 1) * engine_.moment(shifted, m - k + 1));
  }
  return make_lambda_report("eq41", nk(n, k), lhs, rhs, mode, start);
}

IdentityReport IdentitySuite::verify_limit_identity(int n, int k) const {
  require(k >= 1 && n >= k, "limit: need n >= k >= 1");
  const auto start = Clock::now();
  const Rational lhs = Rational(n) / Rational(k) * engine_.moment(uniform_sum(k), n - k);
  const Rational rhs = engine_.moment(shifted_uniform_sum(k - 1), n - k);
  return make_report("limit", nk(n, k), lhs, rhs, start);
}

// --- derangements ---------------------------------------------------------

Rational IdentitySuite::thm8_moment(int n, int k) const { return engine_.moment(weighted_gamma_sum(k), n); }

Rational IdentitySuite::thm8_convolution(int n, int k) const {
  Rational acc;
  for_each_composition(n, k, 0, [&](const std::vector<int>& parts) {
    Rational term = factorial(n);
    for (int i = 0; i < k; ++i) {
      const int l = parts[i];
      term /= factorial(l);
      term *= i == 0 ? Rational(tables_->derangement(l)) : derangement_poly(l, Rational(i + 1));
    }
    acc += term;
  });
  return acc;
}

Rational IdentitySuite::thm9_sum(int n, int k) const {
  Rational acc;
  for (int m = 0; m <= n; ++m) {
    acc += tables_->stirling2(m + k, k) * factorial(m) * binomial(n, m) * sign_power(n - m) *
           Rational(k).pow(n - m);
  }
  return acc;
}

IdentityReport IdentitySuite::verify_thm8(int n, int k) const {
  require(n >= 0 && k >= 1, "thm8: need n >= 0, k >= 1");
  const auto start = Clock::now();
  return make_report("thm8", nk(n, k), thm8_moment(n, k), thm8_convolution(n, k), start);
}

IdentityReport IdentitySuite::verify_thm9(int n, int k) const {
  require(n >= 0 && k >= 1, "thm9: need n >= 0, k >= 1");
  const auto start = Clock::now();
  return make_report("thm9", nk(n, k), thm8_moment(n, k), thm9_sum(n, k), start);
}

IdentityReport IdentitySuite::verify_remark(int n, int k) const {
  require(n >= 0 && k >= 1, "remark: need n >= 0, k >= 1");
  const auto start = Clock::now();
  return make_report("remark", nk(n, k), thm8_convolution(n, k), thm9_sum(n, k), start);
}

IdentityReport IdentitySuite::verify_eq52(int n, int k) const {
  require(n >= 0 && k >= 1, "eq52: need n >= 0, k >= 1");
  const auto start = Clock::now();
  const RVExpression e({Term{Rational(k), {Atom{AtomKind::ExpGamma, 1}}}, Term{Rational(-1), {}}});
  return make_report("eq52", nk(n, k), engine_.moment(e, n), derangement_poly(n, Rational(k)), start);
}

IdentityReport IdentitySuite::verify_partial_fraction(int k, int order) const {
  require(k >= 0 && order >= 0, "pfrac: need k, order >= 0");
  const auto start = Clock::now();
  using RSeries = Series<Rational>;
  RSeries product = RSeries::one(order);
  for (int i = 1; i <= k; ++i) {
    product = product * series_inv(RSeries::one(order) - RSeries::monomial(Rational(i), 1, order));
  }
  std::vector<Rational> rhs;
  for (int m = 0; m <= order; ++m) rhs.push_back(tables_->stirling2(m + k, k));
  return make_report("pfrac", {{"k", long{k}}, {"order", long{order}}}, Poly(product.coeffs(), Var::T),
                     Poly(std::move(rhs), Var::T), start);
}

std::vector<IdentityReport> IdentitySuite::verify_recurrences(int n_max) const {
  require(n_max >= 0, "recurrences: need n_max >= 0");
  std::vector<IdentityReport> out;
  if (n_max < 1) return out;
  const auto s1 = gf::stirling1_deg(n_max);
  const auto s2 = gf::stirling2_deg(n_max);
  const auto d = gf::derangements(n_max);
  const Poly lambda = Poly::variable(Var::Lambda);
  auto at = [](const gf::PolyTriangle& t, int n, int k) {
    return (k < 0 || k > n) ? Poly(Var::Lambda) : t[n][k];
  };
  for (int n = 1; n <= n_max; ++n) {
    for (int k = 1; k <= n; ++k) {
      const auto start = Clock::now();
      const Poly rhs = at(s1, n, k - 1) - Rational(n) * lambda * at(s1, n, k);
      Params params = nk(n + 1, k);
      params["family"] = family_name(Family::S1Deg);
      out.push_back(make_report("recurrences", std::move(params), tables_->stirling1_deg(n + 1, k), rhs, start));
    }
  }
  for (int n = 1; n <= n_max; ++n) {
    for (int k = 1; k <= n; ++k) {
      const auto start = Clock::now();
      const Poly rhs = Rational(k) * at(s2, n, k) + at(s2, n, k - 1) - Rational(n) * lambda * at(s2, n, k);
      Params params = nk(n + 1, k);
      params["family"] = family_name(Family::S2Deg);
      out.push_back(make_report("recurrences", std::move(params), tables_->stirling2_deg(n + 1, k), rhs, start));
    }
  }
  for (int n = 1; n <= n_max; ++n) {
    const auto start = Clock::now();
    const Rational rhs = Rational(n) * d[n - 1] + sign_power(n);
    out.push_back(make_report("recurrences", {{"n", long{n}}, {"family", family_name(Family::Derange)}},
                              Rational(tables_->derangement(n)), rhs, start));
  }
  return out;
}

}  // namespace mf
