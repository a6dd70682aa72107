#include "mf/generating_functions.hpp"

#include <stdexcept>

namespace mf::gf {

namespace {

using RSeries = Series<Rational>;
using PSeries = Series<Poly>;

RSeries t_series(int order) { return RSeries::monomial(Rational(1), 1, order); }

template <class R>
std::vector<std::vector<R>> power_triangle(const Series<R>& base, int n_max) {
  std::vector<std::vector<R>> out(static_cast<std::size_t>(n_max) + 1);
  for (int n = 0; n <= n_max; ++n) out[n].resize(static_cast<std::size_t>(n) + 1);
  Series<R> power = Series<R>::one(n_max);
  for (int k = 0; k <= n_max; ++k) {
    if (k > 0) power = power * base;
    const Rational scale = Rational(1) / factorial(k);
    for (int n = k; n <= n_max; ++n) out[n][k] = egf_coefficient(power, n) * scale;
  }
  return out;
}

}  // namespace

PSeries degenerate_log(int order) {
  // log1p(lambda t) over Q[lambda], then divide every coefficient by lambda.
  const PSeries lambda_t = PSeries::monomial(Poly::variable(Var::Lambda), 1, order);
  const PSeries log = series_log1p(lambda_t);
  std::vector<Poly> coeffs(static_cast<std::size_t>(order) + 1);
  for (int j = 0; j <= order; ++j) {
    const auto& c = log[j].coeffs();
    if (c.empty()) continue;
    if (!c[0].is_zero()) throw std::logic_error("degenerate_log: coefficient not divisible by lambda");
    coeffs[j] = Poly(std::vector<Rational>(c.begin() + 1, c.end()), Var::Lambda);
  }
  return PSeries(std::move(coeffs), order);
}

Triangle stirling1(int n_max) {
  return power_triangle(series_log1p(t_series(n_max)), n_max);
}

Triangle stirling2(int n_max) {
  return power_triangle(series_exp(t_series(n_max)) - RSeries::one(n_max), n_max);
}

PolyTriangle stirling1_deg(int n_max) { return power_triangle(degenerate_log(n_max), n_max); }

PolyTriangle stirling2_deg(int n_max) {
  return power_triangle(series_exp(degenerate_log(n_max)) - PSeries::one(n_max), n_max);
}

PolyTriangle stirling2_deg_recurrence(int n_max) {
  const Poly lambda = Poly::variable(Var::Lambda);
  PolyTriangle out;
  out.push_back({Poly(Rational(1))});
  for (int n = 0; n < n_max; ++n) {
    const auto& prev = out.back();
    std::vector<Poly> row(static_cast<std::size_t>(n) + 2);
    for (int k = 1; k <= n + 1; ++k) {
      Poly v = prev[k - 1];
      if (k <= n) v += (Poly(Rational(k)) - Rational(n) * lambda) * prev[k];
      row[k] = std::move(v);
    }
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<Rational> bernoulli_second_kind_recurrence(int n_max) {
  // b_n/n! = -sum_{i=1}^{n} (-1)^i/(i+1) * b_{n-i}/(n-i)!
  std::vector<Rational> scaled{Rational(1)};
  for (int n = 1; n <= n_max; ++n) {
    Rational acc;
    for (int i = 1; i <= n; ++i) {
      const Rational c = Rational((i % 2 == 0) ? 1 : -1) / Rational(i + 1);
      acc -= c * scaled[n - i];
    }
    scaled.push_back(acc);
  }
  for (int n = 0; n <= n_max; ++n) scaled[n] *= factorial(n);
  return scaled;
}

std::vector<Rational> derangements(int n_max) {
  const RSeries one_minus_t = RSeries::one(n_max) - t_series(n_max);
  const RSeries s =
      series_inv(one_minus_t) * series_exp(RSeries::monomial(Rational(-1), 1, n_max));
  std::vector<Rational> out;
  for (int n = 0; n <= n_max; ++n) out.push_back(egf_coefficient(s, n));
  return out;
}

Rational derangement_poly(int n, const Rational& x) {
  const RSeries denom = RSeries::one(n) - RSeries::monomial(x, 1, n);
  const RSeries s = series_inv(denom) * series_exp(RSeries::monomial(Rational(-1), 1, n));
  return egf_coefficient(s, n);
}

Rational bernoulli_higher_recurrence(int n, int r, const Rational& x) {
  if (n < 0 || r < 0) throw std::invalid_argument("bernoulli_higher_recurrence: negative argument");
  std::vector<Rational> bern{Rational(1)};
  for (int m = 1; m <= n; ++m) {
    Rational acc;
    for (int j = 0; j < m; ++j) acc += binomial(m + 1, j) * bern[j];
    bern.push_back(-acc / Rational(m + 1));
  }
  // order 0: the sequence 1, 0, 0, ...
  std::vector<Rational> current(static_cast<std::size_t>(n) + 1);
  current[0] = Rational(1);
  for (int step = 0; step < r; ++step) {
    std::vector<Rational> next(static_cast<std::size_t>(n) + 1);
    for (int m = 0; m <= n; ++m) {
      for (int j = 0; j <= m; ++j) next[m] += binomial(m, j) * current[j] * bern[m - j];
    }
    current = std::move(next);
  }
  Rational acc;
  for (int j = 0; j <= n; ++j) acc += binomial(n, j) * current[j] * x.pow(n - j);
  return acc;
}

Rational bernoulli_shifted_order(int n, int k, const Rational& x) {
  if (n < 0 || k < 0) throw std::invalid_argument("bernoulli_shifted_order: negative argument");
  const RSeries t = t_series(n + 1);
  const RSeries t_over_log = series_inv(series_log1p(t).shift_down());
  const RSeries shift = series_exp(series_log1p(t.truncate(n)) * (x - Rational(1)));
  return egf_coefficient(series_pow_int(t_over_log, k) * shift, n);
}

}  // namespace mf::gf
