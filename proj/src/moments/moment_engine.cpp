#include <functional>

#include "mf/moments.hpp"
#include "mf/series.hpp"

namespace mf {

Rational MomentEngine::atom_moment(AtomKind kind, int m) const {
  if (m < 0) throw std::invalid_argument("atom_moment: negative order");
  switch (kind) {
    case AtomKind::Uniform: return Rational(1) / Rational(m + 1);
    case AtomKind::ExpGamma: return factorial(m);
    case AtomKind::Mixture: {
      // |S1(m,l)| = (-1)^{m-l} S1(m,l)
      Rational acc;
      for (int l = 0; l <= m; ++l) {
        Rational s = tables_->stirling1(m, l);
        if ((m - l) % 2 != 0) s = -s;
        acc += s / Rational(l + 1);
      }
      return acc;
    }
  }
  throw std::logic_error("atom_moment: unknown atom kind");
}

Rational MomentEngine::moment(const RVExpression& e, int n) const {
  if (n < 0) throw std::invalid_argument("moment: negative order");
  const auto& terms = e.terms();
  const std::size_t r = terms.size();

  // per_term[j][l] = E[(c_j * prod atoms)^l] / l!
  std::vector<std::vector<Rational>> per_term(r, std::vector<Rational>(static_cast<std::size_t>(n) + 1));
  for (std::size_t j = 0; j < r; ++j) {
    for (int l = 0; l <= n; ++l) {
      Rational v = terms[j].coefficient.pow(l);
      for (const auto& atom : terms[j].atoms) v *= atom_moment(atom.kind, l);
      per_term[j][l] = v / factorial(l);
    }
  }

  Rational total;
  std::function<void(std::size_t, int, const Rational&)> walk = [&](std::size_t j, int remaining,
                                                                    const Rational& partial) {
    if (j + 1 == r) {
      total += partial * per_term[j][remaining];
      return;
    }
    for (int l = 0; l <= remaining; ++l) {
      if (per_term[j][l].is_zero()) continue;
      walk(j + 1, remaining - l, partial * per_term[j][l]);
    }
  };
  if (r == 0) return n == 0 ? Rational(1) : Rational();
  walk(0, n, Rational(1));
  return total * factorial(n);
}

std::vector<Rational> mixture_moments_series(int m_max) {
  using RSeries = Series<Rational>;
  // -t / log(1-t) = 1 / (-log(1-t)/t), then divide by (1-t).
  const RSeries minus_t = RSeries::monomial(Rational(-1), 1, m_max + 1);
  const RSeries t_over_log = series_inv((-series_log1p(minus_t)).shift_down());
  const RSeries one_minus_t = RSeries::one(m_max) - RSeries::monomial(Rational(1), 1, m_max);
  const RSeries mgf = t_over_log * series_inv(one_minus_t);
  std::vector<Rational> out;
  for (int m = 0; m <= m_max; ++m) out.push_back(egf_coefficient(mgf, m));
  return out;
}

}  // namespace mf
