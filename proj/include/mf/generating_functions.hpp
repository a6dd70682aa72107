#pragma once

#include <vector>

#include "mf/poly.hpp"
#include "mf/rational.hpp"
#include "mf/series.hpp"

// Second routes for the special-number families: coefficient extraction from
// generating functions (plus the three-term recurrence for the degenerate
// second kind). Nothing here touches TableStore; these exist to cross-check it.
namespace mf::gf {

using Triangle = std::vector<std::vector<Rational>>;
using PolyTriangle = std::vector<std::vector<Poly>>;

/// log(1+lambda t)/lambda as a series over lambda-polynomials.
Series<Poly> degenerate_log(int order);

/// (log(1+t))^k / k!  ->  S1(n,k), rows 0..n_max.
Triangle stirling1(int n_max);
/// (e^t - 1)^k / k!  ->  S2(n,k).
Triangle stirling2(int n_max);
/// (log(1+lambda t)/lambda)^k / k!  ->  S1_lambda(n,k).
PolyTriangle stirling1_deg(int n_max);
/// ((1+lambda t)^{1/lambda} - 1)^k / k!  ->  S2_lambda(n,k).
PolyTriangle stirling2_deg(int n_max);
/// S2_lambda via S(n+1,k) = k S(n,k) + S(n,k-1) - n lambda S(n,k).
PolyTriangle stirling2_deg_recurrence(int n_max);

/// b_n from the coefficient recursion of (log(1+t)/t) * B(t) = 1.
std::vector<Rational> bernoulli_second_kind_recurrence(int n_max);
/// n! [t^n] e^{-t} / (1 - t).
std::vector<Rational> derangements(int n_max);
/// n! [t^n] e^{-t} / (1 - x t).
Rational derangement_poly(int n, const Rational& x);

/// B_n^{(r)}(x) for r >= 0 by recurrences: classical Bernoulli numbers from
/// sum_{j<=n} C(n+1,j) B_j = 0, order raised by binomial convolution, then
/// the Appell shift sum_j C(n,j) B_j^{(r)} x^{n-j}.
Rational bernoulli_higher_recurrence(int n, int r, const Rational& x);

/// n! [t^n] (t/log(1+t))^k (1+t)^{x-1}, which equals B_n^{(n-k+1)}(x).
Rational bernoulli_shifted_order(int n, int k, const Rational& x);

}  // namespace mf::gf
