#include <stdexcept>

#include "mf/series.hpp"
#include "mf/special_numbers.hpp"

namespace mf {

std::string family_name(Family f) {
  switch (f) {
    case Family::S1: return "s1";
    case Family::S2: return "s2";
    case Family::S1Deg: return "s1deg";
    case Family::S2Deg: return "s2deg";
    case Family::Bern2: return "bern2";
    case Family::Derange: return "derange";
    case Family::BernHigher: return "bern-higher";
  }
  return "?";
}

std::string EntryKey::str() const {
  std::string out = family_name(family) + "(" + std::to_string(n);
  switch (family) {
    case Family::Bern2:
    case Family::Derange: break;
    case Family::BernHigher: out += ", r=" + std::to_string(k) + ", x=" + x.str(); break;
    default: out += ", " + std::to_string(k);
  }
  return out + ")";
}

namespace {

bool in_triangle(int n, int k) { return n >= 0 && k >= 0 && k <= n; }

void require_nonnegative(int n, const char* what) {
  if (n < 0) throw std::invalid_argument(std::string(what) + ": negative index");
}

}  // namespace

void TableStore::record(const EntryKey& key) const {
  if (logging_) accessed_.insert(key);
}

long TableStore::fault_delta(const EntryKey& key) const {
  return fault_ && fault_->key == key ? fault_->delta : 0;
}

// --- triangles -----------------------------------------------------------

void TableStore::ensure_s1(int n) const {
  if (s1_.empty()) s1_.push_back({Rational(1)});
  while (static_cast<int>(s1_.size()) <= n) {
    const int m = static_cast<int>(s1_.size()) - 1;
    const auto& prev = s1_.back();
    std::vector<Rational> row(static_cast<std::size_t>(m) + 2);
    for (int k = 0; k <= m + 1; ++k) {
      Rational v;
      if (k >= 1) v += prev[k - 1];
      if (k <= m) v -= Rational(m) * prev[k];
      row[k] = v;
    }
    s1_.push_back(std::move(row));
  }
}

void TableStore::ensure_s2(int n) const {
  if (s2_.empty()) s2_.push_back({Rational(1)});
  while (static_cast<int>(s2_.size()) <= n) {
    const int m = static_cast<int>(s2_.size()) - 1;
    const auto& prev = s2_.back();
    std::vector<Rational> row(static_cast<std::size_t>(m) + 2);
    for (int k = 0; k <= m + 1; ++k) {
      Rational v;
      if (k >= 1) v += prev[k - 1];
      if (k <= m) v += Rational(k) * prev[k];
      row[k] = v;
    }
    s2_.push_back(std::move(row));
  }
}

void TableStore::ensure_s1_deg(int n) const {
  if (s1_deg_.empty()) s1_deg_.push_back({Poly(Rational(1))});
  const Poly lambda = Poly::variable(Var::Lambda);
  while (static_cast<int>(s1_deg_.size()) <= n) {
    const int m = static_cast<int>(s1_deg_.size()) - 1;
    const auto& prev = s1_deg_.back();
    std::vector<Poly> row(static_cast<std::size_t>(m) + 2);
    for (int k = 0; k <= m + 1; ++k) {
      Poly v;
      if (k >= 1) v += prev[k - 1];
      if (k <= m) v -= Rational(m) * lambda * prev[k];
      row[k] = std::move(v);
    }
    s1_deg_.push_back(std::move(row));
  }
}

void TableStore::ensure_s2_deg(int n) const {
  ensure_s1(n);
  ensure_s2(n);
  while (static_cast<int>(s2_deg_.size()) <= n) {
    const int row_n = static_cast<int>(s2_deg_.size());
    std::vector<Poly> row(static_cast<std::size_t>(row_n) + 1);
    for (int k = 0; k <= row_n; ++k) {
      std::vector<Rational> coeffs(static_cast<std::size_t>(row_n - k) + 1);
      for (int m = k; m <= row_n; ++m) coeffs[row_n - m] = s1_[row_n][m] * s2_[m][k];
      row[k] = Poly(std::move(coeffs), Var::Lambda);
    }
    s2_deg_.push_back(std::move(row));
  }
}

Rational TableStore::stirling1(int n, int k) const {
  if (!in_triangle(n, k)) return Rational();
  std::lock_guard lock(mutex_);
  ensure_s1(n);
  const EntryKey key{Family::S1, n, k, {}};
  record(key);
  return s1_[n][k] + Rational(fault_delta(key));
}

Rational TableStore::stirling2(int n, int k) const {
  if (!in_triangle(n, k)) return Rational();
  std::lock_guard lock(mutex_);
  ensure_s2(n);
  const EntryKey key{Family::S2, n, k, {}};
  record(key);
  return s2_[n][k] + Rational(fault_delta(key));
}

Poly TableStore::stirling1_deg(int n, int k) const {
  if (!in_triangle(n, k)) return Poly(Var::Lambda);
  std::lock_guard lock(mutex_);
  ensure_s1_deg(n);
  const EntryKey key{Family::S1Deg, n, k, {}};
  record(key);
  return s1_deg_[n][k] + Poly(Rational(fault_delta(key)));
}

Poly TableStore::stirling2_deg(int n, int k) const {
  if (!in_triangle(n, k)) return Poly(Var::Lambda);
  std::lock_guard lock(mutex_);
  ensure_s2_deg(n);
  const EntryKey key{Family::S2Deg, n, k, {}};
  record(key);
  return s2_deg_[n][k] + Poly(Rational(fault_delta(key)));
}

// --- sequences -----------------------------------------------------------

void TableStore::ensure_bern2(int n) const {
  if (static_cast<int>(bern2_.size()) > n) return;
  const int order = std::max(n, 2 * static_cast<int>(bern2_.size()));
  // t / log(1+t) = 1 / (log(1+t) / t)
  const auto t = Series<Rational>::monomial(Rational(1), 1, order + 1);
  const auto series = series_inv(series_log1p(t).shift_down());
  bern2_.clear();
  for (int j = 0; j <= order; ++j) bern2_.push_back(egf_coefficient(series, j));
}

void TableStore::ensure_derange(int n) const {
  if (derange_.empty()) derange_.push_back(1);
  while (static_cast<int>(derange_.size()) <= n) {
    const int m = static_cast<int>(derange_.size());
    derange_.push_back(BigInt(m) * derange_.back() + (m % 2 == 0 ? 1 : -1));
  }
}

const std::vector<Rational>& TableStore::ensure_higher(int n, int r, const Rational& x) const {
  auto& cached = higher_[HigherKey{r, x}];
  if (static_cast<int>(cached.size()) > n) return cached;
  const int order = std::max(n, 2 * static_cast<int>(cached.size()));
  const auto t = Series<Rational>::monomial(Rational(1), 1, order + 1);
  // (e^t - 1) / t
  const auto expm1_over_t = (series_exp(t) - Series<Rational>::one(order + 1)).shift_down();
  const auto base = r >= 0 ? series_inv(expm1_over_t) : expm1_over_t;
  auto series = series_pow_int(base, r >= 0 ? r : -r);
  if (!x.is_zero()) series = series * series_exp(Series<Rational>::monomial(x, 1, order));
  cached.clear();
  for (int j = 0; j <= order; ++j) cached.push_back(egf_coefficient(series, j));
  return cached;
}

Rational TableStore::bernoulli_second_kind(int n) const {
  require_nonnegative(n, "bernoulli_second_kind");
  std::lock_guard lock(mutex_);
  ensure_bern2(n);
  const EntryKey key{Family::Bern2, n, 0, {}};
  record(key);
  return bern2_[n] + Rational(fault_delta(key));
}

BigInt TableStore::derangement(int n) const {
  require_nonnegative(n, "derangement");
  std::lock_guard lock(mutex_);
  ensure_derange(n);
  const EntryKey key{Family::Derange, n, 0, {}};
  record(key);
  return derange_[n] + fault_delta(key);
}

Rational TableStore::bernoulli_higher(int n, int r, const Rational& x) const {
  require_nonnegative(n, "bernoulli_higher");
  std::lock_guard lock(mutex_);
  const auto& values = ensure_higher(n, r, x);
  const EntryKey key{Family::BernHigher, n, r, x};
  record(key);
  return values[n] + Rational(fault_delta(key));
}

void TableStore::warm(int n_max) const {
  if (n_max < 0) return;
  std::lock_guard lock(mutex_);
  ensure_s1(n_max);
  ensure_s2(n_max);
  ensure_s1_deg(n_max);
  ensure_s2_deg(n_max);
  ensure_bern2(n_max);
  ensure_derange(n_max);
}

// --- instrumentation -----------------------------------------------------

void TableStore::inject_fault(const Fault& fault) {
  std::lock_guard lock(mutex_);
  fault_ = fault;
}

void TableStore::clear_fault() {
  std::lock_guard lock(mutex_);
  fault_.reset();
}

void TableStore::set_access_logging(bool enabled) {
  std::lock_guard lock(mutex_);
  logging_ = enabled;
}

std::set<EntryKey> TableStore::accessed_entries() const {
  std::lock_guard lock(mutex_);
  return accessed_;
}

void TableStore::clear_access_log() {
  std::lock_guard lock(mutex_);
  accessed_.clear();
}

// --- closed forms --------------------------------------------------------

Rational forward_difference_power(int k, int m) {
  if (k < 0 || m < 0) throw std::invalid_argument("forward_difference_power: negative index");
  BigInt acc = 0;
  for (int l = 0; l <= k; ++l) {
    BigInt power;
    mpz_ui_pow_ui(power.get_mpz_t(), static_cast<unsigned long>(l), static_cast<unsigned long>(m));
    const BigInt term = binomial_int(k, l) * power;
    if ((k - l) % 2 == 0) {
      acc += term;
    } else {
      acc -= term;
    }
  }
  return Rational(acc, factorial_int(k));
}

Rational derangement_poly(int n, const Rational& x) {
  require_nonnegative(n, "derangement_poly");
  Rational acc;
  const BigInt n_fact = factorial_int(n);
  for (int k = 0; k <= n; ++k) {
    Rational term = Rational(n_fact, factorial_int(k)) * x.pow(n - k);
    if (k % 2 == 0) {
      acc += term;
    } else {
      acc -= term;
    }
  }
  return acc;
}

}  // namespace mf
