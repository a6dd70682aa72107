#pragma once

#include <compare>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mf/poly.hpp"
#include "mf/rational.hpp"

namespace mf {

/// Memoized special-number families.
enum class Family {
  S1,          // signed Stirling, first kind
  S2,          // Stirling, second kind
  S1Deg,       // degenerate Stirling, first kind (lambda-polynomial)
  S2Deg,       // degenerate Stirling, second kind (lambda-polynomial)
  Bern2,       // Bernoulli numbers of the second kind b_n
  Derange,     // derangement numbers d_n
  BernHigher,  // higher-order Bernoulli B_n^{(r)}(x)
};

std::string family_name(Family f);

/// Identifies one stored table entry. `k` is the column for triangles and the
/// order r for BernHigher; `x` is only meaningful for BernHigher.
struct EntryKey {
  Family family = Family::S1;
  int n = 0;
  int k = 0;
  Rational x;

  friend bool operator==(const EntryKey&, const EntryKey&) = default;
  friend std::strong_ordering operator<=>(const EntryKey& a, const EntryKey& b) {
    if (auto c = a.family <=> b.family; c != 0) return c;
    if (auto c = a.n <=> b.n; c != 0) return c;
    if (auto c = a.k <=> b.k; c != 0) return c;
    return a.x <=> b.x;
  }

  std::string str() const;
};

/// A corrupted table entry: reads of `key` return the stored value plus
/// `delta` (added to the constant coefficient for lambda-polynomials).
/// Other entries, including ones derived from `key`, are unaffected.
struct Fault {
  EntryKey key;
  long delta = 1;
};

/// Canonical routes for every special-number family, with append-only
/// memoized tables.
///
///   S1      S1(n+1,k) = S1(n,k-1) - n S1(n,k)
///   S2      S2(n+1,k) = k S2(n,k) + S2(n,k-1)
///   S1Deg   S1l(n+1,k) = S1l(n,k-1) - n l S1l(n,k)
///   S2Deg   S2l(n,k) = sum_{m=k}^{n} l^{n-m} S1(n,m) S2(m,k)
///   Bern2   n! [t^n] t / log(1+t)
///   Derange d_n = n d_{n-1} + (-1)^n
///   BernHigher  n! [t^n] (t/(e^t-1))^r e^{xt}, negative r allowed
///
/// Entries outside the triangle 0 <= k <= n are zero and are never stored.
/// All methods are safe to call concurrently; table extension happens under
/// a single lock.
class TableStore {
 public:
  TableStore() = default;
  TableStore(const TableStore&) = delete;
  TableStore& operator=(const TableStore&) = delete;

  Rational stirling1(int n, int k) const;
  Rational stirling2(int n, int k) const;
  Poly stirling1_deg(int n, int k) const;
  Poly stirling2_deg(int n, int k) const;
  Rational bernoulli_second_kind(int n) const;
  BigInt derangement(int n) const;
  Rational bernoulli_higher(int n, int r, const Rational& x = Rational()) const;

  /// Fill all triangular and sequence tables through row n_max.
  void warm(int n_max) const;

  /// Fault injection hook for checking that identity checks do not share a
  /// code path between their two sides.
  void inject_fault(const Fault& fault);
  void clear_fault();

  /// When enabled, every stored entry that is read gets recorded.
  void set_access_logging(bool enabled);
  std::set<EntryKey> accessed_entries() const;
  void clear_access_log();

 private:
  using Triangle = std::vector<std::vector<Rational>>;
  using PolyTriangle = std::vector<std::vector<Poly>>;

  struct HigherKey {
    int r;
    Rational x;
    friend bool operator<(const HigherKey& a, const HigherKey& b) {
      return a.r != b.r ? a.r < b.r : a.x < b.x;
    }
  };

  void ensure_s1(int n) const;
  void ensure_s2(int n) const;
  void ensure_s1_deg(int n) const;
  void ensure_s2_deg(int n) const;
  void ensure_bern2(int n) const;
  void ensure_derange(int n) const;
  const std::vector<Rational>& ensure_higher(int n, int r, const Rational& x) const;

  // Both expect the lock to be held.
  void record(const EntryKey& key) const;
  long fault_delta(const EntryKey& key) const;

  mutable std::mutex mutex_;
  mutable Triangle s1_;
  mutable Triangle s2_;
  mutable PolyTriangle s1_deg_;
  mutable PolyTriangle s2_deg_;
  mutable std::vector<Rational> bern2_;
  mutable std::vector<BigInt> derange_;
  mutable std::map<HigherKey, std::vector<Rational>> higher_;

  std::optional<Fault> fault_;
  bool logging_ = false;
  mutable std::set<EntryKey> accessed_;
};

/// (1/k!) Delta^k 0^m = (1/k!) sum_l C(k,l) (-1)^{k-l} l^m, with 0^0 = 1.
Rational forward_difference_power(int k, int m);

/// d_n(x) = sum_{k=0}^{n} (n!/k!) (-1)^k x^{n-k}; d_n(1) = d_n.
Rational derangement_poly(int n, const Rational& x);

}  // namespace mf
