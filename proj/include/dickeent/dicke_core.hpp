#pragma once

// Symmetric (Dicke) qubit states: value types, log-domain combinatorics and the
// Dicke-diagonal reduced / closest-separable states.
//
// Labeling: k is the number of occupied sites, i.e. the number of |1> factors.
// A DickeDiagonal level i holds the normalized symmetric state with i ones.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace dickeent {

inline constexpr double kLn2 = 0.693147180559945309417232121458176568;
inline constexpr double kInvLn2 = 1.442695040888963407359924681001892137;

inline constexpr double to_bits(double nats) { return nats * kInvLn2; }
inline constexpr double to_nats(double bits) { return bits * kLn2; }

/// x ln x with the 0 ln 0 = 0 convention.
double xlogx(double x);

/// Binary entropy in bits.
double binary_entropy(double p);

/// Shannon entropy (bits) of a probability vector.
double shannon_entropy(std::span<const double> p);

class DickeState {
 public:
  DickeState(std::int64_t n, std::int64_t k);

  std::int64_t n() const { return n_; }
  std::int64_t k() const { return k_; }
  /// Filling factor k/n.
  double filling() const { return static_cast<double>(k_) / static_cast<double>(n_); }

  bool operator==(const DickeState&) const = default;

 private:
  std::int64_t n_;
  std::int64_t k_;
};

/// Dicke state whose site j carries the extra phase exp(i j theta) on |1>.
struct PhasedDickeState {
  PhasedDickeState(DickeState base, double theta);

  DickeState base;
  double theta;
};

/// Totally symmetric state of n d-level sites with counts[j] sites in level j.
class GeneralizedDickeState {
 public:
  explicit GeneralizedDickeState(std::vector<std::int64_t> counts);

  std::size_t d() const { return counts_.size(); }
  std::int64_t n() const { return n_; }
  const std::vector<std::int64_t>& counts() const { return counts_; }

 private:
  std::vector<std::int64_t> counts_;
  std::int64_t n_ = 0;
};

/// Two-site reduced state a|11><11| + b|00><00| + 2c|psi+><psi+|.
///
/// `a` is the both-occupied weight, `b` the both-empty weight and `c` the
/// off-diagonal element <01|rho|10>, which is the ODLRO value.
struct TwoSiteState {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  /// Validating factory; throws std::domain_error on a negative weight or when
  /// a + b + 2c deviates from 1 by more than 1e-12.
  static TwoSiteState make(double a, double b, double c);
};

/// Mixed state of m qubits diagonal in the Dicke basis.
class DickeDiagonal {
 public:
  DickeDiagonal(std::int64_t m, std::vector<double> weights);

  std::int64_t m() const { return m_; }
  const std::vector<double>& weights() const { return weights_; }
  double weight(std::int64_t level) const { return weights_.at(static_cast<std::size_t>(level)); }

 private:
  std::int64_t m_;
  std::vector<double> weights_;
};

/// Stirling remainder: ln m! - [(m + 1/2) ln m - m + ln(2 pi)/2], m >= 1.
double stirling_remainder(std::int64_t m);

/// ln m!.
double log_factorial(std::int64_t m);

/// ln C(n, k); throws std::domain_error unless 0 <= k <= n.
double log_binomial(std::int64_t n, std::int64_t k);

/// Exact C(n, k) for n <= 64 (cross-check path). Returns 0 for k < 0 or k > n.
std::uint64_t exact_binomial(int n, int k);

/// Two-site reduced state of |k, n-k>; requires n >= 2.
TwoSiteState reduced_two_site(const DickeState& s);

/// Reduced state of any l sites: level i weight C(l,i) C(n-l,k-i) / C(n,k).
DickeDiagonal reduced_l(const DickeState& s, std::int64_t l);

/// l-site marginal of the phase-averaged product state closest to |k, n-k>:
/// level i weight C(l,i) (k/n)^i ((n-k)/n)^(l-i).
DickeDiagonal closest_separable_diagonal(std::int64_t n, std::int64_t k, std::int64_t l);

/// A per-site phase gradient is a local basis change, so every measure of the
/// phased state equals that of the underlying Dicke state.
DickeState dephase_equivalent(const PhasedDickeState& p);

namespace detail {

/// Per-level log data for the l-site block of |k, n-k> with 0 < k < n:
/// log_sigma = ln(reduced weight), log_ratio = ln(reduced / closest-separable).
struct BlockLevel {
  std::int64_t level;
  double log_sigma;
  double log_ratio;
};

std::vector<BlockLevel> block_levels(std::int64_t n, std::int64_t k, std::int64_t l);

}  // namespace detail

}  // namespace dickeent
