#include "dickeent/dicke_core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

namespace dickeent {

namespace {

constexpr double kHalfLog2Pi = 0.918938533204672741780329736405617640;

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// prefix[i] = sum_{j<i} ln(1 - j/m), i = 0..count
std::vector<double> falling_log_prefix(std::int64_t m, std::int64_t count) {
  std::vector<double> prefix(static_cast<std::size_t>(count) + 1, 0.0);
  CompensatedSum acc;
  const double md = static_cast<double>(m);
  for (std::int64_t j = 0; j < count; ++j) {
    acc.add(std::log1p(-static_cast<double>(j) / md));
    prefix[static_cast<std::size_t>(j) + 1] = acc.value();
  }
  return prefix;
}

void normalize(std::vector<double>& w) {
  CompensatedSum s;
  for (double x : w) s.add(x);
  const double total = s.value();
  for (double& x : w) x /= total;
}

void require_block(std::int64_t n, std::int64_t l) {
  if (l < 1 || l > n) {
    throw std::domain_error("block size l=" + std::to_string(l) + " outside [1, " +
                            std::to_string(n) + "]");
  }
}

}  // namespace

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -to_bits(xlogx(p) + (1.0 - p) * std::log1p(-p));
}

double shannon_entropy(std::span<const double> p) {
  CompensatedSum s;
  for (double x : p) s.add(-xlogx(x));
  return to_bits(s.value());
}

DickeState::DickeState(std::int64_t n, std::int64_t k) : n_(n), k_(k) {
  if (n < 1) throw std::domain_error("DickeState requires n >= 1");
  if (k < 0 || k > n) throw std::domain_error("DickeState requires 0 <= k <= n");
}

PhasedDickeState::PhasedDickeState(DickeState base_state, double phase)
    : base(base_state), theta(phase) {
  if (!std::isfinite(theta)) throw std::domain_error("phase gradient must be finite");
}

GeneralizedDickeState::GeneralizedDickeState(std::vector<std::int64_t> counts)
    : counts_(std::move(counts)) {
  if (counts_.size() < 2) throw std::domain_error("local dimension d must be >= 2");
  for (auto c : counts_) {
    if (c < 0) throw std::domain_error("level counts must be non-negative");
    n_ += c;
  }
  if (n_ < 1) throw std::domain_error("generalized Dicke state needs n >= 1");
}

TwoSiteState TwoSiteState::make(double a, double b, double c) {
  if (a < 0.0 || b < 0.0 || c < 0.0) throw std::domain_error("two-site weights must be >= 0");
  if (std::abs(a + b + 2.0 * c - 1.0) > 1e-12) {
    throw std::domain_error("two-site weights violate a + b + 2c = 1");
  }
  return TwoSiteState{a, b, c};
}

DickeDiagonal::DickeDiagonal(std::int64_t m, std::vector<double> weights)
    : m_(m), weights_(std::move(weights)) {
  if (m < 1) throw std::domain_error("DickeDiagonal requires m >= 1");
  if (weights_.size() != static_cast<std::size_t>(m) + 1) {
    throw std::domain_error("DickeDiagonal needs m + 1 weights");
  }
  CompensatedSum s;
  for (double w : weights_) {
    if (!(w >= 0.0)) throw std::domain_error("DickeDiagonal weights must be >= 0");
    s.add(w);
  }
  if (std::abs(s.value() - 1.0) > 1e-12) {
    throw std::domain_error("DickeDiagonal weights must sum to 1");
  }
}

double stirling_remainder(std::int64_t m) {
  if (m < 1) throw std::domain_error("stirling_remainder requires m >= 1");
  const double x = static_cast<double>(m);
  if (m < 10) {
    double lf = 0.0;
    for (std::int64_t j = 2; j <= m; ++j) lf += std::log(static_cast<double>(j));
    return lf - ((x + 0.5) * std::log(x) - x + kHalfLog2Pi);
  }
  // Asymptotic series B_{2j} / (2j (2j-1) x^{2j-1}); truncation error < 1e-17 for x >= 10.
  static constexpr std::array<double, 8> coeff = {
      1.0 / 12.0,           -1.0 / 360.0,  1.0 / 1260.0, -1.0 / 1680.0,
      1.0 / 1188.0,         -691.0 / 360360.0, 1.0 / 156.0, -3617.0 / 122400.0};
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  double acc = 0.0;
  for (auto it = coeff.rbegin(); it != coeff.rend(); ++it) acc = acc * inv2 + *it;
  return acc * inv;
}

double log_factorial(std::int64_t m) {
  if (m < 0) throw std::domain_error("log_factorial of a negative integer");
  return std::lgamma(static_cast<double>(m) + 1.0);
}

double log_binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) {
    throw std::domain_error("log_binomial requires 0 <= k <= n (got n=" + std::to_string(n) +
                            ", k=" + std::to_string(k) + ")");
  }
  const std::int64_t kk = std::min(k, n - k);
  if (kk == 0) return 0.0;
  const double nd = static_cast<double>(n);
  const double kd = static_cast<double>(kk);
  if (kk < 16) {
    double acc = 0.0;
    for (std::int64_t j = 1; j <= kk; ++j) {
      acc += std::log1p(static_cast<double>(n - kk) / static_cast<double>(j));
    }
    return acc;
  }
  // Stirling split of lgamma(n+1) - lgamma(k+1) - lgamma(n-k+1): every large term is
  // non-negative, so there is no cancellation at n ~ 1e6.
  const double md = nd - kd;
  const double mixing = kd * std::log(nd / kd) - md * std::log1p(-kd / nd);
  const double prefactor = 0.5 * std::log(nd / (kd * md)) - kHalfLog2Pi;
  return mixing + prefactor + stirling_remainder(n) - stirling_remainder(kk) -
         stirling_remainder(n - kk);
}

std::uint64_t exact_binomial(int n, int k) {
  if (n < 0 || n > 64) throw std::domain_error("exact_binomial supports 0 <= n <= 64");
  if (k < 0 || k > n) return 0;
  std::vector<std::uint64_t> row(static_cast<std::size_t>(n) + 1, 0);
  row[0] = 1;
  for (int i = 1; i <= n; ++i) {
    for (int j = i; j > 0; --j) row[static_cast<std::size_t>(j)] += row[static_cast<std::size_t>(j) - 1];
  }
  return row[static_cast<std::size_t>(k)];
}

TwoSiteState reduced_two_site(const DickeState& s) {
  const std::int64_t n = s.n();
  const std::int64_t k = s.k();
  if (n < 2) throw std::domain_error("two-site reduction requires n >= 2");
  const double denom = static_cast<double>(n) * static_cast<double>(n - 1);
  const double a = static_cast<double>(k * (k - 1)) / denom;
  const double b = static_cast<double>((n - k) * (n - k - 1)) / denom;
  const double c = static_cast<double>(k * (n - k)) / denom;
  return TwoSiteState{a, b, c};
}

namespace detail {

std::vector<BlockLevel> block_levels(std::int64_t n, std::int64_t k, std::int64_t l) {
  require_block(n, l);
  if (k <= 0 || k >= n) throw std::domain_error("block_levels requires 0 < k < n");
  const std::int64_t lo = std::max<std::int64_t>(0, l - (n - k));
  const std::int64_t hi = std::min(l, k);
  const auto occupied = falling_log_prefix(k, hi);
  const auto empty = falling_log_prefix(n - k, l - lo);
  const double all = falling_log_prefix(n, l).back();

  const double r = static_cast<double>(k) / static_cast<double>(n);
  const double log_r = std::log(r);
  const double log_1mr = std::log1p(-r);

  std::vector<BlockLevel> out;
  out.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (std::int64_t i = lo; i <= hi; ++i) {
    const double ratio =
        occupied[static_cast<std::size_t>(i)] + empty[static_cast<std::size_t>(l - i)] - all;
    const double log_rho = log_binomial(l, i) + static_cast<double>(i) * log_r +
                           static_cast<double>(l - i) * log_1mr;
    out.push_back({i, log_rho + ratio, ratio});
  }
  return out;
}

}  // namespace detail

DickeDiagonal reduced_l(const DickeState& s, std::int64_t l) {
  const std::int64_t n = s.n();
  const std::int64_t k = s.k();
  require_block(n, l);
  std::vector<double> w(static_cast<std::size_t>(l) + 1, 0.0);
  if (k == 0) {
    w.front() = 1.0;
  } else if (k == n) {
    w.back() = 1.0;
  } else {
    for (const auto& lev : detail::block_levels(n, k, l)) {
      w[static_cast<std::size_t>(lev.level)] = std::exp(lev.log_sigma);
    }
    normalize(w);
  }
  return DickeDiagonal(l, std::move(w));
}

DickeDiagonal closest_separable_diagonal(std::int64_t n, std::int64_t k, std::int64_t l) {
  if (n < 1 || k < 0 || k > n) throw std::domain_error("closest_separable_diagonal requires 0 <= k <= n");
  require_block(n, l);
  std::vector<double> w(static_cast<std::size_t>(l) + 1, 0.0);
  if (k == 0) {
    w.front() = 1.0;
  } else if (k == n) {
    w.back() = 1.0;
  } else {
    const double r = static_cast<double>(k) / static_cast<double>(n);
    const double log_r = std::log(r);
    const double log_1mr = std::log1p(-r);
    for (std::int64_t i = 0; i <= l; ++i) {
      w[static_cast<std::size_t>(i)] = std::exp(log_binomial(l, i) + static_cast<double>(i) * log_r +
                                                static_cast<double>(l - i) * log_1mr);
    }
    normalize(w);
  }
  return DickeDiagonal(l, std::move(w));
}

DickeState dephase_equivalent(const PhasedDickeState& p) { return p.base; }

}  // namespace dickeent
