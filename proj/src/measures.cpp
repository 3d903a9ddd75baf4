#include "dickeent/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace dickeent {

namespace {

constexpr double kHalfLog2Pi = 0.918938533204672741780329736405617640;

void require_state(std::int64_t n, std::int64_t k) {
  if (n < 1 || k < 0 || k > n) {
    throw std::domain_error("need n >= 1 and 0 <= k <= n (got n=" + std::to_string(n) +
                            ", k=" + std::to_string(k) + ")");
  }
}

void require_pair(std::int64_t n, std::int64_t k) {
  require_state(n, k);
  if (n < 2) throw std::domain_error("two-site quantities need n >= 2");
}

// Closed REE in nats for sorted non-zero level counts, written through the
// Stirling split so that the O(n) parts of -ln(multinomial) and sum n_j ln(n/n_j)
// cancel analytically:
//   (1/2) [sum_j ln(2 pi n_j) - ln(2 pi n)] - delta(n) + sum_j delta(n_j).
double ree_nats_from_counts(std::vector<std::int64_t> counts) {
  std::erase(counts, 0);
  if (counts.size() < 2) return 0.0;
  std::sort(counts.begin(), counts.end());
  const std::int64_t n = std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
  double logs = -std::log(static_cast<double>(n));
  double remainders = -stirling_remainder(n);
  for (auto c : counts) {
    logs += std::log(static_cast<double>(c));
    remainders += stirling_remainder(c);
  }
  return 0.5 * logs + static_cast<double>(counts.size() - 1) * kHalfLog2Pi + remainders;
}

}  // namespace

double ree_pure(std::int64_t n, std::int64_t k) {
  require_state(n, k);
  if (k == 0 || k == n) return 0.0;
  return to_bits(ree_nats_from_counts({k, n - k}));
}

double ree_pure_asymptotic_offset() { return std::log2(2.507 / 2.0); }

double ree_pure_asymptotic(std::int64_t n) {
  if (n < 2 || n % 2 != 0) throw std::domain_error("ree_pure_asymptotic needs an even n >= 2");
  return 0.5 * std::log2(static_cast<double>(n)) + ree_pure_asymptotic_offset();
}

double ree_two_site(std::int64_t n, std::int64_t k) {
  require_pair(n, k);
  const auto t = reduced_two_site(DickeState(n, k));
  double nats = -std::log1p(-1.0 / static_cast<double>(n));
  if (t.a > 0.0) nats += t.a * std::log1p(-1.0 / static_cast<double>(k));
  if (t.b > 0.0) nats += t.b * std::log1p(-1.0 / static_cast<double>(n - k));
  return to_bits(nats);
}

double ree_l(std::int64_t n, std::int64_t k, std::int64_t l) {
  require_state(n, k);
  if (l < 1 || l > n) throw std::domain_error("ree_l needs 1 <= l <= n");
  if (k == 0 || k == n || l == 1) return 0.0;
  if (l == n) return ree_pure(n, k);
  double nats = 0.0;
  for (const auto& lev : detail::block_levels(n, k, l)) {
    nats += std::exp(lev.log_sigma) * lev.log_ratio;
  }
  return to_bits(nats);
}

bool is_two_site_entangled(std::int64_t n, std::int64_t k) {
  require_pair(n, k);
  // c^2 > a b in integers: the divided form (k-1)(n-k-1) < k(n-k) also holds at k = 0.
  using wide = __int128;
  const wide kk = k;
  const wide m = n - k;
  return kk * kk * m * m > kk * (kk - 1) * m * (m - 1);
}

double entropy_one_vs_rest(std::int64_t n, std::int64_t k) {
  require_pair(n, k);
  return binary_entropy(static_cast<double>(k) / static_cast<double>(n));
}

double entropy_block(std::int64_t n, std::int64_t k, std::int64_t l) {
  require_state(n, k);
  if (l < 1 || l > n - 1) throw std::domain_error("entropy_block needs 1 <= l <= n-1");
  if (k == 0 || k == n) return 0.0;
  double nats = 0.0;
  for (const auto& lev : detail::block_levels(n, k, l)) {
    nats -= std::exp(lev.log_sigma) * lev.log_sigma;
  }
  return to_bits(nats);
}

double entropy_block_gaussian(std::int64_t n, std::int64_t k, std::int64_t l) {
  require_state(n, k);
  if (k == 0 || k == n) throw std::domain_error("entropy_block_gaussian needs 0 < k < n");
  if (l < 1 || l > n - 1) throw std::domain_error("entropy_block_gaussian needs 1 <= l <= n-1");
  const double r = static_cast<double>(k) / static_cast<double>(n);
  const double v = static_cast<double>(l) * r * (1.0 - r) * static_cast<double>(n - l) / static_cast<double>(n - 1);
  return 0.5 * std::log2(2.0 * std::numbers::pi * std::numbers::e * v);
}

SumInequalityReport check_sum_inequality(std::int64_t n, std::int64_t k) {
  require_pair(n, k);
  SumInequalityReport r;
  r.two_site = ree_two_site(n, k);
  r.lhs = static_cast<double>(n - 1) * r.two_site;
  r.rhs = entropy_one_vs_rest(n, k);
  r.holds = r.lhs <= r.rhs + 1e-12;
  r.two_site_bound = 1.0 / static_cast<double>(n - 1);
  r.bound_holds = r.two_site <= r.two_site_bound + 1e-12;
  return r;
}

std::string_view to_string(Ordering o) {
  switch (o) {
    case Ordering::kLess:
      return "LESS";
    case Ordering::kEqual:
      return "EQUAL";
    case Ordering::kGreater:
      return "GREATER";
  }
  return "?";
}

namespace {

Ordering compare(double lower, double higher) {
  const double diff = lower - higher;
  if (std::abs(diff) <= kCrossoverTieTolerance) return Ordering::kEqual;
  return diff < 0.0 ? Ordering::kLess : Ordering::kGreater;
}

double single_site_term(std::int64_t n, std::int64_t k, SingleSiteTerm first) {
  return first == SingleSiteTerm::kReducedState ? ree_l(n, k, 1) : entropy_one_vs_rest(n, k);
}

}  // namespace

CrossoverReport crossover_compare(std::int64_t n, std::int64_t k, std::int64_t m,
                                  SingleSiteTerm first) {
  require_state(n, k);
  if (m < 1 || m > n - 1) throw std::domain_error("crossover_compare needs 1 <= m <= n-1");
  CrossoverReport r;
  r.sum_lower = single_site_term(n, k, first);
  for (std::int64_t i = 2; i <= m; ++i) r.sum_lower += ree_l(n, k, i);
  r.higher = ree_l(n, k, m + 1);
  r.ordering = compare(r.sum_lower, r.higher);
  return r;
}

CrossoverScan crossover_scan(std::int64_t n, std::int64_t k, std::int64_t max_m,
                             SingleSiteTerm first) {
  require_state(n, k);
  if (n < 2) throw std::domain_error("crossover_scan needs n >= 2");
  max_m = std::clamp<std::int64_t>(max_m, 1, n - 1);
  CrossoverScan scan;
  double sum = single_site_term(n, k, first);
  for (std::int64_t m = 1; m <= max_m; ++m) {
    if (m >= 2) sum += ree_l(n, k, m);
    CrossoverReport r;
    r.sum_lower = sum;
    r.higher = ree_l(n, k, m + 1);
    r.ordering = compare(r.sum_lower, r.higher);
    if (!scan.flip && !scan.rows.empty() && scan.rows.back().ordering != r.ordering) {
      scan.flip = m;
    }
    scan.rows.push_back(r);
  }
  return scan;
}

double ree_pure_generalized(const GeneralizedDickeState& g) {
  return to_bits(ree_nats_from_counts(g.counts()));
}

}  // namespace dickeent
