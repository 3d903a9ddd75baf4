#pragma once

// Closed-form relative entropy of entanglement (REE) for Dicke states and their
// reduced states, separability predicates and the inequality checks between them.
// All entanglement values are in bits.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "dickeent/dicke_core.hpp"

namespace dickeent {

/// REE of |k, n-k>: -log2 C(n,k) + k log2(n/k) + (n-k) log2(n/(n-k)).
double ree_pure(std::int64_t n, std::int64_t k);

/// Leading-order half-filling REE from n! ~ 2.507 n^(n+1/2) e^-n:
/// (1/2) log2 n + log2(2.507 / 2). Requires even n >= 2.
double ree_pure_asymptotic(std::int64_t n);

/// Additive constant of ree_pure_asymptotic, log2(2.507 / 2).
double ree_pure_asymptotic_offset();

/// REE between any two sites of |k, n-k>. Requires n >= 2.
double ree_two_site(std::int64_t n, std::int64_t k);

/// REE of the l-site reduced state against the l-site marginal of the closest
/// separable state of the whole. ree_l(n,k,1) = 0, ree_l(n,k,n) = ree_pure(n,k).
double ree_l(std::int64_t n, std::int64_t k, std::int64_t l);

/// Partial-transpose criterion for the two-site state: (k-1)(n-k-1) < k(n-k) with
/// the off-diagonal element non-zero, i.e. 1 <= k <= n-1.
bool is_two_site_entangled(std::int64_t n, std::int64_t k);

/// Entanglement of one site with the rest: the binary entropy of k/n.
double entropy_one_vs_rest(std::int64_t n, std::int64_t k);

/// Entropy of an l-site block, equal to its entanglement with the other n-l sites.
double entropy_block(std::int64_t n, std::int64_t k, std::int64_t l);

/// Large-block estimate (1/2) log2(2 pi e v), v = l r (1-r) (n-l)/(n-1) the variance of
/// the block occupation. Requires 0 < k < n and 1 <= l <= n-1.
double entropy_block_gaussian(std::int64_t n, std::int64_t k, std::int64_t l);

struct SumInequalityReport {
  double lhs = 0.0;  // (n-1) E_12
  double rhs = 0.0;  // E_1:rest
  bool holds = false;
  double two_site = 0.0;
  double two_site_bound = 0.0;  // 1/(n-1)
  bool bound_holds = false;
};

/// (n-1) E_12 <= E_1:rest together with E_12 <= 1/(n-1).
SumInequalityReport check_sum_inequality(std::int64_t n, std::int64_t k);

enum class Ordering { kLess, kEqual, kGreater };

std::string_view to_string(Ordering o);

/// What the single-site term E_1 of the crossover sum stands for.
enum class SingleSiteTerm {
  kReducedState,    // ree_l(n, k, 1) = 0
  kEntropyWithRest  // entropy_one_vs_rest(n, k), the one-site entanglement with the others
};

struct CrossoverReport {
  double sum_lower = 0.0;  // sum_{i=1}^m E_i
  double higher = 0.0;     // E_{m+1}
  Ordering ordering = Ordering::kEqual;
};

inline constexpr double kCrossoverTieTolerance = 1e-9;

/// Compares sum_{i=1}^m E_i with E_{m+1}, where E_i = ree_l(n, k, i) for i >= 2.
CrossoverReport crossover_compare(std::int64_t n, std::int64_t k, std::int64_t m,
                                  SingleSiteTerm first = SingleSiteTerm::kReducedState);

struct CrossoverScan {
  std::vector<CrossoverReport> rows;  // rows[m-1] for m = 1..max_m
  std::optional<std::int64_t> flip;   // smallest m whose ordering differs from m-1's
};

/// Crossover rows for m = 1..max_m (clamped to n-1) and the first ordering flip.
CrossoverScan crossover_scan(std::int64_t n, std::int64_t k, std::int64_t max_m,
                             SingleSiteTerm first = SingleSiteTerm::kReducedState);

/// d-level REE: -log2 multinomial(n; counts) + sum_j n_j log2(n / n_j).
double ree_pure_generalized(const GeneralizedDickeState& g);

}  // namespace dickeent
