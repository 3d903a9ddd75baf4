#pragma once

// Mixtures of Dicke states sum_k p_k |k, n-k><k, n-k| over all levels of n sites,
// as produced by a thermal occupation of the symmetric levels.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dickeent/dicke_core.hpp"

namespace dickeent::thermal {

class ThermalEnsemble {
 public:
  /// p must have n + 1 non-negative entries summing to 1 within 1e-12.
  ThermalEnsemble(std::int64_t n, std::vector<double> p);

  static ThermalEnsemble uniform(std::int64_t n);
  static ThermalEnsemble point_mass(std::int64_t n, std::int64_t k);

  std::int64_t n() const { return n_; }
  const std::vector<double>& p() const { return p_; }
  double p(std::int64_t k) const { return p_.at(static_cast<std::size_t>(k)); }

 private:
  std::int64_t n_;
  std::vector<double> p_;
};

enum class Occupation { kFermiDirac, kBoltzmann };

/// Level weights from energies E_0..E_n at temperature kT (same units).
/// Fermi-Dirac occupancies 1/(exp(E/kT) + 1) are normalized to a probability vector.
ThermalEnsemble make_ensemble(std::span<const double> energies, double kT,
                              Occupation mode = Occupation::kFermiDirac);

/// Dirichlet weights on a random non-empty subset of levels; reproducible from seed.
ThermalEnsemble random_ensemble(std::int64_t n, std::uint64_t seed);

/// sum_k p_k sigma_12(k). Requires n >= 2.
TwoSiteState thermal_two_site(const ThermalEnsemble& e);

/// sum_{k,l} p_k p_l k(n-l) [(n-k) l - (k-1)(n-l-1)], which equals
/// n^2 (n-1)^2 (c^2 - a b) of the mixed two-site state.
double inseparability_sum(const ThermalEnsemble& e);

/// Partial-transpose verdict for the mixed two-site state: inseparability_sum > 1e-15.
bool thermal_inseparable(const ThermalEnsemble& e);

/// S(sigma_T || sum_l p_l rho_l) in bits, where rho_l is the closest separable state
/// of |l, n-l>. The reference state is separable, so this bounds the REE from above.
double ree_upper_bound(const ThermalEnsemble& e);

/// The bound in the form -sum_k p_k log2 sum_{i=1}^k C(k,i)(k/n)^(k-i)((n-k)/n)^i,
/// reported for comparison. +inf when a term with p_k > 0 vanishes.
double ree_upper_bound_printed(const ThermalEnsemble& e);

/// sum_k p_k ree_pure(n, k).
double average_entanglement(const ThermalEnsemble& e);

/// (1/2) sum_k p_k log2(k(n-k)/n) over 0 < k < n; large-n comparator only.
double average_entanglement_asymptotic(const ThermalEnsemble& e);

/// sum_k p_k (k/n)(1 - k/n), the large-n two-site element averaged over levels.
double odlro_mixture(const ThermalEnsemble& e);

/// sum_k p_k c(n, k) with the finite-n element c = k(n-k)/(n(n-1)).
double odlro_mixture_finite(const ThermalEnsemble& e);

/// Total correlations sum_j S(site j) - S(sigma_T) of the mixture, in bits.
double mutual_information_mixture(const ThermalEnsemble& e);

/// n sum_k p_k H2(k/n) - H(p): averages the per-level marginal entropies.
double mutual_information_mixture_printed(const ThermalEnsemble& e);

struct UniformMutualInformation {
  double averaged_value = 0.0;  // (n/(n+1)) sum_k H2(k/n) - log2(n+1)
  double exact_value = 0.0;  // n - log2(n+1)
};

UniformMutualInformation mutual_information_mixture_uniform(std::int64_t n);

inline constexpr double kBoltzmannEvPerKelvin = 8.617333262e-5;  // CODATA 2018, exact

struct CriticalTempParams {
  double energy_scale_ev = 0.0;  // hbar omega
  double coupling = 0.0;         // lambda = N(0) V
};

struct CriticalTemperature {
  double kelvin = 0.0;
  std::optional<std::string> warning;
};

/// T_c = (hbar omega / k_B) exp(-1/lambda); warns outside weak coupling (lambda >= 1).
CriticalTemperature critical_temperature(const CriticalTempParams& p);

/// Coupling for which critical_temperature reaches `kelvin` at the given energy scale.
double coupling_for_critical_temperature(double energy_scale_ev, double kelvin);

}  // namespace dickeent::thermal
