#include "dickeent/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "dickeent/correlations.hpp"
#include "dickeent/measures.hpp"

namespace dickeent::thermal {

namespace {

double softplus(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

std::vector<double> normalized_from_logs(const std::vector<double>& logs) {
  const double top = *std::max_element(logs.begin(), logs.end());
  std::vector<double> p(logs.size());
  double total = 0.0;
  for (std::size_t i = 0; i < logs.size(); ++i) {
    p[i] = std::exp(logs[i] - top);
    total += p[i];
  }
  for (double& x : p) x /= total;
  return p;
}

}  // namespace

ThermalEnsemble::ThermalEnsemble(std::int64_t n, std::vector<double> p) : n_(n), p_(std::move(p)) {
  if (n < 1) throw std::domain_error("ensemble needs n >= 1");
  if (p_.size() != static_cast<std::size_t>(n) + 1) {
    throw std::domain_error("ensemble needs n + 1 level probabilities");
  }
  double total = 0.0;
  for (double x : p_) {
    if (!(x >= 0.0)) throw std::domain_error("level probabilities must be >= 0");
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::domain_error("level probabilities must sum to 1");
}

ThermalEnsemble ThermalEnsemble::uniform(std::int64_t n) {
  if (n < 1) throw std::domain_error("ensemble needs n >= 1");
  return ThermalEnsemble(n, std::vector<double>(static_cast<std::size_t>(n) + 1, 1.0 / static_cast<double>(n + 1)));
}

ThermalEnsemble ThermalEnsemble::point_mass(std::int64_t n, std::int64_t k) {
  const DickeState s(n, k);
  std::vector<double> p(static_cast<std::size_t>(n) + 1, 0.0);
  p[static_cast<std::size_t>(s.k())] = 1.0;
  return ThermalEnsemble(n, std::move(p));
}

ThermalEnsemble make_ensemble(std::span<const double> energies, double kT, Occupation mode) {
  if (!(kT > 0.0) || !std::isfinite(kT)) throw std::domain_error("temperature kT must be positive");
  if (energies.size() < 2) throw std::domain_error("need energies for levels 0..n with n >= 1");
  std::vector<double> logs;
  logs.reserve(energies.size());
  for (double e : energies) {
    if (!std::isfinite(e)) throw std::domain_error("level energies must be finite");
    const double x = e / kT;
    logs.push_back(mode == Occupation::kFermiDirac ? -softplus(x) : -x);
  }
  return ThermalEnsemble(static_cast<std::int64_t>(energies.size()) - 1, normalized_from_logs(logs));
}

ThermalEnsemble random_ensemble(std::int64_t n, std::uint64_t seed) {
  if (n < 1) throw std::domain_error("ensemble needs n >= 1");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution include(0.5);
  std::exponential_distribution<double> gamma1(1.0);
  std::vector<double> p(static_cast<std::size_t>(n) + 1, 0.0);
  bool any = false;
  for (double& x : p) {
    if (include(rng)) {
      x = gamma1(rng);
      any = true;
    }
  }
  if (!any) {
    std::uniform_int_distribution<std::int64_t> pick(0, n);
    p[static_cast<std::size_t>(pick(rng))] = 1.0;
  }
  double total = 0.0;
  for (double x : p) total += x;
  for (double& x : p) x /= total;
  return ThermalEnsemble(n, std::move(p));
}

TwoSiteState thermal_two_site(const ThermalEnsemble& e) {
  const std::int64_t n = e.n();
  if (n < 2) throw std::domain_error("two-site reduction needs n >= 2");
  TwoSiteState t;
  for (std::int64_t k = 0; k <= n; ++k) {
    const double pk = e.p(k);
    if (pk == 0.0) continue;
    const auto s = reduced_two_site(DickeState(n, k));
    t.a += pk * s.a;
    t.b += pk * s.b;
    t.c += pk * s.c;
  }
  return t;
}

double inseparability_sum(const ThermalEnsemble& e) {
  const std::int64_t n = e.n();
  double total = 0.0;
  for (std::int64_t k = 0; k <= n; ++k) {
    const double pk = e.p(k);
    if (pk == 0.0 || k == 0) continue;
    for (std::int64_t l = 0; l < n; ++l) {
      const double pl = e.p(l);
      if (pl == 0.0) continue;
      const double bracket = static_cast<double>((n - k) * l - (k - 1) * (n - l - 1));
      total += pk * pl * static_cast<double>(k) * static_cast<double>(n - l) * bracket;
    }
  }
  return total;
}

bool thermal_inseparable(const ThermalEnsemble& e) { return inseparability_sum(e) > 1e-15; }

double ree_upper_bound(const ThermalEnsemble& e) {
  const std::int64_t n = e.n();
  std::vector<std::int64_t> support;
  for (std::int64_t k = 0; k <= n; ++k) {
    if (e.p(k) > 0.0) support.push_back(k);
  }
  if (support.size() == 1) return ree_pure(n, support.front());

  const double nd = static_cast<double>(n);
  std::vector<double> log_binom(static_cast<std::size_t>(n) + 1);
  for (std::int64_t k = 0; k <= n; ++k) log_binom[static_cast<std::size_t>(k)] = log_binomial(n, k);

  double nats = 0.0;
  for (std::int64_t k : support) {
    // q_k = sum_l p_l C(n,k) (l/n)^k (1 - l/n)^(n-k)
    double q = 0.0;
    for (std::int64_t l : support) {
      double w = 0.0;
      if (l == 0) {
        w = k == 0 ? 1.0 : 0.0;
      } else if (l == n) {
        w = k == n ? 1.0 : 0.0;
      } else {
        const double x = static_cast<double>(l) / nd;
        w = std::exp(log_binom[static_cast<std::size_t>(k)] + static_cast<double>(k) * std::log(x) +
                     static_cast<double>(n - k) * std::log1p(-x));
      }
      q += e.p(l) * w;
    }
    nats += e.p(k) * std::log(e.p(k) / q);
  }
  return std::max(0.0, to_bits(nats));
}

double ree_upper_bound_printed(const ThermalEnsemble& e) {
  const std::int64_t n = e.n();
  double bits = 0.0;
  for (std::int64_t k = 0; k <= n; ++k) {
    const double pk = e.p(k);
    if (pk == 0.0) continue;
    // sum_{i=1}^k C(k,i) r^(k-i) (1-r)^i = 1 - r^k with r = k/n
    const double r = static_cast<double>(k) / static_cast<double>(n);
    const double inner = k == 0 ? 0.0 : -std::expm1(static_cast<double>(k) * std::log(r));
    if (inner <= 0.0) return std::numeric_limits<double>::infinity();
    bits -= pk * std::log2(inner);
  }
  return bits;
}

double average_entanglement(const ThermalEnsemble& e) {
  double total = 0.0;
  for (std::int64_t k = 0; k <= e.n(); ++k) {
    if (e.p(k) > 0.0) total += e.p(k) * ree_pure(e.n(), k);
  }
  return total;
}

double average_entanglement_asymptotic(const ThermalEnsemble& e) {
  const double nd = static_cast<double>(e.n());
  double total = 0.0;
  for (std::int64_t k = 1; k < e.n(); ++k) {
    total += e.p(k) * 0.5 * std::log2(static_cast<double>(k) * (nd - static_cast<double>(k)) / nd);
  }
  return total;
}

double odlro_mixture(const ThermalEnsemble& e) {
  const double nd = static_cast<double>(e.n());
  double total = 0.0;
  for (std::int64_t k = 0; k <= e.n(); ++k) {
    const double r = static_cast<double>(k) / nd;
    total += e.p(k) * r * (1.0 - r);
  }
  return total;
}

double odlro_mixture_finite(const ThermalEnsemble& e) {
  if (e.n() < 2) throw std::domain_error("finite-n ODLRO needs n >= 2");
  return thermal_two_site(e).c;
}

double mutual_information_mixture(const ThermalEnsemble& e) {
  double mean_k = 0.0;
  for (std::int64_t k = 0; k <= e.n(); ++k) mean_k += e.p(k) * static_cast<double>(k);
  const double nd = static_cast<double>(e.n());
  return nd * binary_entropy(mean_k / nd) - shannon_entropy(e.p());
}

double mutual_information_mixture_printed(const ThermalEnsemble& e) {
  const double nd = static_cast<double>(e.n());
  double marginals = 0.0;
  for (std::int64_t k = 0; k <= e.n(); ++k) {
    marginals += e.p(k) * binary_entropy(static_cast<double>(k) / nd);
  }
  return nd * marginals - shannon_entropy(e.p());
}

UniformMutualInformation mutual_information_mixture_uniform(std::int64_t n) {
  const auto e = ThermalEnsemble::uniform(n);
  return {mutual_information_mixture_printed(e), mutual_information_mixture(e)};
}

CriticalTemperature critical_temperature(const CriticalTempParams& p) {
  if (!(p.energy_scale_ev > 0.0)) throw std::domain_error("energy scale must be positive");
  if (!(p.coupling > 0.0)) throw std::domain_error("coupling must be positive");
  CriticalTemperature out;
  out.kelvin = p.energy_scale_ev / kBoltzmannEvPerKelvin * std::exp(-1.0 / p.coupling);
  if (p.coupling >= 1.0) {
    out.warning = "coupling >= 1 is outside the weak-coupling regime of this formula";
  }
  return out;
}

double coupling_for_critical_temperature(double energy_scale_ev, double kelvin) {
  const double ceiling = energy_scale_ev / kBoltzmannEvPerKelvin;
  if (!(energy_scale_ev > 0.0) || !(kelvin > 0.0) || kelvin >= ceiling) {
    throw std::domain_error("need 0 < T < energy_scale / k_B");
  }
  return -1.0 / std::log(kelvin / ceiling);
}

}  // namespace dickeent::thermal
