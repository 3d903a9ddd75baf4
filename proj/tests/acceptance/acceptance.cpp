// One PASS/FAIL line per acceptance criterion. Exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "dickeent/correlations.hpp"
#include "dickeent/measures.hpp"
#include "dickeent/oracle.hpp"
#include "dickeent/thermal.hpp"

using namespace dickeent;
namespace ora = dickeent::oracle;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

std::vector<int> first_sites(int l) {
  std::vector<int> v;
  for (int i = 0; i < l; ++i) v.push_back(i);
  return v;
}

Outcome bell_anchor() {
  Outcome o;
  o.require(std::abs(ree_pure(2, 1) - 1.0) <= 1e-12, fmt("ree_pure(2,1)=%.15g", ree_pure(2, 1)));
  o.require(std::abs(ree_two_site(2, 1) - 1.0) <= 1e-12, fmt("ree_two_site(2,1)=%.15g", ree_two_site(2, 1)));
  return o;
}

Outcome closed_vs_dense() {
  Outcome o;
  double worst_ree = 0.0, worst_w = 0.0;
  for (int n = 1; n <= 8; ++n) {
    for (int k = 0; k <= n; ++k) {
      const auto psi = ora::projector(ora::dicke_vector(n, k));
      const auto rho = ora::closest_state_dense(n, k);
      for (int l = 1; l <= n; ++l) {
        const auto keep = first_sites(l);
        const auto s = ora::partial_trace(psi, keep);
        const auto r = ora::partial_trace(rho, keep);
        worst_ree = std::max(worst_ree, std::abs(ree_l(n, k, l) - ora::relative_entropy(s, r)));
        const auto ps = ora::dicke_projection(s);
        const auto pr = ora::dicke_projection(r);
        worst_w = std::max({worst_w, ps.off_diagonal, pr.off_diagonal});
        const auto ws = reduced_l(DickeState(n, k), l);
        const auto wr = closest_separable_diagonal(n, k, l);
        for (int i = 0; i <= l; ++i) {
          const auto u = static_cast<std::size_t>(i);
          worst_w = std::max({worst_w, std::abs(ps.weights[u] - ws.weight(i)), std::abs(pr.weights[u] - wr.weight(i))});
        }
      }
    }
  }
  o.require(worst_ree <= 1e-9, fmt("max |ree_l - dense| = %.3e", worst_ree));
  o.require(worst_w <= 1e-10, fmt("max weight error = %.3e", worst_w));
  o.detail = o.ok ? fmt("max ree err %.2e, max weight err %.2e", worst_ree, worst_w) : o.detail;
  return o;
}

Outcome ppt_agreement() {
  Outcome o;
  long cases = 0;
  for (int n = 2; n <= 50; ++n) {
    for (int k = 0; k <= n; ++k) {
      const auto pt = ora::partial_transpose(ora::embed_two_site(reduced_two_site(DickeState(n, k))), {0});
      const double m = ora::min_eigenvalue(pt);
      const bool dense = m < -1e-12;
      o.require(dense == is_two_site_entangled(n, k), fmt("n=%g k=%g min eig %.3e", n, k, m));
      o.require(std::abs(m) > 1e-12 || !is_two_site_entangled(n, k), fmt("n=%g k=%g inside sign band", n, k));
      ++cases;
    }
  }
  if (o.ok) o.detail = std::to_string(cases) + " states";
  return o;
}

Outcome log_scaling() {
  Outcome o;
  double sx = 0, sy = 0, sxx = 0, sxy = 0, m = 0;
  for (int e = 4; e <= 20; ++e) {
    const std::int64_t n = std::int64_t{1} << e;
    const double x = e, y = ree_pure(n, n / 2);
    sx += x, sy += y, sxx += x * x, sxy += x * y, m += 1;
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  o.require(std::abs(slope - 0.5) <= 0.01, fmt("slope %.6f", slope));
  if (o.ok) o.detail = fmt("slope %.6f", slope);
  return o;
}

Outcome two_site_decay() {
  Outcome o;
  double worst = 0.0;
  for (std::int64_t n = 2; n <= 10000; ++n) {
    const double v = ree_two_site(n, n / 2) * static_cast<double>(n - 1);
    worst = std::max(worst, v);
    o.require(v <= 1.0 + 1e-12, fmt("n=%g: (n-1) E_12 = %.15g", static_cast<double>(n), v));
  }
  for (std::int64_t n = 2; n <= 200; ++n) {
    for (std::int64_t k = 0; k <= n; ++k) {
      const double lhs = static_cast<double>(n - 1) * ree_two_site(n, k);
      const double rhs = entropy_one_vs_rest(n, k);
      o.require(lhs <= rhs + 1e-12, fmt("n=%g k=%g: (n-1) E_12 - E_1rest = %.3e", static_cast<double>(n), static_cast<double>(k), lhs - rhs));
    }
  }
  if (o.ok) o.detail = fmt("max (n-1) E_12 = %.12g", worst);
  return o;
}

Outcome crossover() {
  Outcome o;
  const auto small = crossover_compare(100, 50, 4);
  const auto large = crossover_compare(100, 50, 30);
  o.require(small.ordering == Ordering::kLess, "m=4 ordering " + std::string(to_string(small.ordering)));
  o.require(large.ordering == Ordering::kGreater, "m=30 ordering " + std::string(to_string(large.ordering)));
  for (int k : {1, 2}) {
    const auto c = crossover_compare(3, k, 2, SingleSiteTerm::kEntropyWithRest);
    o.require(std::abs(c.sum_lower - c.higher) <= 1e-9, fmt("n=3 k=%g: E1+E2=%.12g E3=%.12g", k, c.sum_lower, c.higher));
  }
  const auto scan = crossover_scan(100, 50, 40);
  if (o.ok && scan.flip) o.detail = "first flip at m=" + std::to_string(*scan.flip);
  return o;
}

Outcome classical() {
  Outcome o;
  const double c = classical_correlation_closed(0.5);
  o.require(std::abs(c - 0.5) <= 1e-9, fmt("closed(1/2)=%.15g", c));
  const auto m = classical_correlation_measured(TwoSiteState::make(0.25, 0.25, 0.25));
  o.require(m.bits > 0.1, fmt("measured %.9f", m.bits));
  if (o.ok) o.detail = fmt("measured %.9f bits at theta %.6f", m.bits, m.theta);
  return o;
}

Outcome mutual_information() {
  Outcome o;
  for (std::int64_t n = 2; n <= 100000; n += 2) {
    if (mutual_information_pure(n, n / 2) != static_cast<double>(n)) {
      o.require(false, fmt("I(%g, n/2) = %.17g", static_cast<double>(n), mutual_information_pure(n, n / 2)));
      break;
    }
  }
  for (std::int64_t n : {1, 2, 4, 10, 100, 1000, 10000}) {
    const double nd = static_cast<double>(n);
    const double formula = nd - std::log2(nd + 1);
    const double generic = thermal::mutual_information_mixture(thermal::ThermalEnsemble::uniform(n));
    o.require(std::abs(thermal::mutual_information_mixture_uniform(n).exact_value - formula) <= 1e-9 * std::max(1.0, nd),
              fmt("n=%g exact value", nd));
    o.require(std::abs(generic - formula) <= 1e-9 * std::max(1.0, nd), fmt("n=%g mixture %.12g vs %.12g", nd, generic, formula));
  }
  const double big = thermal::mutual_information_mixture_uniform(10000).exact_value;
  const double target = 10000.0 - std::log2(10000.0);
  o.require(std::abs(big - target) <= 0.01 * target, fmt("n=1e4: %.9g vs %.9g", big, target));
  if (o.ok) o.detail = fmt("n=1e4: %.6f vs n - log2 n = %.6f", big, target);
  return o;
}

Outcome thermal_separability() {
  Outcome o;
  long cases = 0;
  std::mt19937_64 rng(2024);
  for (std::int64_t n = 2; n <= 30; ++n) {
    for (std::uint64_t s = 0; s < 100; ++s) {
      const auto e = thermal::random_ensemble(n, 7919 * static_cast<std::uint64_t>(n) + s);
      const auto pt = ora::partial_transpose(ora::embed_two_site(thermal::thermal_two_site(e)), {0});
      const bool dense = ora::min_eigenvalue(pt) < -1e-12;
      o.require(dense == thermal::thermal_inseparable(e), fmt("n=%g seed=%g", static_cast<double>(n), static_cast<double>(s)));
      ++cases;
    }
    std::vector<double> p(static_cast<std::size_t>(n + 1), 0.0);
    p.front() = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    p.back() = 1.0 - p.front();
    o.require(!thermal::thermal_inseparable(thermal::ThermalEnsemble(n, p)), fmt("{0,n} at n=%g", static_cast<double>(n)));
  }
  if (o.ok) o.detail = std::to_string(cases) + " random ensembles";
  return o;
}

Outcome mixed_decay() {
  Outcome o;
  std::vector<std::int64_t> grid;
  for (double x = 10; x < 10000; x *= 1.6) grid.push_back(std::llround(x));
  grid.push_back(10000);
  double worst = 0.0, prev = INFINITY;
  for (auto n : grid) {
    const double b = thermal::ree_upper_bound(thermal::ThermalEnsemble::uniform(n));
    const double nd = static_cast<double>(n);
    const double ratio = b * nd / std::log2(nd);
    worst = std::max(worst, ratio);
    o.require(ratio <= 1.0, fmt("n=%g ratio %.6g", nd, ratio));
    if (n >= 100) {
      o.require(b < prev, fmt("n=%g bound %.6g not below %.6g", nd, b, prev));
      prev = b;
    }
  }
  if (o.ok) o.detail = fmt("max n E/log2 n = %.6f", worst);
  return o;
}

Outcome mixed_odlro() {
  Outcome o;
  for (std::int64_t n : {1, 2, 3, 10, 999, 10000}) {
    const double nd = static_cast<double>(n);
    const double v = thermal::odlro_mixture(thermal::ThermalEnsemble::uniform(n));
    o.require(std::abs(v - (0.5 - (2 * nd + 1) / (6 * nd))) <= 1e-14, fmt("n=%g: %.17g", nd, v));
  }
  const double v = thermal::odlro_mixture(thermal::ThermalEnsemble::uniform(10000));
  o.require(std::abs(v - 1.0 / 6) <= 1e-3, fmt("n=1e4: %.9f", v));
  return o;
}

Outcome variational() {
  Outcome o;
  std::mt19937_64 rng(12);
  double worst_fd = 0.0, lowest = INFINITY;
  int samples = 0;
  while (samples < 10000) {
    for (std::int64_t n = 2; n <= 10 && samples < 10000; ++n) {
      for (std::int64_t k = 1; k < n && samples < 10000; ++k) {
        const auto w = ora::random_product(2, rng);
        const double d = ora::variational_check(n, k, w);
        const double fd = ora::variational_check_fd(n, k, w);
        lowest = std::min(lowest, d);
        worst_fd = std::max(worst_fd, std::abs(d - fd));
        ++samples;
      }
    }
  }
  o.require(lowest >= -1e-12, fmt("min derivative %.3e", lowest));
  o.require(worst_fd <= 1e-4, fmt("max fd mismatch %.3e", worst_fd));
  if (o.ok) o.detail = fmt("min %.3e, fd mismatch %.3e", lowest, worst_fd);
  return o;
}

Outcome phase_invariance() {
  Outcome o;
  double worst = 0.0;
  for (int n = 1; n <= 6; ++n) {
    for (int k = 0; k <= n; ++k) {
      const double base = ora::relative_entropy(ora::projector(ora::dicke_vector(n, k)), ora::closest_state_dense(n, k));
      for (int t = 1; t <= 8; ++t) {
        const double theta = 0.37 * t;
        const double v = ora::relative_entropy(ora::projector(ora::dicke_vector(n, k, theta)),
                                               ora::closest_state_dense(n, k, theta));
        worst = std::max(worst, std::abs(v - base));
      }
    }
  }
  o.require(worst <= 1e-6, fmt("max deviation %.3e", worst));
  if (o.ok) o.detail = fmt("max deviation %.2e", worst);
  return o;
}

Outcome qutrit() {
  Outcome o;
  double worst = 0.0;
  int cases = 0;
  for (std::int64_t n = 1; n <= 4; ++n) {
    for (std::int64_t a = 0; a <= n; ++a) {
      for (std::int64_t b = 0; a + b <= n; ++b) {
        const std::vector<std::int64_t> counts = {a, b, n - a - b};
        const auto psi = ora::projector(ora::generalized_dicke_vector(counts));
        const double dense = ora::relative_entropy(psi, ora::dense_generalized(counts));
        worst = std::max(worst, std::abs(dense - ree_pure_generalized(GeneralizedDickeState(counts))));
        ++cases;
      }
    }
  }
  o.require(worst <= 1e-6, fmt("max deviation %.3e", worst));
  if (o.ok) o.detail = std::to_string(cases) + fmt(" count vectors, max dev %.2e", worst);
  return o;
}

Outcome critical() {
  Outcome o;
  const double t = thermal::critical_temperature({1.0, 0.2}).kelvin;
  o.require(std::abs(t - 78.0) <= 1.0, fmt("T_c = %.6f K", t));
  if (o.ok) o.detail = fmt("T_c = %.6f K", t);
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "Bell anchor", 1e-3, bell_anchor},
      {2, "closed form vs dense oracle", 120, closed_vs_dense},
      {3, "partial-transpose agreement", 10, ppt_agreement},
      {4, "logarithmic scaling", 5, log_scaling},
      {5, "two-site decay", 60, two_site_decay},
      {6, "crossover", 5, crossover},
      {7, "classical correlations", 10, classical},
      {8, "mutual information", 1, mutual_information},
      {9, "thermal separability", 30, thermal_separability},
      {10, "mixed-state decay", 30, mixed_decay},
      {11, "mixed ODLRO", 1, mixed_odlro},
      {12, "variational minimality", 60, variational},
      {13, "phase invariance", 60, phase_invariance},
      {14, "qutrit closed form", 60, qutrit},
      {15, "critical temperature", 1e-3, critical},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = s <= c.limit_seconds;
    const bool pass = o.ok && in_time;
    failures += pass ? 0 : 1;
    std::string detail = o.detail;
    if (!in_time) detail += (detail.empty() ? "" : "; ") + fmt("took %.3fs, limit %gs", s, c.limit_seconds);
    std::printf("%s criterion %2d: %-28s %.3fs%s%s\n", pass ? "PASS" : "FAIL", c.id, c.name, s,
                detail.empty() ? "" : "  ", detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures;
}
