#include "dickeent/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "dickeent/correlations.hpp"
#include "dickeent/dicke_core.hpp"
#include "dickeent/measures.hpp"
#include "dickeent/oracle.hpp"
#include "dickeent/parallel.hpp"
#include "dickeent/thermal.hpp"

namespace dickeent::verify {

namespace {

namespace ora = dickeent::oracle;

class Tally {
 public:
  Tally(std::string name, double tol) { r_.name = std::move(name), r_.tolerance = tol; }

  // Records one case with absolute error err; fails when err > tolerance.
  void error(double err, const std::string& where) {
    ++r_.cases;
    if (!(err <= r_.tolerance)) {
      if (r_.passed) r_.detail = where;
      r_.passed = false;
    }
    if (std::isnan(err) || err > r_.max_error) r_.max_error = err;
  }

  void require(bool ok, const std::string& where) { error(ok ? 0.0 : std::numeric_limits<double>::infinity(), where); }

  CheckResult skip(std::string why) {
    r_.skipped = true;
    r_.detail = std::move(why);
    return r_;
  }

  CheckResult done() const { return r_; }

 private:
  CheckResult r_;
};

std::string at(std::initializer_list<std::pair<const char*, double>> kv) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : kv) {
    os << (first ? "" : " ") << k << '=' << v;
    first = false;
  }
  return os.str();
}

std::mt19937_64 rng_for(std::uint64_t seed, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), stream};
  return std::mt19937_64(seq);
}

int dense_n(const Options& o) { return std::clamp(o.max_n, 1, 8); }

ora::DenseHermitian dicke_projector(int n, int k, double theta = 0.0) {
  return ora::projector(ora::dicke_vector(n, k, theta));
}

std::vector<int> first_sites(int l) {
  std::vector<int> s(static_cast<std::size_t>(l));
  for (int i = 0; i < l; ++i) s[static_cast<std::size_t>(i)] = i;
  return s;
}

CheckResult bell_anchor(const Options&) {
  Tally t("bell_anchor", 1e-10);
  t.error(std::abs(ree_pure(2, 1) - 1.0), "ree_pure(2,1)");
  t.error(std::abs(ree_two_site(2, 1) - 1.0), "ree_two_site(2,1)");
  const auto bell = dicke_projector(2, 1);
  t.error(std::abs(ora::relative_entropy(bell, ora::closest_state_dense(2, 1)) - 1.0), "dense ree of psi+");
  t.error(std::abs(ora::min_eigenvalue(ora::partial_transpose(bell, {1})) + 0.5), "PT spectrum of psi+");
  t.error(std::abs(ora::von_neumann_entropy(ora::partial_trace(bell, {0})) - 1.0), "marginal entropy of psi+");
  return t.done();
}

CheckResult bell_numeric(const Options& o) {
  Tally t("bell_numeric", 1e-4);
  const TwoSiteState bell{0.0, 0.0, 0.5};
  t.error(std::abs(ora::ree_numeric_two_site(bell, o.seed, o.numeric_restarts) - 1.0), "numeric ree of psi+");
  return t.done();
}

CheckResult binomial_exact(const Options&) {
  Tally t("binomial_exact", 1e-13);
  for (int n = 0; n <= 62; ++n) {
    for (int k = 0; k <= n; ++k) {
      const double exact = std::log(static_cast<double>(exact_binomial(n, k)));
      t.error(std::abs(log_binomial(n, k) - exact) / std::max(1.0, exact), at({{"n", n}, {"k", k}}));
    }
  }
  return t.done();
}

CheckResult pure_vs_dense(const Options& o) {
  Tally t("pure_vs_dense", 1e-9);
  for (int n = 1; n <= dense_n(o); ++n) {
    for (int k = 0; k <= n; ++k) {
      const double dense = ora::relative_entropy(dicke_projector(n, k), ora::closest_state_dense(n, k));
      t.error(std::abs(dense - ree_pure(n, k)), at({{"n", n}, {"k", k}}));
    }
  }
  return t.done();
}

CheckResult block_vs_dense(const Options& o, bool weights) {
  Tally t(weights ? "block_weights_vs_dense" : "block_ree_vs_dense", weights ? 1e-10 : 1e-9);
  for (int n = 1; n <= dense_n(o); ++n) {
    for (int k = 0; k <= n; ++k) {
      const auto sigma = dicke_projector(n, k);
      const auto rho = ora::closest_state_dense(n, k);
      for (int l = 1; l <= n; ++l) {
        const auto where = at({{"n", n}, {"k", k}, {"l", l}});
        const auto sigma_l = ora::partial_trace(sigma, first_sites(l));
        if (weights) {
          const auto proj = ora::dicke_projection(sigma_l);
          const auto closed = reduced_l(DickeState(n, k), l);
          double err = proj.off_diagonal;
          for (int i = 0; i <= l; ++i) {
            err = std::max(err, std::abs(proj.weights[static_cast<std::size_t>(i)] -
                                         closed.weights()[static_cast<std::size_t>(i)]));
          }
          t.error(err, where);
        } else {
          const auto rho_l = ora::partial_trace(rho, first_sites(l));
          t.error(std::abs(ora::relative_entropy(sigma_l, rho_l) - ree_l(n, k, l)), where);
        }
      }
    }
  }
  return t.done();
}

CheckResult closest_state_diagonal(const Options& o) {
  Tally t("closest_state_diagonal", 1e-12);
  for (int n = 1; n <= dense_n(o); ++n) {
    for (int k = 0; k <= n; ++k) {
      const auto where = at({{"n", n}, {"k", k}});
      const auto rho = ora::closest_state_dense(n, k);
      const auto proj = ora::dicke_projection(rho);
      const auto closed = closest_separable_diagonal(n, k, n);
      double err = proj.off_diagonal;
      for (int i = 0; i <= n; ++i) {
        err = std::max(err, std::abs(proj.weights[static_cast<std::size_t>(i)] -
                                     closed.weights()[static_cast<std::size_t>(i)]));
      }
      t.error(err, where);
      // n + 1 phase points already give the exact phase average.
      const auto fine = ora::closest_state_dense(n, k, 0.0, 2 * (n + 1));
      t.error((fine.matrix() - rho.matrix()).cwiseAbs().maxCoeff(), where + " doubled phase grid");
    }
  }
  return t.done();
}

CheckResult two_site_partial_trace(const Options& o) {
  Tally t("two_site_partial_trace", 1e-12);
  for (int n = 2; n <= dense_n(o); ++n) {
    for (int k = 0; k <= n; ++k) {
      const auto dense = ora::partial_trace(dicke_projector(n, k), {0, 1});
      const auto closed = ora::embed_two_site(reduced_two_site(DickeState(n, k)));
      t.error((dense.matrix() - closed.matrix()).cwiseAbs().maxCoeff(), at({{"n", n}, {"k", k}}));
    }
  }
  return t.done();
}

CheckResult ppt_agreement(const Options& o) {
  Tally t("ppt_agreement", 0.0);
  for (int n = 2; n <= std::max(2, o.two_site_max_n); ++n) {
    for (int k = 0; k <= n; ++k) {
      const auto rho = ora::embed_two_site(reduced_two_site(DickeState(n, k)));
      const bool dense = ora::min_eigenvalue(ora::partial_transpose(rho, {1})) < -1e-12;
      t.require(dense == is_two_site_entangled(n, k), at({{"n", n}, {"k", k}}));
    }
  }
  return t.done();
}

CheckResult entropy_vs_dense(const Options& o) {
  Tally t("entropy_vs_dense", 1e-10);
  for (int n = 2; n <= dense_n(o); ++n) {
    for (int k = 0; k <= n; ++k) {
      const auto sigma = dicke_projector(n, k);
      t.error(std::abs(ora::von_neumann_entropy(ora::partial_trace(sigma, {0})) - entropy_one_vs_rest(n, k)),
              at({{"n", n}, {"k", k}, {"l", 1}}));
      for (int l = 1; l <= n - 1; ++l) {
        const double dense = ora::von_neumann_entropy(ora::partial_trace(sigma, first_sites(l)));
        t.error(std::abs(dense - entropy_block(n, k, l)), at({{"n", n}, {"k", k}, {"l", l}}));
      }
    }
  }
  return t.done();
}

CheckResult mutual_information_dense(const Options& o) {
  Tally t("mutual_information_dense", 1e-9);
  for (int n = 1; n <= dense_n(o); ++n) {
    for (int k = 0; k <= n; ++k) {
      const auto sigma = dicke_projector(n, k);
      const double dense = ora::relative_entropy(sigma, ora::product_of_marginals(sigma));
      t.error(std::abs(dense - mutual_information_pure(n, k)), at({{"n", n}, {"k", k}}));
    }
  }
  return t.done();
}

CheckResult phase_invariance(const Options& o) {
  Tally t("phase_invariance", 1e-9);
  auto rng = rng_for(o.seed, 11);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  for (int n = 1; n <= std::min(dense_n(o), 6); ++n) {
    for (int s = 0; s < 8; ++s) {
      const double theta = angle(rng);
      for (int k = 0; k <= n; ++k) {
        const double dense =
            ora::relative_entropy(dicke_projector(n, k, theta), ora::closest_state_dense(n, k, theta));
        t.error(std::abs(dense - ree_pure(n, k)), at({{"n", n}, {"k", k}, {"theta", theta}}));
      }
    }
  }
  return t.done();
}

CheckResult separable_samples(const Options& o) {
  Tally t("separable_samples", 1e-9);
  std::vector<std::pair<int, int>> cases;
  for (int n = 2; n <= std::min(dense_n(o), 6); ++n) {
    for (int k = 0; k <= n; ++k) cases.emplace_back(n, k);
  }
  // Each sample is a separable state: either a random product mixture blended with the
  // maximally mixed state, or the closed-form closest state blended with a product mixture.
  const auto worst = parallel_map(cases.size(), o.threads, [&](std::size_t c) {
    const auto [n, k] = cases[c];
    auto rng = rng_for(o.seed, static_cast<std::uint32_t>(1000 + c));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const auto sigma = dicke_projector(n, k);
    const auto star = ora::closest_state_dense(n, k);
    const double closed = ree_pure(n, k);
    const auto dim = star.dim();
    const ora::DenseHermitian flat(ora::Matrix::Identity(dim, dim) / static_cast<double>(dim));
    double err = 0.0;
    for (int s = 0; s < o.separable_samples; ++s) {
      const auto terms = ora::random_separable(n, 8, rng);
      const auto prod = ora::separable_state(terms);
      const double x = u(rng);
      const auto rho = s % 2 == 0 ? ora::mix(0.5 * x + 1e-3, prod, flat) : ora::mix(0.5 * x, star, prod);
      err = std::max(err, closed - ora::relative_entropy(sigma, rho));
    }
    return err;
  });
  for (std::size_t c = 0; c < cases.size(); ++c) {
    t.error(std::max(0.0, worst[c]), at({{"n", cases[c].first}, {"k", cases[c].second}}));
  }
  return t.done();
}

CheckResult numeric_two_site(const Options& o) {
  Tally t("numeric_two_site", 1e-4);
  std::vector<std::pair<int, int>> cases = {{2, 0}, {2, 1}, {3, 1}};
  for (int n = 4; n <= std::min(std::max(dense_n(o), 3), 6); ++n) {
    for (int k = 1; k <= n / 2; ++k) cases.emplace_back(n, k);
  }
  const auto found = parallel_map(cases.size(), o.threads, [&](std::size_t c) {
    const auto [n, k] = cases[c];
    return ora::ree_numeric_two_site(reduced_two_site(DickeState(n, k)), o.seed + c, o.numeric_restarts);
  });
  for (std::size_t c = 0; c < cases.size(); ++c) {
    const auto [n, k] = cases[c];
    const double closed = ree_two_site(n, k);
    const auto where = at({{"n", n}, {"k", k}, {"numeric", found[c]}, {"closed", closed}});
    // Product states must be found essentially exactly; nothing may undercut the closed form.
    t.error(k == 0 ? found[c] * 1e4 : std::abs(found[c] - closed), where);
    t.require(found[c] >= closed - 1e-6, where);
  }
  return t.done();
}

CheckResult variational(const Options& o, bool finite_difference) {
  Tally t(finite_difference ? "variational_fd" : "variational_sign", finite_difference ? 1e-4 : 1e-12);
  std::vector<std::pair<int, int>> grid;
  for (int n = 2; n <= 10; ++n) {
    for (int k = 1; k <= n - 1; ++k) grid.emplace_back(n, k);
  }
  auto rng = rng_for(o.seed, finite_difference ? 22 : 21);
  std::uniform_int_distribution<std::size_t> pick(0, grid.size() - 1);
  const int samples = o.variational_samples;
  for (int s = 0; s < samples; ++s) {
    const auto [n, k] = grid[pick(rng)];
    const auto omega = ora::random_product(2, rng);
    const double d = ora::variational_check(n, k, omega);
    const auto where = at({{"n", n}, {"k", k}, {"sample", s}});
    if (finite_difference) {
      t.error(std::abs(d - ora::variational_check_fd(n, k, omega)), where);
    } else {
      t.error(std::max(0.0, -d), where);
    }
  }
  return t.done();
}

CheckResult thermal_ppt(const Options& o) {
  Tally t("thermal_ppt", 0.0);
  for (int n = 2; n <= std::min(std::max(2, o.two_site_max_n), 30); ++n) {
    auto check = [&](const thermal::ThermalEnsemble& e, const std::string& where) {
      const auto rho = ora::embed_two_site(thermal::thermal_two_site(e));
      const bool dense = ora::min_eigenvalue(ora::partial_transpose(rho, {1})) < -1e-12;
      t.require(dense == thermal::thermal_inseparable(e), where);
    };
    for (int s = 0; s < 100; ++s) {
      check(thermal::random_ensemble(n, o.seed * 1000003u + static_cast<std::uint64_t>(n * 100 + s)),
            at({{"n", n}, {"ensemble", s}}));
    }
    std::vector<double> ends(static_cast<std::size_t>(n) + 1, 0.0);
    ends.front() = 0.3;
    ends.back() = 0.7;
    const thermal::ThermalEnsemble edge(n, ends);
    check(edge, at({{"n", n}, {"support", 0}}));
    t.require(!thermal::thermal_inseparable(edge), at({{"n", n}, {"support {0,n} separable", 0}}));
  }
  return t.done();
}

CheckResult thermal_dense(const Options& o) {
  Tally t("thermal_dense", 1e-9);
  for (int n = 2; n <= dense_n(o); ++n) {
    std::vector<thermal::ThermalEnsemble> ens = {thermal::ThermalEnsemble::uniform(n),
                                                 thermal::random_ensemble(n, o.seed + static_cast<std::uint64_t>(n))};
    for (std::size_t e = 0; e < ens.size(); ++e) {
      const auto& en = ens[e];
      ora::Matrix acc = ora::Matrix::Zero(std::int64_t{1} << n, std::int64_t{1} << n);
      ora::Matrix ref = acc;
      for (int k = 0; k <= n; ++k) {
        if (en.p(k) == 0.0) continue;
        acc += en.p(k) * dicke_projector(n, k).matrix();
        ref += en.p(k) * ora::closest_state_dense(n, k).matrix();
      }
      const ora::DenseHermitian sigma(acc);
      const ora::DenseHermitian reference(ref);
      const auto where = at({{"n", n}, {"ensemble", static_cast<double>(e)}});
      const auto two = ora::partial_trace(sigma, {0, 1});
      t.error((two.matrix() - ora::embed_two_site(thermal::thermal_two_site(en)).matrix()).cwiseAbs().maxCoeff(),
              where + " two-site");
      t.error(std::abs(ora::relative_entropy(sigma, ora::product_of_marginals(sigma)) -
                       thermal::mutual_information_mixture(en)),
              where + " mutual information");
      t.error(std::abs(ora::relative_entropy(sigma, reference) - thermal::ree_upper_bound(en)),
              where + " upper bound");
    }
  }
  return t.done();
}

CheckResult thermal_bound_point_mass(const Options&) {
  Tally t("thermal_bound_point_mass", 1e-12);
  for (int n = 1; n <= 50; ++n) {
    for (int k = 0; k <= n; ++k) {
      t.error(std::abs(thermal::ree_upper_bound(thermal::ThermalEnsemble::point_mass(n, k)) - ree_pure(n, k)),
              at({{"n", n}, {"k", k}}));
    }
  }
  return t.done();
}

CheckResult qutrit_dense(const Options& o) {
  Tally t("qutrit_dense", 1e-6);
  for (int n = 1; n <= std::min(dense_n(o), 4); ++n) {
    for (int c0 = 0; c0 <= n; ++c0) {
      for (int c1 = 0; c0 + c1 <= n; ++c1) {
        const std::vector<std::int64_t> counts = {c0, c1, n - c0 - c1};
        const auto psi = ora::projector(ora::generalized_dicke_vector(counts));
        const double dense = ora::relative_entropy(psi, ora::dense_generalized(counts));
        t.error(std::abs(dense - ree_pure_generalized(GeneralizedDickeState(counts))),
                at({{"c0", c0}, {"c1", c1}, {"c2", n - c0 - c1}}));
      }
      const std::vector<std::int64_t> pair = {n - c0, c0};
      const auto d2 = ora::dense_generalized(pair);
      t.error((d2.matrix() - ora::closest_state_dense(n, c0).matrix()).cwiseAbs().maxCoeff(),
              at({{"d", 2}, {"n", n}, {"k", c0}}));
    }
  }
  return t.done();
}

CheckResult crossover_identity(const Options& o) {
  Tally t("crossover_identity", 1e-9);
  if (o.max_n < 3) return t.skip("needs max-n >= 3");
  for (int k = 1; k <= 2; ++k) {
    const auto r = crossover_compare(3, k, 2, SingleSiteTerm::kEntropyWithRest);
    t.error(std::abs(r.sum_lower - r.higher), at({{"n", 3}, {"k", k}}));
  }
  return t.done();
}

CheckResult sum_inequality(const Options&) {
  Tally t("sum_inequality", 0.0);
  for (int n = 2; n <= 200; ++n) {
    for (int k = 0; k <= n; ++k) {
      const auto r = check_sum_inequality(n, k);
      t.require(r.holds && r.bound_holds, at({{"n", n}, {"k", k}}));
    }
  }
  return t.done();
}

CheckResult monotone_chain(const Options&) {
  Tally t("monotone_chain", 1e-12);
  for (int n = 2; n <= 60; ++n) {
    for (int k = 0; k <= n; ++k) {
      const double full = ree_pure(n, k);
      t.error(std::max(0.0, ree_two_site(n, k) - full), at({{"n", n}, {"k", k}}));
      double prev = 0.0;
      for (int l = 1; l <= n; ++l) {
        const double e = ree_l(n, k, l);
        t.error(std::max({0.0, prev - e, e - full, -e}), at({{"n", n}, {"k", k}, {"l", l}}));
        prev = e;
      }
    }
  }
  return t.done();
}

CheckResult classical_positive(const Options& o) {
  Tally t("classical_positive", 0.0);
  for (int n = 2; n <= std::max(2, o.two_site_max_n); ++n) {
    for (int k = 1; k <= n / 2; ++k) {
      if (!is_two_site_entangled(n, k)) continue;
      const auto m = classical_correlation_measured(reduced_two_site(DickeState(n, k)));
      t.require(m.bits > 0.0, at({{"n", n}, {"k", k}}));
    }
  }
  return t.done();
}

struct Entry {
  const char* name;
  std::function<CheckResult(const Options&)> run;
};

const std::vector<Entry>& registry() {
  static const std::vector<Entry> checks = {
      {"bell_anchor", bell_anchor},
      {"bell_numeric", bell_numeric},
      {"binomial_exact", binomial_exact},
      {"pure_vs_dense", pure_vs_dense},
      {"block_weights_vs_dense", [](const Options& o) { return block_vs_dense(o, true); }},
      {"block_ree_vs_dense", [](const Options& o) { return block_vs_dense(o, false); }},
      {"closest_state_diagonal", closest_state_diagonal},
      {"two_site_partial_trace", two_site_partial_trace},
      {"ppt_agreement", ppt_agreement},
      {"entropy_vs_dense", entropy_vs_dense},
      {"mutual_information_dense", mutual_information_dense},
      {"phase_invariance", phase_invariance},
      {"separable_samples", separable_samples},
      {"numeric_two_site", numeric_two_site},
      {"variational_sign", [](const Options& o) { return variational(o, false); }},
      {"variational_fd", [](const Options& o) { return variational(o, true); }},
      {"thermal_ppt", thermal_ppt},
      {"thermal_dense", thermal_dense},
      {"thermal_bound_point_mass", thermal_bound_point_mass},
      {"qutrit_dense", qutrit_dense},
      {"crossover_identity", crossover_identity},
      {"sum_inequality", sum_inequality},
      {"monotone_chain", monotone_chain},
      {"classical_positive", classical_positive},
  };
  return checks;
}

}  // namespace

bool Report::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed || c.skipped; });
}

std::vector<std::string> check_names() {
  std::vector<std::string> out;
  for (const auto& e : registry()) out.emplace_back(e.name);
  return out;
}

Report run(const Options& opts, const std::vector<std::string>& only) {
  for (const auto& name : only) {
    const auto names = check_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) {
      throw std::invalid_argument("unknown check: " + name);
    }
  }
  Report report;
  for (const auto& e : registry()) {
    if (!only.empty() && std::find(only.begin(), only.end(), e.name) == only.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    CheckResult r;
    try {
      r = e.run(opts);
    } catch (const std::exception& ex) {
      r.name = e.name;
      r.passed = false;
      r.detail = std::string("exception: ") + ex.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.checks.push_back(std::move(r));
  }
  return report;
}

void write_report(std::ostream& os, const Report& r, bool timing) {
  int passed = 0, failed = 0, skipped = 0;
  char buf[256];
  for (const auto& c : r.checks) {
    const char* status = c.skipped ? "SKIP" : (c.passed ? "PASS" : "FAIL");
    std::snprintf(buf, sizeof buf, "%s %-26s cases=%-7ld max_err=%.3e tol=%.1e", status, c.name.c_str(), c.cases,
                  c.max_error, c.tolerance);
    os << buf;
    if (timing) {
      std::snprintf(buf, sizeof buf, " time=%.3fs", c.seconds);
      os << buf;
    }
    if (!c.passed || c.skipped) os << "  [" << c.detail << ']';
    os << '\n';
    (c.skipped ? skipped : (c.passed ? passed : failed))++;
  }
  os << "verify: " << passed << " passed, " << failed << " failed, " << skipped << " skipped\n";
}

}  // namespace dickeent::verify
