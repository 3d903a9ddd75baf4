#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dickeent/correlations.hpp"
#include "dickeent/measures.hpp"
#include "dickeent/oracle.hpp"
#include "near.hpp"

using namespace dickeent;
namespace ora = dickeent::oracle;

namespace {

// The (a, b, c) form of the two-site classical correlation as printed alongside the r form.
double classical_abc_form(double a, double b, double c) {
  auto xl = [](double x) { return x > 0 ? x * std::log2(x) : 0.0; };
  return -xl(a) - xl(b) - xl(c) + 0.5 * (xl(a + c / 2) + xl(b + c / 2));
}

}  // namespace

TEST_CASE("classical_correlation_closed") {
  CHECK(near(classical_correlation_closed(0.5), 0.5, 1e-9));
  CHECK(classical_correlation_closed(0.0) == 0.0);
  CHECK(classical_correlation_closed(1.0) == 0.0);
  // 13/8 - (3/4) log2 3, evaluated independently in mpmath.
  CHECK(near(classical_correlation_closed(0.25), 0.43627812445913286, 1e-14));
  CHECK(near(classical_correlation_closed(0.25), 13.0 / 8 - 0.75 * std::log2(3.0), 1e-14));
  for (int i = 0; i <= 1000; ++i) {
    const double r = i / 1000.0;
    CHECK(near(classical_correlation_closed(r), classical_correlation_closed(1.0 - r), 1e-12));
  }
  CHECK_THROWS_AS(classical_correlation_closed(1.5), std::domain_error);
}

TEST_CASE("the (a, b, c) form disagrees with the r form at a = b = c = 1/4") {
  const double abc = classical_abc_form(0.25, 0.25, 0.25);
  CHECK(near(abc, 1.5 + 0.375 * std::log2(0.375), 1e-14));
  CHECK(std::abs(abc - classical_correlation_closed(0.5)) > 0.4);
}

TEST_CASE("classical_correlation_measured") {
  CHECK(near(classical_correlation_measured(TwoSiteState::make(1, 0, 0)).bits, 0.0, 1e-12));
  CHECK(near(classical_correlation_measured(TwoSiteState::make(0, 0, 0.5)).bits, 1.0, 1e-9));
  // Independent numpy/Nelder-Mead: 1 - H2(1/4) at an equatorial measurement.
  const auto m = classical_correlation_measured(TwoSiteState::make(0.25, 0.25, 0.25));
  CHECK(near(m.bits, 0.1887218755408675, 1e-9));
  CHECK(near(m.bits, 1.0 - binary_entropy(0.25), 1e-9));
  CHECK(near(std::cos(m.theta), 0.0, 1e-6));
  CHECK(m.bits > 0.1);
  CHECK(m.bits < classical_correlation_closed(0.5));
}

TEST_CASE("measured classical correlation is positive whenever the pair is entangled") {
  for (int n = 2; n <= 50; ++n) {
    for (int k = 1; k < n; ++k) {
      REQUIRE(is_two_site_entangled(n, k));
      CHECK(classical_correlation_measured(reduced_two_site(DickeState(n, k))).bits > 0.0);
    }
  }
}

TEST_CASE("odlro") {
  CHECK(odlro(2, 1) == 0.5);
  // brute force <10|rho|01> on the explicit n = 2 vector
  const auto two = ora::projector(ora::dicke_vector(2, 1));
  CHECK(near(std::abs(two(1, 2)), 0.5, 1e-15));
  CHECK(odlro(7, 0) == 0.0);
  CHECK(std::abs(odlro(10000, 5000) - 0.25) < 1e-4);
  for (int n = 2; n <= 100; ++n) {
    for (int k = 0; k <= n; ++k) CHECK(odlro(n, k) == reduced_two_site(DickeState(n, k)).c);
  }
  CHECK_THROWS_AS(odlro(1, 0), std::domain_error);
}

TEST_CASE("max_singlet_fraction and linearity") {
  CHECK(max_singlet_fraction(TwoSiteState::make(0, 0, 0.5)) == 0.5);
  CHECK(max_singlet_fraction(TwoSiteState::make(1, 0, 0)) == 0.0);
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 40);
    std::vector<double> p(static_cast<std::size_t>(n + 1));
    std::vector<TwoSiteState> ts;
    double sum = 0.0;
    for (auto& x : p) sum += (x = std::exponential_distribution<double>(1.0)(rng));
    double direct = 0.0;
    for (int k = 0; k <= n; ++k) {
      p[static_cast<std::size_t>(k)] /= sum;
      ts.push_back(reduced_two_site(DickeState(n, k)));
      direct += p[static_cast<std::size_t>(k)] * max_singlet_fraction(ts.back());
    }
    CHECK(near(max_singlet_fraction(mix_two_site(p, ts)), direct, 1e-15));
  }
}

TEST_CASE("mutual_information_pure") {
  CHECK(mutual_information_pure(4, 2) == 4.0);
  CHECK(mutual_information_pure(9, 0) == 0.0);
  CHECK(near(mutual_information_pure(6, 2), 5.5097750043269370887, 1e-12));
  const auto psi = ora::projector(ora::dicke_vector(6, 2));
  CHECK(near(ora::relative_entropy(psi, ora::product_of_marginals(psi)), mutual_information_pure(6, 2), 1e-9));
  for (int n = 1; n <= 1000; n += (n < 50 ? 1 : 37)) {
    for (int k = 0; k <= n; ++k) CHECK(mutual_information_pure(n, k) >= ree_pure(n, k) - 1e-12);
    if (n % 2 == 0) CHECK(mutual_information_pure(n, n / 2) == static_cast<double>(n));
  }
}

TEST_CASE("correlation_report") {
  const auto r = correlation_report(4, 2);
  CHECK(r.e12 == ree_two_site(4, 2));
  CHECK(r.classical == classical_correlation_closed(0.5));
  CHECK(r.mutual == 4.0);
  CHECK(r.odlro == odlro(4, 2));
  CHECK(r.entangled);
}
