#include <doctest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <numbers>

#include "dickeent/dicke_core.hpp"
#include "dickeent/oracle.hpp"
#include "near.hpp"

using namespace dickeent;
namespace ora = dickeent::oracle;

namespace {

// ln C(n, k) from an exact big-integer binomial, split to keep the conversion in range.
double big_log_binomial(int n, int k) {
  using boost::multiprecision::cpp_int;
  cpp_int num = 1;
  for (int i = 0; i < k; ++i) num = num * (n - i) / (i + 1);
  int shift = 0;
  while (num > cpp_int(1) << 900) {
    num >>= 100;
    shift += 100;
  }
  return std::log(num.convert_to<double>()) + shift * std::numbers::ln2;
}

}  // namespace

TEST_CASE("log_binomial small values and edges") {
  CHECK(near(log_binomial(4, 2), std::log(6.0), 1e-15));
  for (int n = 0; n < 30; ++n) CHECK(log_binomial(n, 0) == 0.0);
  CHECK_THROWS_AS(log_binomial(5, 6), std::domain_error);
  CHECK_THROWS_AS(log_binomial(5, -1), std::domain_error);
}

TEST_CASE("log_binomial against exact big-integer binomials") {
  CHECK(rel_near(log_binomial(1000, 500), big_log_binomial(1000, 500), 1e-12));
  for (int n : {64, 100, 257, 1000, 4096}) {
    for (int k : {1, 2, 7, 15, 16, 17, 40, n / 3, n / 2}) {
      if (k > n) continue;
      INFO("n=" << n << " k=" << k);
      CHECK(rel_near(log_binomial(n, k), big_log_binomial(n, k), 1e-12));
    }
  }
}

TEST_CASE("exact_binomial cross-check") {
  CHECK(exact_binomial(4, 2) == 6);
  CHECK(exact_binomial(62, 31) == 465428353255261088ULL);
  CHECK(exact_binomial(5, 7) == 0);
  for (int n = 1; n <= 60; ++n) {
    for (int k = 1; k < n; ++k) {
      CHECK(rel_near(log_binomial(n, k), std::log(static_cast<double>(exact_binomial(n, k))), 1e-13));
    }
  }
}

TEST_CASE("stirling remainder and log factorial") {
  for (std::int64_t m : {1, 2, 5, 9, 10, 11, 50, 1000}) {
    INFO("m=" << m);
    if (m > 1) CHECK(rel_near(log_factorial(m), std::lgamma(static_cast<double>(m) + 1.0), 1e-14));
    const double md = static_cast<double>(m);
    const double stirling = (md + 0.5) * std::log(md) - md + 0.5 * std::log(2.0 * std::numbers::pi);
    CHECK(near(stirling_remainder(m), std::lgamma(md + 1.0) - stirling, 1e-12));
  }
  // delta(m) ~ 1/(12 m) for large m
  CHECK(rel_near(stirling_remainder(1000000), 1.0 / 12e6, 1e-6));
}

TEST_CASE("DickeState and friends validate their invariants") {
  CHECK_THROWS_AS(DickeState(0, 0), std::domain_error);
  CHECK_THROWS_AS(DickeState(3, 4), std::domain_error);
  CHECK_THROWS_AS(DickeState(3, -1), std::domain_error);
  CHECK(DickeState(4, 1).filling() == 0.25);
  CHECK_THROWS_AS(PhasedDickeState(DickeState(3, 1), std::nan("")), std::domain_error);
  CHECK_THROWS_AS(GeneralizedDickeState({2}), std::domain_error);
  CHECK_THROWS_AS(GeneralizedDickeState({1, -1, 2}), std::domain_error);
  CHECK_THROWS_AS(GeneralizedDickeState({0, 0}), std::domain_error);
  CHECK(GeneralizedDickeState({1, 2, 0}).n() == 3);
  CHECK_THROWS_AS(TwoSiteState::make(0.5, 0.5, 0.1), std::domain_error);
  CHECK_THROWS_AS(TwoSiteState::make(-0.1, 0.6, 0.25), std::domain_error);
  CHECK_NOTHROW(TwoSiteState::make(0.25, 0.25, 0.25));
  CHECK_THROWS_AS(DickeDiagonal(2, {0.5, 0.5}), std::domain_error);
  CHECK_THROWS_AS(DickeDiagonal(1, {0.5, 0.6}), std::domain_error);
}

TEST_CASE("reduced_two_site examples") {
  auto t = reduced_two_site(DickeState(4, 2));
  CHECK(near(t.a, 1.0 / 6, 1e-15));
  CHECK(near(t.b, 1.0 / 6, 1e-15));
  CHECK(near(t.c, 1.0 / 3, 1e-15));
  t = reduced_two_site(DickeState(2, 0));
  CHECK(t.a == 0.0);
  CHECK(t.b == 1.0);
  CHECK(t.c == 0.0);
  t = reduced_two_site(DickeState(3, 1));
  CHECK(t.a == 0.0);
  CHECK(near(t.b, 1.0 / 3, 1e-15));
  CHECK(near(t.c, 1.0 / 3, 1e-15));
  CHECK_THROWS_AS(reduced_two_site(DickeState(1, 0)), std::domain_error);
  for (int n = 2; n <= 200; ++n) {
    for (int k = 0; k <= n; ++k) {
      const auto s = reduced_two_site(DickeState(n, k));
      CHECK(near(s.a + s.b + 2 * s.c, 1.0, 1e-12));
    }
  }
}

TEST_CASE("reduced two-site state is the same for every pair of sites") {
  const auto psi = ora::projector(ora::dicke_vector(6, 2));
  const auto ref = ora::embed_two_site(reduced_two_site(DickeState(6, 2)));
  for (auto pair : {std::vector<int>{0, 1}, {2, 5}, {1, 4}}) {
    const auto m = ora::partial_trace(psi, pair);
    CHECK((m.matrix() - ref.matrix()).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("reduced_l examples") {
  const auto two = reduced_l(DickeState(4, 2), 2);
  const auto t = reduced_two_site(DickeState(4, 2));
  CHECK(near(two.weight(0), t.b, 1e-15));
  CHECK(near(two.weight(1), 2 * t.c, 1e-15));
  CHECK(near(two.weight(2), t.a, 1e-15));

  const auto full = reduced_l(DickeState(4, 2), 4);
  CHECK(full.weight(2) == doctest::Approx(1.0));
  CHECK(full.weight(0) == 0.0);
  CHECK(full.weight(4) == 0.0);

  const auto dense = ora::dicke_projection(ora::partial_trace(ora::projector(ora::dicke_vector(8, 3)), {0, 1, 2}));
  const auto w = reduced_l(DickeState(8, 3), 3);
  CHECK(dense.off_diagonal <= 1e-10);
  for (int i = 0; i <= 3; ++i) CHECK(near(w.weight(i), dense.weights[static_cast<std::size_t>(i)], 1e-10));

  CHECK_THROWS_AS(reduced_l(DickeState(4, 2), 0), std::domain_error);
  CHECK_THROWS_AS(reduced_l(DickeState(4, 2), 5), std::domain_error);
}

TEST_CASE("reduced_l hypergeometric weights at large n") {
  // C(l,i) C(n-l,k-i) / C(n,k) with l = 3: exact rationals for n = 10^6, k = 3 * 10^5.
  const double n = 1e6, k = 3e5, l = 3;
  const auto w = reduced_l(DickeState(1000000, 300000), 3);
  const double p3 = k * (k - 1) * (k - 2) / (n * (n - 1) * (n - 2));
  const double p0 = (n - k) * (n - k - 1) * (n - k - 2) / (n * (n - 1) * (n - 2));
  CHECK(rel_near(w.weight(3), p3, 1e-12));
  CHECK(rel_near(w.weight(0), p0, 1e-12));
  (void)l;
}

TEST_CASE("closest_separable_diagonal examples") {
  const auto w = closest_separable_diagonal(2, 1, 2);
  CHECK(near(w.weight(0), 0.25, 1e-15));
  CHECK(near(w.weight(1), 0.5, 1e-15));
  CHECK(near(w.weight(2), 0.25, 1e-15));

  for (int n : {3, 7}) {
    for (int l = 1; l <= n; ++l) {
      const auto z = closest_separable_diagonal(n, 0, l);
      CHECK(z.weight(0) == 1.0);
      const auto f = closest_separable_diagonal(n, n, l);
      CHECK(f.weight(l) == 1.0);
    }
  }

  // (6, 2, 3): binomial(3, 1/3) over the number of ones; also the dense construction.
  const auto b = closest_separable_diagonal(6, 2, 3);
  const double r = 1.0 / 3;
  for (int i = 0; i <= 3; ++i) {
    const double expect = static_cast<double>(exact_binomial(3, i)) * std::pow(r, i) * std::pow(1 - r, 3 - i);
    CHECK(near(b.weight(i), expect, 1e-15));
  }
  const auto dense = ora::dicke_projection(ora::partial_trace(ora::closest_state_dense(6, 2), {0, 1, 2}));
  CHECK(dense.off_diagonal <= 1e-10);
  for (int i = 0; i <= 3; ++i) CHECK(near(b.weight(i), dense.weights[static_cast<std::size_t>(i)], 1e-10));

  CHECK_THROWS_AS(closest_separable_diagonal(6, 2, 7), std::domain_error);
}

TEST_CASE("closed reduced weights match the dense partial trace for n <= 8") {
  for (int n = 1; n <= 8; ++n) {
    for (int k = 0; k <= n; ++k) {
      const auto psi = ora::projector(ora::dicke_vector(n, k));
      const auto rho = ora::closest_state_dense(n, k);
      std::vector<int> keep;
      for (int l = 1; l <= n; ++l) {
        keep.push_back(l - 1);
        INFO("n=" << n << " k=" << k << " l=" << l);
        const auto ps = ora::dicke_projection(ora::partial_trace(psi, keep));
        const auto pr = ora::dicke_projection(ora::partial_trace(rho, keep));
        const auto ws = reduced_l(DickeState(n, k), l);
        const auto wr = closest_separable_diagonal(n, k, l);
        CHECK(ps.off_diagonal <= 1e-10);
        CHECK(pr.off_diagonal <= 1e-10);
        for (int i = 0; i <= l; ++i) {
          CHECK(near(ps.weights[static_cast<std::size_t>(i)], ws.weight(i), 1e-10));
          CHECK(near(pr.weights[static_cast<std::size_t>(i)], wr.weight(i), 1e-10));
        }
      }
    }
  }
}

TEST_CASE("dephase_equivalent") {
  CHECK(dephase_equivalent(PhasedDickeState(DickeState(3, 1), std::numbers::pi / 7)) == DickeState(3, 1));
  CHECK(dephase_equivalent(PhasedDickeState(DickeState(4, 2), 0.0)) == DickeState(4, 2));
}

TEST_CASE("entropy helpers") {
  CHECK(binary_entropy(0.5) == 1.0);
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(near(binary_entropy(0.25), 2.0 - 0.75 * std::log2(3.0), 1e-15));
  const std::vector<double> p = {0.5, 0.25, 0.25};
  CHECK(near(shannon_entropy(p), 1.5, 1e-15));
  CHECK(xlogx(0.0) == 0.0);
}
