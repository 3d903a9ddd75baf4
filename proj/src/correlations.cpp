#include "dickeent/correlations.hpp"

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "dickeent/measures.hpp"

namespace dickeent {

namespace {

using Mat2 = Eigen::Matrix2cd;

double log2_or_zero(double x) { return x > 0.0 ? std::log2(x) : 0.0; }

// Entropy (bits) of a 2x2 positive semidefinite matrix scaled by 1/trace.
double entropy2(const Mat2& m) {
  const double tr = m.trace().real();
  if (tr <= 0.0) return 0.0;
  const double det = (m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0)).real() / (tr * tr);
  const double disc = std::sqrt(std::max(0.0, 0.25 - det));
  return binary_entropy(0.5 + disc);
}

class ConditionalEntropy {
 public:
  explicit ConditionalEntropy(const TwoSiteState& t) {
    // Blocks <i_A| rho |j_A> acting on site B; basis |00>, |01>, |10>, |11>.
    blocks_[0][0] << t.b, 0.0, 0.0, t.c;
    blocks_[1][1] << t.c, 0.0, 0.0, t.a;
    blocks_[0][1] << 0.0, 0.0, t.c, 0.0;
    blocks_[1][0] << 0.0, t.c, 0.0, 0.0;
    marginal_entropy_ = entropy2(blocks_[0][0] + blocks_[1][1]);
  }

  double information_gain(double theta, double phi) const {
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    const std::complex<double> e(std::cos(phi), std::sin(phi));
    // Projector onto the Bloch direction (theta, phi) and its complement.
    Mat2 proj;
    proj << 0.5 * (1.0 + ct), 0.5 * st * std::conj(e), 0.5 * st * e, 0.5 * (1.0 - ct);
    const Mat2 ident = Mat2::Identity();
    double gain = marginal_entropy_;
    for (const Mat2& p : {proj, Mat2(ident - proj)}) {
      Mat2 cond = Mat2::Zero();
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) cond += p(j, i) * blocks_[i][j];
      }
      gain -= cond.trace().real() * entropy2(cond);
    }
    return gain;
  }

 private:
  Mat2 blocks_[2][2];
  double marginal_entropy_ = 0.0;
};

}  // namespace

double classical_correlation_closed(double r) {
  if (!(r >= 0.0 && r <= 1.0)) throw std::domain_error("filling factor must lie in [0, 1]");
  const double s = 1.0 - r;
  return (r - 2.0 * r * r) * log2_or_zero(r) + (s - 2.0 * s * s) * log2_or_zero(s) -
         2.0 * r * s * log2_or_zero(2.0 * r * s);
}

MeasuredCorrelation classical_correlation_measured(const TwoSiteState& t) {
  const ConditionalEntropy f(t);
  constexpr int kGrid = 64;
  constexpr double pi = std::numbers::pi;

  MeasuredCorrelation best{f.information_gain(0.0, 0.0), 0.0, 0.0};
  for (int i = 0; i < kGrid; ++i) {
    const double theta = pi * i / (kGrid - 1);
    for (int j = 0; j < kGrid; ++j) {
      const double phi = 2.0 * pi * j / kGrid;
      const double v = f.information_gain(theta, phi);
      if (v > best.bits) best = {v, theta, phi};
    }
  }

  double step = pi / kGrid;
  while (step > 1e-8) {
    bool moved = false;
    static constexpr std::array<std::pair<double, double>, 4> kMoves = {
        {{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}}};
    for (const auto& [dt, dp] : kMoves) {
      const double theta = best.theta + dt * step;
      const double phi = best.phi + dp * step;
      const double v = f.information_gain(theta, phi);
      if (v > best.bits + 1e-15) {
        best = {v, theta, phi};
        moved = true;
      }
    }
    if (!moved) step *= 0.5;
  }
  best.bits = std::max(0.0, best.bits);
  return best;
}

double odlro(std::int64_t n, std::int64_t k) {
  if (n < 2) throw std::domain_error("odlro needs n >= 2");
  return reduced_two_site(DickeState(n, k)).c;
}

double max_singlet_fraction(const TwoSiteState& t) { return t.c; }

TwoSiteState mix_two_site(std::span<const double> p, std::span<const TwoSiteState> states) {
  if (p.size() != states.size()) throw std::domain_error("mixture weights and states differ in length");
  TwoSiteState out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    out.a += p[i] * states[i].a;
    out.b += p[i] * states[i].b;
    out.c += p[i] * states[i].c;
  }
  return out;
}

double mutual_information_pure(std::int64_t n, std::int64_t k) {
  const DickeState s(n, k);
  return static_cast<double>(n) * binary_entropy(s.filling());
}

CorrelationReport correlation_report(std::int64_t n, std::int64_t k) {
  const DickeState s(n, k);
  CorrelationReport r;
  r.e12 = ree_two_site(n, k);
  r.classical = classical_correlation_closed(s.filling());
  r.mutual = mutual_information_pure(n, k);
  r.odlro = odlro(n, k);
  r.entangled = is_two_site_entangled(n, k);
  return r;
}

}  // namespace dickeent
