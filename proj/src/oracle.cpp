#include "dickeent/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "dickeent/minimizer.hpp"

namespace dickeent::oracle {

namespace {

using cd = std::complex<double>;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr double kZeroEigenvalue = 1e-12;
constexpr double kSupportLeak = 1e-10;

cd phase(double angle) { return {std::cos(angle), std::sin(angle)}; }

std::int64_t ipow(std::int64_t base, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= base;
  return r;
}

Eigen::SelfAdjointEigenSolver<Matrix> eigensystem(const DenseHermitian& h) {
  return Eigen::SelfAdjointEigenSolver<Matrix>(h.matrix(), Eigen::ComputeEigenvectors);
}

// Two-qubit product state for Bloch angles (ta, pa) on site 0 and (tb, pb) on site 1.
Eigen::Vector2cd bloch(double theta, double phi) {
  return {cd(std::cos(0.5 * theta), 0.0), phase(phi) * std::sin(0.5 * theta)};
}

Eigen::Vector4cd pair_vector(const Eigen::Vector2cd& a, const Eigen::Vector2cd& b) {
  Eigen::Vector4cd v;
  for (int xa = 0; xa < 2; ++xa) {
    for (int xb = 0; xb < 2; ++xb) v(xa + 2 * xb) = a(xa) * b(xb);
  }
  return v;
}

}  // namespace

DenseHermitian::DenseHermitian(Matrix m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0) throw std::domain_error("matrix must be square and non-empty");
  const double err = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  if (err > 1e-12) throw std::domain_error("matrix is not Hermitian (deviation " + std::to_string(err) + ")");
  m_ = 0.5 * (m_ + m_.adjoint());
}

bool DenseHermitian::is_density() const {
  return std::abs(m_.trace().real() - 1.0) <= 1e-12 && min_eigenvalue(*this) >= -1e-10;
}

DenseHermitian projector(const Vector& v) { return DenseHermitian(v * v.adjoint()); }

DenseHermitian mix(double x, const DenseHermitian& a, const DenseHermitian& b) {
  if (a.dim() != b.dim()) throw std::domain_error("mixing matrices of different dimension");
  return DenseHermitian((1.0 - x) * a.matrix() + x * b.matrix());
}

int qubit_count(Eigen::Index dim) {
  if (dim < 2 || !std::has_single_bit(static_cast<std::uint64_t>(dim))) {
    throw std::domain_error("dimension " + std::to_string(dim) + " is not a power of two");
  }
  return std::countr_zero(static_cast<std::uint64_t>(dim));
}

Vector dicke_vector(int n, int k, double theta) {
  if (n > 12) throw ResourceError("dicke_vector supports n <= 12");
  const DickeState s(n, k);
  const std::int64_t dim = std::int64_t{1} << n;
  const double amp = 1.0 / std::sqrt(static_cast<double>(exact_binomial(n, k)));
  Vector v = Vector::Zero(dim);
  for (std::int64_t idx = 0; idx < dim; ++idx) {
    if (std::popcount(static_cast<std::uint64_t>(idx)) != k) continue;
    double weight = 0.0;
    for (int j = 0; j < n; ++j) {
      if ((idx >> j) & 1) weight += j;
    }
    v(idx) = amp * phase(theta * weight);
  }
  return v;
}

Vector generalized_dicke_vector(std::span<const std::int64_t> counts) {
  const GeneralizedDickeState g({counts.begin(), counts.end()});
  const int d = static_cast<int>(g.d());
  const int n = static_cast<int>(g.n());
  if (n > 6 || d > 3) throw ResourceError("generalized_dicke_vector supports d <= 3, n <= 6");
  const std::int64_t dim = ipow(d, n);
  Vector v = Vector::Zero(dim);
  std::int64_t hits = 0;
  for (std::int64_t idx = 0; idx < dim; ++idx) {
    std::vector<std::int64_t> seen(static_cast<std::size_t>(d), 0);
    std::int64_t rest = idx;
    for (int j = 0; j < n; ++j) {
      ++seen[static_cast<std::size_t>(rest % d)];
      rest /= d;
    }
    if (seen == g.counts()) {
      v(idx) = 1.0;
      ++hits;
    }
  }
  return v / std::sqrt(static_cast<double>(hits));
}

DenseHermitian partial_trace(const DenseHermitian& rho, std::vector<int> keep) {
  const int n = qubit_count(rho.dim());
  std::sort(keep.begin(), keep.end());
  if (keep.empty() || std::adjacent_find(keep.begin(), keep.end()) != keep.end() || keep.front() < 0 ||
      keep.back() >= n) {
    throw std::domain_error("partial_trace needs a non-empty set of distinct sites in [0, n)");
  }
  std::vector<int> traced;
  for (int j = 0; j < n; ++j) {
    if (!std::binary_search(keep.begin(), keep.end(), j)) traced.push_back(j);
  }
  auto deposit = [](const std::vector<int>& sites) {
    std::vector<std::int64_t> out(std::size_t{1} << sites.size(), 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
      for (std::size_t b = 0; b < sites.size(); ++b) {
        if ((i >> b) & 1) out[i] |= std::int64_t{1} << sites[b];
      }
    }
    return out;
  };
  const auto kept = deposit(keep);
  const auto gone = deposit(traced);
  const auto m = static_cast<Eigen::Index>(kept.size());
  Matrix out = Matrix::Zero(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      cd acc = 0.0;
      for (auto t : gone) acc += rho(kept[static_cast<std::size_t>(i)] | t, kept[static_cast<std::size_t>(j)] | t);
      out(i, j) = acc;
    }
  }
  return DenseHermitian(std::move(out));
}

DenseHermitian partial_transpose(const DenseHermitian& rho, const std::vector<int>& sites) {
  const int n = qubit_count(rho.dim());
  std::int64_t mask = 0;
  for (int s : sites) {
    if (s < 0 || s >= n) throw std::domain_error("partial_transpose site out of range");
    mask |= std::int64_t{1} << s;
  }
  const Eigen::Index dim = rho.dim();
  Matrix out(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      const Eigen::Index ti = (i & ~mask) | (j & mask);
      const Eigen::Index tj = (j & ~mask) | (i & mask);
      out(ti, tj) = rho(i, j);
    }
  }
  return DenseHermitian(std::move(out));
}

std::vector<double> eigenvalues(const DenseHermitian& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h.matrix(), Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double min_eigenvalue(const DenseHermitian& h) { return eigenvalues(h).front(); }

double von_neumann_entropy(const DenseHermitian& rho) {
  double nats = 0.0;
  for (double mu : eigenvalues(rho)) nats -= xlogx(std::max(mu, 0.0));
  return to_bits(nats);
}

double relative_entropy(const DenseHermitian& sigma, const DenseHermitian& rho) {
  if (sigma.dim() != rho.dim()) throw std::domain_error("relative_entropy dimension mismatch");
  double nats = -to_nats(von_neumann_entropy(sigma));
  const auto es = eigensystem(rho);
  const auto& lambda = es.eigenvalues();
  const auto& vecs = es.eigenvectors();
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    const double w = (vecs.col(i).adjoint() * sigma.matrix() * vecs.col(i))(0, 0).real();
    if (lambda(i) <= kZeroEigenvalue) {
      if (w > kSupportLeak) return std::numeric_limits<double>::infinity();
      continue;
    }
    nats -= w * std::log(lambda(i));
  }
  return std::max(0.0, to_bits(nats));
}

DenseHermitian closest_state_dense(int n, int k, double theta, int phase_points) {
  if (n > 8) throw ResourceError("closest_state_dense supports n <= 8");
  const DickeState s(n, k);
  if (!std::isfinite(theta)) throw std::domain_error("theta must be finite");
  const int points = phase_points > 0 ? phase_points : n + 1;
  const double r = s.filling();
  const std::int64_t dim = std::int64_t{1} << n;
  Matrix acc = Matrix::Zero(dim, dim);
  Vector v(dim);
  for (int m = 0; m < points; ++m) {
    const double phi = kTwoPi * m / points;
    for (std::int64_t idx = 0; idx < dim; ++idx) {
      cd amp = 1.0;
      for (int j = 0; j < n; ++j) {
        amp *= ((idx >> j) & 1) ? std::sqrt(r) * phase(phi + j * theta) : cd(std::sqrt(1.0 - r), 0.0);
      }
      v(idx) = amp;
    }
    acc.noalias() += v * v.adjoint();
  }
  return DenseHermitian(acc / static_cast<double>(points));
}

DenseHermitian embed_two_site(const TwoSiteState& t) {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = t.b;
  m(3, 3) = t.a;
  m(1, 1) = m(2, 2) = m(1, 2) = m(2, 1) = t.c;
  return DenseHermitian(std::move(m));
}

DickeProjection dicke_projection(const DenseHermitian& rho) {
  const int m = qubit_count(rho.dim());
  DickeProjection out;
  Matrix rebuilt = Matrix::Zero(rho.dim(), rho.dim());
  for (int i = 0; i <= m; ++i) {
    const Vector d = dicke_vector(m, i);
    const double w = (d.adjoint() * rho.matrix() * d)(0, 0).real();
    out.weights.push_back(w);
    rebuilt.noalias() += w * d * d.adjoint();
  }
  out.off_diagonal = (rho.matrix() - rebuilt).cwiseAbs().maxCoeff();
  return out;
}

DenseHermitian product_of_marginals(const DenseHermitian& rho) {
  const int n = qubit_count(rho.dim());
  std::vector<Matrix> marg;
  for (int j = 0; j < n; ++j) marg.push_back(partial_trace(rho, {j}).matrix());
  Matrix out(rho.dim(), rho.dim());
  for (Eigen::Index i = 0; i < rho.dim(); ++i) {
    for (Eigen::Index j = 0; j < rho.dim(); ++j) {
      cd v = 1.0;
      for (int s = 0; s < n; ++s) v *= marg[static_cast<std::size_t>(s)]((i >> s) & 1, (j >> s) & 1);
      out(i, j) = v;
    }
  }
  return DenseHermitian(std::move(out));
}

Vector product_vector(const ProductStateSample& s) {
  const auto n = static_cast<int>(s.angles.size());
  if (n < 1 || n > 12) throw ResourceError("product_vector supports 1..12 sites");
  std::vector<Eigen::Vector2cd> sites;
  for (const auto& [t, p] : s.angles) {
    if (!std::isfinite(t) || !std::isfinite(p)) throw std::domain_error("product state angles must be finite");
    sites.push_back(bloch(t, p));
  }
  const std::int64_t dim = std::int64_t{1} << n;
  Vector v(dim);
  for (std::int64_t idx = 0; idx < dim; ++idx) {
    cd amp = 1.0;
    for (int j = 0; j < n; ++j) amp *= sites[static_cast<std::size_t>(j)]((idx >> j) & 1);
    v(idx) = amp;
  }
  return v;
}

DenseHermitian separable_state(std::span<const ProductStateSample> terms) {
  if (terms.empty()) throw std::domain_error("separable_state needs at least one term");
  double total = 0.0;
  for (const auto& t : terms) {
    if (!(t.weight >= 0.0)) throw std::domain_error("product-state weights must be >= 0");
    total += t.weight;
  }
  if (!(total > 0.0)) throw std::domain_error("product-state weights sum to zero");
  const Eigen::Index dim = Eigen::Index{1} << terms.front().angles.size();
  Matrix acc = Matrix::Zero(dim, dim);
  for (const auto& t : terms) {
    if (static_cast<Eigen::Index>(std::size_t{1} << t.angles.size()) != dim) {
      throw std::domain_error("product-state terms have different site counts");
    }
    const Vector v = product_vector(t);
    acc.noalias() += (t.weight / total) * v * v.adjoint();
  }
  return DenseHermitian(std::move(acc));
}

ProductStateSample random_product(int sites, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ProductStateSample s;
  for (int j = 0; j < sites; ++j) s.angles.emplace_back(std::acos(1.0 - 2.0 * u(rng)), kTwoPi * u(rng));
  s.weight = 1.0;
  return s;
}

std::vector<ProductStateSample> random_separable(int sites, int terms, std::mt19937_64& rng) {
  std::exponential_distribution<double> w(1.0);
  std::vector<ProductStateSample> out;
  for (int i = 0; i < terms; ++i) {
    auto s = random_product(sites, rng);
    s.weight = w(rng);
    out.push_back(std::move(s));
  }
  return out;
}

namespace {

constexpr int kAnsatzTerms = 16;
constexpr int kParamsPerTerm = 5;  // theta_a, phi_a, theta_b, phi_b, weight logit

class TwoQubitObjective {
 public:
  explicit TwoQubitObjective(const DenseHermitian& sigma) : sigma_(sigma.matrix()) {
    if (sigma.dim() != 4) throw std::domain_error("two-qubit minimization needs a 4x4 state");
    entropy_nats_ = to_nats(von_neumann_entropy(sigma));
  }

  double operator()(const Eigen::VectorXd& x, Eigen::VectorXd& grad) const {
    std::array<Eigen::Vector2cd, kAnsatzTerms> a, b;
    std::array<Eigen::Vector4cd, kAnsatzTerms> psi;
    std::array<double, kAnsatzTerms> p{};
    double top = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < kAnsatzTerms; ++i) top = std::max(top, x(kParamsPerTerm * i + 4));
    double z = 0.0;
    for (int i = 0; i < kAnsatzTerms; ++i) {
      const auto* q = x.data() + kParamsPerTerm * i;
      a[i] = bloch(q[0], q[1]);
      b[i] = bloch(q[2], q[3]);
      psi[i] = pair_vector(a[i], b[i]);
      p[i] = std::exp(q[4] - top);
      z += p[i];
    }
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    for (int i = 0; i < kAnsatzTerms; ++i) {
      p[i] /= z;
      rho.noalias() += p[i] * psi[i] * psi[i].adjoint();
    }

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(rho);
    const Eigen::Matrix4cd& v = es.eigenvectors();
    Eigen::Vector4d lam = es.eigenvalues().cwiseMax(1e-30);
    Eigen::Vector4d loglam = lam.array().log();
    const Eigen::Matrix4cd st = v.adjoint() * sigma_ * v;

    double nats = -entropy_nats_;
    for (int i = 0; i < 4; ++i) nats -= st(i, i).real() * loglam(i);

    // Frechet derivative of log: d(-Tr sigma log rho) = Tr(G d rho), G = -V (L o S~) V^dag.
    Eigen::Matrix4cd ls;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        const double gap = lam(i) - lam(j);
        const double l = std::abs(gap) > 1e-12 * std::max(lam(i), lam(j)) ? (loglam(i) - loglam(j)) / gap
                                                                          : 2.0 / (lam(i) + lam(j));
        ls(i, j) = l * st(i, j);
      }
    }
    const Eigen::Matrix4cd g = -(v * ls * v.adjoint());

    std::array<double, kAnsatzTerms> gp{};
    double mean = 0.0;
    for (int i = 0; i < kAnsatzTerms; ++i) {
      const Eigen::Vector4cd gpsi = g * psi[i];
      gp[i] = psi[i].dot(gpsi).real();
      mean += p[i] * gp[i];
      const auto* q = x.data() + kParamsPerTerm * i;
      auto* out = grad.data() + kParamsPerTerm * i;
      const double ht = 0.5 * q[0];
      const double hb = 0.5 * q[2];
      const Eigen::Vector2cd da_t(-0.5 * std::sin(ht), 0.5 * phase(q[1]) * std::cos(ht));
      const Eigen::Vector2cd da_p(0.0, cd(0.0, 1.0) * phase(q[1]) * std::sin(ht));
      const Eigen::Vector2cd db_t(-0.5 * std::sin(hb), 0.5 * phase(q[3]) * std::cos(hb));
      const Eigen::Vector2cd db_p(0.0, cd(0.0, 1.0) * phase(q[3]) * std::sin(hb));
      out[0] = 2.0 * p[i] * pair_vector(da_t, b[i]).dot(gpsi).real();
      out[1] = 2.0 * p[i] * pair_vector(da_p, b[i]).dot(gpsi).real();
      out[2] = 2.0 * p[i] * pair_vector(a[i], db_t).dot(gpsi).real();
      out[3] = 2.0 * p[i] * pair_vector(a[i], db_p).dot(gpsi).real();
    }
    for (int i = 0; i < kAnsatzTerms; ++i) grad(kParamsPerTerm * i + 4) = p[i] * (gp[i] - mean);
    grad *= kInvLn2;
    return to_bits(nats);
  }

 private:
  Eigen::Matrix4cd sigma_;
  double entropy_nats_ = 0.0;
};

}  // namespace

NumericRee ree_numeric_two_qubit(const DenseHermitian& sigma, std::uint64_t seed, int restarts) {
  const TwoQubitObjective objective(sigma);
  const opt::Objective f = [&objective](const Eigen::VectorXd& x, Eigen::VectorXd& g) { return objective(x, g); };
  NumericRee best;
  best.bits = std::numeric_limits<double>::infinity();
  best.restarts = std::max(restarts, 1);
  for (int r = 0; r < best.restarts; ++r) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(r)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::normal_distribution<double> logit(0.0, 1.0);
    Eigen::VectorXd x0(kAnsatzTerms * kParamsPerTerm);
    for (int i = 0; i < kAnsatzTerms; ++i) {
      x0(kParamsPerTerm * i + 0) = std::acos(1.0 - 2.0 * u(rng));
      x0(kParamsPerTerm * i + 1) = kTwoPi * u(rng);
      x0(kParamsPerTerm * i + 2) = std::acos(1.0 - 2.0 * u(rng));
      x0(kParamsPerTerm * i + 3) = kTwoPi * u(rng);
      x0(kParamsPerTerm * i + 4) = logit(rng);
    }
    const auto res = opt::lbfgs_minimize(f, std::move(x0));
    if (res.f < best.bits) {
      best.bits = res.f;
      best.best_restart = r;
      best.iterations = res.iterations;
      best.converged = res.converged;
    }
  }
  best.bits = std::max(0.0, best.bits);
  return best;
}

double ree_numeric_two_site(const TwoSiteState& t, std::uint64_t seed, int restarts) {
  return ree_numeric_two_qubit(embed_two_site(t), seed, restarts).bits;
}

namespace {

void require_interior(std::int64_t n, std::int64_t k) {
  if (n < 2 || k < 1 || k > n - 1) throw std::domain_error("variational check needs n >= 2 and 1 <= k <= n-1");
}

void require_two_sites(const ProductStateSample& omega) {
  if (omega.angles.size() != 2) throw std::domain_error("variational check needs a two-site product state");
}

}  // namespace

double variational_check(std::int64_t n, std::int64_t k, const ProductStateSample& omega) {
  require_interior(n, k);
  require_two_sites(omega);
  const auto sigma = reduced_two_site(DickeState(n, k));
  const auto rho = closest_separable_diagonal(n, k, 2);
  const Vector w = product_vector(omega);
  // Dicke levels of two sites: |00>, psi+, |11>.
  const std::array<double, 3> overlap = {std::norm(w(0)), 0.5 * std::norm(w(1) + w(2)), std::norm(w(3))};
  const std::array<double, 3> target = {sigma.b, 2.0 * sigma.c, sigma.a};
  double acc = 0.0;
  for (std::size_t j = 0; j < 3; ++j) acc += target[j] / rho.weights()[j] * overlap[j];
  return 1.0 - acc;
}

double variational_check_fd(std::int64_t n, std::int64_t k, const ProductStateSample& omega, double step) {
  require_interior(n, k);
  require_two_sites(omega);
  const auto sigma = embed_two_site(reduced_two_site(DickeState(n, k)));
  const double r = static_cast<double>(k) / static_cast<double>(n);
  const auto rho = embed_two_site(TwoSiteState{r * r, (1.0 - r) * (1.0 - r), r * (1.0 - r)});
  const auto w = projector(product_vector(omega));
  auto f = [&](double x) { return to_nats(relative_entropy(sigma, mix(x, rho, w))); };
  return (-3.0 * f(0.0) + 4.0 * f(step) - f(2.0 * step)) / (2.0 * step);
}

DenseHermitian dense_generalized(std::span<const std::int64_t> counts, int phase_points) {
  const GeneralizedDickeState g({counts.begin(), counts.end()});
  const int d = static_cast<int>(g.d());
  const int n = static_cast<int>(g.n());
  if (d > 3 || n > 4) throw ResourceError("dense_generalized supports d <= 3, n <= 4");
  const int points = phase_points > 0 ? phase_points : n + 1;
  const std::int64_t dim = ipow(d, n);
  std::vector<double> mag;
  for (auto c : g.counts()) mag.push_back(std::sqrt(static_cast<double>(c) / n));

  Matrix acc = Matrix::Zero(dim, dim);
  Vector v(dim);
  const std::int64_t combos = ipow(points, d - 1);
  for (std::int64_t combo = 0; combo < combos; ++combo) {
    std::vector<cd> site(static_cast<std::size_t>(d));
    site[0] = mag[0];
    std::int64_t rest = combo;
    for (int a = 1; a < d; ++a) {
      site[static_cast<std::size_t>(a)] = mag[static_cast<std::size_t>(a)] * phase(kTwoPi * (rest % points) / points);
      rest /= points;
    }
    for (std::int64_t idx = 0; idx < dim; ++idx) {
      cd amp = 1.0;
      std::int64_t digits = idx;
      for (int j = 0; j < n; ++j) {
        amp *= site[static_cast<std::size_t>(digits % d)];
        digits /= d;
      }
      v(idx) = amp;
    }
    acc.noalias() += v * v.adjoint();
  }
  return DenseHermitian(acc / static_cast<double>(combos));
}

}  // namespace dickeent::oracle
