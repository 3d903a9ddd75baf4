#pragma once

// Brute-force reference computations in the full computational basis.
// Qubit site j is bit j of the basis index (qudit site j is base-d digit j).

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dickeent/dicke_core.hpp"

namespace dickeent::oracle {

/// Thrown when a dense construction would exceed the supported size.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

class DenseHermitian {
 public:
  /// Checks Hermiticity to 1e-12.
  explicit DenseHermitian(Matrix m);

  Eigen::Index dim() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  std::complex<double> operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

  /// Trace 1 within 1e-12 and smallest eigenvalue >= -1e-10.
  bool is_density() const;

 private:
  Matrix m_;
};

DenseHermitian projector(const Vector& v);
DenseHermitian mix(double x, const DenseHermitian& a, const DenseHermitian& b);  // (1-x) a + x b

/// Number of qubits for a 2^n dimension; domain error otherwise.
int qubit_count(Eigen::Index dim);

/// Dicke vector with phase exp(i theta sum_j j x_j) on each weight-k string. n <= 12.
Vector dicke_vector(int n, int k, double theta = 0.0);

/// Equal superposition of all qudit strings with the given level counts. n <= 6.
Vector generalized_dicke_vector(std::span<const std::int64_t> counts);

DenseHermitian partial_trace(const DenseHermitian& rho, std::vector<int> keep);
DenseHermitian partial_transpose(const DenseHermitian& rho, const std::vector<int>& sites);

std::vector<double> eigenvalues(const DenseHermitian& h);
double min_eigenvalue(const DenseHermitian& h);
double von_neumann_entropy(const DenseHermitian& rho);

/// Tr(sigma log2 sigma - sigma log2 rho). +inf when sigma has weight outside the support of rho.
double relative_entropy(const DenseHermitian& sigma, const DenseHermitian& rho);

/// Average over `phase_points` equally spaced phi of the projector onto the product state
/// with single-site vector sqrt(1-r)|0> + sqrt(r) exp(i(phi + j theta))|1> on site j, r = k/n.
/// phase_points = 0 means n + 1. n <= 8.
DenseHermitian closest_state_dense(int n, int k, double theta = 0.0, int phase_points = 0);

/// 4x4 matrix with a on |11>, b on |00>, c on the |01>,|10> block.
DenseHermitian embed_two_site(const TwoSiteState& t);

struct DickeProjection {
  std::vector<double> weights;  // <i, m-i| rho |i, m-i>
  double off_diagonal = 0.0;    // max |rho - sum_i w_i |i><i|| entry
};

DickeProjection dicke_projection(const DenseHermitian& rho);

/// Kronecker product of the single-site marginals.
DenseHermitian product_of_marginals(const DenseHermitian& rho);

struct ProductStateSample {
  std::vector<std::pair<double, double>> angles;  // Bloch (theta, phi) per site
  double weight = 1.0;
};

Vector product_vector(const ProductStateSample& s);

/// sum_i w_i |alpha_i ...><alpha_i ...| with weights normalized to 1.
DenseHermitian separable_state(std::span<const ProductStateSample> terms);

ProductStateSample random_product(int sites, std::mt19937_64& rng);
std::vector<ProductStateSample> random_separable(int sites, int terms, std::mt19937_64& rng);

struct NumericRee {
  double bits = 0.0;
  int restarts = 0;
  int best_restart = -1;
  int iterations = 0;  // of the best restart
  bool converged = false;
};

/// min over mixtures of up to 16 two-qubit product states of relative_entropy(sigma, .),
/// seeded multi-start L-BFGS. An upper bound on the REE.
NumericRee ree_numeric_two_qubit(const DenseHermitian& sigma, std::uint64_t seed, int restarts = 32);

double ree_numeric_two_site(const TwoSiteState& t, std::uint64_t seed, int restarts = 32);

/// Directional derivative (nats) of S(sigma_12 || (1-x) rho + x omega) at x = 0, with rho
/// the closest separable two-site state of (n, k) and omega a two-site product state.
double variational_check(std::int64_t n, std::int64_t k, const ProductStateSample& omega);

/// Same derivative by a one-sided three-point difference of relative_entropy.
double variational_check_fd(std::int64_t n, std::int64_t k, const ProductStateSample& omega,
                            double step = 1e-6);

/// Phase-randomized product mixture for qudit counts with d - 1 independent phases,
/// `phase_points` each (0 means n + 1). d <= 3, n <= 4.
DenseHermitian dense_generalized(std::span<const std::int64_t> counts, int phase_points = 0);

}  // namespace dickeent::oracle
