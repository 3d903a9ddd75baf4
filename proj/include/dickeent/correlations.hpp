#pragma once

// Classical correlations, mutual information, ODLRO and singlet fraction of
// symmetric states.

#include <cstdint>
#include <span>

#include "dickeent/dicke_core.hpp"

namespace dickeent {

struct CorrelationReport {
  double e12 = 0.0;        // two-site REE, bits
  double classical = 0.0;  // closed form in the filling factor, bits
  double mutual = 0.0;     // total correlations of the pure state, bits
  double odlro = 0.0;      // off-diagonal two-site element c
  bool entangled = false;  // two-site partial-transpose verdict
};

CorrelationReport correlation_report(std::int64_t n, std::int64_t k);

/// Two-site classical correlations at filling r, in bits:
/// (r - 2r^2) log2 r + ((1-r) - 2(1-r)^2) log2(1-r) - 2r(1-r) log2(2r(1-r)).
double classical_correlation_closed(double r);

struct MeasuredCorrelation {
  double bits = 0.0;
  double theta = 0.0;  // Bloch polar angle of the optimal projective measurement
  double phi = 0.0;    // Bloch azimuth
};

/// max over projective measurements on one site of S(rho_B) - sum_i p_i S(rho_B^i).
/// A lower bound on the general-measurement maximum; 64x64 angle grid followed by
/// compass refinement to 1e-8 rad.
MeasuredCorrelation classical_correlation_measured(const TwoSiteState& t);

/// c = k(n-k)/(n(n-1)). Requires n >= 2.
double odlro(std::int64_t n, std::int64_t k);

/// Singlet-fraction value identified with the off-diagonal element c.
double max_singlet_fraction(const TwoSiteState& t);

/// Convex combination of two-site states.
TwoSiteState mix_two_site(std::span<const double> p, std::span<const TwoSiteState> states);

/// n H2(k/n), in bits.
double mutual_information_pure(std::int64_t n, std::int64_t k);

}  // namespace dickeent
