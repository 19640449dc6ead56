#pragma once

#include <optional>
#include <vector>

#include "rtangle/state.hpp"

namespace rtangle {

inline constexpr double kEmptyOutcomeProbability = 1e-14;
inline constexpr double kDroppedMemberWeight = 1e-14;

/// Result j of a single-qubit measurement on a mixed state.
///
/// post_ensemble is the image {r_i, M|psi_i>/norm} of the input ensemble,
/// with r_i = q_i <psi_i|M^dagger M|psi_i> / p. post_density is computed
/// independently as M rho M^dagger / p. Both are absent for empty outcomes.
struct MeasurementOutcome {
  int index = 0;
  double probability = 0.0;
  double alpha = 0.0;
  std::optional<WeightedEnsemble> post_ensemble;
  std::optional<DensityMatrix> post_density;
  std::optional<double> rtangle_propagated;

  bool empty() const { return !post_ensemble.has_value(); }
};

/// Measures every outcome of `ms` on the ensemble. When `rtangle_in` is the
/// r-tangle of the input, each outcome also carries alpha * rtangle_in.
/// Throws ValidationError for an incomplete measurement set.
std::vector<MeasurementOutcome> measure(const WeightedEnsemble& ensemble, const MeasurementSet& ms,
                                        std::optional<double> rtangle_in = std::nullopt);

/// Density-matrix entry point; measures the spectral ensemble of rho.
std::vector<MeasurementOutcome> measure(const DensityMatrix& rho, const MeasurementSet& ms,
                                        std::optional<double> rtangle_in = std::nullopt);

/// t_r(rho_j) = alpha_j * t_r(rho).
double propagate_rtangle(double rtangle_in, double alpha);

struct NoncovarianceFixture {
  double tau_rho;      // tangle of the input mixed state
  double tau_outcome;  // tangle of the post-measurement state
  double alpha_sq;     // alpha^2 of that outcome
};

/// The GHZ/W counterexample: tau = (63 - sqrt 465)/90,
/// tau_0 = 160 (9 - sqrt 6)/7569, alpha^2 = 250/841.
NoncovarianceFixture counterexample_fixture();

struct NoncovarianceReport {
  double alpha_sq;
  double tau_ratio;
  double gap;  // tau_ratio - alpha_sq
  bool noncovariant;
};

/// Noncovariant when |tau_outcome/tau_rho - alpha^2| > threshold.
NoncovarianceReport verify_tangle_noncovariance(const NoncovarianceFixture& fixture = counterexample_fixture(),
                                                double threshold = 3e-3);

}  // namespace rtangle
