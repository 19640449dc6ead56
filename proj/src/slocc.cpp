#include "rtangle/slocc.hpp"

#include <cmath>
#include <sstream>

#include "rtangle/invariants.hpp"

namespace rtangle {

namespace {

MeasurementOutcome measure_one(const WeightedEnsemble& ensemble, const Matrix8cd& rho, const LocalOperator& op,
                               int index, std::optional<double> rtangle_in) {
  MeasurementOutcome out;
  out.index = index;

  std::vector<LocalAction> actions;
  actions.reserve(ensemble.size());
  double probability = 0.0;
  for (const auto& member : ensemble) {
    actions.push_back(apply_local(op, member.state));
    probability += member.weight * actions.back().norm_sq;
  }
  out.probability = probability;
  if (probability < kEmptyOutcomeProbability) {
    out.alpha = 0.0;
    return out;
  }

  std::vector<EnsembleMember> members;
  double kept = 0.0;
  for (std::size_t i = 0; i < actions.size(); ++i) {
    const double r = ensemble[i].weight * actions[i].norm_sq / probability;
    if (r < kDroppedMemberWeight || actions[i].annihilated()) continue;
    members.push_back({r, actions[i].normalized_state()});
    kept += r;
  }
  for (auto& m : members) m.weight /= kept;
  out.post_ensemble.emplace(std::move(members));
  out.post_density.emplace(DensityMatrix::from_hermitian_part(conjugate_by(op, rho) / probability));
  out.alpha = alpha(op, probability).alpha;
  if (rtangle_in) out.rtangle_propagated = propagate_rtangle(*rtangle_in, out.alpha);
  return out;
}

}  // namespace

std::vector<MeasurementOutcome> measure(const WeightedEnsemble& ensemble, const MeasurementSet& ms,
                                        std::optional<double> rtangle_in) {
  const auto report = validate_measurement(ms);
  if (!report.pass) {
    std::ostringstream msg;
    msg << "measurement set is incomplete: max |sum M^dagger M - I| = " << report.max_deviation;
    throw ValidationError(msg.str());
  }
  if (rtangle_in && !(*rtangle_in >= 0.0)) throw DomainError("input r-tangle must be >= 0");

  const Matrix8cd rho = ensemble_to_density(ensemble).matrix();
  std::vector<MeasurementOutcome> outcomes;
  outcomes.reserve(ms.size());
  for (std::size_t j = 0; j < ms.size(); ++j) {
    outcomes.push_back(measure_one(ensemble, rho, ms.operators()[j], static_cast<int>(j), rtangle_in));
  }
  return outcomes;
}

std::vector<MeasurementOutcome> measure(const DensityMatrix& rho, const MeasurementSet& ms,
                                        std::optional<double> rtangle_in) {
  return measure(density_eigendecomposition(rho), ms, rtangle_in);
}

double propagate_rtangle(double rtangle_in, double alpha) {
  if (!(rtangle_in >= 0.0) || !(alpha >= 0.0)) {
    std::ostringstream msg;
    msg << "propagate_rtangle needs non-negative inputs, got t_r = " << rtangle_in << ", alpha = " << alpha;
    throw DomainError(msg.str());
  }
  return alpha * rtangle_in;
}

NoncovarianceFixture counterexample_fixture() {
  const LocalOperator m0(Eigen::Matrix2cd{{1.0, 0.0}, {0.0, 1.0 / std::sqrt(10.0)}}, Qubit::A);
  const double a = alpha(m0, 29.0 / 50.0).alpha;
  return {(63.0 - std::sqrt(465.0)) / 90.0, 160.0 * (9.0 - std::sqrt(6.0)) / 7569.0, a * a};
}

NoncovarianceReport verify_tangle_noncovariance(const NoncovarianceFixture& fixture, double threshold) {
  NoncovarianceReport r;
  r.alpha_sq = fixture.alpha_sq;
  r.tau_ratio = fixture.tau_outcome / fixture.tau_rho;
  r.gap = r.tau_ratio - r.alpha_sq;
  r.noncovariant = std::abs(r.gap) > threshold;
  return r;
}

}  // namespace rtangle
