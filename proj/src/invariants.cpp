#include "rtangle/invariants.hpp"

#include <sstream>

namespace rtangle {

InvariantBreakdown<double> invariants(const PureState& psi) {
  return invariants(psi.amplitudes());
}

double sqrt_tau_homogeneous(const PureState& psi) {
  return sqrt_tau_homogeneous(psi.amplitudes());
}

ScalingFactor alpha(const LocalOperator& op, double probability) {
  if (!(probability > 0.0) || !std::isfinite(probability)) {
    std::ostringstream msg;
    msg << "alpha needs a positive outcome probability, got " << probability;
    throw DomainError(msg.str());
  }
  return {local_det_modulus(op.matrix()) / probability};
}

}  // namespace rtangle
