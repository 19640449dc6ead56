#pragma once

#include <cmath>
#include <complex>

#include <Eigen/Dense>

#include "rtangle/state.hpp"

namespace rtangle {

/// SL-invariant polynomials of a three-qubit vector. d1, d2, d3 are kept
/// complex so cancellations stay visible; tau = 4|d1 - 2 d2 + 4 d3|.
template <typename Scalar>
struct InvariantBreakdown {
  std::complex<Scalar> d1;
  std::complex<Scalar> d2;
  std::complex<Scalar> d3;
  std::complex<Scalar> hyperdet;
  Scalar tau;
  Scalar sqrt_tau;
};

template <typename Derived>
InvariantBreakdown<typename Derived::RealScalar> invariants(const Eigen::MatrixBase<Derived>& psi) {
  EIGEN_STATIC_ASSERT_VECTOR_SPECIFIC_SIZE(Derived, 8);
  using Real = typename Derived::RealScalar;
  using Cx = std::complex<Real>;
  const Cx c000 = psi(0), c001 = psi(1), c010 = psi(2), c011 = psi(3);
  const Cx c100 = psi(4), c101 = psi(5), c110 = psi(6), c111 = psi(7);

  InvariantBreakdown<Real> out;
  out.d1 = c000 * c000 * c111 * c111 + c001 * c001 * c110 * c110 + c010 * c010 * c101 * c101 +
           c100 * c100 * c011 * c011;
  const Cx g = c000 * c111;
  const Cx x = c011 * c100;
  const Cx y = c101 * c010;
  const Cx z = c110 * c001;
  out.d2 = g * x + g * y + g * z + x * y + x * z + y * z;
  out.d3 = c000 * c110 * c101 * c011 + c111 * c001 * c010 * c100;
  out.hyperdet = out.d1 - Real(2) * out.d2 + Real(4) * out.d3;
  out.tau = Real(4) * std::abs(out.hyperdet);
  out.sqrt_tau = std::sqrt(out.tau);
  return out;
}

InvariantBreakdown<double> invariants(const PureState& psi);

/// sqrt(4|hyperdet|) of raw amplitudes; degree-2 homogeneous in the vector.
template <typename Derived>
typename Derived::RealScalar sqrt_tau_homogeneous(const Eigen::MatrixBase<Derived>& psi) {
  return invariants(psi).sqrt_tau;
}

/// 4|hyperdet| of raw amplitudes; degree-4 homogeneous in the vector.
template <typename Derived>
typename Derived::RealScalar tau_homogeneous(const Eigen::MatrixBase<Derived>& psi) {
  return invariants(psi).tau;
}

double sqrt_tau_homogeneous(const PureState& psi);

/// |det M| = det sqrt(M^dagger M) for a 2x2 operator.
template <typename Derived>
typename Derived::RealScalar local_det_modulus(const Eigen::MatrixBase<Derived>& m) {
  EIGEN_STATIC_ASSERT_MATRIX_SPECIFIC_SIZE(Derived, 2, 2);
  return std::abs(m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0));
}

struct ScalingFactor {
  double alpha;
};

/// alpha = sqrt(det M^dagger M) / p. Throws DomainError for p <= 0.
ScalingFactor alpha(const LocalOperator& op, double probability);

}  // namespace rtangle
