#include "rtangle/state.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rtangle {

char qubit_label(Qubit q) {
  switch (q) {
    case Qubit::A: return 'A';
    case Qubit::B: return 'B';
    case Qubit::C: return 'C';
  }
  return '?';
}

Qubit parse_qubit(char label) {
  switch (label) {
    case 'A': case 'a': return Qubit::A;
    case 'B': case 'b': return Qubit::B;
    case 'C': case 'c': return Qubit::C;
    default: break;
  }
  throw ValidationError(std::string("unknown qubit label '") + label + "', expected A, B or C");
}

PureState PureState::normalized(const Ket8cd& amplitudes, Normalization mode) {
  if (!all_finite(amplitudes)) throw ValidationError("pure state has non-finite amplitudes");
  const double norm_sq = amplitudes.squaredNorm();
  if (mode == Normalization::Renormalize) {
    if (norm_sq <= 0.0) throw ValidationError("cannot renormalize the zero vector");
    return PureState(amplitudes / std::sqrt(norm_sq), true);
  }
  if (std::abs(norm_sq - 1.0) > kNormTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "pure state is not normalized: sum |C|^2 = " << norm_sq;
    throw ValidationError(msg.str());
  }
  return PureState(amplitudes, true);
}

PureState PureState::unnormalized(const Ket8cd& amplitudes) {
  if (!all_finite(amplitudes)) throw ValidationError("pure state has non-finite amplitudes");
  return PureState(amplitudes, false);
}

PureState PureState::basis(int index) {
  if (index < 0 || index > 7) throw ValidationError("basis index out of range [0, 7]");
  return PureState(Ket8cd::Unit(index), true);
}

PureState PureState::renormalized() const {
  return normalized(amp_, Normalization::Renormalize);
}

bool equal_up_to_phase(const PureState& a, const PureState& b, double tol) {
  const double na = a.amplitudes().norm();
  const double nb = b.amplitudes().norm();
  if (na == 0.0 || nb == 0.0) return na == nb;
  const double overlap = std::abs(a.amplitudes().dot(b.amplitudes())) / (na * nb);
  return overlap >= 1.0 - tol;
}

WeightedEnsemble::WeightedEnsemble(std::vector<EnsembleMember> members) : members_(std::move(members)) {
  if (members_.empty()) throw ValidationError("ensemble has no members");
  double total = 0.0;
  for (std::size_t i = 0; i < members_.size(); ++i) {
    const auto& m = members_[i];
    if (!std::isfinite(m.weight) || m.weight < 0.0 || m.weight > 1.0 + kNormTolerance) {
      std::ostringstream msg;
      msg << "ensemble member " << i << ": weight " << m.weight << " outside [0, 1]";
      throw ValidationError(msg.str());
    }
    if (!m.state.is_normalized() || std::abs(m.state.norm_squared() - 1.0) > kNormTolerance) {
      std::ostringstream msg;
      msg << "ensemble member " << i << ": state is not normalized (norm^2 = " << m.state.norm_squared() << ")";
      throw ValidationError(msg.str());
    }
    total += m.weight;
  }
  if (std::abs(total - 1.0) > kNormTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "ensemble weights sum to " << total << ", expected 1";
    throw ValidationError(msg.str());
  }
}

DensityMatrix::DensityMatrix(const Matrix8cd& entries) : rho_(entries) {
  if (!all_finite(rho_)) throw ValidationError("density matrix has non-finite entries");
  const double asym = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kHermitianTolerance) {
    std::ostringstream msg;
    msg << "density matrix is not Hermitian (max |rho - rho^dagger| = " << asym << ")";
    throw ValidationError(msg.str());
  }
  const double trace = rho_.trace().real();
  if (std::abs(trace - 1.0) > kTraceTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "density matrix trace is " << trace << ", expected 1";
    throw ValidationError(msg.str());
  }
  const Matrix8cd herm = 0.5 * (rho_ + rho_.adjoint());
  const double min_eig = Eigen::SelfAdjointEigenSolver<Matrix8cd>(herm, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
  if (min_eig < -kPsdTolerance) {
    std::ostringstream msg;
    msg << "density matrix is not positive semidefinite (min eigenvalue " << min_eig << ")";
    throw ValidationError(msg.str());
  }
}

DensityMatrix DensityMatrix::from_hermitian_part(const Matrix8cd& entries) {
  return DensityMatrix(0.5 * (entries + entries.adjoint()));
}

DensityMatrix DensityMatrix::pure(const PureState& psi) {
  if (!psi.is_normalized()) throw ValidationError("density of an unnormalized state");
  return from_hermitian_part(psi.amplitudes() * psi.amplitudes().adjoint());
}

LocalOperator::LocalOperator(const Eigen::Matrix2cd& m, Qubit target) : m_(m), target_(target) {
  if (!all_finite(m_)) throw ValidationError("local operator has non-finite entries");
}

MeasurementSet::MeasurementSet(std::vector<LocalOperator> operators) : ops_(std::move(operators)) {
  if (ops_.empty()) throw ValidationError("measurement set has no operators");
  for (std::size_t j = 1; j < ops_.size(); ++j) {
    if (ops_[j].target() != ops_.front().target()) {
      std::ostringstream msg;
      msg << "measurement operator " << j << " targets qubit " << qubit_label(ops_[j].target())
          << " but operator 0 targets " << qubit_label(ops_.front().target());
      throw ValidationError(msg.str());
    }
  }
}

PureState LocalAction::normalized_state() const {
  if (annihilated()) throw DomainError("annihilated state has no normalized form");
  return PureState::normalized(state.amplitudes() / std::sqrt(norm_sq), PureState::Normalization::Renormalize);
}

DensityMatrix ensemble_to_density(const WeightedEnsemble& ensemble) {
  Matrix8cd rho = Matrix8cd::Zero();
  for (const auto& m : ensemble) {
    rho.noalias() += m.weight * (m.state.amplitudes() * m.state.amplitudes().adjoint());
  }
  return DensityMatrix::from_hermitian_part(rho);
}

WeightedEnsemble density_eigendecomposition(const DensityMatrix& rho, double cutoff) {
  if (!(cutoff >= 0.0)) throw DomainError("eigendecomposition cutoff must be >= 0");
  const Eigen::SelfAdjointEigenSolver<Matrix8cd> solver(rho.matrix());
  if (solver.info() != Eigen::Success) throw ValidationError("eigendecomposition failed");
  std::vector<EnsembleMember> members;
  // Eigen sorts ascending; emit largest weight first.
  for (int k = 7; k >= 0; --k) {
    const double lambda = solver.eigenvalues()(k);
    if (lambda > cutoff) {
      members.push_back({lambda, PureState::normalized(solver.eigenvectors().col(k),
                                                       PureState::Normalization::Renormalize)});
    }
  }
  return WeightedEnsemble(std::move(members));
}

int numerical_rank(const DensityMatrix& rho, double cutoff) {
  const Eigen::SelfAdjointEigenSolver<Matrix8cd> solver(rho.matrix(), Eigen::EigenvaluesOnly);
  return static_cast<int>((solver.eigenvalues().array() > cutoff).count());
}

LocalAction apply_local(const LocalOperator& op, const PureState& psi) {
  const Ket8cd out = apply_on_qubit(op.matrix(), op.target(), psi.amplitudes());
  return {PureState::unnormalized(out), out.squaredNorm()};
}

CompletenessReport validate_measurement(const MeasurementSet& ms) {
  Eigen::Matrix2cd sum = Eigen::Matrix2cd::Zero();
  for (const auto& op : ms.operators()) sum += op.matrix().adjoint() * op.matrix();
  const double dev = (sum - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
  return {dev, dev <= kCompletenessTolerance};
}

Matrix8cd conjugate_by(const LocalOperator& op, const Matrix8cd& rho) {
  const Matrix8cd full = embed_local(op.matrix(), op.target());
  return full * rho * full.adjoint();
}

double max_entry_distance(const Matrix8cd& lhs, const Matrix8cd& rhs) {
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

}  // namespace rtangle
