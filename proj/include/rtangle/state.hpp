#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace rtangle {

// Dense three-qubit types. Amplitude index is the binary number pqr with
// qubit A as the most significant bit: index = 4p + 2q + r.
template <typename Scalar>
using Ket = Eigen::Matrix<std::complex<Scalar>, 8, 1>;
template <typename Scalar>
using Operator8 = Eigen::Matrix<std::complex<Scalar>, 8, 8>;
template <typename Scalar>
using Operator2 = Eigen::Matrix<std::complex<Scalar>, 2, 2>;

using Ket8cd = Ket<double>;
using Matrix8cd = Operator8<double>;

inline constexpr double kNormTolerance = 1e-9;
inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kPsdTolerance = 1e-10;
inline constexpr double kTraceTolerance = 1e-9;
inline constexpr double kCompletenessTolerance = 1e-9;
inline constexpr double kAnnihilatedNormSq = 1e-30;
inline constexpr double kDefaultRankCutoff = 1e-12;

class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class Qubit { A, B, C };

/// Bit position of a qubit inside the amplitude index (A = 2, B = 1, C = 0).
constexpr int bit_position(Qubit q) {
  switch (q) {
    case Qubit::A: return 2;
    case Qubit::B: return 1;
    case Qubit::C: return 0;
  }
  return 0;
}

char qubit_label(Qubit q);
Qubit parse_qubit(char label);

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const auto z = m(i, j);
      if (!std::isfinite(std::real(z)) || !std::isfinite(std::imag(z))) return false;
    }
  return true;
}

/// Applies a 2x2 operator to one qubit of a three-qubit vector.
template <typename DerivedOp, typename DerivedKet>
Ket<typename DerivedKet::RealScalar> apply_on_qubit(const Eigen::MatrixBase<DerivedOp>& op, Qubit target,
                                                    const Eigen::MatrixBase<DerivedKet>& psi) {
  EIGEN_STATIC_ASSERT_VECTOR_SPECIFIC_SIZE(DerivedKet, 8);
  const int mask = 1 << bit_position(target);
  Ket<typename DerivedKet::RealScalar> out;
  for (int idx = 0; idx < 8; ++idx) {
    if (idx & mask) continue;
    const auto lo = psi(idx);
    const auto hi = psi(idx | mask);
    out(idx) = op(0, 0) * lo + op(0, 1) * hi;
    out(idx | mask) = op(1, 0) * lo + op(1, 1) * hi;
  }
  return out;
}

/// Embeds a single-qubit operator into the 8x8 space (identity elsewhere).
template <typename DerivedOp>
Operator8<typename DerivedOp::RealScalar> embed_local(const Eigen::MatrixBase<DerivedOp>& op, Qubit target) {
  Operator8<typename DerivedOp::RealScalar> out;
  for (int col = 0; col < 8; ++col) {
    out.col(col) = apply_on_qubit(op, target, Ket<typename DerivedOp::RealScalar>::Unit(col));
  }
  return out;
}

/// Three-qubit pure state vector. Either normalized (within kNormTolerance)
/// or explicitly flagged as an unnormalized intermediate.
class PureState {
 public:
  enum class Normalization { Reject, Renormalize };

  static PureState normalized(const Ket8cd& amplitudes, Normalization mode = Normalization::Reject);
  static PureState unnormalized(const Ket8cd& amplitudes);
  static PureState basis(int index);

  const Ket8cd& amplitudes() const { return amp_; }
  std::complex<double> operator[](int index) const { return amp_(index); }
  bool is_normalized() const { return normalized_; }
  double norm_squared() const { return amp_.squaredNorm(); }

  /// Rescales to unit norm. Throws ValidationError on a zero vector.
  PureState renormalized() const;

 private:
  PureState(const Ket8cd& amplitudes, bool normalized) : amp_(amplitudes), normalized_(normalized) {}

  Ket8cd amp_;
  bool normalized_;
};

/// |<a|b>| >= 1 - tol for unit vectors, i.e. equality up to a global phase.
bool equal_up_to_phase(const PureState& a, const PureState& b, double tol = 1e-10);

struct EnsembleMember {
  double weight;
  PureState state;
};

/// Pure-state decomposition {q_i, |psi_i>} of a mixed state.
class WeightedEnsemble {
 public:
  explicit WeightedEnsemble(std::vector<EnsembleMember> members);

  const std::vector<EnsembleMember>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  const EnsembleMember& operator[](std::size_t i) const { return members_[i]; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

 private:
  std::vector<EnsembleMember> members_;
};

/// 8x8 Hermitian, positive semidefinite, unit-trace matrix.
class DensityMatrix {
 public:
  /// Validates against the Hermitian/PSD/trace tolerances.
  explicit DensityMatrix(const Matrix8cd& entries);

  /// Symmetrizes (X + X^dagger)/2 first, for matrices produced by arithmetic.
  static DensityMatrix from_hermitian_part(const Matrix8cd& entries);
  static DensityMatrix pure(const PureState& psi);

  const Matrix8cd& matrix() const { return rho_; }
  std::complex<double> operator()(int row, int col) const { return rho_(row, col); }

 private:
  Matrix8cd rho_;
};

class LocalOperator {
 public:
  LocalOperator(const Eigen::Matrix2cd& m, Qubit target);

  const Eigen::Matrix2cd& matrix() const { return m_; }
  Qubit target() const { return target_; }

 private:
  Eigen::Matrix2cd m_;
  Qubit target_;
};

/// Kraus operators {M_j} on one shared target qubit.
class MeasurementSet {
 public:
  explicit MeasurementSet(std::vector<LocalOperator> operators);

  const std::vector<LocalOperator>& operators() const { return ops_; }
  std::size_t size() const { return ops_.size(); }
  Qubit target() const { return ops_.front().target(); }

 private:
  std::vector<LocalOperator> ops_;
};

struct CompletenessReport {
  double max_deviation;
  bool pass;
};

struct LocalAction {
  PureState state;  // M|psi>, unnormalized
  double norm_sq;   // <psi|M^dagger M|psi>

  bool annihilated() const { return norm_sq < kAnnihilatedNormSq; }
  PureState normalized_state() const;
};

DensityMatrix ensemble_to_density(const WeightedEnsemble& ensemble);

/// Spectral ensemble: eigenvalues above `cutoff` as weights, eigenvectors as states.
WeightedEnsemble density_eigendecomposition(const DensityMatrix& rho, double cutoff = kDefaultRankCutoff);

/// Number of eigenvalues above `cutoff`.
int numerical_rank(const DensityMatrix& rho, double cutoff = kDefaultRankCutoff);

LocalAction apply_local(const LocalOperator& op, const PureState& psi);

CompletenessReport validate_measurement(const MeasurementSet& ms);

/// M rho M^dagger (unnormalized).
Matrix8cd conjugate_by(const LocalOperator& op, const Matrix8cd& rho);

double max_entry_distance(const Matrix8cd& lhs, const Matrix8cd& rhs);

}  // namespace rtangle
