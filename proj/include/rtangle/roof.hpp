#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "rtangle/state.hpp"

namespace rtangle {

/// Pure-state functional whose convex roof is minimized.
enum class RoofFunctional { SqrtTau, Tau };

std::string_view functional_name(RoofFunctional f);

class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RoofOptions {
  int ensemble_size = 4;  // m, number of decomposition members (rank <= m <= 8)
  int restarts = 50;
  int max_iterations = 2000;  // Nelder-Mead iterations per restart
  double tolerance = 1e-9;    // objective stall
  std::uint64_t seed = 0;

  void validate() const;
};

struct RoofResult {
  double value;  // upper bound on the convex roof
  WeightedEnsemble ensemble;
  int restarts_used;
  int best_restart_index;
  bool converged;
  std::vector<double> best_history;  // best value after each restart
};

double pure_functional(const PureState& psi, RoofFunctional functional);

/// sum_i q_i F(psi_i). Throws ValidationError if the ensemble does not mix
/// to rho within 1e-8 (max entry).
double objective_at(const DensityMatrix& rho, const WeightedEnsemble& ensemble, RoofFunctional functional);

/// Searches size-m decompositions psi~_i = sum_k U_ik sqrt(lambda_k) |e_k>
/// over m x r column-orthonormal U, from `restarts` Haar-random starts.
RoofResult roof_minimize(const DensityMatrix& rho, RoofFunctional functional, const RoofOptions& opts = {});

/// Number of real coordinates of the m x r column-orthonormal chart.
constexpr int stiefel_dimension(int m, int r) { return 2 * m * r - r * r; }

/// Local chart of the m x r column-orthonormal matrices around the first r
/// columns of the identity: one complex plane rotation
/// exp([[0, -conj z], [z, 0]]), z = x + iy, for every column pair (k, l)
/// with k < r, then a phase on each of the first r columns. The origin maps
/// to the identity columns and every coordinate is regular there.
template <typename Scalar>
Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic> stiefel_from_angles(
    const Eigen::Ref<const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>>& angles, int m, int r) {
  using Cx = std::complex<Scalar>;
  using Mat = Eigen::Matrix<Cx, Eigen::Dynamic, Eigen::Dynamic>;
  eigen_assert(angles.size() == stiefel_dimension(m, r));
  Mat u = Mat::Identity(m, m);
  Eigen::Index at = 0;
  for (int k = 0; k < r; ++k) {
    for (int l = k + 1; l < m; ++l) {
      const Cx z(angles(at), angles(at + 1));
      at += 2;
      const Scalar w = std::abs(z);
      const Scalar c = std::cos(w);
      const Scalar sinc = w > Scalar(1e-300) ? std::sin(w) / w : Scalar(1);
      const Cx upper = -std::conj(z) * sinc;  // row k, col l of the rotation
      const Cx lower = z * sinc;              // row l, col k
      for (int row = 0; row < m; ++row) {
        const Cx uk = u(row, k);
        const Cx ul = u(row, l);
        u(row, k) = uk * c + ul * lower;
        u(row, l) = uk * upper + ul * c;
      }
    }
  }
  Mat out = u.leftCols(r);
  for (int k = 0; k < r; ++k) out.col(k) *= std::polar(Scalar(1), angles(at++));
  return out;
}

/// Haar-distributed m x m unitary (QR of a complex Ginibre matrix with the
/// R-diagonal phases divided out).
Eigen::MatrixXcd haar_unitary(int m, std::mt19937_64& rng);

}  // namespace rtangle
