#include "rtangle/roof.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "rtangle/invariants.hpp"
#include "rtangle/nelder_mead.hpp"

namespace rtangle {

namespace {

constexpr int kMaxEnsembleSize = 8;
constexpr double kMixtureTolerance = 1e-8;
constexpr double kNegligibleWeight = 1e-14;
constexpr double kInitialStep = 0.5;

// Exponent continuation: each restart first minimizes sum q tau (gamma = 1),
// then re-minimizes with gamma lowered towards the target exponent, starting
// from the previous stage's point. sqrt tau alone has square-root cusps at
// every zero-tangle state that trap a direct simplex search.
constexpr double kExponentSchedule[] = {1.0, 0.75, 0.6, 0.5};

struct Decomposition {
  Eigen::Matrix<std::complex<double>, 8, Eigen::Dynamic> weighted_basis;  // 8 x r, columns sqrt(lambda_k) e_k
  int rank;
};

Decomposition spectral_basis(const WeightedEnsemble& eigen) {
  Decomposition d{Eigen::Matrix<std::complex<double>, 8, Eigen::Dynamic>(8, eigen.size()),
                  static_cast<int>(eigen.size())};
  for (std::size_t k = 0; k < eigen.size(); ++k) {
    d.weighted_basis.col(static_cast<Eigen::Index>(k)) = std::sqrt(eigen[k].weight) * eigen[k].state.amplitudes();
  }
  return d;
}

// Column i holds the unnormalized member sqrt(q_i) |psi_i>.
Eigen::Matrix<std::complex<double>, 8, Eigen::Dynamic> members_for(const Decomposition& d,
                                                                   const Eigen::MatrixXcd& u) {
  return d.weighted_basis * u.transpose();
}

// q * tau(psi)^gamma evaluated on the weighted member sqrt(q) |psi>.
double powered_functional(const Ket8cd& weighted_member, double gamma) {
  const double weight = weighted_member.squaredNorm();
  if (weight <= std::numeric_limits<double>::min()) return 0.0;
  return std::pow(tau_homogeneous(weighted_member), gamma) * std::pow(weight, 1.0 - 2.0 * gamma);
}

WeightedEnsemble to_ensemble(const Eigen::Matrix<std::complex<double>, 8, Eigen::Dynamic>& members) {
  std::vector<EnsembleMember> out;
  double total = 0.0;
  for (Eigen::Index i = 0; i < members.cols(); ++i) {
    const Ket8cd col = members.col(i);
    const double w = col.squaredNorm();
    if (w < kNegligibleWeight) continue;
    out.push_back({w, PureState::normalized(col, PureState::Normalization::Renormalize)});
    total += w;
  }
  for (auto& m : out) m.weight /= total;
  return WeightedEnsemble(std::move(out));
}

double ensemble_value(const WeightedEnsemble& e, RoofFunctional functional) {
  double v = 0.0;
  for (const auto& m : e) v += m.weight * pure_functional(m.state, functional);
  return v;
}

std::mt19937_64 restart_rng(std::uint64_t seed, int restart) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(restart)};
  return std::mt19937_64(seq);
}

}  // namespace

std::string_view functional_name(RoofFunctional f) {
  return f == RoofFunctional::SqrtTau ? "sqrt-tau" : "tau";
}

void RoofOptions::validate() const {
  if (ensemble_size < 1 || ensemble_size > kMaxEnsembleSize) {
    throw ParameterError("ensemble size must lie in [1, 8]");
  }
  if (restarts < 1) throw ParameterError("restarts must be >= 1");
  if (max_iterations < 1) throw ParameterError("max_iterations must be >= 1");
  if (!(tolerance >= 0.0)) throw ParameterError("tolerance must be >= 0");
}

double pure_functional(const PureState& psi, RoofFunctional functional) {
  const auto inv = invariants(psi);
  return functional == RoofFunctional::SqrtTau ? inv.sqrt_tau : inv.tau;
}

double objective_at(const DensityMatrix& rho, const WeightedEnsemble& ensemble, RoofFunctional functional) {
  Matrix8cd mixed = Matrix8cd::Zero();
  for (const auto& m : ensemble) mixed += m.weight * (m.state.amplitudes() * m.state.amplitudes().adjoint());
  const double deviation = max_entry_distance(mixed, rho.matrix());
  if (deviation > kMixtureTolerance) {
    std::ostringstream msg;
    msg << "ensemble does not mix to the density matrix (max entry deviation " << deviation << ")";
    throw ValidationError(msg.str());
  }
  return ensemble_value(ensemble, functional);
}

Eigen::MatrixXcd haar_unitary(int m, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXcd g(m, m);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = {re, im};
    }
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(m, m);
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < m; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0.0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

RoofResult roof_minimize(const DensityMatrix& rho, RoofFunctional functional, const RoofOptions& opts) {
  opts.validate();
  const WeightedEnsemble eigen = density_eigendecomposition(rho);
  const int rank = static_cast<int>(eigen.size());
  const int m = opts.ensemble_size;
  if (m < rank) {
    std::ostringstream msg;
    msg << "ensemble size " << m << " is below the rank " << rank << " of the density matrix";
    throw ParameterError(msg.str());
  }

  if (rank == 1) {
    // Pure input: every decomposition is the state itself up to phases.
    const double v = pure_functional(eigen[0].state, functional);
    return {v, WeightedEnsemble({{1.0, eigen[0].state}}), 1, 0, true, {v}};
  }

  const Decomposition basis = spectral_basis(eigen);
  const Eigen::Index dims = stiefel_dimension(m, rank);
  NelderMeadOptions nm;
  nm.max_iterations = opts.max_iterations;
  nm.tolerance = opts.tolerance;
  nm.initial_step = kInitialStep;

  double best_value = std::numeric_limits<double>::infinity();
  std::optional<WeightedEnsemble> best_ensemble;
  int best_index = 0;
  bool best_converged = false;
  std::vector<double> history;
  history.reserve(static_cast<std::size_t>(opts.restarts));

  for (int restart = 0; restart < opts.restarts; ++restart) {
    auto rng = restart_rng(opts.seed, restart);
    const Eigen::MatrixXcd start = haar_unitary(m, rng);
    double gamma = 1.0;
    auto objective = [&](const Eigen::VectorXd& angles) {
      const Eigen::MatrixXcd u = start * stiefel_from_angles<double>(angles, m, basis.rank);
      const auto members = members_for(basis, u);
      double total = 0.0;
      for (Eigen::Index i = 0; i < members.cols(); ++i) total += powered_functional(members.col(i), gamma);
      return total;
    };
    Eigen::VectorXd x = Eigen::VectorXd::Zero(dims);
    NelderMeadResult local{};
    const double target = functional == RoofFunctional::SqrtTau ? 0.5 : 1.0;
    for (double g : kExponentSchedule) {
      if (g < target) break;
      gamma = g;
      local = nelder_mead(objective, x, nm);
      x = local.x;
    }
    const Eigen::MatrixXcd u = start * stiefel_from_angles<double>(local.x, m, basis.rank);
    WeightedEnsemble candidate = to_ensemble(members_for(basis, u));
    const double value = ensemble_value(candidate, functional);
    if (value < best_value) {
      best_value = value;
      best_ensemble.emplace(std::move(candidate));
      best_index = restart;
      best_converged = local.converged;
    }
    history.push_back(best_value);
  }

  return {best_value, std::move(*best_ensemble), opts.restarts, best_index, best_converged, std::move(history)};
}

}  // namespace rtangle
