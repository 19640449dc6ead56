#include <gtest/gtest.h>

#include "rtangle/counterexample.hpp"
#include "rtangle/ghzw.hpp"
#include "rtangle/invariants.hpp"
#include "rtangle/nelder_mead.hpp"
#include "rtangle/roof.hpp"
#include "test_util.hpp"

using namespace rtangle;

namespace {

RoofOptions quick(std::uint64_t seed = 0) {
  RoofOptions o;
  o.restarts = 8;
  o.seed = seed;
  return o;
}

}  // namespace

TEST(NelderMeadTest, Rosenbrock) {
  auto f = [](const Eigen::VectorXd& x) { return std::pow(1 - x(0), 2) + 100 * std::pow(x(1) - x(0) * x(0), 2); };
  NelderMeadOptions opts;
  opts.max_iterations = 5000;
  opts.tolerance = 1e-14;
  const auto r = nelder_mead(f, Eigen::Vector2d(-1.2, 1.0), opts);
  EXPECT_NEAR(r.x(0), 1.0, 1e-4);
  EXPECT_NEAR(r.x(1), 1.0, 1e-4);
  EXPECT_TRUE(r.converged);
}

TEST(StiefelTest, ColumnsOrthonormal) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int r = 1; r <= 3; ++r) {
    Eigen::VectorXd x(stiefel_dimension(4, r));
    for (auto& v : x) v = n(rng);
    const Eigen::MatrixXcd u = stiefel_from_angles<double>(x, 4, r);
    EXPECT_LT((u.adjoint() * u - Eigen::MatrixXcd::Identity(r, r)).norm(), 1e-13);
  }
}

TEST(HaarTest, Unitary) {
  std::mt19937_64 rng(9);
  const Eigen::MatrixXcd u = haar_unitary(5, rng);
  EXPECT_LT((u.adjoint() * u - Eigen::MatrixXcd::Identity(5, 5)).norm(), 1e-13);
}

TEST(ObjectiveTest, PureMemberAndMismatch) {
  const GhzWMixture mix = GhzWMixture::standard(0.8);
  const DensityMatrix rho = mixture_density(mix);
  const WeightedEnsemble eig = density_eigendecomposition(rho);
  EXPECT_GE(objective_at(rho, eig, RoofFunctional::SqrtTau), analyze(mix).rtangle);
  EXPECT_THROW(objective_at(rho, WeightedEnsemble({{1.0, ghz_state(mix)}}), RoofFunctional::SqrtTau), ValidationError);
  const PureState g = ghz_state(mix);
  EXPECT_NEAR(objective_at(DensityMatrix::pure(g), WeightedEnsemble({{1.0, g}}), RoofFunctional::SqrtTau), 1.0,
              1e-12);
}

TEST(RoofTest, RankOneIsExact) {
  std::mt19937_64 rng(5);
  const PureState psi = sample::random_state(rng);
  const RoofResult r = roof_minimize(DensityMatrix::pure(psi), RoofFunctional::SqrtTau);
  EXPECT_NEAR(r.value, invariants(psi).sqrt_tau, 1e-12);
  EXPECT_EQ(r.restarts_used, 1);
  EXPECT_TRUE(r.converged);
}

TEST(RoofTest, OptionValidation) {
  const DensityMatrix rho = mixture_density(GhzWMixture::standard(0.5));
  RoofOptions too_small = quick();
  too_small.ensemble_size = 1;
  EXPECT_THROW(roof_minimize(rho, RoofFunctional::SqrtTau, too_small), ParameterError);
  RoofOptions too_big = quick();
  too_big.ensemble_size = 9;
  EXPECT_THROW(roof_minimize(rho, RoofFunctional::SqrtTau, too_big), ParameterError);
  RoofOptions no_restarts = quick();
  no_restarts.restarts = 0;
  EXPECT_THROW(roof_minimize(rho, RoofFunctional::SqrtTau, no_restarts), ParameterError);
}

TEST(RoofTest, ResultIsConsistentDecomposition) {
  const GhzWMixture mix = GhzWMixture::standard(0.8);
  const DensityMatrix rho = mixture_density(mix);
  const RoofResult r = roof_minimize(rho, RoofFunctional::SqrtTau, quick());
  EXPECT_LT(max_entry_distance(ensemble_to_density(r.ensemble).matrix(), rho.matrix()), 1e-8);
  EXPECT_NEAR(objective_at(rho, r.ensemble, RoofFunctional::SqrtTau), r.value, 1e-10);
  EXPECT_GE(r.value, analyze(mix).rtangle - 1e-9);
  EXPECT_NEAR(r.value, analyze(mix).rtangle, 5e-3);
}

TEST(RoofTest, HistoryIsMonotone) {
  const RoofResult r = roof_minimize(mixture_density(GhzWMixture::standard(0.7)), RoofFunctional::SqrtTau, quick(2));
  ASSERT_EQ(static_cast<int>(r.best_history.size()), r.restarts_used);
  for (std::size_t k = 1; k < r.best_history.size(); ++k) EXPECT_LE(r.best_history[k], r.best_history[k - 1]);
}

TEST(RoofTest, Deterministic) {
  const DensityMatrix rho = mixture_density(GhzWMixture::standard(0.75));
  const double a = roof_minimize(rho, RoofFunctional::SqrtTau, quick(11)).value;
  const double b = roof_minimize(rho, RoofFunctional::SqrtTau, quick(11)).value;
  EXPECT_EQ(a, b);
}

TEST(RoofTest, ZeroBranchDetected) {
  const RoofResult r = roof_minimize(mixture_density(GhzWMixture::standard(0.4)), RoofFunctional::SqrtTau, quick());
  EXPECT_LE(r.value, 1e-4);
}

TEST(RoofTest, TauFunctionalCounterexample) {
  const DensityMatrix rho = ensemble_to_density(counterexample::input_ensemble());
  EXPECT_NEAR(roof_minimize(rho, RoofFunctional::Tau, quick()).value, counterexample::tau_input(), 5e-3);
}
