#include <gtest/gtest.h>

#include "rtangle/state.hpp"
#include "test_util.hpp"

using namespace rtangle;

TEST(PureStateTest, RejectsUnnormalizedByDefault) {
  Ket8cd v = Ket8cd::Zero();
  v(0) = 1.0;
  v(7) = 1.0;
  EXPECT_THROW(PureState::normalized(v), ValidationError);
  const PureState psi = PureState::normalized(v, PureState::Normalization::Renormalize);
  EXPECT_NEAR(psi.norm_squared(), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(psi[0]), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(PureStateTest, RejectsNonFinite) {
  Ket8cd v = Ket8cd::Zero();
  v(0) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(PureState::normalized(v), ValidationError);
  EXPECT_THROW(PureState::unnormalized(v), ValidationError);
  EXPECT_THROW(PureState::normalized(Ket8cd::Zero(), PureState::Normalization::Renormalize), ValidationError);
}

TEST(PureStateTest, BasisIndexing) {
  const PureState psi = PureState::basis(4);  // |100>
  EXPECT_EQ(psi[4], std::complex<double>(1.0));
  EXPECT_THROW(PureState::basis(8), ValidationError);
}

TEST(PureStateTest, EqualUpToPhase) {
  std::mt19937_64 rng(1);
  const PureState psi = sample::random_state(rng);
  const PureState rotated = PureState::normalized(psi.amplitudes() * std::polar(1.0, 0.7));
  EXPECT_TRUE(equal_up_to_phase(psi, rotated));
  EXPECT_FALSE(equal_up_to_phase(psi, sample::random_state(rng)));
}

TEST(EnsembleTest, ValidatesWeights) {
  const PureState zero = PureState::basis(0);
  EXPECT_THROW(WeightedEnsemble({}), ValidationError);
  EXPECT_THROW(WeightedEnsemble({{0.5, zero}, {0.4, zero}}), ValidationError);
  EXPECT_THROW(WeightedEnsemble({{-0.1, zero}, {1.1, zero}}), ValidationError);
  EXPECT_THROW(WeightedEnsemble({{1.0, PureState::unnormalized(2.0 * zero.amplitudes())}}), ValidationError);
  EXPECT_NO_THROW(WeightedEnsemble({{0.25, zero}, {0.75, PureState::basis(3)}}));
}

TEST(EnsembleTest, ErrorNamesOffendingMember) {
  try {
    WeightedEnsemble({{0.5, PureState::basis(0)}, {0.5, PureState::unnormalized(Ket8cd::Ones())}});
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("member 1"), std::string::npos) << e.what();
  }
}

TEST(DensityMatrixTest, RejectsInvalidMatrices) {
  Matrix8cd m = Matrix8cd::Zero();
  m(0, 0) = 1.0;
  EXPECT_NO_THROW(DensityMatrix{m});
  Matrix8cd bad_trace = 0.5 * m;
  EXPECT_THROW(DensityMatrix{bad_trace}, ValidationError);
  Matrix8cd non_herm = m;
  non_herm(0, 1) = 0.1;
  EXPECT_THROW(DensityMatrix{non_herm}, ValidationError);
  Matrix8cd negative = Matrix8cd::Zero();
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  EXPECT_THROW(DensityMatrix{negative}, ValidationError);
}

TEST(DensityMatrixTest, EnsembleRoundTripThroughEigendecomposition) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const WeightedEnsemble e({{0.5, sample::random_state(rng)},
                              {0.3, sample::random_state(rng)},
                              {0.2, sample::random_state(rng)}});
    const DensityMatrix rho = ensemble_to_density(e);
    EXPECT_NEAR(rho.matrix().trace().real(), 1.0, 1e-12);
    const WeightedEnsemble eig = density_eigendecomposition(rho);
    EXPECT_EQ(eig.size(), 3u);
    EXPECT_EQ(numerical_rank(rho), 3);
    for (std::size_t k = 1; k < eig.size(); ++k) EXPECT_GE(eig[k - 1].weight, eig[k].weight);
    EXPECT_LT(max_entry_distance(ensemble_to_density(eig).matrix(), rho.matrix()), 1e-12);
  }
}

TEST(DensityMatrixTest, PureStateHasRankOne) {
  std::mt19937_64 rng(3);
  const PureState psi = sample::random_state(rng);
  const DensityMatrix rho = DensityMatrix::pure(psi);
  EXPECT_EQ(numerical_rank(rho), 1);
  const WeightedEnsemble eig = density_eigendecomposition(rho);
  ASSERT_EQ(eig.size(), 1u);
  EXPECT_TRUE(equal_up_to_phase(eig[0].state, psi));
}

TEST(LocalOperatorTest, QubitOrderingIsMostSignificantFirst) {
  const Eigen::Matrix2cd x{{0.0, 1.0}, {1.0, 0.0}};
  const PureState zero = PureState::basis(0);
  EXPECT_EQ(apply_local(LocalOperator(x, Qubit::A), zero).state[4], std::complex<double>(1.0));
  EXPECT_EQ(apply_local(LocalOperator(x, Qubit::B), zero).state[2], std::complex<double>(1.0));
  EXPECT_EQ(apply_local(LocalOperator(x, Qubit::C), zero).state[1], std::complex<double>(1.0));
}

TEST(LocalOperatorTest, ApplyMatchesKroneckerEmbedding) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const Qubit q = sample::random_qubit(rng);
    const LocalOperator op(sample::random_matrix2(rng), q);
    const PureState psi = sample::random_state(rng);
    const Ket8cd direct = apply_local(op, psi).state.amplitudes();
    const Ket8cd via = embed_local(op.matrix(), q) * psi.amplitudes();
    EXPECT_LT((direct - via).norm(), 1e-13);
  }
}

TEST(LocalOperatorTest, AnnihilatedStateFlagged) {
  const Eigen::Matrix2cd proj1{{0.0, 0.0}, {0.0, 1.0}};
  const LocalAction act = apply_local(LocalOperator(proj1, Qubit::A), PureState::basis(0));
  EXPECT_TRUE(act.annihilated());
  EXPECT_THROW(act.normalized_state(), DomainError);
}

TEST(MeasurementTest, CompletenessCheck) {
  const double s10 = std::sqrt(10.0);
  const MeasurementSet complete({LocalOperator(Eigen::Matrix2cd{{1.0, 0.0}, {0.0, 1.0 / s10}}, Qubit::A),
                                 LocalOperator(Eigen::Matrix2cd{{0.0, 0.0}, {0.0, 3.0 / s10}}, Qubit::A)});
  EXPECT_TRUE(validate_measurement(complete).pass);
  EXPECT_LT(validate_measurement(complete).max_deviation, 1e-15);

  const MeasurementSet partial({LocalOperator(Eigen::Matrix2cd{{1.0, 0.0}, {0.0, 1.0 / s10}}, Qubit::A)});
  const CompletenessReport r = validate_measurement(partial);
  EXPECT_FALSE(r.pass);
  EXPECT_NEAR(r.max_deviation, 0.9, 1e-15);
}

TEST(MeasurementTest, MixedTargetsRejected) {
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  EXPECT_THROW(MeasurementSet({LocalOperator(id, Qubit::A), LocalOperator(id, Qubit::B)}), ValidationError);
  EXPECT_THROW(MeasurementSet({}), ValidationError);
}

TEST(QubitTest, Labels) {
  EXPECT_EQ(parse_qubit('B'), Qubit::B);
  EXPECT_EQ(qubit_label(Qubit::C), 'C');
  EXPECT_THROW(parse_qubit('D'), ValidationError);
}
