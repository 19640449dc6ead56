#include <gtest/gtest.h>

#include <algorithm>
#include <array>

#include "rtangle/invariants.hpp"
#include "test_util.hpp"

using namespace rtangle;

namespace {

PureState ghz() {
  Ket8cd v = Ket8cd::Zero();
  v(0) = v(7) = 1.0 / std::sqrt(2.0);
  return PureState::normalized(v);
}

PureState w() {
  Ket8cd v = Ket8cd::Zero();
  v(1) = v(2) = v(4) = 1.0 / std::sqrt(3.0);
  return PureState::normalized(v);
}

// Relabels qubits: new position k holds old qubit perm[k] (bit 2 = A).
Ket8cd permute_qubits(const Ket8cd& psi, const std::array<int, 3>& perm) {
  Ket8cd out;
  for (int idx = 0; idx < 8; ++idx) {
    const int bits[3] = {(idx >> 2) & 1, (idx >> 1) & 1, idx & 1};
    const int src = (bits[perm[0]] << 2) | (bits[perm[1]] << 1) | bits[perm[2]];
    out(idx) = psi(src);
  }
  return out;
}

}  // namespace

TEST(InvariantsTest, GhzAndW) {
  EXPECT_NEAR(invariants(ghz()).tau, 1.0, 1e-12);
  EXPECT_NEAR(invariants(ghz()).sqrt_tau, 1.0, 1e-12);
  EXPECT_NEAR(invariants(w()).tau, 0.0, 1e-12);
}

TEST(InvariantsTest, ProductAndBiseparableVanish) {
  EXPECT_NEAR(invariants(PureState::basis(5)).tau, 0.0, 1e-15);
  Ket8cd bell_a_b = Ket8cd::Zero();  // (|00>+|11>)_AB |0>_C
  bell_a_b(0) = bell_a_b(6) = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(invariants(PureState::normalized(bell_a_b)).tau, 0.0, 1e-15);
}

TEST(InvariantsTest, HyperdeterminantComponents) {
  const auto inv = invariants(ghz());
  EXPECT_NEAR(std::abs(inv.d1 - 0.25), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(inv.d2), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(inv.d3), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(inv.hyperdet - (inv.d1 - 2.0 * inv.d2 + 4.0 * inv.d3)), 0.0, 1e-15);
}

TEST(InvariantsTest, FamilyStateValue) {
  // sqrt_tau of sqrt(0.8) GHZ - sqrt(0.2) W, high-precision reference.
  Ket8cd v = Ket8cd::Zero();
  v(0) = v(7) = std::sqrt(0.8 / 2.0);
  v(1) = v(2) = v(4) = -std::sqrt(0.2 / 3.0);
  EXPECT_NEAR(invariants(PureState::normalized(v)).sqrt_tau, 0.682505723591691534, 1e-12);
}

TEST(InvariantsTest, LongDoubleAgreesWithDouble) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const Ket8cd psi = sample::random_ket(rng);
    const Ket<long double> wide = psi.cast<std::complex<long double>>();
    const double lo = invariants(psi).tau;
    const long double hi = invariants(wide).tau;
    EXPECT_NEAR(lo, static_cast<double>(hi), 1e-14);
  }
}

TEST(InvariantsTest, SquareRelation) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto inv = invariants(sample::random_state(rng));
    EXPECT_NEAR(inv.sqrt_tau * inv.sqrt_tau, inv.tau, 1e-12);
    EXPECT_GE(inv.tau, 0.0);
    EXPECT_LE(inv.tau, 1.0 + 1e-12);
  }
}

TEST(InvariantsTest, LocalUnitaryInvariance) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 1000; ++trial) {
    const Ket8cd psi = sample::random_ket(rng);
    Ket8cd moved = psi;
    for (Qubit q : {Qubit::A, Qubit::B, Qubit::C}) moved = apply_on_qubit(sample::random_unitary2(rng), q, moved);
    EXPECT_NEAR(invariants(moved).tau, invariants(psi).tau, 1e-10);
  }
}

TEST(InvariantsTest, PermutationInvariance) {
  std::mt19937_64 rng(23);
  std::array<int, 3> perm{0, 1, 2};
  std::vector<std::array<int, 3>> perms;
  do perms.push_back(perm);
  while (std::next_permutation(perm.begin(), perm.end()));
  for (int trial = 0; trial < 1000; ++trial) {
    const Ket8cd psi = sample::random_ket(rng);
    const double ref = invariants(psi).tau;
    EXPECT_NEAR(invariants(permute_qubits(psi, perms[trial % perms.size()])).tau, ref, 1e-10);
  }
}

TEST(InvariantsTest, HomogeneousForms) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    const Ket8cd psi = sample::random_ket(rng);
    const double scale = 0.1 + trial * 0.03;
    const Ket8cd scaled = scale * psi;
    EXPECT_NEAR(sqrt_tau_homogeneous(scaled), scale * scale * invariants(psi).sqrt_tau, 1e-12);
    EXPECT_NEAR(tau_homogeneous(scaled), std::pow(scale, 4) * invariants(psi).tau, 1e-12);
  }
}

TEST(InvariantsTest, ScalingLaw) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 1000; ++trial) {
    const PureState psi = sample::random_state(rng);
    const LocalOperator m(sample::random_matrix2(rng), sample::random_qubit(rng));
    const LocalAction act = apply_local(m, psi);
    const double p = act.norm_sq;
    const double lhs = invariants(act.normalized_state()).sqrt_tau;
    EXPECT_NEAR(lhs, alpha(m, p).alpha * invariants(psi).sqrt_tau, 1e-10);
  }
}

TEST(InvariantsTest, AlphaDomain) {
  const LocalOperator id(Eigen::Matrix2cd::Identity(), Qubit::A);
  EXPECT_DOUBLE_EQ(alpha(id, 1.0).alpha, 1.0);
  EXPECT_DOUBLE_EQ(alpha(id, 0.25).alpha, 4.0);
  EXPECT_THROW(alpha(id, 0.0), DomainError);
  EXPECT_THROW(alpha(id, -1.0), DomainError);
}
