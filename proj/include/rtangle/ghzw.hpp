#pragma once

#include <complex>
#include <optional>
#include <string_view>

#include "rtangle/state.hpp"

namespace rtangle {

/// rho(p) = p |gGHZ><gGHZ| + (1 - p) |gW><gW| with
/// gGHZ = a|000> + b|111> and gW = c|001> + d|010> + f|100>.
struct GhzWMixture {
  std::complex<double> a, b, c, d, f;
  double p = 1.0;

  /// a = b = 1/sqrt 2, c = d = f = 1/sqrt 3.
  static GhzWMixture standard(double p);

  /// Throws ValidationError unless |a|^2+|b|^2 = 1, |c|^2+|d|^2+|f|^2 = 1
  /// (within kNormTolerance) and p lies in [0, 1].
  void validate() const;

  /// Rescales (a, b) and (c, d, f) to unit norm.
  GhzWMixture renormalized() const;

  GhzWMixture with_p(double new_p) const;
};

enum class Branch { Zero, Linear };
std::string_view branch_name(Branch b);

enum class Degeneracy {
  None,
  ProductGhz,  // a b = 0: gGHZ is a product state, r-tangle identically 0
  VanishingW,  // c d f = 0: s = 0, p0 = 0, r-tangle = 2|ab| p
};
std::string_view degeneracy_name(Degeneracy d);

struct MixtureAnalysis {
  double s;          // |4cdf / (a^2 b)|
  double tilde_phi;  // arg(4cdf / (a^2 b))
  double p0;         // s^(2/3) / (1 + s^(2/3))
  double rtangle;
  Branch branch;
  Degeneracy degeneracy;

  bool limit_case() const { return degeneracy != Degeneracy::None; }
};

/// Closed-form r-tangle: 0 for p <= p0, 2|ab| (p - p0)/(1 - p0) above.
MixtureAnalysis analyze(const GhzWMixture& mix);

PureState ghz_state(const GhzWMixture& mix);
PureState w_state(const GhzWMixture& mix);
DensityMatrix mixture_density(const GhzWMixture& mix);

/// |p, phi> = sqrt(p) gGHZ - sqrt(1-p) e^{i(phi - tilde_phi/3)} gW.
///
/// The relative minus sign makes the standard hyperdeterminant reproduce
/// family_sqrt_tau, so the states vanish at (p0, 2n pi/3).
PureState family_state(const GhzWMixture& mix, double p, double phi);

/// 2|ab| sqrt|p^2 - sqrt(p (1-p)^3) e^{3 i phi} 4cdf/(a^2 b)|, evaluated in a
/// division-free form so that a b = 0 is covered.
double family_sqrt_tau(const GhzWMixture& mix, double p, double phi);

/// Decomposition attaining the closed form: the weight of rho(p) is split
/// between |0,0> or |1,0> and the three states |p0, 2n pi/3>.
WeightedEnsemble optimal_ensemble(const GhzWMixture& mix);

/// Image of the mixture under a diagonal operator on one qubit: gGHZ and gW
/// keep their form. Returns the outcome probability alongside.
struct DiagonalImage {
  GhzWMixture mixture;
  double probability;
};
DiagonalImage apply_diagonal(const GhzWMixture& mix, const LocalOperator& op);

/// Recognizes a two-member ensemble {gGHZ, gW} (either order) and reads the
/// parameters back off the amplitudes.
std::optional<GhzWMixture> match_family(const WeightedEnsemble& ensemble, double tol = 1e-9);

template <typename T>
T concavity_quartic(T p) {
  return (((T(-4) * p + T(20)) * p - T(3)) * p - T(2)) * p + T(1);
}

struct ConcavityReport {
  int grid_n;
  double quartic_min;
  double quartic_argmin;
  double max_second_difference;  // of t_r(|p,0>) over [p0, 1]
  bool quartic_positive;
  bool concave;

  bool pass() const { return quartic_positive && concave; }
};

/// Grid check that the quartic stays positive on [0, 1] and that
/// t_r(|p, 0>) has non-positive second differences (<= 1e-8) on [p0, 1].
ConcavityReport concavity_certificate(const GhzWMixture& mix, int grid_n = 10001);

}  // namespace rtangle
