#include "rtangle/counterexample.hpp"

#include <cmath>

#include "rtangle/invariants.hpp"
#include "rtangle/slocc.hpp"

namespace rtangle::counterexample {

namespace {

constexpr double kExact = 1e-12;
constexpr double kCovariance = 1e-6;
constexpr double kNoncovarianceGap = 3e-3;

Check compare(std::string name, std::string expected, double expected_value, double computed, double tol,
              bool numeric) {
  const bool pass = std::abs(computed - expected_value) <= tol;
  return {std::move(name), std::move(expected), expected_value, computed, tol, numeric, pass};
}

}  // namespace

GhzWMixture input_mixture() { return GhzWMixture::standard(4.0 / 5.0); }

WeightedEnsemble input_ensemble() {
  const GhzWMixture mix = input_mixture();
  return WeightedEnsemble({{mix.p, ghz_state(mix)}, {1.0 - mix.p, w_state(mix)}});
}

MeasurementSet measurement() {
  const double s10 = std::sqrt(10.0);
  return MeasurementSet({LocalOperator(Eigen::Matrix2cd{{1.0, 0.0}, {0.0, 1.0 / s10}}, Qubit::A),
                         LocalOperator(Eigen::Matrix2cd{{0.0, 0.0}, {0.0, 3.0 / s10}}, Qubit::A)});
}

GhzWMixture outcome0_mixture() {
  return {std::sqrt(10.0 / 11.0), std::sqrt(1.0 / 11.0), std::sqrt(10.0 / 21.0), std::sqrt(10.0 / 21.0),
          std::sqrt(1.0 / 21.0),  22.0 / 29.0};
}

double tau_input() { return (63.0 - std::sqrt(465.0)) / 90.0; }
double tau_outcome0() { return 160.0 * (9.0 - std::sqrt(6.0)) / 7569.0; }

std::vector<Check> verify(const VerifyOptions& opts) {
  std::vector<Check> checks;
  const WeightedEnsemble input = input_ensemble();
  const auto outcomes = measure(input, measurement());
  const MeasurementOutcome& out0 = outcomes.at(0);
  const MeasurementOutcome& out1 = outcomes.at(1);
  const GhzWMixture expected0 = outcome0_mixture();

  checks.push_back(compare("p_(0)", "29/50", 29.0 / 50.0, out0.probability, kExact, false));
  const auto matched = out0.post_ensemble ? match_family(*out0.post_ensemble) : std::nullopt;
  if (matched) {
    checks.push_back(compare("weight gGHZ'", "22/29", 22.0 / 29.0, matched->p, kExact, false));
    checks.push_back(compare("weight gW'", "7/29", 7.0 / 29.0, 1.0 - matched->p, kExact, false));
    checks.push_back(compare("|a'|", "sqrt(10/11)", expected0.a.real(), std::abs(matched->a), kExact, false));
    checks.push_back(compare("|b'|", "sqrt(1/11)", expected0.b.real(), std::abs(matched->b), kExact, false));
    checks.push_back(compare("|c'|", "sqrt(10/21)", expected0.c.real(), std::abs(matched->c), kExact, false));
    checks.push_back(compare("|d'|", "sqrt(10/21)", expected0.d.real(), std::abs(matched->d), kExact, false));
    checks.push_back(compare("|f'|", "sqrt(1/21)", expected0.f.real(), std::abs(matched->f), kExact, false));
  } else {
    checks.push_back({"outcome-0 family form", "gGHZ/gW pair", 1.0, 0.0, 0.0, false, false});
  }
  checks.push_back(compare("alpha_(0)^2", "250/841", 250.0 / 841.0, out0.alpha * out0.alpha, kExact, false));
  checks.push_back(compare("p_(1)", "21/50", 21.0 / 50.0, out1.probability, kExact, false));
  checks.push_back(compare("alpha_(1)", "0", 0.0, out1.alpha, kExact, false));

  const NoncovarianceReport nc = verify_tangle_noncovariance({tau_input(), tau_outcome0(), out0.alpha * out0.alpha});
  checks.push_back({"tau ratio - alpha^2", "> 3e-3 (tau not covariant)", kNoncovarianceGap, nc.gap, 0.0, false,
                    nc.noncovariant && nc.gap > kNoncovarianceGap});

  // r-tangle covariance through the closed form on both sides.
  const double tr_in = analyze(input_mixture()).rtangle;
  const double tr_out = matched ? analyze(*matched).rtangle : analyze(expected0).rtangle;
  checks.push_back(compare("t_r(rho_0) vs alpha t_r(rho)", "alpha_(0) t_r(rho)", propagate_rtangle(tr_in, out0.alpha),
                           tr_out, kCovariance, false));

  const DensityMatrix rho = ensemble_to_density(input);
  const DensityMatrix rho0 = *out0.post_density;
  const double tol = opts.numeric_tolerance;
  checks.push_back(compare("roof tau(rho)", "(63-sqrt465)/90", tau_input(),
                           roof_minimize(rho, RoofFunctional::Tau, opts.roof).value, tol, true));
  checks.push_back(compare("roof tau(rho_0)", "160(9-sqrt6)/7569", tau_outcome0(),
                           roof_minimize(rho0, RoofFunctional::Tau, opts.roof).value, tol, true));
  checks.push_back(compare("roof t_r(rho)", "closed form", tr_in,
                           roof_minimize(rho, RoofFunctional::SqrtTau, opts.roof).value, tol, true));
  checks.push_back(compare("roof t_r(rho_0)", "alpha_(0) t_r(rho)", propagate_rtangle(tr_in, out0.alpha),
                           roof_minimize(rho0, RoofFunctional::SqrtTau, opts.roof).value, tol, true));
  return checks;
}

}  // namespace rtangle::counterexample
