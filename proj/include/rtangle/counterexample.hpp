#pragma once

#include <string>
#include <vector>

#include "rtangle/ghzw.hpp"
#include "rtangle/roof.hpp"
#include "rtangle/state.hpp"

// GHZ/W counterexample showing that the mixed-state tangle does not rescale
// by alpha^2 under a local measurement, while the r-tangle rescales by alpha.
namespace rtangle::counterexample {

/// 4/5 gGHZ(1/sqrt2, 1/sqrt2) + 1/5 gW(1/sqrt3, 1/sqrt3, 1/sqrt3).
GhzWMixture input_mixture();
WeightedEnsemble input_ensemble();

/// {diag(1, 1/sqrt10), diag(0, 3/sqrt10)} on qubit A.
MeasurementSet measurement();

/// Expected outcome-0 state: 22/29 gGHZ(sqrt(10/11), sqrt(1/11)) +
/// 7/29 gW(sqrt(10/21), sqrt(10/21), sqrt(1/21)).
GhzWMixture outcome0_mixture();

double tau_input();     // (63 - sqrt 465)/90
double tau_outcome0();  // 160 (9 - sqrt 6)/7569

struct Check {
  std::string name;
  std::string expected;  // exact form where one exists
  double expected_value;
  double computed;
  double tolerance;
  bool numeric;  // depends on the stochastic roof optimizer
  bool pass;
};

struct VerifyOptions {
  RoofOptions roof;
  double numeric_tolerance = 5e-3;
};

/// Runs the whole pipeline: build rho, measure, compare against the known
/// constants, recompute both tangles with the numeric roof, and check
/// t_r(rho_0) = alpha_0 t_r(rho) through the closed form on both sides.
std::vector<Check> verify(const VerifyOptions& opts = {});

}  // namespace rtangle::counterexample
