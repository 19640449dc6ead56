#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

namespace rtangle {

struct NelderMeadOptions {
  int max_iterations = 2000;
  double tolerance = 1e-9;    // stop when f_worst - f_best <= tolerance
  double initial_step = 0.5;  // simplex edge length along each axis
  double x_tolerance = 1e-10;  // a simplex this small counts as collapsed
};

struct NelderMeadResult {
  Eigen::VectorXd x;
  double value;
  int iterations;
  bool converged;
};

/// Adaptive Nelder-Mead (Gao & Han coefficients). When the simplex
/// collapses before the iteration budget runs out it is rebuilt around the
/// best vertex with a smaller step; the search stops once a rebuilt simplex
/// no longer improves the best value by more than `tolerance`. A simplex
/// also counts as collapsed once its diameter drops below `x_tolerance`,
/// which matters for objectives with square-root cusps.
template <typename Objective>
NelderMeadResult nelder_mead(Objective&& objective, const Eigen::VectorXd& start, const NelderMeadOptions& opts) {
  const Eigen::Index n = start.size();
  const double dim = static_cast<double>(std::max<Eigen::Index>(n, 1));
  const double reflect = 1.0;
  const double expand = 1.0 + 2.0 / dim;
  const double contract = 0.75 - 1.0 / (2.0 * dim);
  const double shrink = 1.0 - 1.0 / dim;

  std::vector<Eigen::VectorXd> simplex(n + 1);
  std::vector<double> values(n + 1);
  std::vector<Eigen::Index> order(n + 1);

  auto build = [&](const Eigen::VectorXd& base, double base_value, double step) {
    simplex[0] = base;
    values[0] = base_value;
    for (Eigen::Index i = 0; i < n; ++i) {
      simplex[i + 1] = base;
      simplex[i + 1](i) += step;
      values[i + 1] = objective(simplex[i + 1]);
    }
  };

  double step = opts.initial_step;
  build(start, objective(start), step);
  int iterations = 0;
  bool converged = false;
  double round_start_best = values[0];

  while (iterations < opts.max_iterations) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](Eigen::Index l, Eigen::Index r) { return values[l] < values[r]; });
    const Eigen::Index best = order.front();
    const Eigen::Index worst = order.back();
    const Eigen::Index second_worst = order[n > 0 ? n - 1 : 0];

    double diameter = 0.0;
    for (Eigen::Index i = 0; i <= n; ++i)
      diameter = std::max(diameter, (simplex[i] - simplex[best]).lpNorm<Eigen::Infinity>());
    if (values[worst] - values[best] <= opts.tolerance || diameter <= opts.x_tolerance) {
      if (round_start_best - values[best] <= opts.tolerance) {
        converged = true;
        break;
      }
      // Collapsed but still improving: rebuild a fresh simplex at the best vertex.
      round_start_best = values[best];
      step *= 0.5;
      const Eigen::VectorXd base = simplex[best];
      build(base, values[best], step);
      ++iterations;
      continue;
    }
    ++iterations;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i <= n; ++i)
      if (i != worst) centroid += simplex[i];
    centroid /= dim;

    const Eigen::VectorXd xr = centroid + reflect * (centroid - simplex[worst]);
    const double fr = objective(xr);
    if (fr < values[best]) {
      const Eigen::VectorXd xe = centroid + expand * (xr - centroid);
      const double fe = objective(xe);
      if (fe < fr) {
        simplex[worst] = xe;
        values[worst] = fe;
      } else {
        simplex[worst] = xr;
        values[worst] = fr;
      }
      continue;
    }
    if (fr < values[second_worst]) {
      simplex[worst] = xr;
      values[worst] = fr;
      continue;
    }
    const bool outside = fr < values[worst];
    const Eigen::VectorXd xc = outside ? Eigen::VectorXd(centroid + contract * (xr - centroid))
                                       : Eigen::VectorXd(centroid - contract * (centroid - simplex[worst]));
    const double fc = objective(xc);
    if (fc < std::min(fr, values[worst])) {
      simplex[worst] = xc;
      values[worst] = fc;
      continue;
    }
    for (Eigen::Index i = 0; i <= n; ++i) {
      if (i == best) continue;
      simplex[i] = simplex[best] + shrink * (simplex[i] - simplex[best]);
      values[i] = objective(simplex[i]);
    }
  }

  const auto best_it = std::min_element(values.begin(), values.end());
  const auto best = static_cast<std::size_t>(best_it - values.begin());
  return {simplex[best], *best_it, iterations, converged};
}

}  // namespace rtangle
