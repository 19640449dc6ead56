#include "rtangle/ghzw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "rtangle/invariants.hpp"

namespace rtangle {

namespace {

using cd = std::complex<double>;

// Index of the basis state carrying each W amplitude: c|001>, d|010>, f|100>.
constexpr int kIndexC = 1;
constexpr int kIndexD = 2;
constexpr int kIndexF = 4;

double ghz_norm_sq(const GhzWMixture& m) { return std::norm(m.a) + std::norm(m.b); }
double w_norm_sq(const GhzWMixture& m) { return std::norm(m.c) + std::norm(m.d) + std::norm(m.f); }

struct Ratio {
  double s;
  double tilde_phi;
  Degeneracy degeneracy;
};

Ratio ghz_w_ratio(const GhzWMixture& mix) {
  const cd ab = mix.a * mix.b;
  const cd cdf = mix.c * mix.d * mix.f;
  if (ab == cd(0.0)) return {std::numeric_limits<double>::infinity(), 0.0, Degeneracy::ProductGhz};
  if (cdf == cd(0.0)) return {0.0, 0.0, Degeneracy::VanishingW};
  const cd z = 4.0 * cdf / (mix.a * ab);
  return {std::abs(z), std::arg(z), Degeneracy::None};
}

}  // namespace

GhzWMixture GhzWMixture::standard(double p) {
  const double h = 1.0 / std::sqrt(2.0);
  const double t = 1.0 / std::sqrt(3.0);
  return {h, h, t, t, t, p};
}

void GhzWMixture::validate() const {
  for (const cd z : {a, b, c, d, f}) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw ValidationError("mixture parameter is not finite");
  }
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream msg;
    msg << "mixing weight p = " << p << " outside [0, 1]";
    throw ValidationError(msg.str());
  }
  if (std::abs(ghz_norm_sq(*this) - 1.0) > kNormTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "|a|^2 + |b|^2 = " << ghz_norm_sq(*this) << ", expected 1";
    throw ValidationError(msg.str());
  }
  if (std::abs(w_norm_sq(*this) - 1.0) > kNormTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "|c|^2 + |d|^2 + |f|^2 = " << w_norm_sq(*this) << ", expected 1";
    throw ValidationError(msg.str());
  }
}

GhzWMixture GhzWMixture::renormalized() const {
  const double ng = std::sqrt(ghz_norm_sq(*this));
  const double nw = std::sqrt(w_norm_sq(*this));
  if (ng == 0.0 || nw == 0.0) throw ValidationError("cannot renormalize a zero GHZ or W component");
  return {a / ng, b / ng, c / nw, d / nw, f / nw, p};
}

GhzWMixture GhzWMixture::with_p(double new_p) const {
  GhzWMixture out = *this;
  out.p = new_p;
  return out;
}

std::string_view branch_name(Branch b) {
  return b == Branch::Zero ? "zero_branch" : "linear_branch";
}

std::string_view degeneracy_name(Degeneracy d) {
  switch (d) {
    case Degeneracy::None: return "none";
    case Degeneracy::ProductGhz: return "product_ghz";
    case Degeneracy::VanishingW: return "vanishing_w";
  }
  return "unknown";
}

MixtureAnalysis analyze(const GhzWMixture& mix) {
  mix.validate();
  const Ratio ratio = ghz_w_ratio(mix);
  MixtureAnalysis out{ratio.s, ratio.tilde_phi, 0.0, 0.0, Branch::Zero, ratio.degeneracy};
  switch (ratio.degeneracy) {
    case Degeneracy::ProductGhz:
      out.p0 = 1.0;
      return out;
    case Degeneracy::VanishingW:
      out.p0 = 0.0;
      break;
    case Degeneracy::None: {
      const double t = std::pow(std::cbrt(ratio.s), 2);
      out.p0 = t / (1.0 + t);
      break;
    }
  }
  if (mix.p <= out.p0) return out;
  out.branch = Branch::Linear;
  out.rtangle = 2.0 * std::abs(mix.a * mix.b) * (mix.p - out.p0) / (1.0 - out.p0);
  return out;
}

PureState ghz_state(const GhzWMixture& mix) {
  Ket8cd psi = Ket8cd::Zero();
  psi(0) = mix.a;
  psi(7) = mix.b;
  return PureState::normalized(psi);
}

PureState w_state(const GhzWMixture& mix) {
  Ket8cd psi = Ket8cd::Zero();
  psi(kIndexC) = mix.c;
  psi(kIndexD) = mix.d;
  psi(kIndexF) = mix.f;
  return PureState::normalized(psi);
}

DensityMatrix mixture_density(const GhzWMixture& mix) {
  mix.validate();
  const Ket8cd g = ghz_state(mix).amplitudes();
  const Ket8cd w = w_state(mix).amplitudes();
  return DensityMatrix::from_hermitian_part(mix.p * (g * g.adjoint()) + (1.0 - mix.p) * (w * w.adjoint()));
}

PureState family_state(const GhzWMixture& mix, double p, double phi) {
  mix.validate();
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("family_state needs p in [0, 1]");
  const double tilde_phi = ghz_w_ratio(mix).tilde_phi;
  const cd phase = std::polar(1.0, phi - tilde_phi / 3.0);
  const Ket8cd psi = std::sqrt(p) * ghz_state(mix).amplitudes() -
                     std::sqrt(1.0 - p) * phase * w_state(mix).amplitudes();
  return PureState::normalized(psi, PureState::Normalization::Renormalize);
}

double family_sqrt_tau(const GhzWMixture& mix, double p, double phi) {
  mix.validate();
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("family_sqrt_tau needs p in [0, 1]");
  const double tilde_phi = ghz_w_ratio(mix).tilde_phi;
  const cd a2b2 = mix.a * mix.a * mix.b * mix.b;
  const cd w_term = 4.0 * mix.b * mix.c * mix.d * mix.f * std::polar(1.0, 3.0 * phi - tilde_phi);
  const cd hyperdet = p * p * a2b2 - std::sqrt(p * std::pow(1.0 - p, 3)) * w_term;
  return 2.0 * std::sqrt(std::abs(hyperdet));
}

WeightedEnsemble optimal_ensemble(const GhzWMixture& mix) {
  const MixtureAnalysis info = analyze(mix);
  const double p = mix.p;
  const double p0 = info.p0;
  std::vector<EnsembleMember> members;
  auto push = [&members](double weight, PureState state) {
    if (weight > 0.0) members.push_back({weight, std::move(state)});
  };
  const double third = 2.0 * std::numbers::pi / 3.0;
  if (p <= p0 && p0 > 0.0) {
    push((p0 - p) / p0, family_state(mix, 0.0, 0.0));
    for (int n = 0; n < 3; ++n) push(p / (3.0 * p0), family_state(mix, p0, n * third));
  } else {
    push((p - p0) / (1.0 - p0), family_state(mix, 1.0, 0.0));
    for (int n = 0; n < 3; ++n) push((1.0 - p) / (3.0 * (1.0 - p0)), family_state(mix, p0, n * third));
  }
  return WeightedEnsemble(std::move(members));
}

DiagonalImage apply_diagonal(const GhzWMixture& mix, const LocalOperator& op) {
  mix.validate();
  const auto& m = op.matrix();
  const double scale = m.cwiseAbs().maxCoeff();
  if (std::abs(m(0, 1)) > 1e-14 * scale || std::abs(m(1, 0)) > 1e-14 * scale) {
    throw DomainError("apply_diagonal needs a diagonal local operator");
  }
  const int mask = 1 << bit_position(op.target());
  auto factor = [&](int index) { return (index & mask) ? m(1, 1) : m(0, 0); };

  GhzWMixture out{mix.a * factor(0), mix.b * factor(7), mix.c * factor(kIndexC), mix.d * factor(kIndexD),
                  mix.f * factor(kIndexF), mix.p};
  const double ng = ghz_norm_sq(out);
  const double nw = w_norm_sq(out);
  const double probability = mix.p * ng + (1.0 - mix.p) * nw;
  if (!(probability > 0.0)) throw DomainError("diagonal operator annihilates the mixture");
  out.p = mix.p * ng / probability;
  if (ng > 0.0) {
    out.a /= std::sqrt(ng);
    out.b /= std::sqrt(ng);
  } else {
    out.a = mix.a;
    out.b = mix.b;
  }
  if (nw > 0.0) {
    const double nrm = std::sqrt(nw);
    out.c /= nrm;
    out.d /= nrm;
    out.f /= nrm;
  } else {
    out.c = mix.c;
    out.d = mix.d;
    out.f = mix.f;
  }
  return {out, probability};
}

std::optional<GhzWMixture> match_family(const WeightedEnsemble& ensemble, double tol) {
  if (ensemble.size() != 2) return std::nullopt;
  auto support_only = [tol](const Ket8cd& psi, std::initializer_list<int> allowed) {
    for (int i = 0; i < 8; ++i) {
      if (std::find(allowed.begin(), allowed.end(), i) != allowed.end()) continue;
      if (std::abs(psi(i)) > tol) return false;
    }
    return true;
  };
  for (int ghz_slot = 0; ghz_slot < 2; ++ghz_slot) {
    const auto& g = ensemble[ghz_slot].state.amplitudes();
    const auto& w = ensemble[1 - ghz_slot].state.amplitudes();
    if (support_only(g, {0, 7}) && support_only(w, {kIndexC, kIndexD, kIndexF})) {
      GhzWMixture mix{g(0), g(7), w(kIndexC), w(kIndexD), w(kIndexF), ensemble[ghz_slot].weight};
      mix = mix.renormalized();
      mix.p = std::clamp(mix.p, 0.0, 1.0);
      return mix;
    }
  }
  return std::nullopt;
}

ConcavityReport concavity_certificate(const GhzWMixture& mix, int grid_n) {
  if (grid_n < 2) throw DomainError("concavity grid needs at least 2 points");
  ConcavityReport r{grid_n, std::numeric_limits<double>::infinity(), 0.0, 0.0, false, false};
  for (int k = 0; k < grid_n; ++k) {
    const double p = static_cast<double>(k) / (grid_n - 1);
    const double q = concavity_quartic(p);
    if (q < r.quartic_min) {
      r.quartic_min = q;
      r.quartic_argmin = p;
    }
  }
  r.quartic_positive = r.quartic_min > 0.0;

  const double p0 = analyze(mix).p0;
  double worst = -std::numeric_limits<double>::infinity();
  if (p0 < 1.0 && grid_n >= 3) {
    const double step = (1.0 - p0) / (grid_n - 1);
    auto h = [&](int k) { return family_sqrt_tau(mix, std::min(1.0, p0 + k * step), 0.0); };
    double prev = h(0), cur = h(1);
    for (int k = 2; k < grid_n; ++k) {
      const double next = h(k);
      worst = std::max(worst, prev - 2.0 * cur + next);
      prev = cur;
      cur = next;
    }
  }
  r.max_second_difference = std::isfinite(worst) ? worst : 0.0;
  r.concave = r.max_second_difference <= 1e-8;
  return r;
}

}  // namespace rtangle
