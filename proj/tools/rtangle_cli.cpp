// rtangle: command-line front end for the three-qubit r-tangle library.
//
// Exit codes:
//   0  success
//   1  verify-appendix-a: at least one check failed
//   2  malformed arguments or state file
//   3  normalization / validity violation
//   4  decomposition size below the rank of the input
//   5  incomplete Kraus set
//   6  output path not writable

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rtangle/counterexample.hpp"
#include "rtangle/ghzw.hpp"
#include "rtangle/invariants.hpp"
#include "rtangle/roof.hpp"
#include "rtangle/slocc.hpp"
#include "rtangle/state.hpp"
#include "rtangle/state_io.hpp"

namespace {

using namespace rtangle;

enum ExitCode : int {
  kOk = 0,
  kCheckFailed = 1,
  kParseError = 2,
  kNotNormalized = 3,
  kRankTooLarge = 4,
  kIncompleteKraus = 5,
  kUnwritable = 6,
};

struct CliFailure {
  int code;
  std::string message;
};

std::complex<double> parse_complex(const std::string& text) {
  std::istringstream in(text);
  double re = 0.0, im = 0.0;
  char sep = 0;
  if (!(in >> re)) throw CliFailure{kParseError, "cannot parse complex value '" + text + "'"};
  if (in >> sep) {
    if (sep != ',' || !(in >> im)) throw CliFailure{kParseError, "expected 're' or 're,im', got '" + text + "'"};
  }
  in >> std::ws;
  if (!in.eof()) throw CliFailure{kParseError, "trailing characters in '" + text + "'"};
  return {re, im};
}

std::string format_complex(std::complex<double> z) {
  std::ostringstream out;
  out << std::setprecision(15) << "(" << z.real() << ", " << z.imag() << ")";
  return out.str();
}

/// "n/d" when x is within 1e-12 of a fraction with denominator <= 10000.
std::optional<std::string> rational_form(double x) {
  if (!std::isfinite(x)) return std::nullopt;
  for (long d = 1; d <= 10000; ++d) {
    const double n = std::round(x * d);
    if (std::abs(x - n / d) <= 1e-12) {
      if (d == 1) return std::to_string(static_cast<long>(n));
      return std::to_string(static_cast<long>(n)) + "/" + std::to_string(d);
    }
  }
  return std::nullopt;
}

std::string with_fraction(double x) {
  std::ostringstream out;
  out << std::setprecision(15) << x;
  if (const auto r = rational_form(x); r && r->find('/') != std::string::npos) out << "  (" << *r << ")";
  return out.str();
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("RTANGLE_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw CliFailure{kParseError, std::string("RTANGLE_SEED is not an unsigned integer: ") + env};
    }
  }
  return 0;
}

WeightedEnsemble ensemble_from(const StateFileContent& content, bool renormalize) {
  if (const auto* raw = std::get_if<RawPureState>(&content)) {
    const auto mode = renormalize ? PureState::Normalization::Renormalize : PureState::Normalization::Reject;
    return WeightedEnsemble({{1.0, PureState::normalized(raw->amplitudes, mode)}});
  }
  if (const auto* e = std::get_if<WeightedEnsemble>(&content)) return *e;
  if (const auto* rho = std::get_if<DensityMatrix>(&content)) return density_eigendecomposition(*rho);
  throw CliFailure{kParseError, "expected a pure state, ensemble or density matrix file"};
}

DensityMatrix density_from(const StateFileContent& content, bool renormalize) {
  if (const auto* rho = std::get_if<DensityMatrix>(&content)) return *rho;
  return ensemble_to_density(ensemble_from(content, renormalize));
}

void print_ensemble(std::ostream& out, const WeightedEnsemble& e, const std::string& indent) {
  for (std::size_t i = 0; i < e.size(); ++i) {
    out << indent << "member " << i << ": weight " << with_fraction(e[i].weight)
        << ", sqrt_tau " << std::setprecision(12) << invariants(e[i].state).sqrt_tau << "\n";
  }
}

// ---------------------------------------------------------------------------

struct MixtureArgs {
  std::string a = "0.70710678118654752";
  std::string b = "0.70710678118654752";
  std::string c = "0.57735026918962576";
  std::string d = "0.57735026918962576";
  std::string f = "0.57735026918962576";
  bool renormalize = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--a", a, "gGHZ amplitude on |000> ('re' or 're,im')")->capture_default_str();
    cmd->add_option("--b", b, "gGHZ amplitude on |111>")->capture_default_str();
    cmd->add_option("--c", c, "gW amplitude on |001>")->capture_default_str();
    cmd->add_option("--d", d, "gW amplitude on |010>")->capture_default_str();
    cmd->add_option("--f", f, "gW amplitude on |100>")->capture_default_str();
    cmd->add_flag("--renormalize", renormalize, "rescale (a,b) and (c,d,f) to unit norm");
  }

  GhzWMixture build(double p) const {
    GhzWMixture mix{parse_complex(a), parse_complex(b), parse_complex(c), parse_complex(d), parse_complex(f), p};
    if (renormalize) mix = mix.renormalized();
    mix.validate();
    return mix;
  }
};

int cmd_pure(const std::string& file, bool renormalize) {
  const auto content = load_state_file(file);
  const auto* raw = std::get_if<RawPureState>(&content);
  if (!raw) throw CliFailure{kParseError, file + ": expected a pure state file with \"amplitudes\""};
  const auto mode = renormalize ? PureState::Normalization::Renormalize : PureState::Normalization::Reject;
  const PureState psi = PureState::normalized(raw->amplitudes, mode);
  const auto inv = invariants(psi);
  std::cout << "d1       = " << format_complex(inv.d1) << "\n"
            << "d2       = " << format_complex(inv.d2) << "\n"
            << "d3       = " << format_complex(inv.d3) << "\n"
            << "hyperdet = " << format_complex(inv.hyperdet) << "\n"
            << std::fixed << std::setprecision(15) << "tau      = " << inv.tau << "\n"
            << "sqrt_tau = " << inv.sqrt_tau << "\n";
  return kOk;
}

int cmd_mixture(const MixtureArgs& args, double p, bool numeric, const RoofOptions& roof) {
  const GhzWMixture mix = args.build(p);
  const MixtureAnalysis info = analyze(mix);
  std::cout << std::setprecision(15) << "s         = " << info.s << "\n"
            << "tilde_phi = " << info.tilde_phi << "\n"
            << "p0        = " << info.p0 << "\n"
            << "branch    = " << branch_name(info.branch) << "\n"
            << "rtangle   = " << info.rtangle << "\n";
  if (info.limit_case()) {
    std::cout << "note      = limit case (" << degeneracy_name(info.degeneracy)
              << "), closed form assumes nonzero a, b, c, d, f\n";
  }
  if (numeric) {
    const RoofResult r = roof_minimize(mixture_density(mix), RoofFunctional::SqrtTau, roof);
    std::cout << "numeric   = " << r.value << "\n"
              << "gap       = " << r.value - info.rtangle << "\n"
              << "converged = " << (r.converged ? "yes" : "no") << " (best of " << r.restarts_used
              << " restarts: #" << r.best_restart_index << ")\n";
  }
  return kOk;
}

int cmd_roof(const std::string& file, RoofFunctional functional, const RoofOptions& opts, bool renormalize,
             const std::optional<std::string>& out_path) {
  const DensityMatrix rho = density_from(load_state_file(file), renormalize);
  const int rank = numerical_rank(rho);
  if (rank > opts.ensemble_size) {
    throw CliFailure{kRankTooLarge, "density matrix has rank " + std::to_string(rank) + " but --size is " +
                                        std::to_string(opts.ensemble_size) + "; use --size " +
                                        std::to_string(rank) + " or larger"};
  }
  if (out_path) {
    std::ofstream probe(*out_path);
    if (!probe) throw CliFailure{kUnwritable, *out_path + ": cannot open for writing"};
  }
  const RoofResult r = roof_minimize(rho, functional, opts);
  std::cout << std::setprecision(15) << "functional    = " << functional_name(functional) << "\n"
            << "rank          = " << rank << "\n"
            << "value         = " << r.value << "\n"
            << "restarts_used = " << r.restarts_used << "\n"
            << "best_restart  = " << r.best_restart_index << "\n"
            << "converged     = " << (r.converged ? "yes" : "no") << "\n";
  print_ensemble(std::cout, r.ensemble, "  ");
  if (out_path) {
    try {
      write_json_file(*out_path, to_json(r.ensemble));
    } catch (const std::runtime_error& e) {
      throw CliFailure{kUnwritable, e.what()};
    }
  }
  return kOk;
}

std::string outcome_path(const std::string& prefix, int j) { return prefix + "_out" + std::to_string(j) + ".json"; }

int cmd_slocc(const std::string& ensemble_file, const std::string& kraus_file, std::optional<double> rtangle_in,
              std::optional<std::string> out_prefix, bool renormalize) {
  const WeightedEnsemble input = ensemble_from(load_state_file(ensemble_file), renormalize);
  const auto kraus_content = load_state_file(kraus_file);
  const auto* ms = std::get_if<MeasurementSet>(&kraus_content);
  if (!ms) throw CliFailure{kParseError, kraus_file + ": expected a Kraus file with \"operators\""};
  const CompletenessReport completeness = validate_measurement(*ms);
  if (!completeness.pass) {
    std::ostringstream msg;
    msg << "Kraus set is incomplete: max |sum M^dagger M - I| = " << completeness.max_deviation;
    throw CliFailure{kIncompleteKraus, msg.str()};
  }
  const std::string prefix = out_prefix.value_or(
      (std::filesystem::path(ensemble_file).parent_path() / std::filesystem::path(ensemble_file).stem()).string());

  const auto family = match_family(input);
  const std::optional<double> closed_in = family ? std::optional<double>(analyze(*family).rtangle) : std::nullopt;

  const auto outcomes = measure(input, *ms, rtangle_in);
  std::cout << "target qubit " << qubit_label(ms->target()) << ", " << outcomes.size() << " outcome(s)\n";
  if (closed_in) std::cout << "input is a gGHZ/gW mixture, closed-form t_r = " << std::setprecision(12) << *closed_in << "\n";
  for (const auto& o : outcomes) {
    std::cout << "outcome " << o.index << ":\n"
              << "  p       = " << with_fraction(o.probability) << "\n";
    if (o.empty()) {
      std::cout << "  empty outcome\n";
      continue;
    }
    std::cout << "  alpha   = " << std::setprecision(15) << o.alpha << "\n"
              << "  alpha^2 = " << with_fraction(o.alpha * o.alpha) << "\n";
    if (o.rtangle_propagated) std::cout << "  t_r     = " << *o.rtangle_propagated << "  (alpha * t_r_in)\n";
    if (closed_in) {
      if (const auto post_family = match_family(*o.post_ensemble)) {
        std::cout << "  closed-form t_r = " << analyze(*post_family).rtangle
                  << ", alpha * closed-form t_r_in = " << propagate_rtangle(*closed_in, o.alpha) << "\n";
      }
    }
    print_ensemble(std::cout, *o.post_ensemble, "  ");
    const std::string path = outcome_path(prefix, o.index);
    try {
      write_json_file(path, to_json(*o.post_ensemble));
    } catch (const std::runtime_error& e) {
      throw CliFailure{kUnwritable, e.what()};
    }
    std::cout << "  written to " << path << "\n";
  }
  return kOk;
}

int cmd_verify(const counterexample::VerifyOptions& opts) {
  const auto checks = counterexample::verify(opts);
  bool all = true;
  std::cout << std::left << std::setw(30) << "check" << std::setw(30) << "expected" << std::setw(22) << "value"
            << std::setw(22) << "computed" << "result\n";
  for (const auto& c : checks) {
    std::ostringstream ev, cv;
    ev << std::setprecision(12) << c.expected_value;
    cv << std::setprecision(12) << c.computed;
    std::cout << std::left << std::setw(30) << c.name << std::setw(30) << c.expected << std::setw(22) << ev.str()
              << std::setw(22) << cv.str() << (c.pass ? "PASS" : "FAIL") << "\n";
    all = all && c.pass;
  }
  if (!all) {
    std::cout << "failures:";
    for (const auto& c : checks)
      if (!c.pass) std::cout << " [" << c.name << "]";
    std::cout << "\n";
  }
  return all ? kOk : kCheckFailed;
}

int cmd_sweep(const MixtureArgs& args, int steps, const std::string& out_path, const RoofOptions& roof) {
  if (steps < 2) throw CliFailure{kParseError, "--steps must be >= 2"};
  const GhzWMixture base = args.build(1.0);
  std::ofstream out(out_path);
  if (!out) throw CliFailure{kUnwritable, out_path + ": cannot open for writing"};
  out << "p,rtangle_analytic,rtangle_numeric,p0,branch\n" << std::setprecision(17);
  for (int k = 0; k <= steps; ++k) {
    const GhzWMixture mix = base.with_p(static_cast<double>(k) / steps);
    const MixtureAnalysis info = analyze(mix);
    const double numeric = roof_minimize(mixture_density(mix), RoofFunctional::SqrtTau, roof).value;
    out << mix.p << ',' << info.rtangle << ',' << numeric << ',' << info.p0 << ',' << branch_name(info.branch) << '\n';
  }
  if (!out) throw CliFailure{kUnwritable, out_path + ": write failed"};
  std::cout << "wrote " << steps + 1 << " rows to " << out_path << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"r-tangle toolkit for three-qubit states"};
  app.require_subcommand(1);

  bool renormalize = false;
  std::optional<std::uint64_t> seed;
  RoofOptions roof;
  int result = kOk;
  std::function<int()> action;

  auto add_roof_options = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "RNG seed (default: $RTANGLE_SEED or 0)");
    cmd->add_option("--restarts", roof.restarts, "optimizer restarts")->capture_default_str();
    cmd->add_option("--size", roof.ensemble_size, "decomposition size m")->capture_default_str();
    cmd->add_option("--iterations", roof.max_iterations, "simplex iterations per stage")->capture_default_str();
  };

  auto* pure = app.add_subcommand("pure", "invariants of a pure state file");
  std::string pure_file;
  pure->add_option("file", pure_file, "pure state JSON")->required();
  pure->add_flag("--renormalize", renormalize, "rescale instead of rejecting an unnormalized state");
  pure->callback([&] { action = [&] { return cmd_pure(pure_file, renormalize); }; });

  auto* mixture = app.add_subcommand("mixture", "closed-form r-tangle of p gGHZ + (1-p) gW");
  MixtureArgs mix_args;
  double p = 0.0;
  bool numeric = false;
  mix_args.attach(mixture);
  mixture->add_option("--p", p, "GHZ weight p in [0, 1]")->required();
  mixture->add_flag("--numeric", numeric, "also run the numeric convex roof");
  add_roof_options(mixture);
  mixture->callback([&] {
    action = [&] {
      roof.seed = resolve_seed(seed);
      return cmd_mixture(mix_args, p, numeric, roof);
    };
  });

  auto* roof_cmd = app.add_subcommand("roof", "numeric convex roof of a density/ensemble file");
  std::string roof_file, functional = "sqrt-tau";
  std::optional<std::string> roof_out;
  roof_cmd->add_option("file", roof_file, "density, ensemble or pure state JSON")->required();
  roof_cmd->add_option("--functional", functional, "sqrt-tau or tau")
      ->check(CLI::IsMember({"sqrt-tau", "tau"}))
      ->capture_default_str();
  roof_cmd->add_option("--out", roof_out, "write the best ensemble as JSON");
  roof_cmd->add_flag("--renormalize", renormalize, "rescale an unnormalized pure state");
  add_roof_options(roof_cmd);
  roof_cmd->callback([&] {
    action = [&] {
      roof.seed = resolve_seed(seed);
      const auto f = functional == "tau" ? RoofFunctional::Tau : RoofFunctional::SqrtTau;
      return cmd_roof(roof_file, f, roof, renormalize, roof_out);
    };
  });

  auto* slocc = app.add_subcommand("slocc", "apply a single-qubit measurement to an ensemble");
  std::string ens_file, kraus_file;
  std::optional<double> rtangle_in;
  std::optional<std::string> out_prefix;
  slocc->add_option("ensemble", ens_file, "ensemble, density or pure state JSON")->required();
  slocc->add_option("kraus", kraus_file, "Kraus operator JSON")->required();
  slocc->add_option("--rtangle-in", rtangle_in, "known r-tangle of the input, propagated per outcome");
  slocc->add_option("--out-prefix", out_prefix, "prefix for <prefix>_out<j>.json (default: input path stem)");
  slocc->add_flag("--renormalize", renormalize, "rescale an unnormalized pure state");
  slocc->callback([&] {
    action = [&] { return cmd_slocc(ens_file, kraus_file, rtangle_in, out_prefix, renormalize); };
  });

  auto* verify = app.add_subcommand("verify-appendix-a", "reproduce the GHZ/W tangle counterexample");
  counterexample::VerifyOptions verify_opts;
  verify->add_option("--tol", verify_opts.numeric_tolerance, "tolerance for the numeric-roof rows")
      ->capture_default_str();
  add_roof_options(verify);
  verify->callback([&] {
    action = [&] {
      roof.seed = resolve_seed(seed);
      verify_opts.roof = roof;
      return cmd_verify(verify_opts);
    };
  });

  auto* sweep = app.add_subcommand("sweep", "CSV of analytic and numeric r-tangle over p in [0, 1]");
  MixtureArgs sweep_args;
  int steps = 10;
  std::string sweep_out;
  sweep_args.attach(sweep);
  sweep->add_option("--steps", steps, "grid intervals N (N+1 rows)")->capture_default_str();
  sweep->add_option("--out", sweep_out, "CSV output path")->required();
  add_roof_options(sweep);
  sweep->callback([&] {
    action = [&] {
      roof.seed = resolve_seed(seed);
      return cmd_sweep(sweep_args, steps, sweep_out, roof);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kParseError;
  }

  try {
    result = action();
  } catch (const CliFailure& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const StateFileError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kParseError;
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRankTooLarge;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNotNormalized;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNotNormalized;
  }
  return result;
}
