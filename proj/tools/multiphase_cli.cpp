// multiphase: precision bounds for simultaneous multi-phase estimation under photon loss.
//
//   multiphase bound   --d 2 --n 4 --eta 0.9 --probe gnoon --delta diag
//   multiphase compare --d 2 --eta 0.9 --n-range 2:6:2
//   multiphase sweep   --d 2 --n 6 --eta-range 0.1:0.9:0.1 --strategies se-exact,ie --out sweep.csv

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "multiphase/cli.hpp"

namespace {

using namespace multiphase;

constexpr int kExitConfig = 2;
constexpr int kExitSingular = 3;
constexpr int kExitOutput = 4;

struct CommonOptions {
  int d = 2;
  std::string probe = "gnoon";
  std::string amps;
  int dense_cap = kDefaultDenseCap;
};

struct SweepOptions {
  CommonOptions common;
  std::optional<int> n;
  std::optional<double> eta;
  std::string n_range;
  std::string eta_range;
  std::string strategies = "se-ideal,se-cq,se-exact,ie";
  std::string out;
  int threads = 0;
};

void add_common(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--d", o.d, "Number of phases")->check(CLI::PositiveNumber);
  cmd->add_option("--probe", o.probe, "Probe family: gnoon | custom | ie2");
  cmd->add_option("--amps", o.amps, "custom: \"occ:amp;...\" (e.g. \"0N0:1;00N:1\"); ie2: \"a0,a1,...,aN\"");
  cmd->add_option("--dense-cap", o.dense_cap, "Largest N for dense density-matrix computations");
}

std::vector<double> parse_theta(const std::string& text) {
  if (text.empty()) return {};
  return parse_coefficients(text);
}

SweepConfig to_config(const SweepOptions& o) {
  SweepConfig c;
  c.d = o.common.d;
  c.family = parse_probe_family(o.common.probe);
  c.amps = o.common.amps;
  c.dense_cap = o.common.dense_cap;
  c.threads = o.threads;
  c.strategies = parse_strategies(o.strategies);
  const bool n_sweep = !o.n_range.empty();
  const bool eta_sweep = !o.eta_range.empty();
  if (n_sweep == eta_sweep) throw ConfigError("give exactly one of --n-range and --eta-range");
  if (n_sweep) {
    c.axis = SweepAxis::PhotonNumber;
    c.range = parse_range(o.n_range);
    if (!o.eta) throw ConfigError("--n-range needs --eta");
    c.eta = *o.eta;
  } else {
    c.axis = SweepAxis::Eta;
    c.range = parse_range(o.eta_range);
    if (!o.n) throw ConfigError("--eta-range needs --n");
    c.n = *o.n;
  }
  return c;
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    write_text(out, text);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Precision bounds for simultaneous multi-phase estimation under photon loss"};
  app.require_subcommand(1);

  CommonOptions bound_opts;
  int bound_n = 4;
  double bound_eta = 0.9;
  std::string bound_delta = "opt";
  std::string bound_theta;
  auto* bound = app.add_subcommand("bound", "Variational bound for one probe and loss level");
  add_common(bound, bound_opts);
  bound->add_option("--n", bound_n, "Total photon number")->required();
  bound->add_option("--eta", bound_eta, "Photon transmissivity in [0, 1]")->required();
  bound->add_option("--delta", bound_delta, "Gauge: zero | diag | opt | value=<x>");
  bound->add_option("--theta", bound_theta, "Comma-separated phases for the theta-covariance self-check");

  SweepOptions compare_opts;
  auto* compare = app.add_subcommand("compare", "SE vs IE table over an N or eta grid (all strategies)");
  SweepOptions sweep_opts;
  auto* sweep = app.add_subcommand("sweep", "Configurable sweep over an N or eta grid");
  for (auto [cmd, o] : {std::pair{compare, &compare_opts}, std::pair{sweep, &sweep_opts}}) {
    add_common(cmd, o->common);
    cmd->add_option("--n", o->n, "Fixed photon number for eta sweeps");
    cmd->add_option("--eta", o->eta, "Fixed transmissivity for N sweeps");
    cmd->add_option("--n-range", o->n_range, "Photon-number grid a:b:step");
    cmd->add_option("--eta-range", o->eta_range, "Transmissivity grid a:b:step");
    cmd->add_option("--out", o->out, "Output CSV path (stdout when omitted)");
    cmd->add_option("--threads", o->threads, "Worker threads (0 = all cores)");
  }
  sweep->add_option("--strategies", sweep_opts.strategies, "Comma list of se-ideal, se-cq, se-exact, ie (may be empty)")
      ->expected(0, 1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (bound->parsed()) {
      const ProbeSpec spec =
          probe_spec(parse_probe_family(bound_opts.probe), bound_opts.d, bound_n, bound_opts.amps);
      const BoundReport report =
          compute_bound(spec, bound_eta, parse_delta(bound_delta), parse_theta(bound_theta), bound_opts.dense_cap);
      std::cout << format_bound_report(report);
    } else if (compare->parsed()) {
      SweepConfig config = to_config(compare_opts);
      config.strategies = {Strategy::SeIdeal, Strategy::SeCq, Strategy::SeExact, Strategy::Ie};
      config.strict_dense = false;
      emit(compare_opts.out, format_csv(run_sweep(config)));
    } else if (sweep->parsed()) {
      emit(sweep_opts.out, format_csv(run_sweep(to_config(sweep_opts))));
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const SingularBoundError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSingular;
  } catch (const OutputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitOutput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return 0;
}
