#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "multiphase/baselines.hpp"
#include "multiphase/cq_bounds.hpp"
#include "multiphase/probes.hpp"

namespace multiphase {

/// Invalid flags or configuration (CLI exit code 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Output path could not be written (CLI exit code 4).
class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kDefaultDenseCap = 12;

/// Inclusive a:b:step grid.
struct Range {
  double start = 0.0;
  double stop = 0.0;
  double step = 1.0;

  std::vector<double> values() const;
};

Range parse_range(std::string_view text);

/// Custom amplitudes: "occ:amp;occ:amp". An occupation is either a comma list
/// ("4,0,0") or one character per mode ("400", "0N0") where 'N' stands for the
/// total photon number. Trailing entries beyond the mode count must be zero.
std::vector<std::pair<ModeOccupation, double>> parse_amplitudes(std::string_view text, int modes, int n);

/// Coefficient list "a0,a1,...,am" for the two-mode family.
std::vector<double> parse_coefficients(std::string_view text);

ProbeFamily parse_probe_family(std::string_view name);

enum class DeltaChoice { Zero, Diagonal, Optimal, Value };

struct DeltaStrategy {
  DeltaChoice choice = DeltaChoice::Optimal;
  double value = 0.0;
};

DeltaStrategy parse_delta(std::string_view text);

enum class Strategy { SeIdeal, SeCq, SeExact, Ie };

std::set<Strategy> parse_strategies(std::string_view text);
std::string_view to_string(Strategy s);

/// Builds the probe for the given photon number. Custom and two-mode probes
/// carry their own photon number and reject a mismatching n.
ProbeSpec probe_spec(ProbeFamily family, int d, int n, std::string_view amps);

/// Phase-mode moments of the probe; the generalized N00N family uses its closed
/// form so arbitrarily large N never builds a Fock space.
PhaseMoments probe_moments(const ProbeSpec& spec);

struct BoundReport {
  CqBound bound;
  double delta = 0.0;
  double trace_inverse = 0.0;
  std::optional<Regime> regime;
  /// Present only when angles were supplied and the dense path fits the cap.
  struct ThetaCheck {
    std::vector<double> theta;
    Eigen::MatrixXd qfi_at_zero;
    Eigen::MatrixXd qfi_at_theta;
    double max_difference;
  };
  std::optional<ThetaCheck> theta_check;
};

/// Throws SingularBoundError when Tr[C_Q^{-1}] does not exist.
BoundReport compute_bound(const ProbeSpec& spec, double eta, const DeltaStrategy& delta,
                          const std::vector<double>& theta = {}, int dense_cap = kDefaultDenseCap);

std::string format_bound_report(const BoundReport& report);

enum class SweepAxis { Eta, PhotonNumber };

struct SweepConfig {
  int d = 2;
  ProbeFamily family = ProbeFamily::GeneralizedNoon;
  std::string amps;
  SweepAxis axis = SweepAxis::PhotonNumber;
  Range range;
  double eta = 0.9;  ///< fixed eta for photon-number sweeps
  int n = 6;         ///< fixed N for eta sweeps
  std::set<Strategy> strategies{Strategy::SeIdeal, Strategy::SeCq, Strategy::SeExact, Strategy::Ie};
  int dense_cap = kDefaultDenseCap;
  /// When set, requesting se-exact on a grid point above the cap is a ConfigError;
  /// otherwise the field is left empty.
  bool strict_dense = true;
  int threads = 0;  ///< 0 selects hardware concurrency
};

struct SweepRow {
  double x = 0.0;
  std::optional<double> se_ideal;
  std::optional<double> se_cq;
  std::optional<double> se_exact;
  std::optional<double> ie_bound;
  std::optional<Regime> regime;
};

void validate(const SweepConfig& config);

/// One row per grid point, in grid order. Empty strategy sets yield no rows.
std::vector<SweepRow> run_sweep(const SweepConfig& config);

inline constexpr std::string_view kCsvHeader = "x,se_ideal,se_cq,se_exact,ie_bound,regime";

/// 9 significant digits, locale independent.
std::string format_number(double value);

std::string format_csv(const std::vector<SweepRow>& rows);

void write_text(const std::string& path, const std::string& text);

}  // namespace multiphase
