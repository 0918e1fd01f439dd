#include "multiphase/cli.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <sstream>
#include <thread>

#include "multiphase/exact_qfi.hpp"
#include "multiphase/loss_channel.hpp"

namespace multiphase {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = s.find(sep, pos);
    parts.push_back(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return parts;
}

double parse_double(std::string_view text, std::string_view what) {
  text = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw ConfigError("malformed " + std::string(what) + ": '" + std::string(text) + "'");
  return value;
}

int parse_int(std::string_view text, std::string_view what) {
  text = trim(text);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw ConfigError("malformed " + std::string(what) + ": '" + std::string(text) + "'");
  return value;
}

ModeOccupation parse_occupation(std::string_view text, int modes, int n) {
  text = trim(text);
  std::vector<int> entries;
  if (text.find(',') != std::string_view::npos) {
    for (auto part : split(text, ',')) {
      part = trim(part);
      entries.push_back(part == "N" ? n : parse_int(part, "occupation entry"));
    }
  } else {
    for (char c : text) {
      if (c == 'N') {
        entries.push_back(n);
      } else if (c >= '0' && c <= '9') {
        entries.push_back(c - '0');
      } else {
        throw ConfigError("malformed occupation: '" + std::string(text) + "'");
      }
    }
  }
  if (static_cast<int>(entries.size()) < modes)
    throw ConfigError("occupation '" + std::string(text) + "' lists fewer entries than modes");
  for (std::size_t k = static_cast<std::size_t>(modes); k < entries.size(); ++k) {
    if (entries[k] != 0) throw ConfigError("occupation '" + std::string(text) + "' lists more modes than the probe has");
  }
  entries.resize(static_cast<std::size_t>(modes));
  for (int e : entries) {
    if (e < 0) throw ConfigError("occupation entries must be non-negative");
  }
  return ModeOccupation{std::move(entries)};
}

std::optional<double> finite_or_empty(double v) {
  if (std::isfinite(v) && v >= 0.0) return v;
  return std::nullopt;
}

SweepRow compute_row(const SweepConfig& config, double x) {
  SweepRow row;
  row.x = x;
  const int n = config.axis == SweepAxis::PhotonNumber ? static_cast<int>(std::lround(x)) : config.n;
  const double eta = config.axis == SweepAxis::Eta ? x : config.eta;
  const ProbeSpec spec = probe_spec(config.family, config.d, n, config.amps);
  const auto has = [&](Strategy s) { return config.strategies.count(s) > 0; };

  const PhaseMoments moments = probe_moments(spec);
  if (has(Strategy::SeIdeal)) {
    try {
      row.se_ideal = finite_or_empty(symmetric_trace_inverse(4.0 * moments.covariance));
    } catch (const SingularBoundError&) {
    }
  }
  if (has(Strategy::SeCq) && eta > 0.0) {
    try {
      row.se_cq = finite_or_empty(*optimize_delta(moments, eta).bound.trace_inverse);
    } catch (const SingularBoundError&) {
    }
  }
  if (has(Strategy::SeExact) && n <= config.dense_cap) {
    const PureState probe = make_probe(spec);
    const auto rho = apply_loss(probe, LossChannel::uniform(config.d + 1, eta));
    row.se_exact = finite_or_empty(qfi_mixed(rho, config.d).trace_inverse);
  }
  if (has(Strategy::Ie) && n % config.d == 0) {
    row.ie_bound = finite_or_empty(ie_total_variance(config.d, n, eta).total);
  }
  if (eta > 0.0) row.regime = regime_classify(n, eta);
  return row;
}

}  // namespace

std::vector<double> Range::values() const {
  if (!(step > 0.0)) throw ConfigError("range step must be positive");
  if (stop < start) throw ConfigError("range end precedes its start");
  const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(count));
  for (long k = 0; k < count; ++k) v.push_back(start + static_cast<double>(k) * step);
  return v;
}

Range parse_range(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw ConfigError("range must have the form a:b:step, got '" + std::string(text) + "'");
  Range r{parse_double(parts[0], "range start"), parse_double(parts[1], "range end"),
          parse_double(parts[2], "range step")};
  if (!(r.step > 0.0)) throw ConfigError("range step must be positive");
  if (r.stop < r.start) throw ConfigError("range end precedes its start");
  return r;
}

std::vector<std::pair<ModeOccupation, double>> parse_amplitudes(std::string_view text, int modes, int n) {
  std::vector<std::pair<ModeOccupation, double>> terms;
  for (auto term : split(text, ';')) {
    term = trim(term);
    if (term.empty()) continue;
    const auto colon = term.rfind(':');
    if (colon == std::string_view::npos) throw ConfigError("amplitude term must be occupation:amplitude");
    terms.emplace_back(parse_occupation(term.substr(0, colon), modes, n),
                       parse_double(term.substr(colon + 1), "amplitude"));
  }
  if (terms.empty()) throw ConfigError("no amplitude terms given");
  return terms;
}

std::vector<double> parse_coefficients(std::string_view text) {
  std::vector<double> c;
  for (auto part : split(text, ',')) c.push_back(parse_double(part, "coefficient"));
  return c;
}

ProbeFamily parse_probe_family(std::string_view name) {
  if (name == "gnoon") return ProbeFamily::GeneralizedNoon;
  if (name == "custom") return ProbeFamily::Custom;
  if (name == "ie2") return ProbeFamily::IeTwoMode;
  throw ConfigError("unknown probe family '" + std::string(name) + "'");
}

DeltaStrategy parse_delta(std::string_view text) {
  if (text == "zero") return {DeltaChoice::Zero, 0.0};
  if (text == "diag") return {DeltaChoice::Diagonal, 0.0};
  if (text == "opt") return {DeltaChoice::Optimal, 0.0};
  if (text.starts_with("value=")) return {DeltaChoice::Value, parse_double(text.substr(6), "delta value")};
  throw ConfigError("unknown delta strategy '" + std::string(text) + "'");
}

std::set<Strategy> parse_strategies(std::string_view text) {
  std::set<Strategy> out;
  if (trim(text).empty()) return out;
  for (auto part : split(text, ',')) {
    part = trim(part);
    if (part == "se-ideal") out.insert(Strategy::SeIdeal);
    else if (part == "se-cq") out.insert(Strategy::SeCq);
    else if (part == "se-exact") out.insert(Strategy::SeExact);
    else if (part == "ie") out.insert(Strategy::Ie);
    else throw ConfigError("unknown strategy '" + std::string(part) + "'");
  }
  return out;
}

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::SeIdeal:
      return "se-ideal";
    case Strategy::SeCq:
      return "se-cq";
    case Strategy::SeExact:
      return "se-exact";
    case Strategy::Ie:
      return "ie";
  }
  return "unknown";
}

ProbeSpec probe_spec(ProbeFamily family, int d, int n, std::string_view amps) {
  if (d < 1) throw ConfigError("d must be >= 1");
  if (n < 1) throw ConfigError("N must be >= 1");
  ProbeSpec spec;
  spec.family = family;
  spec.d = d;
  spec.n = n;
  switch (family) {
    case ProbeFamily::GeneralizedNoon:
      break;
    case ProbeFamily::Custom:
      spec.terms = parse_amplitudes(amps, d + 1, n);
      for (const auto& [occ, amp] : spec.terms) {
        if (occ.total() != n)
          throw ConfigError("occupation " + occ.to_string() + " does not hold N = " + std::to_string(n) + " photons");
      }
      break;
    case ProbeFamily::IeTwoMode:
      if (d != 1) throw ConfigError("the ie2 probe family estimates a single phase (d = 1)");
      spec.coefficients = parse_coefficients(amps);
      if (spec.coefficients.size() != static_cast<std::size_t>(n + 1))
        throw ConfigError("ie2 needs N+1 coefficients");
      break;
  }
  return spec;
}

PhaseMoments probe_moments(const ProbeSpec& spec) {
  if (spec.family == ProbeFamily::GeneralizedNoon) return generalized_noon_moments(spec.d, spec.n);
  try {
    return phase_moments(make_probe(spec));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

BoundReport compute_bound(const ProbeSpec& spec, double eta, const DeltaStrategy& delta,
                          const std::vector<double>& theta, int dense_cap) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw ConfigError("eta must lie in [0, 1]");
  const PhaseMoments moments = probe_moments(spec);
  const std::vector<double> etas(static_cast<std::size_t>(spec.d), eta);
  BoundReport report;
  switch (delta.choice) {
    case DeltaChoice::Zero:
      report.delta = 0.0;
      break;
    case DeltaChoice::Diagonal:
      if (eta == 0.0) throw ConfigError("the diagonal gauge needs eta > 0");
      report.delta = diagonalizing_delta(eta);
      break;
    case DeltaChoice::Value:
      report.delta = delta.value;
      break;
    case DeltaChoice::Optimal:
      if (eta == 0.0) throw ConfigError("eta = 0 admits no finite bound");
      report.delta = optimize_delta(moments, etas).delta_star;
      break;
  }
  report.bound = cq_matrix(moments, etas, DeltaGauge::uniform(spec.d, report.delta));
  if (!report.bound.trace_inverse) throw SingularBoundError("C_Q is singular: some phase carries no information");
  report.trace_inverse = *report.bound.trace_inverse;
  if (eta > 0.0) report.regime = regime_classify(spec.n, eta);

  if (!theta.empty()) {
    if (static_cast<int>(theta.size()) != spec.d) throw ConfigError("--theta needs one angle per phase");
    if (spec.n > dense_cap) throw ConfigError("--theta check needs N within the dense cap");
    const auto rho = apply_loss(make_probe(spec), LossChannel::uniform(spec.d + 1, eta));
    BoundReport::ThetaCheck check;
    check.theta = theta;
    check.qfi_at_zero = qfi_mixed(rho, spec.d).matrix;
    check.qfi_at_theta = qfi_mixed(apply_phases(rho, theta), spec.d).matrix;
    check.max_difference = (check.qfi_at_zero - check.qfi_at_theta).cwiseAbs().maxCoeff();
    report.theta_check = std::move(check);
  }
  return report;
}

std::string format_bound_report(const BoundReport& report) {
  std::ostringstream os;
  os << "delta: " << format_number(report.delta) << '\n';
  os << "C_Q:\n";
  for (Eigen::Index i = 0; i < report.bound.matrix.rows(); ++i) {
    os << ' ';
    for (Eigen::Index j = 0; j < report.bound.matrix.cols(); ++j) {
      const double v = report.bound.matrix(i, j);
      os << ' ' << (v < 0 ? "-" + format_number(-v) : format_number(v == 0.0 ? 0.0 : v));
    }
    os << '\n';
  }
  os << "trace_inverse: " << format_number(report.trace_inverse) << '\n';
  os << "regime: " << (report.regime ? to_string(*report.regime) : std::string_view("n/a")) << '\n';
  if (report.theta_check) {
    os << "theta_check_max_difference: " << format_number(report.theta_check->max_difference) << '\n';
  }
  return os.str();
}

void validate(const SweepConfig& config) {
  if (config.d < 1) throw ConfigError("d must be >= 1");
  if (config.dense_cap < 0) throw ConfigError("dense cap must be non-negative");
  const auto grid = config.range.values();
  if (config.axis == SweepAxis::PhotonNumber) {
    if (config.family != ProbeFamily::GeneralizedNoon)
      throw ConfigError("photon-number sweeps need the gnoon probe family");
    if (!(config.eta >= 0.0 && config.eta <= 1.0)) throw ConfigError("eta must lie in [0, 1]");
    for (double x : grid) {
      if (x < 1.0 || std::abs(x - std::round(x)) > 1e-9) throw ConfigError("photon numbers must be positive integers");
    }
  } else {
    for (double x : grid) {
      if (!(x >= 0.0 && x <= 1.0)) throw ConfigError("eta grid must lie in [0, 1]");
    }
    (void)probe_spec(config.family, config.d, config.n, config.amps);
  }
  if (config.strict_dense && config.strategies.count(Strategy::SeExact)) {
    const double largest = config.axis == SweepAxis::PhotonNumber ? grid.back() : config.n;
    if (largest > config.dense_cap) throw ConfigError("se-exact requested above the dense cap");
  }
}

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
  validate(config);
  if (config.strategies.empty()) return {};
  const auto grid = config.range.values();
  std::vector<SweepRow> rows(grid.size());
  std::vector<std::exception_ptr> errors(grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < grid.size(); k = next++) {
      try {
        rows[k] = compute_row(config, grid[k]);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t count =
      std::min<std::size_t>(grid.size(), config.threads > 0 ? static_cast<std::size_t>(config.threads) : hw);
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < count; ++t) pool.emplace_back(worker);
    worker();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return rows;
}

std::string format_number(double value) {
  if (!std::isfinite(value)) return {};
  if (value == 0.0) value = 0.0;
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 9);
  return std::string(buf, ptr);
}

std::string format_csv(const std::vector<SweepRow>& rows) {
  std::string out(kCsvHeader);
  out += '\n';
  const auto field = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
  for (const auto& r : rows) {
    out += format_number(r.x);
    out += ',' + field(r.se_ideal);
    out += ',' + field(r.se_cq);
    out += ',' + field(r.se_exact);
    out += ',' + field(r.ie_bound);
    out += ',';
    if (r.regime) out += to_string(*r.regime);
    out += '\n';
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw OutputError("cannot open '" + path + "' for writing");
  f << text;
  f.flush();
  if (!f) throw OutputError("failed writing '" + path + "'");
}

}  // namespace multiphase
