#include <doctest.h>

#include <cmath>

#include "multiphase/cli.hpp"

using namespace multiphase;

TEST_CASE("range parsing") {
  const Range r = parse_range("0.1:0.9:0.1");
  const auto v = r.values();
  REQUIRE(v.size() == 9);
  CHECK(v.front() == doctest::Approx(0.1));
  CHECK(v.back() == doctest::Approx(0.9));
  CHECK(parse_range("2:6:2").values() == std::vector<double>{2.0, 4.0, 6.0});
  CHECK(parse_range("3:3:1").values().size() == 1);
  CHECK_THROWS_AS(parse_range("1:2:0"), ConfigError);
  CHECK_THROWS_AS(parse_range("1:2:-1"), ConfigError);
  CHECK_THROWS_AS(parse_range("2:1:1"), ConfigError);
  CHECK_THROWS_AS(parse_range("1:2"), ConfigError);
  CHECK_THROWS_AS(parse_range("a:2:1"), ConfigError);
}

TEST_CASE("amplitude parsing") {
  auto terms = parse_amplitudes("0N0:1; 00N:1", 3, 4);
  REQUIRE(terms.size() == 2);
  CHECK(terms[0].first.counts == std::vector<int>{0, 4, 0});
  CHECK(terms[1].first.counts == std::vector<int>{0, 0, 4});

  terms = parse_amplitudes("2,1,1:0.5;4,0,0:-1.5", 3, 4);
  CHECK(terms[0].first.counts == std::vector<int>{2, 1, 1});
  CHECK(terms[1].second == doctest::Approx(-1.5));

  // Trailing zero entries beyond the mode count are accepted.
  terms = parse_amplitudes("N000:1", 3, 4);
  CHECK(terms[0].first.counts == std::vector<int>{4, 0, 0});

  CHECK_THROWS_AS(parse_amplitudes("N001:1", 3, 4), ConfigError);
  CHECK_THROWS_AS(parse_amplitudes("N0:1", 3, 4), ConfigError);
  CHECK_THROWS_AS(parse_amplitudes("0x0:1", 3, 4), ConfigError);
  CHECK_THROWS_AS(parse_amplitudes("0N0", 3, 4), ConfigError);
  CHECK_THROWS_AS(parse_amplitudes("", 3, 4), ConfigError);
}

TEST_CASE("flag vocabularies") {
  CHECK(parse_delta("zero").choice == DeltaChoice::Zero);
  CHECK(parse_delta("diag").choice == DeltaChoice::Diagonal);
  CHECK(parse_delta("opt").choice == DeltaChoice::Optimal);
  const auto v = parse_delta("value=2.5");
  CHECK(v.choice == DeltaChoice::Value);
  CHECK(v.value == 2.5);
  CHECK_THROWS_AS(parse_delta("best"), ConfigError);

  CHECK(parse_strategies("se-ideal,ie").size() == 2);
  CHECK(parse_strategies("").empty());
  CHECK_THROWS_AS(parse_strategies("se-ideal,foo"), ConfigError);
  CHECK(parse_probe_family("ie2") == ProbeFamily::IeTwoMode);
  CHECK_THROWS_AS(parse_probe_family("noon"), ConfigError);
}

TEST_CASE("number formatting") {
  CHECK(format_number(1.0 / 3.0) == "0.333333333");
  CHECK(format_number(4.0) == "4");
  CHECK(format_number(0.1 + 0.2) == "0.3");
  CHECK(format_number(1.234567891e-7) == "1.23456789e-07");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(INFINITY).empty());
  CHECK(format_number(NAN).empty());
}

TEST_CASE("bound report") {
  const ProbeSpec noon = probe_spec(ProbeFamily::GeneralizedNoon, 2, 4, "");
  const double alpha_sq = 1.0 / (2.0 + std::sqrt(2.0));
  const auto diag = compute_bound(noon, 0.9, parse_delta("diag"));
  CHECK(diag.delta == doctest::Approx(9.0));
  CHECK(diag.trace_inverse == doctest::Approx(2.0 * (0.1 / 3.6) / (4.0 * alpha_sq)).epsilon(1e-12));
  CHECK(diag.regime == Regime::Crossover);

  const auto ideal = compute_bound(noon, 1.0, parse_delta("opt"));
  CHECK(ideal.trace_inverse == doctest::Approx(2.0 * std::pow(1.0 + std::sqrt(2.0), 2) / 64.0).epsilon(1e-12));

  const ProbeSpec dark = probe_spec(ProbeFamily::Custom, 2, 4, "N000:1");
  CHECK_THROWS_AS(compute_bound(dark, 0.9, parse_delta("opt")), SingularBoundError);
  CHECK_THROWS_AS(compute_bound(dark, 0.9, parse_delta("diag")), SingularBoundError);

  const auto checked = compute_bound(noon, 0.8, parse_delta("zero"), {2.0, 2.0});
  REQUIRE(checked.theta_check);
  CHECK(checked.theta_check->max_difference < 1e-10);
  CHECK_THROWS_AS(compute_bound(noon, 0.8, parse_delta("zero"), {2.0}), ConfigError);

  const std::string text = format_bound_report(diag);
  CHECK(text.find("trace_inverse: 0.0474196") != std::string::npos);
  CHECK(text.find("regime: crossover") != std::string::npos);

  CHECK_THROWS_AS(probe_spec(ProbeFamily::IeTwoMode, 2, 2, "1,0,1"), ConfigError);
  CHECK_THROWS_AS(probe_spec(ProbeFamily::IeTwoMode, 1, 3, "1,0,1"), ConfigError);
  CHECK_THROWS_AS(probe_spec(ProbeFamily::Custom, 2, 4, "0N0:1;110:1"), ConfigError);
  CHECK_THROWS_AS(compute_bound(noon, 1.5, parse_delta("zero")), ConfigError);
}

TEST_CASE("sweeps") {
  SweepConfig c;
  c.d = 2;
  c.eta = 0.9;
  c.axis = SweepAxis::PhotonNumber;
  c.range = parse_range("2:6:2");

  const auto rows = run_sweep(c);
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) {
    REQUIRE(r.se_exact);
    REQUIRE(r.ie_bound);
    CHECK(*r.se_exact < *r.ie_bound);
    CHECK(*r.se_ideal <= *r.se_cq);
    CHECK(*r.se_cq <= *r.se_exact * (1.0 + 1e-9));
  }

  SUBCASE("deterministic regardless of thread count") {
    SweepConfig single = c;
    single.threads = 1;
    CHECK(format_csv(run_sweep(single)) == format_csv(rows));
  }
  SUBCASE("lossless column") {
    SweepConfig lossless = c;
    lossless.eta = 1.0;
    for (const auto& r : run_sweep(lossless)) CHECK(std::abs(*r.se_exact - *r.se_ideal) < 1e-10);
  }
  SUBCASE("empty strategy set gives a header-only table") {
    SweepConfig none = c;
    none.strategies.clear();
    CHECK(format_csv(run_sweep(none)) == std::string(kCsvHeader) + "\n");
  }
  SUBCASE("dense cap") {
    SweepConfig big = c;
    big.range = parse_range("10:14:2");
    CHECK_THROWS_AS(run_sweep(big), ConfigError);
    big.strict_dense = false;
    const auto capped = run_sweep(big);
    CHECK(capped[0].se_exact.has_value());
    CHECK_FALSE(capped[2].se_exact.has_value());
    CHECK(capped[2].se_cq.has_value());
  }
  SUBCASE("IE needs d | N") {
    SweepConfig odd = c;
    odd.range = parse_range("3:5:2");
    for (const auto& r : run_sweep(odd)) CHECK_FALSE(r.ie_bound.has_value());
  }
  SUBCASE("eta sweep with a zero point") {
    SweepConfig e;
    e.d = 2;
    e.n = 4;
    e.axis = SweepAxis::Eta;
    e.range = parse_range("0:1:0.5");
    const auto er = run_sweep(e);
    REQUIRE(er.size() == 3);
    CHECK_FALSE(er[0].se_cq.has_value());
    CHECK_FALSE(er[0].se_exact.has_value());
    CHECK_FALSE(er[0].regime.has_value());
    CHECK(er[2].regime == Regime::Heisenberg);
  }
  SUBCASE("invalid configurations") {
    SweepConfig bad = c;
    bad.family = ProbeFamily::Custom;
    CHECK_THROWS_AS(run_sweep(bad), ConfigError);
    bad = c;
    bad.range = parse_range("0.5:2:0.5");
    CHECK_THROWS_AS(run_sweep(bad), ConfigError);
    bad = c;
    bad.axis = SweepAxis::Eta;
    bad.range = parse_range("0.5:1.5:0.5");
    CHECK_THROWS_AS(run_sweep(bad), ConfigError);
  }
}

TEST_CASE("csv layout") {
  SweepRow r;
  r.x = 2;
  r.se_ideal = 0.5;
  r.ie_bound = 1.0 / 3.0;
  r.regime = Regime::Crossover;
  CHECK(format_csv({r}) == "x,se_ideal,se_cq,se_exact,ie_bound,regime\n2,0.5,,,0.333333333,crossover\n");
}
