#include <cmath>

#include "defspec/error.hpp"
#include "defspec/theorem_harness.hpp"
#include "defspec/uncertainty_engine.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace defspec;
using oracle::pi;

namespace {

double witness(const CheckRecord& r, const std::string& label) {
  for (const auto& w : r.witnesses)
    if (w.label == label) return w.value;
  FAIL("missing witness " << label);
  return NAN;
}

}  // namespace

TEST_CASE("counting passes on the momentum lattice and catches the planted point") {
  const ExtensionFamily f = momentum_family(MomentumIntervalModel(1.0));
  const Interval region{-20.0, 20.0};
  const CountingEvidence ev = envelope_evidence(f, region);
  CHECK(ev.lower_bound == doctest::Approx(pi).epsilon(1e-9));
  const CheckRecord ok = verify_counting(f, 1, pi - 1e-3, region, 10000, 1, ev);
  CHECK(ok.status == CheckStatus::Pass);

  const CheckRecord bad = verify_counting(planted_fault_family(f), 1, pi - 1e-3, region, 10000, 1, ev);
  CHECK(bad.status == CheckStatus::Fail);
  const double lo = witness(bad, "violating_interval_lo");
  const double hi = witness(bad, "violating_interval_hi");
  CHECK(hi - lo <= 2 * (pi - 1e-3) + 1e-12);
  CHECK(witness(bad, "violating_count") >= 2);
}

TEST_CASE("counting is inconclusive without its precondition") {
  const ExtensionFamily f = momentum_family(MomentumIntervalModel(1.0));
  const CheckRecord r = verify_counting(f, 1, 4.0, {-20.0, 20.0}, 100, 1, {"given", 3.0, false});
  CHECK(r.status == CheckStatus::Inconclusive);
  CHECK_FALSE(r.caveats.empty());
}

TEST_CASE("counting with a region shorter than the interval length is an incomplete window") {
  const ExtensionFamily f = momentum_family(MomentumIntervalModel(1.0));
  try {
    (void)verify_counting(f, 1, 3.0, {0.0, 1.0}, 10, 1, {"given", 3.1, false});
    FAIL("");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IncompleteWindow);
  }
}

TEST_CASE("counting identity on every theta: intervals of 2 * envelope - 1e-9 hold one eigenvalue") {
  const ExtensionFamily f = momentum_family(MomentumIntervalModel(2.0));
  oracle::Rand r(40);
  for (int i = 0; i < 200; ++i) {
    const double theta = r.uniform(0.0, 2 * pi);
    const double lo = r.uniform(-10.0, 10.0);
    const double len = 2.0 * (pi / 2.0) - 1e-9;
    CHECK(count_eigenvalues(spectrum_of(f, theta, {-20.0, 20.0}), {lo, lo + len}) <= 1);
  }
}

TEST_CASE("unequal-index limit") {
  const std::vector<double> eps = {1e-2, 1e-3, 1e-4, 1e-5};
  const CheckRecord r = verify_unequal_limit(eps, {0.0, 3.0, 5.0});
  CHECK(r.status == CheckStatus::Pass);
  CHECK(std::abs(witness(r, "lambda=5.mean_at_smallest_eps") - 5.0) <= 0.1);
  CHECK(verify_unequal_limit({}, {0.0}).status == CheckStatus::Inconclusive);
  auto flat = [](double, double l) { return QuasiMoments{1.0, l, l * l + 1.0}; };
  CHECK(verify_unequal_limit(eps, {0.0}, flat).status == CheckStatus::Fail);
  auto drifting = [](double e, double l) { return QuasiMoments{1.0, l + 1.0, (l + 1.0) * (l + 1.0) + e}; };
  CHECK(verify_unequal_limit(eps, {0.0}, drifting).status == CheckStatus::Fail);
}

TEST_CASE("overlap limits and their planted fault") {
  const std::vector<double> eps = {1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  const CheckRecord r = verify_overlap_limits(eps, {{0.0, 1.0}, {2.0, 7.0}});
  CHECK(r.status == CheckStatus::Pass);
  CHECK(witness(r, "pair=(2,7).limit_magnitude") == doctest::Approx(1.0 / (10.0 * pi)));
  CHECK(witness(r, "pair=(0,1).decay_exponent") == doctest::Approx(0.5).epsilon(0.2));
  auto vanish = [](double e, double a, double b) { return gaussian_overlap(e, a, b); };
  CHECK(verify_overlap_limits(eps, {{0.0, 1.0}}, vanish).status == CheckStatus::Fail);
  auto stuck = [](double, double, double) { return Complex{1.0, 0.0}; };
  CHECK(verify_overlap_limits(eps, {{0.0, 1.0}}, {}, stuck).status == CheckStatus::Fail);
  CHECK_THROWS_AS(verify_overlap_limits(eps, {{1.0, 1.0}}), Error);
}

TEST_CASE("curve against a small truncation oracle") {
  const CheckRecord r = verify_curve_against_oracle(MomentumIntervalModel(1.0), {0.0, pi}, 48);
  CHECK(r.status == CheckStatus::Pass);
  CHECK(witness(r, "t=3.1415926535897931.bracket_hi") <= pi + 1e-6);
  const CheckRecord r2 = verify_curve_against_oracle(MomentumIntervalModel(2.0), {0.0}, 48);
  CHECK(r2.status == CheckStatus::Pass);
}

TEST_CASE("bound witness") {
  const CheckRecord r = verify_bound_witness(MomentumIntervalModel(1.0), 2 * pi, pi);
  CHECK(r.status == CheckStatus::Pass);
  CHECK(witness(r, "uncertainty_sq") == doctest::Approx(pi * pi));
  CHECK(witness(r, "constraint_residual") == 0.0);
  CHECK(verify_bound_witness(MomentumIntervalModel(1.0), 1.0, pi).status == CheckStatus::Inconclusive);
  for (double e : {1e-1, 1e-3, 1e-6}) {
    const CheckRecord near = check_bound_pair(2.0, 2.0 + e, e);
    CHECK(near.status == CheckStatus::Pass);
    CHECK(witness(near, "uncertainty_sq") / witness(near, "bound") <= 1.0);
  }
  // t = 0: Delta <= eps.
  const CheckRecord zero = check_bound_pair(-0.5, 0.5, 1.0);
  CHECK(zero.status == CheckStatus::Pass);
  CHECK(std::sqrt(witness(zero, "uncertainty_sq")) <= 1.0);
  CHECK(check_bound_pair(0.0, 10.0, 1.0).status == CheckStatus::Fail);
}

TEST_CASE("catalogue checks") {
  CHECK(verify_curve_formula(7, 200, 20).status == CheckStatus::Pass);
  CHECK(verify_global_floor({1.0, 2.0}).status == CheckStatus::Pass);
  CHECK(verify_laguerre_matrix(6).status == CheckStatus::Pass);
  CHECK(verify_eigensolver(3, 200, 20).status == CheckStatus::Pass);
  CHECK(explore_two_lattice(5, 5).status == CheckStatus::Inconclusive);
}

TEST_CASE("seed streams") {
  CHECK(check_seed(42, "a") == check_seed(42, "a"));
  CHECK(check_seed(42, "a") != check_seed(42, "b"));
  CHECK(check_seed(42, "a") != check_seed(43, "a"));
}

TEST_CASE("report assembly") {
  const VerificationReport empty = assemble_report({});
  CHECK(empty.checks.empty());
  CHECK_FALSE(empty.overall.has_value());
  CHECK(report_json(empty).find("summary") == std::string::npos);

  CheckRecord a, b;
  a.name = "zeta";
  a.status = CheckStatus::Pass;
  a.witness("x", 0.1);
  a.runtime_seconds = 1.5;
  b.name = "alpha";
  b.status = CheckStatus::Fail;
  const VerificationReport r = assemble_report({a, b});
  REQUIRE(r.overall.has_value());
  CHECK(*r.overall == CheckStatus::Fail);
  CHECK(r.checks.front().name == "alpha");
  const std::string j = report_json(r);
  CHECK(j.find("\"0.10000000000000001\"") != std::string::npos);
  CHECK(j.find("1.5") == std::string::npos);  // runtimes stay out
  a.runtime_seconds = 9.0;
  CHECK(report_json(assemble_report({b, a})) == j);
  CHECK_THROWS_AS(run_suite("nope", 1), Error);
}
