#include <cmath>

#include "defspec/error.hpp"
#include "defspec/extension_families.hpp"
#include "defspec/uncertainty_engine.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace defspec;
using oracle::pi;

namespace {

const Interval kLine{-1e9, 1e9};

Spectrum finite(std::vector<double> v) { return Spectrum::simple(std::move(v), kLine); }

}  // namespace

TEST_CASE("curve_at worked values") {
  CHECK(curve_at(Spectrum::simple({0.0, 2 * pi}, {0.0, 2 * pi}), pi) == doctest::Approx(pi));
  CHECK(curve_at(finite({0.0, 1.0, 10.0}), 0.5) == doctest::Approx(0.5));
  CHECK(curve_at(finite({0.0, 1.0, 10.0}), 3.0) == doctest::Approx(std::sqrt(6.0)));
  CHECK(curve_at(finite({0.0, 1.0, 10.0}), 1.0) == 0.0);
}

TEST_CASE("curve_at equals exhaustive pairwise enumeration") {
  oracle::Rand r(17);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = r.integer(2, 50);
    std::vector<double> v;
    for (int i = 0; i < n; ++i) v.push_back(r.uniform(-10.0, 10.0));
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    std::vector<int> m(v.size(), 1);
    std::vector<double> slots;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (r.uniform() < 0.1) m[i] = 2;
      slots.insert(slots.end(), static_cast<std::size_t>(m[i]), v[i]);
    }
    if (slots.size() < 2) continue;
    const double t = r.uniform(-12.0, 12.0);
    CHECK(std::abs(curve_at(Spectrum(v, m, kLine), t) - oracle::pairwise_brute(slots, t)) <= 1e-12);
  }
}

TEST_CASE("multiplicity two supplies both distances") {
  const Spectrum s({0.0, 5.0}, {2, 1}, kLine);
  CHECK(curve_at(s, 0.0) == 0.0);
  CHECK(curve_at(s, 1.0) == doctest::Approx(1.0));
}

TEST_CASE("curve shift and scale covariance") {
  oracle::Rand r(23);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> v;
    for (int i = 0; i < 8; ++i) v.push_back(r.uniform(-5.0, 5.0));
    std::sort(v.begin(), v.end());
    const double t = r.uniform(-5.0, 5.0);
    const double c = r.uniform(-3.0, 3.0);
    const double a = r.uniform(0.2, 4.0) * (r.uniform() < 0.5 ? -1.0 : 1.0);
    std::vector<double> shifted, scaled;
    for (double x : v) {
      shifted.push_back(x + c);
      scaled.push_back(a * x);
    }
    std::sort(scaled.begin(), scaled.end());
    const double base = curve_at(finite(v), t);
    CHECK(curve_at(finite(shifted), t + c) == doctest::Approx(base).epsilon(1e-9));
    CHECK(curve_at(finite(scaled), a * t) == doctest::Approx(std::abs(a) * base).epsilon(1e-9));
  }
}

TEST_CASE("semicircle between consecutive eigenvalues with far neighbours") {
  const Spectrum s = finite({-100.0, 0.0, 2.0, 100.0});
  for (int i = 1; i < 20; ++i) {
    const double t = 2.0 * i / 20.0;
    CHECK(curve_at(s, t) == doctest::Approx(std::sqrt(t * (2.0 - t))));
  }
}

TEST_CASE("curve_at refuses to certify from a narrow window") {
  const Spectrum s = Spectrum::simple({0.0, 1.0}, {-0.1, 1.5});
  CHECK(curve_at(s, 0.5) == doctest::Approx(0.5));
  try {
    (void)curve_at(s, 0.05);  // an eigenvalue just below -0.1 would pair with 0 more cheaply
    FAIL("expected insufficient window");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InsufficientWindow);
  }
  CHECK_THROWS_AS(curve_at(Spectrum::simple({0.0}, {-5.0, 5.0}), 1.0), Error);
  CHECK_THROWS_AS(curve_at(s, 3.0), Error);
}

TEST_CASE("pair coefficients") {
  PairCoefficients c = pair_coefficients(0.0, 2.0, 1.0);
  CHECK(c.c1_abs == doctest::Approx(std::sqrt(0.5)));
  CHECK(c.c2_abs == doctest::Approx(std::sqrt(0.5)));
  c = pair_coefficients(0.0, 2.0, 0.0);
  CHECK(c.c1_abs == 1.0);
  CHECK(c.c2_abs == 0.0);
  c = pair_coefficients(1.0, 4.0, 2.0);
  CHECK(c.c1_abs == doctest::Approx(std::sqrt(2.0 / 3.0)));
  CHECK(oracle::two_level_uncertainty(1.0, 4.0, c.c1_abs, c.c2_abs) == doctest::Approx(std::sqrt(2.0)));

  oracle::Rand r(6);
  for (int i = 0; i < 100; ++i) {
    const double l = r.uniform(-10.0, 10.0), m = l + r.uniform(0.01, 10.0), t = r.uniform(l, m);
    c = pair_coefficients(l, m, t);
    CHECK(c.c1_abs * c.c1_abs + c.c2_abs * c.c2_abs == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(l * c.c1_abs * c.c1_abs + m * c.c2_abs * c.c2_abs == doctest::Approx(t).epsilon(1e-12));
    CHECK(oracle::two_level_uncertainty(l, m, c.c1_abs, c.c2_abs) ==
          doctest::Approx(std::sqrt((t - l) * (m - t))).epsilon(1e-7));
  }
  try {
    (void)pair_coefficients(1.0, 1.0, 1.0);
    FAIL("");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegeneratePair);
  }
  try {
    (void)pair_coefficients(0.0, 1.0, 2.0);
    FAIL("");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Infeasible);
  }
}

TEST_CASE("momentum envelope is pi / L and periodic") {
  for (double length : {0.5, 1.0, 2.0}) {
    const ExtensionFamily f = momentum_family(MomentumIntervalModel(length));
    oracle::Rand r(static_cast<std::uint64_t>(length * 100));
    for (int i = 0; i < 20; ++i) {
      const double t = r.uniform(-20.0, 20.0);
      const double e = envelope_at(f, t, padded_window(f, t)).value;
      CHECK(std::abs(e - pi / length) <= 1e-6);
      const double t2 = t + 2 * pi / length;
      CHECK(std::abs(envelope_at(f, t2, padded_window(f, t2)).value - e) <= 1e-9);
    }
  }
}

TEST_CASE("envelope sandwiches every curve") {
  const ExtensionFamily f = momentum_family(MomentumIntervalModel(1.0));
  oracle::Rand r(12);
  for (int i = 0; i < 50; ++i) {
    const double t = r.uniform(-10.0, 10.0);
    const Interval w = padded_window(f, t);
    const double e = envelope_at(f, t, w).value;
    CHECK(curve_at(spectrum_of(f, r.uniform(0.0, 2 * pi), w), t) <= e + 1e-12);
  }
}

TEST_CASE("envelope requires three mean gaps of padding") {
  const ExtensionFamily f = momentum_family(MomentumIntervalModel(1.0));
  CHECK_THROWS_AS(envelope_at(f, 0.0, {-10.0, 10.0}), Error);
  CHECK_NOTHROW(envelope_at(f, 0.0, {-19.0, 19.0}));
}

TEST_CASE("global floor and corollary thresholds") {
  for (double length : {0.5, 1.0, 2.0}) {
    const ExtensionFamily f = momentum_family(MomentumIntervalModel(length));
    const FloorResult fl = global_floor(f, {-5.0, 5.0}, 21);
    CHECK(std::abs(fl.value * length - pi) <= 1e-6);
    CHECK(fl.t_count == 21);
    CHECK(fl.t_step == doctest::Approx(0.5));
  }
  CHECK_THROWS_AS(global_floor(half_line_family(), {0.0, 1.0}, 3), Error);
  const CorollaryThresholds c = corollary_thresholds(pi, 2);
  CHECK(c.general_bound == doctest::Approx(pi / std::sqrt(2.0)));
  CHECK(c.n1_bound == doctest::Approx(pi));
  const CorollaryThresholds z = corollary_thresholds(0.0, 1);
  CHECK(z.general_bound == 0.0);
  CHECK(z.n1_bound == 0.0);
}
