#include <cmath>

#include "defspec/error.hpp"
#include "defspec/extension_families.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace defspec;
using oracle::pi;

TEST_CASE("momentum family spectra and the extension through t") {
  const ExtensionFamily f = momentum_family(MomentumIntervalModel(1.0));
  CHECK(f.deficiency_index == 1);
  const Spectrum s = spectrum_of(f, 0.0, {-7.0, 7.0});
  REQUIRE(s.distinct_count() == 3);
  CHECK(s.eigenvalues()[0] == doctest::Approx(-2 * pi));
  CHECK(s.eigenvalues()[2] == doctest::Approx(2 * pi));

  oracle::Rand r(4);
  for (int i = 0; i < 50; ++i) {
    const double t = r.uniform(-30.0, 30.0);
    const Spectrum hit = spectrum_of(f, extension_through(f, t), {t - 1.0, t + 1.0});
    REQUIRE(hit.distinct_count() == 1);
    CHECK(hit.eigenvalues()[0] == doctest::Approx(t).epsilon(1e-12));
  }
  // theta and theta + 2 pi name the same extension.
  const Spectrum a = spectrum_of(f, 1.0, {-20.0, 20.0});
  const Spectrum b = spectrum_of(f, 1.0 + 2 * pi, {-20.0, 20.0});
  CHECK(a.eigenvalues() == b.eigenvalues());
}

TEST_CASE("window endpoints count with a tie tolerance") {
  const ExtensionFamily f = momentum_family(MomentumIntervalModel(1.0));
  const Spectrum s = spectrum_of(f, 0.0, {0.0, 2 * pi});
  CHECK(s.distinct_count() == 2);
  CHECK(count_eigenvalues(s, {0.0, 2 * pi}) == 2);
  CHECK(count_eigenvalues(s, {1e-9, 2 * pi - 1e-9}) == 0);
  CHECK_THROWS_AS(count_eigenvalues(s, {-1.0, 1.0}), Error);
}

TEST_CASE("half-line family has no extensions") {
  const ExtensionFamily f = half_line_family();
  try {
    (void)spectrum_of(f, 0.0, {0.0, 1.0});
    FAIL("expected unsupported");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnsupportedModel);
  }
}

TEST_CASE("Laguerre family rejects windows past the trusted region") {
  const ExtensionFamily f = laguerre_family(LaguerreSecondOrderModel(400));
  const Spectrum s = spectrum_of(f, 0.0, {50.0, 150.0});
  CHECK(s.distinct_count() == 50);
  try {
    (void)spectrum_of(f, 0.0, {0.0, 1e6});
    FAIL("expected incomplete window");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::IncompleteWindow);
  }
}

TEST_CASE("interlacing of distinct momentum extensions") {
  const ExtensionFamily f = momentum_family(MomentumIntervalModel(1.0));
  oracle::Rand r(9);
  for (int i = 0; i < 20; ++i) {
    const double t1 = r.uniform(0.01, 2 * pi - 0.01);
    const double t2 = std::fmod(t1 + r.uniform(0.01, 2 * pi - 0.02), 2 * pi);
    const auto rep = interlacing_check(spectrum_of(f, t1, {-30.0, 30.0}), spectrum_of(f, t2, {-30.0, 30.0}));
    CHECK(rep.holds);
  }
  // Same extension: every open gap of s1 is empty in s2.
  const auto same = interlacing_check(spectrum_of(f, 0.5, {-30.0, 30.0}), spectrum_of(f, 0.5, {-30.0, 30.0}));
  CHECK_FALSE(same.holds);
  REQUIRE(same.violating_gap.has_value());
  CHECK(same.count_in_gap == 0);
  CHECK_THROWS_AS(interlacing_check(spectrum_of(f, 0.0, {0.0, 1.0}), spectrum_of(f, 0.0, {5.0, 9.0})), Error);
}

TEST_CASE("spectrum validation") {
  CHECK_THROWS_AS(Spectrum({1.0, 0.0}, {1, 1}, {0.0, 1.0}), Error);
  CHECK_THROWS_AS(Spectrum({0.0, 1.0}, {1, 0}, {0.0, 1.0}), Error);
  CHECK_THROWS_AS(Spectrum({0.0, 2.0}, {1, 1}, {0.0, 1.0}), Error);
  CHECK(reduce_theta(7.0) == doctest::Approx(7.0 - 2 * pi));
  CHECK(reduce_theta(-1.0) == doctest::Approx(2 * pi - 1.0));
}
