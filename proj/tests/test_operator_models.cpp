#include <cmath>

#include "defspec/error.hpp"
#include "defspec/extension_families.hpp"
#include "defspec/operator_models.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace defspec;
using oracle::pi;

namespace {
const oracle::GaussLegendre gl;
}

TEST_CASE("momentum lattice") {
  const MomentumIntervalModel m(1.0);
  const Spectrum s = momentum_spectrum(m, 0.0, {-1, 1});
  REQUIRE(s.distinct_count() == 3);
  CHECK(s.eigenvalues()[0] == doctest::Approx(-2 * pi).epsilon(1e-15));
  CHECK(s.eigenvalues()[1] == 0.0);
  const Spectrum shifted = momentum_spectrum(MomentumIntervalModel(2.0), 1.0, {0, 0});
  CHECK(shifted.eigenvalues()[0] == doctest::Approx(-0.5));
  CHECK_THROWS_AS(MomentumIntervalModel(-1.0), Error);
  CHECK_THROWS_AS(MomentumIntervalModel(0.0), Error);
}

TEST_CASE("momentum domain basis spans the sum-zero subspace") {
  for (int n : {1, 3, 10}) {
    const Eigen::MatrixXd q = momentum_domain_basis(n);
    CHECK(q.rows() == 2 * n + 1);
    CHECK(q.cols() == 2 * n);
    CHECK((q.transpose() * q - Eigen::MatrixXd::Identity(2 * n, 2 * n)).norm() < 1e-13);
    CHECK(q.colwise().sum().cwiseAbs().maxCoeff() < 1e-13);
  }
}

TEST_CASE("restricted pair moments match direct lattice sums") {
  const MomentumIntervalModel m(1.0);
  const int n = 6;
  const ConstrainedPair p = momentum_restricted_pair(m, n);
  const Eigen::MatrixXd q = momentum_domain_basis(n);
  oracle::Rand r(2);
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::VectorXd y(2 * n);
    for (int i = 0; i < 2 * n; ++i) y(i) = r.uniform(-1.0, 1.0);
    y.normalize();
    const Eigen::VectorXd c = q * y;
    double first = 0.0, second = 0.0;
    for (int k = -n; k <= n; ++k) {
      const double lk = 2.0 * pi * k;
      first += lk * c(k + n) * c(k + n);
      second += lk * lk * c(k + n) * c(k + n);
    }
    CHECK(y.dot(p.b() * y) == doctest::Approx(first).epsilon(1e-12));
    CHECK(y.dot(p.a() * y) == doctest::Approx(second).epsilon(1e-12));
  }
  CHECK(p.moment_gap_min() >= -1e-9);
}

TEST_CASE("sin(pi x) witness has mean 0 and uncertainty pi") {
  // phi = sqrt(2) sin(pi x) on [0, 1] vanishes at both ends; S phi = i phi'.
  const double norm = gl([](double x) { return 2.0 * std::sin(pi * x) * std::sin(pi * x); }, 0.0, 1.0, 4);
  const double cross = gl([](double x) { return 2.0 * pi * std::cos(pi * x) * std::sin(pi * x); }, 0.0, 1.0, 4);
  const double second = gl([](double x) { return 2.0 * pi * pi * std::cos(pi * x) * std::cos(pi * x); }, 0.0, 1.0, 4);
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(cross) < 1e-14);
  CHECK(std::sqrt(second) == doctest::Approx(pi).epsilon(1e-14));
}

TEST_CASE("quasi-state closed forms agree with quadrature") {
  const HalfLineDerivativeModel h;
  for (double eps : {0.5, 0.1, 0.02}) {
    for (double lambda : {0.0, 3.0}) {
      const double c = 1.0 / std::sqrt(2.0 * pi);
      const Complex r{eps, lambda};
      const double s = 1.0 / std::sqrt(eps);
      auto phi = [&](double x) { return c * (std::exp(-r * x) - std::exp(-s * x)); };
      auto dphi = [&](double x) { return Complex{0.0, 1.0} * c * (-r * std::exp(-r * x) + s * std::exp(-s * x)); };
      const double X = 16.0 / eps;
      const int panels = static_cast<int>(X * (1.0 + lambda)) + 50;
      const double norm = gl([&](double x) { return std::norm(phi(x)); }, 0.0, X, panels);
      const Complex first = gl([&](double x) { return std::conj(dphi(x)) * phi(x); }, 0.0, X, panels);
      const double second = gl([&](double x) { return std::norm(dphi(x)); }, 0.0, X, panels);
      const QuasiMoments q = quasi_state_moments(h, eps, lambda);
      CHECK(q.norm_sq == doctest::Approx(norm).epsilon(1e-10));
      CHECK(std::abs(q.mean - first.real() / norm) <= 1e-8 * (1.0 + std::abs(q.mean)));
      CHECK(std::abs(first.imag()) <= 1e-9 * norm);
      CHECK(q.second_moment == doctest::Approx(second / norm).epsilon(1e-9));
    }
  }
}

TEST_CASE("quasi overlap closed form agrees with quadrature and approaches the limit") {
  const HalfLineDerivativeModel h;
  for (double eps : {0.5, 0.1, 0.02}) {
    const double l1 = 0.0, l2 = 1.0;
    const double c = 1.0 / std::sqrt(2.0 * pi);
    auto phi = [&](double l, double x) {
      return c * (std::exp(-Complex{eps, l} * x) - std::exp(-x / std::sqrt(eps)));
    };
    const double X = 16.0 / eps;
    const Complex q = gl([&](double x) { return std::conj(phi(l1, x)) * phi(l2, x); }, 0.0, X,
                         static_cast<int>(4 * X) + 50);
    CHECK(std::abs(quasi_overlap(h, eps, l1, l2) - q) <= 1e-8);
  }
  const Complex lim = quasi_overlap_limit(0.0, 1.0);
  CHECK(std::abs(lim - 1.0 / Complex{0.0, 2.0 * pi}) < 1e-15);
  CHECK(std::abs(quasi_overlap_limit(2.0, 7.0)) == doctest::Approx(1.0 / (10.0 * pi)));
  CHECK(std::abs(quasi_overlap(h, 1e-6, 0.0, 1.0) - lim) <= 5e-3);
  CHECK_THROWS_AS(quasi_overlap(h, 0.1, 1.0, 1.0), Error);
  CHECK_THROWS_AS(quasi_state(1.5, 0.0), Error);
}

TEST_CASE("gaussian overlap closed form agrees with quadrature") {
  for (double eps : {0.5, 0.1, 0.05}) {
    for (double d : {0.0, 1.0, 2.5}) {
      const double X = std::sqrt(40.0 / eps);
      const Complex q = gl([&](double x) { return std::exp(Complex{-2.0 * eps * x * x, -d * x}) / (2.0 * pi); }, -X,
                           X, 400);
      CHECK(std::abs(gaussian_overlap(eps, 0.0, d) - q) <= 1e-10);
    }
  }
}

TEST_CASE("Laguerre matrix entries match quadrature of x (l_m' l_n' + l_m l_n)") {
  const int n = 10;
  const Eigen::MatrixXd s = laguerre_matrix(LaguerreSecondOrderModel(n)).to_dense();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto ell = [](int k, double x) { return std::exp(-0.5 * x) * oracle::laguerre(k, x); };
      auto dell = [](int k, double x) {
        return std::exp(-0.5 * x) * (oracle::laguerre_prime(k, x) - 0.5 * oracle::laguerre(k, x));
      };
      const double q =
          gl([&](double x) { return x * (dell(i, x) * dell(j, x) + ell(i, x) * ell(j, x)); }, 0.0, 150.0, 300);
      CHECK(std::abs(q - s(i, j)) <= 1e-8);
    }
}

TEST_CASE("Laguerre Ritz values approach 2k + 1 below the trusted edge") {
  const LaguerreSecondOrderModel m(2000);
  const auto v = eigvals_sym_tridiagonal(laguerre_matrix(m));
  int seen = 0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] < 50.0 || v[k] > 150.0) continue;
    CHECK(v[k] == doctest::Approx(2.0 * k + 1.0).epsilon(1e-9));
    ++seen;
  }
  CHECK(seen == 50);
  const Interval w = laguerre_trusted_window(m);
  CHECK(w.lo == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(w.hi > 150.0);
}

TEST_CASE("Laguerre bumps: closed-form check and the corpus floor") {
  // The exact eigenfunction e^{-x} L_1(2x) is not compactly supported, so use
  // a bump and compare against an independent quadrature of S phi.
  const SmoothState b = polynomial_bump(1.0, 3.0);
  auto sphi = [&](double x) { return -b.d1(x) - x * b.d2(x) + x * b.value(x); };
  const double norm = gl([&](double x) { return b.value(x) * b.value(x); }, 1.0, 3.0, 20);
  const double first = gl([&](double x) { return sphi(x) * b.value(x); }, 1.0, 3.0, 20);
  const double second = gl([&](double x) { return sphi(x) * sphi(x); }, 1.0, 3.0, 20);
  const LaguerreUncertainty u = laguerre_uncertainty(b);
  CHECK(u.mean == doctest::Approx(first / norm).epsilon(1e-10));
  CHECK(u.uncertainty == doctest::Approx(std::sqrt(second / norm - first * first / norm / norm)).epsilon(1e-9));

  const auto corpus = laguerre_bump_corpus();
  REQUIRE(corpus.size() == 100);
  for (const auto& phi : corpus) {
    CHECK(phi.support_lo > 0.0);
    CHECK(laguerre_uncertainty(phi).uncertainty >= 1.0 - 1e-4);
  }
  CHECK_THROWS_AS(laguerre_uncertainty(polynomial_bump(0.0, 1.0)), Error);
}
