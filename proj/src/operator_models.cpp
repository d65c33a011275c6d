#include "defspec/operator_models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "defspec/error.hpp"
#include "defspec/quadrature.hpp"

namespace defspec {
namespace {

constexpr double kPi = std::numbers::pi;

void require_quasi_eps(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) fail(ErrorKind::Input, "quasi-state eps must lie in (0, 1)");
}

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) fail(ErrorKind::Input, std::string(what) + " must be finite");
}

}  // namespace

// --- momentum on an interval ------------------------------------------------

MomentumIntervalModel::MomentumIntervalModel(double length) : length_(length) {
  if (!(length > 0.0) || !std::isfinite(length))
    fail(ErrorKind::Input, "momentum model: length must be finite and positive");
}

double MomentumIntervalModel::spacing() const noexcept { return 2.0 * kPi / length_; }

Spectrum momentum_spectrum(const MomentumIntervalModel& m, double theta, IntegerRange k_range) {
  require_finite(theta, "theta");
  if (k_range.hi < k_range.lo) fail(ErrorKind::Input, "momentum_spectrum: empty k range");
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(k_range.hi - k_range.lo + 1));
  for (long k = k_range.lo; k <= k_range.hi; ++k)
    values.push_back((2.0 * kPi * static_cast<double>(k) - theta) / m.length());
  const Interval window{values.front(), values.back()};
  return Spectrum::simple(std::move(values), window);
}

Eigen::MatrixXd momentum_domain_basis(int n) {
  if (n < 1) fail(ErrorKind::Input, "momentum basis: n must be at least 1");
  const Eigen::Index dim = 2 * static_cast<Eigen::Index>(n) + 1;
  // Householder reflector swapping the normalised ones vector with the last
  // unit vector; its remaining columns span the complement.
  Eigen::VectorXd w = Eigen::VectorXd::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
  w(dim - 1) -= 1.0;
  w.normalize();
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(dim, dim) - 2.0 * w * w.transpose();
  return h.leftCols(dim - 1);
}

ConstrainedPair momentum_restricted_pair(const MomentumIntervalModel& m, int n) {
  const Eigen::MatrixXd q = momentum_domain_basis(n);
  const Eigen::Index dim = q.rows();
  Eigen::VectorXd lattice(dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    lattice(i) = 2.0 * kPi * static_cast<double>(i - n) / m.length();
  Eigen::MatrixXd b = q.transpose() * lattice.asDiagonal() * q;
  Eigen::MatrixXd a = q.transpose() * lattice.cwiseAbs2().asDiagonal() * q;
  b = 0.5 * (b + b.transpose()).eval();
  a = 0.5 * (a + a.transpose()).eval();
  return ConstrainedPair(std::move(b), std::move(a));
}

// --- half-line derivative ---------------------------------------------------

Complex inner_product(const ExpSum& f, const ExpSum& g) {
  Complex sum{0.0, 0.0};
  for (const auto& a : f)
    for (const auto& b : g) sum += std::conj(a.coeff) * b.coeff / (std::conj(a.rate) + b.rate);
  return sum;
}

ExpSum apply_derivative(const ExpSum& f) {
  ExpSum out;
  out.reserve(f.size());
  const Complex i{0.0, 1.0};
  for (const auto& term : f) out.push_back({-i * term.rate * term.coeff, term.rate});
  return out;
}

ExpSum quasi_state(double eps, double lambda) {
  require_quasi_eps(eps);
  require_finite(lambda, "lambda");
  const double c = 1.0 / std::sqrt(2.0 * kPi);
  return {{Complex{c, 0.0}, Complex{eps, lambda}}, {Complex{-c, 0.0}, Complex{1.0 / std::sqrt(eps), 0.0}}};
}

double QuasiMoments::uncertainty() const noexcept {
  return std::sqrt(std::max(0.0, second_moment - mean * mean));
}

QuasiMoments quasi_state_moments(const HalfLineDerivativeModel&, double eps, double lambda) {
  const ExpSum phi = quasi_state(eps, lambda);
  const ExpSum dphi = apply_derivative(phi);
  QuasiMoments out;
  out.norm_sq = inner_product(phi, phi).real();
  out.mean = inner_product(dphi, phi).real() / out.norm_sq;
  out.second_moment = inner_product(dphi, dphi).real() / out.norm_sq;
  return out;
}

Complex quasi_overlap(const HalfLineDerivativeModel&, double eps, double lambda1, double lambda2) {
  require_quasi_eps(eps);
  if (lambda1 == lambda2)
    fail(ErrorKind::Input, "quasi_overlap: equal lambdas diverge; use quasi_state_moments");
  return inner_product(quasi_state(eps, lambda1), quasi_state(eps, lambda2));
}

Complex quasi_overlap_limit(double lambda1, double lambda2) {
  if (lambda1 == lambda2) fail(ErrorKind::Input, "quasi_overlap_limit: equal lambdas");
  return 1.0 / (Complex{0.0, 2.0 * kPi} * (lambda2 - lambda1));
}

Complex gaussian_overlap(double eps, double lambda1, double lambda2) {
  if (!(eps > 0.0) || !std::isfinite(eps)) fail(ErrorKind::Input, "gaussian_overlap: eps must be positive");
  require_finite(lambda1, "lambda1");
  require_finite(lambda2, "lambda2");
  const double d = lambda2 - lambda1;
  return {std::sqrt(kPi / (2.0 * eps)) * std::exp(-d * d / (8.0 * eps)) / (2.0 * kPi), 0.0};
}

// --- Laguerre second-order example -------------------------------------------

LaguerreSecondOrderModel::LaguerreSecondOrderModel(int truncation) : truncation_(truncation) {
  if (truncation < 2) fail(ErrorKind::Input, "Laguerre model: truncation must be at least 2");
}

SymTridiagonal laguerre_matrix(const LaguerreSecondOrderModel& m) {
  const auto n = static_cast<std::size_t>(m.truncation());
  SymTridiagonal t;
  t.diag.resize(n);
  t.offdiag.resize(n - 1);
  for (std::size_t k = 0; k < n; ++k) {
    const auto kd = static_cast<double>(k);
    t.diag[k] = (10.0 * kd + 5.0) / 4.0;
    if (k + 1 < n) t.offdiag[k] = -3.0 * (kd + 1.0) / 4.0;
  }
  return t;
}

SmoothState polynomial_bump(double a, double b, double scale) {
  if (!(b > a) || !std::isfinite(a) || !std::isfinite(b) || !std::isfinite(scale) || scale == 0.0)
    fail(ErrorKind::Input, "polynomial_bump: need finite a < b and non-zero scale");
  auto inside = [a, b](double x) { return x > a && x < b; };
  SmoothState s;
  s.support_lo = a;
  s.support_hi = b;
  s.value = [=](double x) {
    if (!inside(x)) return 0.0;
    const double p = (x - a) * (b - x);
    return scale * p * p * p;
  };
  s.d1 = [=](double x) {
    if (!inside(x)) return 0.0;
    const double p = (x - a) * (b - x);
    return scale * 3.0 * p * p * (a + b - 2.0 * x);
  };
  s.d2 = [=](double x) {
    if (!inside(x)) return 0.0;
    const double p = (x - a) * (b - x);
    const double dp = a + b - 2.0 * x;
    return scale * (6.0 * p * dp * dp - 6.0 * p * p);
  };
  return s;
}

LaguerreUncertainty laguerre_uncertainty(const SmoothState& phi) {
  if (!(phi.support_lo > 0.0))
    fail(ErrorKind::Input, "laguerre_uncertainty: support must lie inside (0, inf)");
  if (!(phi.support_hi > phi.support_lo) || !std::isfinite(phi.support_hi))
    fail(ErrorKind::Input, "laguerre_uncertainty: support must be a bounded interval");
  if (!phi.value || !phi.d1 || !phi.d2)
    fail(ErrorKind::Input, "laguerre_uncertainty: state needs value and two derivatives");

  auto s_phi = [&](double x) { return -phi.d1(x) - x * phi.d2(x) + x * phi.value(x); };
  const double a = phi.support_lo;
  const double b = phi.support_hi;
  const double norm_sq = integrate([&](double x) { const double v = phi.value(x); return v * v; }, a, b);
  const double first = integrate([&](double x) { return s_phi(x) * phi.value(x); }, a, b);
  const double second = integrate([&](double x) { const double v = s_phi(x); return v * v; }, a, b);
  if (!(norm_sq > 0.0)) fail(ErrorKind::Input, "laguerre_uncertainty: zero state");

  LaguerreUncertainty out;
  out.mean = first / norm_sq;
  out.uncertainty = std::sqrt(std::max(0.0, second / norm_sq - out.mean * out.mean));
  return out;
}

std::vector<SmoothState> laguerre_bump_corpus() {
  constexpr int kCount = 100;
  constexpr double kWidths[] = {0.25, 0.5, 1.0, 2.0, 4.0};
  std::vector<SmoothState> corpus;
  corpus.reserve(kCount);
  for (int i = 0; i < kCount; ++i) {
    const double center = 0.5 * std::pow(100.0, static_cast<double>(i) / (kCount - 1));
    const double width = std::min(kWidths[i % 5], 1.8 * center);
    corpus.push_back(polynomial_bump(center - 0.5 * width, center + 0.5 * width));
  }
  return corpus;
}

}  // namespace defspec
