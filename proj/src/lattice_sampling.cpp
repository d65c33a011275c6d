#include "defspec/lattice_sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "defspec/error.hpp"
#include "defspec/extension_families.hpp"
#include "defspec/parallel.hpp"

namespace defspec {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double lattice_point(double length, double theta, long k) {
  return (kTwoPi * static_cast<double>(k) - theta) / length;
}

// int_0^L x^j e^{i lambda x} dx for j = 0..degree.
std::vector<Complex> monomial_transforms(double length, double lambda, std::size_t degree) {
  std::vector<Complex> out(degree + 1);
  const Complex il{0.0, lambda};
  const double x = std::abs(lambda * length);
  if (x < std::max(1.0, static_cast<double>(degree))) {
    // Power series of the exponential; upward recursion would cancel here.
    for (std::size_t j = 0; j <= degree; ++j) {
      Complex sum{0.0, 0.0};
      Complex term{std::pow(length, static_cast<double>(j) + 1.0), 0.0};  // (i lambda)^m L^{j+m+1} / m!
      for (int m = 0; m < 200; ++m) {
        const Complex add = term / static_cast<double>(j + m + 1);
        sum += add;
        if (std::abs(add) <= 1e-18 * std::abs(sum)) break;
        term *= il * length / static_cast<double>(m + 1);
      }
      out[j] = sum;
    }
    return out;
  }
  const Complex e = std::exp(il * length);
  out[0] = (e - 1.0) / il;
  double lj = 1.0;
  for (std::size_t j = 1; j <= degree; ++j) {
    lj *= length;
    out[j] = (lj * e - static_cast<double>(j) * out[j - 1]) / il;
  }
  return out;
}

void require_window(IntegerRange k) {
  if (k.hi < k.lo) fail(ErrorKind::Input, "sampling: empty k window");
}

}  // namespace

BandlimitedTestFunction::BandlimitedTestFunction(std::vector<double> coeffs, double length)
    : coeffs_(std::move(coeffs)), length_(length) {
  if (coeffs_.empty()) fail(ErrorKind::Input, "test function needs at least one coefficient");
  for (const double c : coeffs_)
    if (!std::isfinite(c)) fail(ErrorKind::Input, "test function coefficients must be finite");
  if (std::all_of(coeffs_.begin(), coeffs_.end(), [](double c) { return c == 0.0; }))
    fail(ErrorKind::Input, "test function must be non-zero");
  if (!(length_ > 0.0) || !std::isfinite(length_)) fail(ErrorKind::Input, "test function length must be positive");
}

Complex transform_value(const BandlimitedTestFunction& g, double lambda) {
  if (!std::isfinite(lambda)) fail(ErrorKind::Input, "transform_value: lambda must be finite");
  const auto& c = g.coeffs();
  const auto moments = monomial_transforms(g.length(), lambda, c.size() - 1);
  Complex sum{0.0, 0.0};
  for (std::size_t j = 0; j < c.size(); ++j) sum += c[j] * moments[j];
  return sum;
}

Complex reconstruct(const BandlimitedTestFunction& g, double theta, IntegerRange k_window, double lambda) {
  require_window(k_window);
  if (!std::isfinite(theta) || !std::isfinite(lambda)) fail(ErrorKind::Input, "reconstruct: non-finite argument");
  const double length = g.length();
  theta = reduce_theta(theta);  // theta and theta + 2 pi name the same lattice
  Complex sum{0.0, 0.0};
  for (long k = k_window.lo; k <= k_window.hi; ++k) {
    const double lk = lattice_point(length, theta, k);
    const double u = 0.5 * length * (lambda - lk);
    if (u == 0.0) {
      sum += transform_value(g, lk);
      continue;
    }
    sum += transform_value(g, lk) * std::polar(std::sin(u) / u, u);
  }
  return sum;
}

ReconstructionError reconstruction_error(const BandlimitedTestFunction& g, double theta, IntegerRange k_window,
                                         std::span<const double> lambda_grid) {
  require_window(k_window);
  if (lambda_grid.empty()) fail(ErrorKind::Input, "reconstruction_error: empty grid");
  std::vector<double> err(lambda_grid.size());
  parallel_for(err.size(), [&](std::size_t i) {
    const double l = lambda_grid[i];
    err[i] = std::abs(reconstruct(g, theta, k_window, l) - transform_value(g, l));
  });
  ReconstructionError out;
  double sq = 0.0;
  for (const double e : err) {
    out.sup = std::max(out.sup, e);
    sq += e * e;
  }
  out.rms = std::sqrt(sq / static_cast<double>(err.size()));
  return out;
}

std::vector<double> interior_grid(double length, double theta, IntegerRange k_window, int count, double margin) {
  require_window(k_window);
  if (count < 1) fail(ErrorKind::Input, "interior_grid: count must be positive");
  const double h = kTwoPi / length;
  theta = reduce_theta(theta);
  const double lo = lattice_point(length, theta, k_window.lo) + margin * h;
  const double hi = lattice_point(length, theta, k_window.hi) - margin * h;
  if (hi < lo) fail(ErrorKind::InsufficientWindow, "interior_grid: window narrower than the margin");
  std::vector<double> grid(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    grid[static_cast<std::size_t>(i)] = count == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * i / (count - 1);
  return grid;
}

}  // namespace defspec
