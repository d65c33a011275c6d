#include "defspec/extension_families.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>

#include "defspec/error.hpp"

namespace defspec {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr long kMaxLatticePoints = 10'000'000;

void require_window(const Interval& w) {
  if (!std::isfinite(w.lo) || !std::isfinite(w.hi) || w.hi < w.lo)
    fail(ErrorKind::Input, "window must be a finite non-empty interval");
}

struct LaguerreData {
  std::vector<double> values;
  Interval trusted;
};

Interval trusted_window_from(const std::vector<double>& full, const std::vector<double>* half) {
  const double lo = full.front();
  const double hi = full.back();
  double upper = hi - 0.1 * (hi - lo);
  if (half != nullptr) {
    std::size_t agree = 0;
    while (agree < half->size() &&
           std::abs(full[agree] - (*half)[agree]) <= 1e-8 * std::max(1.0, std::abs(full[agree])))
      ++agree;
    upper = agree == 0 ? lo : std::min(upper, full[agree - 1]);
  }
  return {lo, std::max(lo, upper)};
}

}  // namespace

double reduce_theta(double theta) {
  if (!std::isfinite(theta)) fail(ErrorKind::Input, "theta must be finite");
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

ExtensionFamily momentum_family(const MomentumIntervalModel& m) {
  ExtensionFamily f;
  f.name = "momentum";
  f.deficiency_index = 1;
  f.multiplicity_bound = 1;
  const double length = m.length();
  f.generator = [length](double theta, const Interval& window) {
    const double th = reduce_theta(theta);
    const double k_lo = std::ceil((window.lo * length + th) / kTwoPi - kEndpointTie);
    const double k_hi = std::floor((window.hi * length + th) / kTwoPi + kEndpointTie);
    if (k_hi - k_lo > static_cast<double>(kMaxLatticePoints))
      fail(ErrorKind::Input, "momentum spectrum: window holds too many lattice points");
    std::vector<double> values;
    for (auto k = static_cast<long>(k_lo); k <= static_cast<long>(k_hi); ++k) {
      const double v = (kTwoPi * static_cast<double>(k) - th) / length;
      if (window.contains(v, kEndpointTie)) values.push_back(v);
    }
    return Spectrum::simple(std::move(values), window);
  };
  f.through = [length](double t) {
    if (!std::isfinite(t)) fail(ErrorKind::Input, "extension_through: t must be finite");
    return reduce_theta(-t * length);
  };
  f.mean_gap = [length](const Interval&) { return kTwoPi / length; };
  return f;
}

Interval laguerre_trusted_window(const LaguerreSecondOrderModel& m) {
  const auto full = eigvals_sym_tridiagonal(laguerre_matrix(m));
  if (m.truncation() < 4) return trusted_window_from(full, nullptr);
  const auto half = eigvals_sym_tridiagonal(laguerre_matrix(LaguerreSecondOrderModel(m.truncation() / 2)));
  return trusted_window_from(full, &half);
}

ExtensionFamily laguerre_family(const LaguerreSecondOrderModel& m) {
  auto data = std::make_shared<LaguerreData>();
  data->values = eigvals_sym_tridiagonal(laguerre_matrix(m));
  if (m.truncation() >= 4) {
    const auto half = eigvals_sym_tridiagonal(laguerre_matrix(LaguerreSecondOrderModel(m.truncation() / 2)));
    data->trusted = trusted_window_from(data->values, &half);
  } else {
    data->trusted = trusted_window_from(data->values, nullptr);
  }

  ExtensionFamily f;
  f.name = "laguerre";
  f.multiplicity_bound = 2;  // second-order operator: indices at most (2,2)
  f.caveat = "truncation N=" + std::to_string(m.truncation()) +
             " represents one self-adjoint realisation; counts are certified only for the truncation";
  std::shared_ptr<const LaguerreData> shared = data;
  f.generator = [shared](double, const Interval& window) {
    if (!shared->trusted.contains(window, kEndpointTie))
      fail(ErrorKind::IncompleteWindow, "Laguerre truncation is only trusted on [" +
                                            std::to_string(shared->trusted.lo) + ", " +
                                            std::to_string(shared->trusted.hi) + "]");
    std::vector<double> values;
    std::vector<int> mult;
    for (const double v : shared->values) {
      if (!window.contains(v, kEndpointTie)) continue;
      if (!values.empty() && std::abs(v - values.back()) <= kEndpointTie * std::max(1.0, std::abs(v))) {
        ++mult.back();
      } else {
        values.push_back(v);
        mult.push_back(1);
      }
    }
    return Spectrum(std::move(values), std::move(mult), window);
  };
  f.mean_gap = [shared](const Interval& window) {
    const auto& v = shared->values;
    const auto first = std::lower_bound(v.begin(), v.end(), window.lo);
    const auto last = std::upper_bound(v.begin(), v.end(), window.hi);
    const auto count = last - first;
    if (count < 2) return window.length();
    return (*(last - 1) - *first) / static_cast<double>(count - 1);
  };
  return f;
}

ExtensionFamily half_line_family() {
  ExtensionFamily f;
  f.name = "half-line";
  f.caveat = "deficiency indices (0,1): no self-adjoint extensions";
  return f;
}

Spectrum spectrum_of(const ExtensionFamily& f, double theta, const Interval& window) {
  if (!f.generator) fail(ErrorKind::UnsupportedModel, "family '" + f.name + "' has no spectrum generator");
  require_window(window);
  return f.generator(reduce_theta(theta), window);
}

double extension_through(const ExtensionFamily& f, double t) {
  if (!f.through)
    fail(ErrorKind::UnsupportedModel, "family '" + f.name + "' has no closed-form extension through t");
  return f.through(t);
}

int count_eigenvalues(const Spectrum& s, const Interval& interval) {
  require_window(interval);
  if (!s.window().contains(interval, kEndpointTie))
    fail(ErrorKind::IncompleteWindow, "counting interval leaves the spectrum window");
  const auto& v = s.eigenvalues();
  const auto first = std::lower_bound(v.begin(), v.end(), interval.lo - kEndpointTie);
  const auto last = std::upper_bound(v.begin(), v.end(), interval.hi + kEndpointTie);
  int count = 0;
  for (auto it = first; it != last; ++it) count += s.multiplicities()[static_cast<std::size_t>(it - v.begin())];
  return count;
}

InterlacingReport interlacing_check(const Spectrum& s1, const Spectrum& s2) {
  const Interval common{std::max(s1.window().lo, s2.window().lo), std::min(s1.window().hi, s2.window().hi)};
  if (common.hi < common.lo) fail(ErrorKind::Input, "interlacing_check: windows are disjoint");

  std::vector<std::pair<double, int>> inner;
  for (std::size_t i = 0; i < s1.distinct_count(); ++i) {
    const double v = s1.eigenvalues()[i];
    if (common.contains(v)) inner.emplace_back(v, s1.multiplicities()[i]);
  }

  InterlacingReport report;
  for (std::size_t i = 0; i < inner.size(); ++i) {
    if (inner[i].second > 1) {
      // Repeated eigenvalue: an empty gap of zero length.
      report.holds = false;
      report.violating_gap = Interval{inner[i].first, inner[i].first};
      report.count_in_gap = 0;
      return report;
    }
    if (i + 1 == inner.size()) break;
    const double a = inner[i].first;
    const double b = inner[i + 1].first;
    int count = 0;
    for (std::size_t j = 0; j < s2.distinct_count(); ++j) {
      const double v = s2.eigenvalues()[j];
      if (v > a + kEndpointTie && v < b - kEndpointTie) count += s2.multiplicities()[j];
    }
    if (count != 1) {
      report.holds = false;
      report.violating_gap = Interval{a, b};
      report.count_in_gap = count;
      return report;
    }
  }
  return report;
}

}  // namespace defspec
