#include "defspec/uncertainty_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "defspec/error.hpp"
#include "defspec/parallel.hpp"

namespace defspec {

double pairwise_min_uncertainty(std::span<const double> eigenvalues, std::span<const int> multiplicities,
                                double t) {
  if (eigenvalues.size() != multiplicities.size())
    fail(ErrorKind::Input, "pairwise_min_uncertainty: one multiplicity per eigenvalue");
  double d1 = std::numeric_limits<double>::infinity();
  double d2 = std::numeric_limits<double>::infinity();
  long slots = 0;
  for (std::size_t i = 0; i < eigenvalues.size(); ++i) {
    const double d = std::abs(eigenvalues[i] - t);
    for (int k = 0; k < std::min(multiplicities[i], 2); ++k) {
      if (d < d1) {
        d2 = d1;
        d1 = d;
      } else if (d < d2) {
        d2 = d;
      }
    }
    slots += multiplicities[i];
  }
  if (slots < 2) fail(ErrorKind::InsufficientWindow, "uncertainty curve needs two eigenvalue slots");
  if (d1 <= kEndpointTie) return 0.0;
  return std::sqrt(d1 * d2);
}

double curve_at(const Spectrum& s, double t) {
  if (!std::isfinite(t)) fail(ErrorKind::Input, "curve_at: t must be finite");
  const Interval& w = s.window();
  if (!w.contains(t)) fail(ErrorKind::InsufficientWindow, "curve_at: t outside the spectrum window");
  const auto& v = s.eigenvalues();
  const auto& m = s.multiplicities();
  const double value = pairwise_min_uncertainty(v, m, t);
  if (value == 0.0) return 0.0;

  // Every unlisted eigenvalue lies beyond a window edge, so the local pair is
  // global once the second distance is within both edge distances.
  double d1 = std::numeric_limits<double>::infinity();
  double d2 = d1;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double d = std::abs(v[i] - t);
    for (int k = 0; k < std::min(m[i], 2); ++k) {
      if (d < d1) { d2 = d1; d1 = d; } else if (d < d2) { d2 = d; }
    }
  }
  const double edge = std::min(t - w.lo, w.hi - t);
  if (d2 > edge + kEndpointTie)
    fail(ErrorKind::InsufficientWindow, "curve_at: window too narrow around t to certify the nearest pair");
  return value;
}

UncertaintyCurve sample_curve(const Spectrum& s, std::span<const double> ts, std::string source) {
  UncertaintyCurve curve;
  curve.source = std::move(source);
  curve.window = s.window();
  curve.samples.reserve(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (i > 0 && !(ts[i] > ts[i - 1])) fail(ErrorKind::Input, "sample_curve: t must be strictly increasing");
    curve.samples.emplace_back(ts[i], curve_at(s, ts[i]));
  }
  return curve;
}

PairCoefficients pair_coefficients(double lambda, double mu, double t) {
  if (!std::isfinite(lambda) || !std::isfinite(mu) || !std::isfinite(t))
    fail(ErrorKind::Input, "pair_coefficients: non-finite argument");
  if (lambda == mu) fail(ErrorKind::DegeneratePair, "pair_coefficients: lambda == mu");
  const double lo = std::min(lambda, mu);
  const double hi = std::max(lambda, mu);
  const double tie = kEndpointTie * std::max({1.0, std::abs(lo), std::abs(hi)});
  if (t < lo - tie || t > hi + tie) fail(ErrorKind::Infeasible, "pair_coefficients: t outside [lambda, mu]");
  const double tc = std::clamp(t, lo, hi);
  const double gap = std::abs(lambda - mu);
  return {std::sqrt(std::abs(mu - tc) / gap), std::sqrt(std::abs(lambda - tc) / gap)};
}

Interval padded_window(const ExtensionFamily& f, double t, double pad_gaps) {
  if (!f.mean_gap) fail(ErrorKind::UnsupportedModel, "family '" + f.name + "' has no spectral spacing");
  const double gap = f.mean_gap(Interval{t, t});
  return {t - pad_gaps * gap, t + pad_gaps * gap};
}

EnvelopeValue envelope_at(const ExtensionFamily& f, double t, const Interval& window,
                          const EnvelopeOptions& options) {
  if (!std::isfinite(t)) fail(ErrorKind::Input, "envelope_at: t must be finite");
  if (options.theta_grid < 1) fail(ErrorKind::Input, "envelope_at: theta grid must be positive");
  if (!f.mean_gap) fail(ErrorKind::UnsupportedModel, "family '" + f.name + "' has no spectral spacing");
  const double gap = f.mean_gap(window);
  if (t - window.lo < 3.0 * gap - kEndpointTie || window.hi - t < 3.0 * gap - kEndpointTie)
    fail(ErrorKind::InsufficientWindow, "envelope_at: window must pad t by three mean gaps");

  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  const auto grid = static_cast<std::size_t>(options.theta_grid);
  const double h = kTwoPi / static_cast<double>(grid);
  auto curve = [&](double theta) { return curve_at(spectrum_of(f, theta, window), t); };

  std::vector<double> values(grid);
  parallel_for(grid, [&](std::size_t j) { values[j] = curve(h * static_cast<double>(j)); });
  const auto best_it = std::max_element(values.begin(), values.end());
  EnvelopeValue best{*best_it, h * static_cast<double>(best_it - values.begin())};

  double lo = best.theta - h;
  double hi = best.theta + h;
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - ratio * (hi - lo);
  double x2 = lo + ratio * (hi - lo);
  double f1 = curve(x1);
  double f2 = curve(x2);
  for (int step = 0; step < options.refine_steps; ++step) {
    if (f1 >= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = curve(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = curve(x2);
    }
    if (f1 > best.value) best = {f1, x1};
    if (f2 > best.value) best = {f2, x2};
  }
  best.theta = reduce_theta(best.theta);
  return best;
}

FloorResult global_floor(const ExtensionFamily& f, const Interval& t_range, int t_count,
                         const EnvelopeOptions& options) {
  if (f.deficiency_index != 1)
    fail(ErrorKind::UnsupportedModel,
         "global_floor: the inf-max identity holds only for deficiency index 1");
  if (t_count < 1 || !(t_range.hi >= t_range.lo)) fail(ErrorKind::Input, "global_floor: bad t grid");

  FloorResult out;
  out.t_count = t_count;
  out.theta_grid = options.theta_grid;
  out.t_step = t_count > 1 ? t_range.length() / (t_count - 1) : 0.0;
  out.value = std::numeric_limits<double>::infinity();
  for (int i = 0; i < t_count; ++i) {
    const double t = t_range.lo + out.t_step * i;
    const double v = envelope_at(f, t, padded_window(f, t), options).value;
    if (v < out.value) {
      out.value = v;
      out.t_argmin = t;
    }
  }
  return out;
}

CorollaryThresholds corollary_thresholds(double delta_s, int n) {
  if (!(delta_s >= 0.0) || !std::isfinite(delta_s)) fail(ErrorKind::Input, "corollary_thresholds: delta_s >= 0");
  if (n < 1) fail(ErrorKind::Input, "corollary_thresholds: n must be positive");
  return {delta_s / std::numbers::sqrt2, delta_s};
}

}  // namespace defspec
