#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "defspec/extension_families.hpp"
#include "defspec/spectrum.hpp"

namespace defspec {

/// min over eigenvalue slots i != j of sqrt(|l_i - t| |l_j - t|), where an
/// eigenvalue of multiplicity m occupies m slots. Equals sqrt(d1 d2) for the
/// two smallest slot distances. Throws ErrorKind::InsufficientWindow when
/// fewer than two slots are given.
double pairwise_min_uncertainty(std::span<const double> eigenvalues, std::span<const int> multiplicities,
                                double t);

/// Uncertainty curve of one extension at t. The two nearest slot distances
/// must be provably global: t lies in the window and the second distance does
/// not exceed the distance from t to either window edge. Otherwise throws
/// ErrorKind::InsufficientWindow.
double curve_at(const Spectrum& s, double t);

struct UncertaintyCurve {
  std::vector<std::pair<double, double>> samples;  // (t, value), t strictly increasing
  std::string source;
  Interval window;
};

UncertaintyCurve sample_curve(const Spectrum& s, std::span<const double> ts, std::string source);

struct PairCoefficients {
  double c1_abs = 0.0;
  double c2_abs = 0.0;
};

/// Moduli of the coefficients of the unit vector c1 u + c2 v (u, v unit
/// eigenvectors for lambda, mu) whose mean is t. Throws
/// ErrorKind::DegeneratePair for lambda == mu and ErrorKind::Infeasible when t
/// lies outside [min, max].
PairCoefficients pair_coefficients(double lambda, double mu, double t);

struct EnvelopeOptions {
  int theta_grid = 64;
  int refine_steps = 30;
};

struct EnvelopeValue {
  double value = 0.0;
  double theta = 0.0;  // maximising extension
};

/// max over theta of curve_at(spectrum_of(f, theta, window), t): a coarse
/// theta grid followed by golden-section steps around the best cell. The
/// window must pad t by at least three mean gaps on each side.
EnvelopeValue envelope_at(const ExtensionFamily& f, double t, const Interval& window,
                          const EnvelopeOptions& options = {});

/// [t - pad * gap, t + pad * gap] with the family's mean gap near t.
Interval padded_window(const ExtensionFamily& f, double t, double pad_gaps = 4.0);

struct FloorResult {
  double value = 0.0;
  double t_argmin = 0.0;
  double t_step = 0.0;  // grid resolution of the infimum
  int t_count = 0;
  int theta_grid = 0;
};

/// inf over an even t grid on t_range of envelope_at. Only defined for
/// deficiency index 1 (ErrorKind::UnsupportedModel otherwise).
FloorResult global_floor(const ExtensionFamily& f, const Interval& t_range, int t_count,
                         const EnvelopeOptions& options = {});

struct CorollaryThresholds {
  double general_bound = 0.0;  // delta_s / sqrt(2), any n
  double n1_bound = 0.0;       // delta_s, n = 1 only
};

CorollaryThresholds corollary_thresholds(double delta_s, int n);

}  // namespace defspec
