#pragma once

#include <functional>
#include <optional>
#include <string>

#include "defspec/operator_models.hpp"
#include "defspec/spectrum.hpp"

namespace defspec {

/// One-parameter family of self-adjoint extensions theta in [0, 2 pi) of a
/// catalog operator. Values are immutable once built; the callables are pure.
struct ExtensionFamily {
  std::string name;
  /// Deficiency index n of the underlying symmetric operator when the model
  /// asserts it; empty when it is only known to lie in a range.
  std::optional<int> deficiency_index;
  /// Upper bound on eigenvalue multiplicity for this operator.
  int multiplicity_bound = 1;
  /// (theta, window) -> spectrum complete on window. Empty: no generator.
  std::function<Spectrum(double, const Interval&)> generator;
  /// t -> theta with t in spectrum_of(theta). Empty: no closed form.
  std::function<double(double)> through;
  /// Typical eigenvalue spacing near a window.
  std::function<double(const Interval&)> mean_gap;
  /// Non-empty for truncated representations whose spectra are only
  /// trusted on part of the line.
  std::string caveat;
};

ExtensionFamily momentum_family(const MomentumIntervalModel& m);

/// Single realisation of the truncated Laguerre operator; theta is ignored.
ExtensionFamily laguerre_family(const LaguerreSecondOrderModel& m);

/// Indices (0,1): there are no self-adjoint extensions to enumerate.
ExtensionFamily half_line_family();

/// Region where the N-truncation eigenvalues are trusted: from the bottom
/// Ritz value up to the last one that agrees with the N/2 truncation to 1e-8
/// (relative), and never past 90% of the numerical range.
Interval laguerre_trusted_window(const LaguerreSecondOrderModel& m);

double reduce_theta(double theta);

/// Throws ErrorKind::UnsupportedModel for families without a generator and
/// ErrorKind::Input for an empty window.
Spectrum spectrum_of(const ExtensionFamily& f, double theta, const Interval& window);

/// Throws ErrorKind::UnsupportedModel for families without a closed form.
double extension_through(const ExtensionFamily& f, double t);

/// Eigenvalues in the closed interval, with multiplicity. Endpoints count
/// (tie 1e-12). Throws ErrorKind::IncompleteWindow when the interval leaves
/// the spectrum's window.
int count_eigenvalues(const Spectrum& s, const Interval& interval);

struct InterlacingReport {
  bool holds = true;
  /// First consecutive pair of s1 whose open gap does not hold exactly one
  /// eigenvalue of s2.
  std::optional<Interval> violating_gap;
  int count_in_gap = 0;
};

/// Throws ErrorKind::Input when the windows are disjoint.
InterlacingReport interlacing_check(const Spectrum& s1, const Spectrum& s2);

}  // namespace defspec
