#pragma once

#include <span>
#include <vector>

#include "defspec/spectral_core.hpp"
#include "defspec/spectrum.hpp"

namespace defspec {

/// Polynomial profile f(x) = sum_j coeffs[j] x^j on [0, L], zero elsewhere.
/// Its transform F(lambda) = int_0^L f(x) e^{i lambda x} dx is entire and
/// band-limited to [0, L].
class BandlimitedTestFunction {
 public:
  BandlimitedTestFunction(std::vector<double> coeffs, double length);

  const std::vector<double>& coeffs() const noexcept { return coeffs_; }
  double length() const noexcept { return length_; }

 private:
  std::vector<double> coeffs_;
  double length_;
};

Complex transform_value(const BandlimitedTestFunction& g, double lambda);

/// sum_k F(l_k) e^{i L (lambda - l_k) / 2} sinc(L (lambda - l_k) / 2) over
/// l_k = (2 pi k - theta) / L, k in k_window.
Complex reconstruct(const BandlimitedTestFunction& g, double theta, IntegerRange k_window, double lambda);

struct ReconstructionError {
  double sup = 0.0;
  double rms = 0.0;
};

ReconstructionError reconstruction_error(const BandlimitedTestFunction& g, double theta, IntegerRange k_window,
                                         std::span<const double> lambda_grid);

/// Even grid of `count` points between the lattice extremes pulled in by
/// `margin` spacings on each side.
std::vector<double> interior_grid(double length, double theta, IntegerRange k_window, int count,
                                  double margin = 10.0);

}  // namespace defspec
