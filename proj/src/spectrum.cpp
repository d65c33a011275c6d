#include "defspec/spectrum.hpp"

#include <cmath>
#include <numeric>

#include "defspec/error.hpp"

namespace defspec {

Spectrum::Spectrum(std::vector<double> eigenvalues, std::vector<int> multiplicities, Interval window)
    : eigenvalues_(std::move(eigenvalues)), multiplicities_(std::move(multiplicities)), window_(window) {
  if (!std::isfinite(window_.lo) || !std::isfinite(window_.hi) || window_.hi < window_.lo)
    fail(ErrorKind::Input, "spectrum: window must be a finite non-empty interval");
  if (eigenvalues_.size() != multiplicities_.size())
    fail(ErrorKind::Input, "spectrum: one multiplicity per eigenvalue");
  for (std::size_t i = 0; i < eigenvalues_.size(); ++i) {
    const double v = eigenvalues_[i];
    if (!std::isfinite(v)) fail(ErrorKind::Input, "spectrum: non-finite eigenvalue");
    if (i > 0 && !(v > eigenvalues_[i - 1]))
      fail(ErrorKind::Input, "spectrum: eigenvalues must be strictly increasing");
    if (multiplicities_[i] < 1) fail(ErrorKind::Input, "spectrum: multiplicities must be >= 1");
    if (!window_.contains(v, kEndpointTie)) fail(ErrorKind::Input, "spectrum: eigenvalue outside window");
  }
}

Spectrum Spectrum::simple(std::vector<double> eigenvalues, Interval window) {
  std::vector<int> mult(eigenvalues.size(), 1);
  return Spectrum(std::move(eigenvalues), std::move(mult), window);
}

std::size_t Spectrum::slot_count() const noexcept {
  return static_cast<std::size_t>(std::accumulate(multiplicities_.begin(), multiplicities_.end(), 0L));
}

}  // namespace defspec
