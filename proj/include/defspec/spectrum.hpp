#pragma once

#include <cstddef>
#include <vector>

namespace defspec {

/// Closed real interval.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const noexcept { return hi - lo; }
  bool contains(double x, double tie = 0.0) const noexcept { return x >= lo - tie && x <= hi + tie; }
  bool contains(const Interval& other, double tie = 0.0) const noexcept {
    return other.lo >= lo - tie && other.hi <= hi + tie;
  }
};

struct IntegerRange {
  long lo = 0;
  long hi = 0;
};

/// Tie tolerance for eigenvalues sitting on an interval endpoint.
inline constexpr double kEndpointTie = 1e-12;

/// Point spectrum of one self-adjoint extension, complete on `window`:
/// every eigenvalue inside the window is listed, nothing is claimed outside.
class Spectrum {
 public:
  /// Throws ErrorKind::Input unless eigenvalues are finite and strictly
  /// increasing, multiplicities are >= 1 and every eigenvalue lies in window.
  Spectrum(std::vector<double> eigenvalues, std::vector<int> multiplicities, Interval window);

  /// All multiplicities 1.
  static Spectrum simple(std::vector<double> eigenvalues, Interval window);

  const std::vector<double>& eigenvalues() const noexcept { return eigenvalues_; }
  const std::vector<int>& multiplicities() const noexcept { return multiplicities_; }
  const Interval& window() const noexcept { return window_; }

  std::size_t distinct_count() const noexcept { return eigenvalues_.size(); }
  /// Eigenvalues counted with multiplicity.
  std::size_t slot_count() const noexcept;

 private:
  std::vector<double> eigenvalues_;
  std::vector<int> multiplicities_;
  Interval window_;
};

}  // namespace defspec
