#pragma once

#include <functional>

#include "defspec/spectral_core.hpp"

namespace defspec {

/// Adaptive 61-point Gauss-Kronrod on [a, b] split into `pieces` equal
/// panels, each refined until its error estimate drops below rel_tol times
/// the panel's L1 norm.
double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol = 1e-13,
                 int pieces = 1);

Complex integrate_complex(const std::function<Complex(double)>& f, double a, double b,
                          double rel_tol = 1e-13, int pieces = 1);

}  // namespace defspec
