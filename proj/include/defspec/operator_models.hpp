#pragma once

#include <functional>
#include <vector>

#include "defspec/spectral_core.hpp"
#include "defspec/spectrum.hpp"

namespace defspec {

// ---------------------------------------------------------------------------
// Momentum of a particle in a box: S = i d/dx on [0, L] with
// phi(0) = phi(L) = 0, deficiency indices (1,1). The extension S'(theta)
// imposes phi(L) = e^{i theta} phi(0); its eigenfunctions e^{-i lambda x}
// give the lattice lambda_k = (2 pi k - theta) / L.
// ---------------------------------------------------------------------------
class MomentumIntervalModel {
 public:
  explicit MomentumIntervalModel(double length);
  double length() const noexcept { return length_; }
  double spacing() const noexcept;

 private:
  double length_;
};

/// Lattice for k in k_range, window set to the emitted extremes.
Spectrum momentum_spectrum(const MomentumIntervalModel& m, double theta, IntegerRange k_range);

/// Restriction of the theta = 0 extension to dom(S), truncated to the basis
/// e_k(x) = e^{-2 pi i k x / L} / sqrt(L), |k| <= n. dom(S) is the null space
/// of sum_k c_k, so the pair has dimension 2n.
ConstrainedPair momentum_restricted_pair(const MomentumIntervalModel& m, int n);

/// Orthonormal basis of the null space of sum_k c_k over the 2n + 1 lattice
/// coefficients, k = -n..n (row index k + n).
Eigen::MatrixXd momentum_domain_basis(int n);

// ---------------------------------------------------------------------------
// Half-line derivative D = i d/dx on L^2[0, inf), phi(0) = 0, indices (0,1),
// probed with the regularised quasi-eigenstates
//
//   phi(eps, lambda; x) = (e^{-i lambda x - eps x} - e^{-x / sqrt(eps)}) / sqrt(2 pi).
//
// All integrals are closed-form sums over pairs of exponentials. Inner
// products are antilinear in the first slot.
// ---------------------------------------------------------------------------
struct HalfLineDerivativeModel {};

/// coeff * e^{-rate x}, Re(rate) > 0.
struct ExpTerm {
  Complex coeff;
  Complex rate;
};
using ExpSum = std::vector<ExpTerm>;

Complex inner_product(const ExpSum& f, const ExpSum& g);
ExpSum apply_derivative(const ExpSum& f);  // i d/dx
ExpSum quasi_state(double eps, double lambda);

struct QuasiMoments {
  double norm_sq = 0.0;
  double mean = 0.0;
  double second_moment = 0.0;

  double uncertainty() const noexcept;
};

QuasiMoments quasi_state_moments(const HalfLineDerivativeModel& h, double eps, double lambda);

/// Raw <phi(eps, l1), phi(eps, l2)>; tends to 1 / (2 pi i (l2 - l1)).
Complex quasi_overlap(const HalfLineDerivativeModel& h, double eps, double lambda1, double lambda2);

Complex quasi_overlap_limit(double lambda1, double lambda2);

/// Whole-line comparison family e^{-i lambda x - eps x^2} / sqrt(2 pi):
/// sqrt(pi / (2 eps)) exp(-(l2 - l1)^2 / (8 eps)) / (2 pi).
Complex gaussian_overlap(double eps, double lambda1, double lambda2);

// ---------------------------------------------------------------------------
// Second-order operator S = -(x u')' + x u on C_0^inf(0, inf), represented in
// the Laguerre functions l_n(x) = L_n(x) e^{-x/2}.
//
// From x l_n'' + l_n' + (n + 1/2 - x/4) l_n = 0 we get S l_n = (n + 1/2) l_n
// + (3/4) x l_n, and the three-term recurrence for x l_n makes the matrix
// tridiagonal with diag (10n + 5)/4 and offdiag -3(n + 1)/4.
//
// The truncation is a Galerkin projection of one self-adjoint realisation,
// the one whose eigenfunctions e^{-x} L_k(2x) stay bounded at 0 (eigenvalues
// 2k + 1). It says nothing about the deficiency indices of the minimal
// operator, which are (1,1) or (2,2).
// ---------------------------------------------------------------------------
class LaguerreSecondOrderModel {
 public:
  explicit LaguerreSecondOrderModel(int truncation);
  int truncation() const noexcept { return truncation_; }

 private:
  int truncation_;
};

SymTridiagonal laguerre_matrix(const LaguerreSecondOrderModel& m);

/// Real state on a compact support [a, b] inside (0, inf) with analytic
/// first and second derivatives.
struct SmoothState {
  double support_lo = 0.0;
  double support_hi = 0.0;
  std::function<double(double)> value;
  std::function<double(double)> d1;
  std::function<double(double)> d2;
};

/// scale * ((x - a)(b - x))^3 on [a, b], zero elsewhere; C^2 at the ends.
SmoothState polynomial_bump(double a, double b, double scale = 1.0);

struct LaguerreUncertainty {
  double mean = 0.0;
  double uncertainty = 0.0;
};

/// Normalised mean and uncertainty of S on `phi` via adaptive quadrature of
/// S phi = -phi' - x phi'' + x phi. Support touching 0 is rejected.
LaguerreUncertainty laguerre_uncertainty(const SmoothState& phi);

/// Deterministic corpus of 100 bumps spread over (0, 60).
std::vector<SmoothState> laguerre_bump_corpus();

}  // namespace defspec
