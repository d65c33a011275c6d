#pragma once

#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace defspec {

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// Cayley transform with respect to the point i.
//
//   cayley(z)          = (z - i) / (z + i)
//   inverse_cayley(w)  = i (1 + w) / (1 - w)
//
// The real line lands on the unit circle minus {1}, the upper half plane in
// the open unit disk. Non-finite inputs and the poles are rejected.
// ---------------------------------------------------------------------------
Complex cayley(Complex z);
Complex inverse_cayley(Complex w);

/// Symmetric tridiagonal matrix: diag has length n, offdiag length n - 1 and
/// offdiag[i] couples rows i and i + 1.
struct SymTridiagonal {
  std::vector<double> diag;
  std::vector<double> offdiag;

  std::size_t size() const noexcept { return diag.size(); }

  /// Throws ErrorKind::Input on a length mismatch, an empty matrix or
  /// non-finite entries.
  void validate() const;

  /// Max absolute row sum.
  double norm_inf() const noexcept;
  double trace() const noexcept;

  Eigen::MatrixXd to_dense() const;
};

/// Eigenvalues ascending; when vectors were requested, column j of `vectors`
/// is the unit eigenvector of values[j].
struct EigenSystem {
  std::vector<double> values;
  Eigen::MatrixXd vectors;
};

inline constexpr double kMachineTol = std::numeric_limits<double>::epsilon();

/// Implicit-shift QL iteration. `tol` is the deflation threshold: offdiag[i]
/// is treated as zero once |e_i| <= tol * max(|d_i| + |d_{i+1}|, |M|_inf),
/// which bounds every residual by about tol * |M|_inf.
/// Ties in the final sort keep the original diagonal order.
EigenSystem eig_sym_tridiagonal(const SymTridiagonal& m, double tol = kMachineTol,
                                bool want_vectors = true);

std::vector<double> eigvals_sym_tridiagonal(const SymTridiagonal& m, double tol = kMachineTol);

/// Householder reduction of a symmetric matrix (only the lower triangle is
/// read). When `q` is non-null it receives the orthogonal Q with A = Q T Q^T.
SymTridiagonal tridiagonalize(const Eigen::MatrixXd& a, Eigen::MatrixXd* q = nullptr);

EigenSystem eig_sym_dense(const Eigen::MatrixXd& a, bool want_vectors = true,
                          double tol = kMachineTol);

double min_eigenvalue(const Eigen::MatrixXd& a, double tol = kMachineTol);

// ---------------------------------------------------------------------------
// Constrained pair: the first and second moment forms of an observable
// restricted to a subspace with orthonormal basis Q,
//
//   B = Q^T S Q,   A = Q^T S^2 Q,   A - B^2 = Q^T S (I - Q Q^T) S Q  >= 0.
// ---------------------------------------------------------------------------
class ConstrainedPair {
 public:
  /// Validates shapes, symmetry and the moment gap A - B^2 >= -psd_tol * |A|.
  /// Throws ErrorKind::Input when any check fails or dim < 2.
  ConstrainedPair(Eigen::MatrixXd b, Eigen::MatrixXd a, double psd_tol = 1e-10);

  const Eigen::MatrixXd& b() const noexcept { return b_; }
  const Eigen::MatrixXd& a() const noexcept { return a_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(b_.rows()); }

  /// Smallest eigenvalue of A - B*B found during validation.
  double moment_gap_min() const noexcept { return moment_gap_min_; }

 private:
  Eigen::MatrixXd b_;
  Eigen::MatrixXd a_;
  double moment_gap_min_ = 0.0;
};

struct BracketOptions {
  /// Dual scan range; defaults to [min diag B - |B|, max diag B + |B|].
  std::optional<double> alpha_lo;
  std::optional<double> alpha_hi;
  int grid = 512;
  int refine_steps = 40;
  int descent_steps = 200;
};

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
  double alpha_star = 0.0;     // maximiser of the dual scan
  double dual_value = 0.0;     // lo^2 before clamping at zero
  Eigen::VectorXd witness;     // unit vector with witness^T B witness = t
};

/// Brackets  min { sqrt(psi^T A psi - t^2) : |psi| = 1, psi^T B psi = t }.
///
/// lo is the Lagrange dual bound max_alpha sqrt(max(0, lambda_min(A - alpha B)
/// + alpha t - t^2)), less the eigenvalue rounding bound dim * eps * |A - alpha B|;
/// hi is attained by a feasible witness. Throws
/// ErrorKind::Infeasible when t lies outside the spectrum of B and
/// ErrorKind::Input for a non-finite t or grid < 3.
Bracket constrained_min_bracket(const ConstrainedPair& pair, double t,
                                const BracketOptions& options = {});

}  // namespace defspec
