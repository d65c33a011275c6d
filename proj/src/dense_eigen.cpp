#include <algorithm>
#include <cmath>

#include "defspec/error.hpp"
#include "defspec/spectral_core.hpp"

namespace defspec {
namespace {

void require_square_finite(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols() || a.rows() == 0) fail(ErrorKind::Input, "matrix must be square and non-empty");
  if (!a.allFinite()) fail(ErrorKind::Input, "matrix has non-finite entries");
}

}  // namespace

SymTridiagonal tridiagonalize(const Eigen::MatrixXd& input, Eigen::MatrixXd* q) {
  require_square_finite(input);
  const Eigen::Index n = input.rows();
  Eigen::MatrixXd a = input;

  SymTridiagonal t;
  t.diag.resize(static_cast<std::size_t>(n));
  t.offdiag.resize(static_cast<std::size_t>(n - 1));

  // Householder vectors, v_k stored in column k rows k+1..n-1 (unit norm).
  Eigen::MatrixXd reflectors = Eigen::MatrixXd::Zero(n, std::max<Eigen::Index>(n - 2, 0));
  std::vector<bool> applied(static_cast<std::size_t>(std::max<Eigen::Index>(n - 2, 0)), false);

  for (Eigen::Index k = 0; k + 2 < n; ++k) {
    const Eigen::Index m = n - k - 1;
    Eigen::VectorXd v = a.col(k).tail(m);
    const double tail_norm = v.tail(m - 1).norm();
    t.diag[static_cast<std::size_t>(k)] = a(k, k);
    if (tail_norm == 0.0) {
      t.offdiag[static_cast<std::size_t>(k)] = v(0);
      continue;
    }
    const double xnorm = std::hypot(v(0), tail_norm);
    const double alpha = v(0) > 0.0 ? -xnorm : xnorm;
    v(0) -= alpha;
    v.normalize();
    t.offdiag[static_cast<std::size_t>(k)] = alpha;

    // A22 <- H A22 H with H = I - 2 v v^T:  A22 -= v w^T + w v^T,
    // w = 2 A22 v - 2 (v^T A22 v) v.
    auto a22 = a.bottomRightCorner(m, m);
    Eigen::VectorXd p = a22.selfadjointView<Eigen::Lower>() * v;
    const double kappa = v.dot(p);
    Eigen::VectorXd w = 2.0 * p - 2.0 * kappa * v;
    a22.selfadjointView<Eigen::Lower>().rankUpdate(v, w, -1.0);

    reflectors.col(k).tail(m) = v;
    applied[static_cast<std::size_t>(k)] = true;
  }
  if (n >= 2) {
    t.diag[static_cast<std::size_t>(n - 2)] = a(n - 2, n - 2);
    t.offdiag[static_cast<std::size_t>(n - 2)] = a(n - 1, n - 2);
  }
  t.diag[static_cast<std::size_t>(n - 1)] = a(n - 1, n - 1);

  if (q != nullptr) {
    // Q = H_0 H_1 ... H_{n-3}, accumulated right to left.
    *q = Eigen::MatrixXd::Identity(n, n);
    for (Eigen::Index k = n - 3; k >= 0; --k) {
      if (!applied[static_cast<std::size_t>(k)]) continue;
      const Eigen::Index m = n - k - 1;
      const Eigen::VectorXd v = reflectors.col(k).tail(m);
      auto rows = q->bottomRows(m);
      const Eigen::RowVectorXd vt_rows = v.transpose() * rows;
      rows.noalias() -= 2.0 * v * vt_rows;
    }
  }
  return t;
}

EigenSystem eig_sym_dense(const Eigen::MatrixXd& a, bool want_vectors, double tol) {
  if (!want_vectors) return eig_sym_tridiagonal(tridiagonalize(a), tol, false);
  Eigen::MatrixXd q;
  const SymTridiagonal t = tridiagonalize(a, &q);
  EigenSystem sys = eig_sym_tridiagonal(t, tol, true);
  sys.vectors = q * sys.vectors;
  return sys;
}

double min_eigenvalue(const Eigen::MatrixXd& a, double tol) {
  const auto values = eig_sym_dense(a, false, tol).values;
  return values.front();
}

}  // namespace defspec
