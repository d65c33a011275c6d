#include "defspec/spectral_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "defspec/error.hpp"

namespace defspec {
namespace {

constexpr Complex kI{0.0, 1.0};

bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Maximum QL sweeps spent on one eigenvalue before giving up.
constexpr int kMaxSweepsPerEigenvalue = 60;

}  // namespace

Complex cayley(Complex z) {
  if (!is_finite(z)) fail(ErrorKind::Input, "cayley: non-finite argument");
  const Complex den = z + kI;
  if (den == Complex{0.0, 0.0}) fail(ErrorKind::Pole, "cayley: z = -i");
  return (z - kI) / den;
}

Complex inverse_cayley(Complex w) {
  if (!is_finite(w)) fail(ErrorKind::Input, "inverse_cayley: non-finite argument");
  const Complex den = 1.0 - w;
  if (den == Complex{0.0, 0.0}) fail(ErrorKind::Pole, "inverse_cayley: w = 1");
  return kI * (1.0 + w) / den;
}

void SymTridiagonal::validate() const {
  if (diag.empty()) fail(ErrorKind::Input, "tridiagonal matrix is empty");
  if (offdiag.size() + 1 != diag.size())
    fail(ErrorKind::Input, "offdiag must have length diag.size() - 1");
  auto finite = [](double x) { return std::isfinite(x); };
  if (!std::all_of(diag.begin(), diag.end(), finite) ||
      !std::all_of(offdiag.begin(), offdiag.end(), finite))
    fail(ErrorKind::Input, "tridiagonal matrix has non-finite entries");
}

double SymTridiagonal::norm_inf() const noexcept {
  double best = 0.0;
  const std::size_t n = diag.size();
  for (std::size_t i = 0; i < n; ++i) {
    double row = std::abs(diag[i]);
    if (i > 0) row += std::abs(offdiag[i - 1]);
    if (i + 1 < n) row += std::abs(offdiag[i]);
    best = std::max(best, row);
  }
  return best;
}

double SymTridiagonal::trace() const noexcept {
  return std::accumulate(diag.begin(), diag.end(), 0.0);
}

Eigen::MatrixXd SymTridiagonal::to_dense() const {
  const auto n = static_cast<Eigen::Index>(diag.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    m(i, i) = diag[static_cast<std::size_t>(i)];
    if (i + 1 < n) {
      m(i, i + 1) = offdiag[static_cast<std::size_t>(i)];
      m(i + 1, i) = offdiag[static_cast<std::size_t>(i)];
    }
  }
  return m;
}

EigenSystem eig_sym_tridiagonal(const SymTridiagonal& m, double tol, bool want_vectors) {
  m.validate();
  if (!(tol > 0.0) || !std::isfinite(tol)) fail(ErrorKind::Input, "tolerance must be positive");

  const std::size_t n = m.size();
  std::vector<double> d = m.diag;
  std::vector<double> e(n, 0.0);
  std::copy(m.offdiag.begin(), m.offdiag.end(), e.begin());

  const auto ni = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd z;
  if (want_vectors) z = Eigen::MatrixXd::Identity(ni, ni);

  const double anorm = m.norm_inf();
  for (std::size_t l = 0; l < n; ++l) {
    int sweeps = 0;
    std::size_t mm = l;
    do {
      for (mm = l; mm + 1 < n; ++mm) {
        const double dd = std::max(std::abs(d[mm]) + std::abs(d[mm + 1]), anorm);
        if (std::abs(e[mm]) <= tol * dd) break;
      }
      if (mm == l) break;
      if (++sweeps > kMaxSweepsPerEigenvalue)
        fail(ErrorKind::Convergence,
             "QL iteration did not converge for eigenvalue index " + std::to_string(l));

      // Wilkinson-style shift from the leading 2x2 block.
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[mm] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      bool underflow = false;

      for (std::size_t ii = mm; ii-- > l;) {
        const double f = s * e[ii];
        const double b = c * e[ii];
        r = std::hypot(f, g);
        e[ii + 1] = r;
        if (r == 0.0) {
          d[ii + 1] -= p;
          e[mm] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[ii + 1] - p;
        r = (d[ii] - g) * s + 2.0 * c * b;
        p = s * r;
        d[ii + 1] = g + p;
        g = c * r - b;
        if (want_vectors) {
          const auto col = static_cast<Eigen::Index>(ii);
          for (Eigen::Index k = 0; k < ni; ++k) {
            const double zf = z(k, col + 1);
            z(k, col + 1) = s * z(k, col) + c * zf;
            z(k, col) = c * z(k, col) - s * zf;
          }
        }
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[mm] = 0.0;
    } while (mm != l);
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });

  EigenSystem out;
  out.values.resize(n);
  for (std::size_t j = 0; j < n; ++j) out.values[j] = d[order[j]];
  if (want_vectors) {
    out.vectors.resize(ni, ni);
    for (std::size_t j = 0; j < n; ++j)
      out.vectors.col(static_cast<Eigen::Index>(j)) = z.col(static_cast<Eigen::Index>(order[j]));
  }
  return out;
}

std::vector<double> eigvals_sym_tridiagonal(const SymTridiagonal& m, double tol) {
  return eig_sym_tridiagonal(m, tol, false).values;
}

}  // namespace defspec
