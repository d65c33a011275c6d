#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <vector>

#include "defspec/error.hpp"
#include "defspec/parallel.hpp"
#include "defspec/spectral_core.hpp"

namespace defspec {
namespace {

double inf_norm(const Eigen::MatrixXd& m) { return m.cwiseAbs().rowwise().sum().maxCoeff(); }

// Moves a vector onto {|psi| = 1, psi^T B psi = t} inside the plane spanned by
// psi and (B - m) psi, choosing the smallest rotation. Empty when t is not
// reachable inside that plane.
std::optional<Eigen::VectorXd> retract(const Eigen::MatrixXd& b, Eigen::VectorXd psi, double t) {
  const double nrm = psi.norm();
  if (!(nrm > 0.0) || !std::isfinite(nrm)) return std::nullopt;
  psi /= nrm;
  for (int pass = 0; pass < 3; ++pass) {
    const Eigen::VectorXd bpsi = b * psi;
    const double m = psi.dot(bpsi);
    const double scale = 1.0 + std::abs(t);
    if (std::abs(m - t) <= 1e-14 * scale) return psi;
    Eigen::VectorXd r = bpsi - m * psi;
    const double beta = r.norm();
    if (!(beta > 0.0)) return std::nullopt;
    r /= beta;
    const double gamma = r.dot(b * r);
    // mean(theta) = (m + gamma)/2 + R cos(2 theta - phase)
    const double half_diff = 0.5 * (m - gamma);
    const double radius = std::hypot(half_diff, beta);
    const double target = (t - 0.5 * (m + gamma)) / radius;
    if (std::abs(target) > 1.0) return std::nullopt;
    const double phase = std::atan2(beta, half_diff);
    const double spread = std::acos(target);
    auto wrap = [](double x) {
      x = std::remainder(x, 2.0 * std::numbers::pi);  // 2 theta modulo 2 pi
      return x;
    };
    const double th1 = 0.5 * wrap(phase + spread);
    const double th2 = 0.5 * wrap(phase - spread);
    const double theta = std::abs(th1) <= std::abs(th2) ? th1 : th2;
    psi = std::cos(theta) * psi + std::sin(theta) * r;
    psi.normalize();
  }
  const double m = psi.dot(b * psi);
  if (std::abs(m - t) > 1e-10 * (1.0 + std::abs(t))) return std::nullopt;
  return psi;
}

double energy(const Eigen::MatrixXd& a, const Eigen::VectorXd& psi) { return psi.dot(a * psi); }

// Projected gradient descent of psi^T A psi on the feasible manifold with
// step halving on rejection.
Eigen::VectorXd descend(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, Eigen::VectorXd psi,
                        double t, int steps) {
  double f = energy(a, psi);
  double step = 1.0 / std::max(inf_norm(a), 1e-300);
  for (int it = 0; it < steps; ++it) {
    const Eigen::VectorXd g = 2.0 * (a * psi);
    Eigen::VectorXd gt = g - psi.dot(g) * psi;
    Eigen::VectorXd q = b * psi;
    q -= psi.dot(q) * psi;
    const double qn = q.norm();
    if (qn > 0.0) {
      q /= qn;
      gt -= q.dot(gt) * q;
    }
    if (gt.norm() <= 1e-15 * std::max(g.norm(), 1e-300)) break;

    bool accepted = false;
    for (int halvings = 0; halvings < 60; ++halvings) {
      auto cand = retract(b, psi - step * gt, t);
      if (cand) {
        const double fc = energy(a, *cand);
        if (fc < f) {
          psi = std::move(*cand);
          f = fc;
          step *= 2.0;
          accepted = true;
          break;
        }
      }
      step *= 0.5;
    }
    if (!accepted) break;
  }
  return psi;
}

}  // namespace

ConstrainedPair::ConstrainedPair(Eigen::MatrixXd b, Eigen::MatrixXd a, double psd_tol)
    : b_(std::move(b)), a_(std::move(a)) {
  if (b_.rows() != b_.cols() || a_.rows() != a_.cols() || a_.rows() != b_.rows())
    fail(ErrorKind::Input, "constrained pair: A and B must be square of equal size");
  if (b_.rows() < 2) fail(ErrorKind::Input, "constrained pair: dimension must be at least 2");
  if (!a_.allFinite() || !b_.allFinite()) fail(ErrorKind::Input, "constrained pair: non-finite entries");
  const double a_norm = inf_norm(a_);
  const double b_norm = inf_norm(b_);
  if ((a_ - a_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(a_norm, 1.0) ||
      (b_ - b_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(b_norm, 1.0))
    fail(ErrorKind::Input, "constrained pair: A and B must be symmetric");
  const Eigen::MatrixXd gap = a_ - b_ * b_;
  moment_gap_min_ = min_eigenvalue(0.5 * (gap + gap.transpose()));
  if (moment_gap_min_ < -psd_tol * std::max(a_norm, 1.0))
    fail(ErrorKind::Input, "constrained pair: A - B^2 is not positive semidefinite");
}

Bracket constrained_min_bracket(const ConstrainedPair& pair, double t, const BracketOptions& options) {
  if (!std::isfinite(t)) fail(ErrorKind::Input, "bracket: t must be finite");
  if (options.grid < 3) fail(ErrorKind::Input, "bracket: grid must be at least 3");

  const Eigen::MatrixXd& a = pair.a();
  const Eigen::MatrixXd& b = pair.b();

  const EigenSystem beig = eig_sym_dense(b, true);
  const double bmin = beig.values.front();
  const double bmax = beig.values.back();
  const double tie = 1e-12 * (1.0 + std::abs(t) + std::max(std::abs(bmin), std::abs(bmax)));
  if (t < bmin - tie || t > bmax + tie)
    fail(ErrorKind::Infeasible, "bracket: t lies outside the numerical range of B");

  // Dual scan over the first multiplier; the second is absorbed by lambda_min.
  const double b_norm = inf_norm(b);
  const double alpha_lo = options.alpha_lo.value_or(b.diagonal().minCoeff() - b_norm);
  const double alpha_hi = options.alpha_hi.value_or(b.diagonal().maxCoeff() + b_norm);
  if (!(alpha_hi > alpha_lo)) fail(ErrorKind::Input, "bracket: empty alpha range");

  auto dual = [&](double alpha) { return min_eigenvalue(a - alpha * b) + alpha * t - t * t; };

  const auto grid = static_cast<std::size_t>(options.grid);
  const double h = (alpha_hi - alpha_lo) / static_cast<double>(grid - 1);
  std::vector<double> values(grid);
  parallel_for(grid, [&](std::size_t i) { values[i] = dual(alpha_lo + h * static_cast<double>(i)); });

  const auto best_it = std::max_element(values.begin(), values.end());
  const auto j = static_cast<std::size_t>(best_it - values.begin());
  double best = *best_it;
  double best_alpha = alpha_lo + h * static_cast<double>(j);

  // Golden-section refinement on the neighbouring cells; the dual is concave.
  {
    double lo_a = alpha_lo + h * static_cast<double>(j == 0 ? 0 : j - 1);
    double hi_a = alpha_lo + h * static_cast<double>(std::min(j + 1, grid - 1));
    const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi_a - ratio * (hi_a - lo_a);
    double x2 = lo_a + ratio * (hi_a - lo_a);
    double f1 = dual(x1);
    double f2 = dual(x2);
    for (int step = 0; step < options.refine_steps; ++step) {
      if (f1 > best) { best = f1; best_alpha = x1; }
      if (f2 > best) { best = f2; best_alpha = x2; }
      if (f1 >= f2) {
        hi_a = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi_a - ratio * (hi_a - lo_a);
        f1 = dual(x1);
      } else {
        lo_a = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo_a + ratio * (hi_a - lo_a);
        f2 = dual(x2);
      }
    }
    if (f1 > best) { best = f1; best_alpha = x1; }
    if (f2 > best) { best = f2; best_alpha = x2; }
  }

  Bracket out;
  out.alpha_star = best_alpha;
  out.dual_value = best;
  // lambda_min carries a backward error of order dim * eps * |M|; without
  // this slack lo can overshoot an attained minimum in the last digits.
  const double rounding = static_cast<double>(pair.dim()) * std::numeric_limits<double>::epsilon() *
                          inf_norm(a - best_alpha * b);
  out.lo = std::sqrt(std::max(0.0, best - rounding));

  // Feasible witnesses: the two-eigenvector mixture of B straddling t, and
  // the bottom eigenvector of A - alpha* B moved onto the constraint.
  std::vector<Eigen::VectorXd> starts;
  {
    const auto& vals = beig.values;
    const auto above = std::lower_bound(vals.begin(), vals.end(), t);
    std::size_t hit = vals.size();
    for (std::size_t i = 0; i < vals.size(); ++i)
      if (std::abs(vals[i] - t) <= tie) { hit = i; break; }
    if (hit < vals.size()) {
      starts.push_back(beig.vectors.col(static_cast<Eigen::Index>(hit)));
    } else {
      const auto i2 = static_cast<std::size_t>(above - vals.begin());
      const std::size_t i1 = i2 - 1;
      const double b1 = vals[i1];
      const double b2 = vals[i2];
      const double c1 = std::sqrt((b2 - t) / (b2 - b1));
      const double c2 = std::sqrt((t - b1) / (b2 - b1));
      starts.push_back(c1 * beig.vectors.col(static_cast<Eigen::Index>(i1)) +
                       c2 * beig.vectors.col(static_cast<Eigen::Index>(i2)));
    }
    const EigenSystem dual_eig = eig_sym_dense(a - best_alpha * b, true);
    starts.push_back(dual_eig.vectors.col(0));
  }

  double best_hi = std::numeric_limits<double>::infinity();
  for (const auto& start : starts) {
    auto feasible = retract(b, start, t);
    if (!feasible) continue;
    Eigen::VectorXd psi = descend(a, b, std::move(*feasible), t, options.descent_steps);
    const double value = std::sqrt(std::max(0.0, energy(a, psi) - t * t));
    if (value < best_hi) {
      best_hi = value;
      out.witness = std::move(psi);
    }
  }
  if (!std::isfinite(best_hi))
    fail(ErrorKind::Convergence, "bracket: no feasible witness could be constructed");
  out.hi = best_hi;
  out.lo = std::min(out.lo, out.hi);
  return out;
}

}  // namespace defspec
