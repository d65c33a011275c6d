#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "defspec/extension_families.hpp"
#include "defspec/operator_models.hpp"
#include "defspec/spectrum.hpp"

namespace defspec {

enum class CheckStatus { Pass, Fail, Inconclusive };

const char* to_string(CheckStatus s) noexcept;

struct Labeled {
  std::string label;
  double value = 0.0;
};

struct CheckRecord {
  std::string name;
  CheckStatus status = CheckStatus::Inconclusive;
  std::vector<Labeled> witnesses;
  std::vector<Labeled> tolerances;
  std::vector<std::string> caveats;
  double runtime_seconds = 0.0;  // kept out of the byte-stable report

  void witness(std::string label, double value) { witnesses.push_back({std::move(label), value}); }
  void tolerance(std::string label, double value) { tolerances.push_back({std::move(label), value}); }
};

struct VerificationReport {
  std::vector<CheckRecord> checks;  // sorted by name
  int passed = 0;
  int failed = 0;
  int inconclusive = 0;
  /// Empty for an empty report.
  std::optional<CheckStatus> overall;
};

VerificationReport assemble_report(std::vector<CheckRecord> checks);

/// Byte-stable JSON: keys sorted, numbers as "%.17g" strings, no runtimes.
std::string report_json(const VerificationReport& r);

/// Seed stream of one check, a pure function of (master seed, check name).
std::uint64_t check_seed(std::uint64_t master, std::string_view name);

// --- counting ---------------------------------------------------------------

/// A lower bound on the minimum uncertainty over a region, obtained in the
/// same run as the counting check that relies on it.
struct CountingEvidence {
  std::string source;
  double lower_bound = 0.0;
  bool soft = false;  // sampled states, not a certificate
};

/// Min of envelope_at over an even t grid on the region.
CountingEvidence envelope_evidence(const ExtensionFamily& f, const Interval& region, int t_count = 33);

/// Min of the bump-corpus uncertainties.
CountingEvidence laguerre_corpus_evidence();

/// Random intervals of length <= eps (<= 2 eps when n = 1) inside region,
/// random theta each, must hold at most n eigenvalues. A sliding-window scan
/// over a theta grid backs up the random sweep. Inconclusive unless
/// evidence.lower_bound > eps.
CheckRecord verify_counting(const ExtensionFamily& f, int n, double eps, const Interval& region, int trials,
                            std::uint64_t seed, const CountingEvidence& evidence);

/// `base` with one extra eigenvalue at the centre of the gap nearest the
/// window midpoint.
ExtensionFamily planted_fault_family(const ExtensionFamily& base);

// --- unequal indices ----------------------------------------------------------

using MomentsProvider = std::function<QuasiMoments(double eps, double lambda)>;

/// Uncertainty must fall strictly along the (decreasing) eps list and the
/// mean must be within mean_tol of lambda at the smallest eps. Log-log decay
/// exponents are fitted and recorded, never asserted.
CheckRecord verify_unequal_limit(const std::vector<double>& eps_list, const std::vector<double>& lambda_list,
                                 const MomentsProvider& provider = {}, double mean_tol = 0.05);

// --- overlaps ---------------------------------------------------------------

using OverlapProvider = std::function<Complex(double eps, double lambda1, double lambda2)>;

/// Half-line overlaps converge to 1 / (2 pi i (l2 - l1)) (distance at the
/// smallest eps <= limit_tol, fitted exponent recorded) while the whole-line
/// Gaussian overlap magnitude falls below gaussian_tol by the smallest eps.
CheckRecord verify_overlap_limits(const std::vector<double>& eps_list,
                                  const std::vector<std::pair<double, double>>& pairs,
                                  const OverlapProvider& half_line = {}, const OverlapProvider& whole_line = {},
                                  double limit_tol = 5e-3, double gaussian_tol = 1e-9);

// --- curve vs truncation oracle ----------------------------------------------

/// At each t: envelope_at <= bracket hi + 1e-2 and the bracket sits within
/// 2% of pi / L (the truncation cannot reach below the exact minimum by more
/// than its resolution, nor above by more than the witness quality).
CheckRecord verify_curve_against_oracle(const MomentumIntervalModel& m, const std::vector<double>& t_samples,
                                        int truncation);

// --- bound witness ------------------------------------------------------------

/// Two-level check of Delta^2 <= 2 |t| eps + eps^2 for the unit state with
/// moduli (c1, c2) on eigenvalues (lambda, mu); t is the state's mean.
CheckRecord check_bound_pair(double lambda, double mu, double eps);

/// Adjacent theta = 0 eigenvalues within eps of each other around t; the
/// equal-weight combination is the dom(S) state. Inconclusive when no pair
/// qualifies.
CheckRecord verify_bound_witness(const MomentumIntervalModel& m, double eps, double t);

// --- remaining catalogue checks ----------------------------------------------

/// Randomised spectra against exhaustive pair enumeration, plus two-level
/// pairs against the constrained oracle.
CheckRecord verify_curve_formula(std::uint64_t seed, int spectra = 1000, int two_level = 100);

CheckRecord verify_global_floor(const std::vector<double>& lengths);

CheckRecord verify_laguerre_corpus(double tol = 1e-4);

/// Truncation matrix entries against quadrature of <l_m, S l_n>.
CheckRecord verify_laguerre_matrix(int size = 8, double tol = 1e-8);

CheckRecord verify_sampling(int k_max = 200);

/// Free Jacobi closed form plus residual and trace invariants on random
/// tridiagonals.
CheckRecord verify_eigensolver(std::uint64_t seed, int jacobi_size = 1000, int random = 100);

/// Synthetic unions of two lattices: largest eigenvalue count in windows of
/// twice the smallest curve value. Never asserts.
CheckRecord explore_two_lattice(std::uint64_t seed, int trials = 200);

/// Named suite: all, counting, limits, curve, laguerre, sampling, floor, core.
/// Throws ErrorKind::Input for an unknown suite.
std::vector<CheckRecord> run_suite(std::string_view suite, std::uint64_t seed);

}  // namespace defspec
