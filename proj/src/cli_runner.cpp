#include "defspec/cli_runner.hpp"

#include <Eigen/Core>
#include <boost/version.hpp>
#include <chrono>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "defspec/error.hpp"
#include "defspec/extension_families.hpp"
#include "defspec/lattice_sampling.hpp"
#include "defspec/operator_models.hpp"
#include "defspec/parallel.hpp"
#include "defspec/theorem_harness.hpp"
#include "defspec/uncertainty_engine.hpp"
#include "json.hpp"

#ifndef DEFSPEC_VERSION
#define DEFSPEC_VERSION "unknown"
#endif

namespace defspec {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

[[noreturn]] void usage(const std::string& msg) { fail(ErrorKind::Usage, msg); }

double parse_real(const std::string& s, const std::string& what) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) usage("malformed number '" + s + "' in " + what);
  return v;
}

long parse_integer(const std::string& s, const std::string& what) {
  char* end = nullptr;
  const long v = std::strtol(s.c_str(), &end, 10);
  if (s.empty() || end != s.c_str() + s.size()) usage("malformed integer '" + s + "' in " + what);
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// --- CSV ---------------------------------------------------------------------

class Csv {
 public:
  explicit Csv(std::vector<std::string> header) : columns_(header.size()) { row_strings(header); }

  void row(std::initializer_list<double> values) {
    if (values.size() != columns_) fail(ErrorKind::Input, "csv: column count mismatch");
    bool first = true;
    for (const double v : values) {
      if (!first) text_ += ',';
      text_ += num(v);
      first = false;
    }
    text_ += '\n';
  }

  void write(const std::filesystem::path& p) const {
    std::ofstream f(p, std::ios::binary);
    if (!f) fail(ErrorKind::Input, "cannot write " + p.string());
    f << text_;
  }

 private:
  void row_strings(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) text_ += (i ? "," : "") + cells[i];
    text_ += '\n';
  }

  std::size_t columns_;
  std::string text_;
};

// --- dispatch ------------------------------------------------------------------

std::vector<double> t_grid(const RunConfig& c) {
  std::vector<double> ts(static_cast<std::size_t>(c.t_count));
  for (int i = 0; i < c.t_count; ++i)
    ts[static_cast<std::size_t>(i)] = c.t_count == 1 ? c.t_lo : c.t_lo + (c.t_hi - c.t_lo) * i / (c.t_count - 1);
  return ts;
}

ExtensionFamily family_for(const RunConfig& c) {
  if (c.model == "momentum") return momentum_family(MomentumIntervalModel(c.length));
  if (c.model == "laguerre") return laguerre_family(LaguerreSecondOrderModel(c.truncation));
  return half_line_family();
}

struct Artifacts {
  std::vector<std::string> files;
  nlohmann::json extra = nlohmann::json::object();
  int status = kExitOk;
};

Artifacts run_spectra(const RunConfig& c, const std::filesystem::path& dir) {
  const ExtensionFamily f = family_for(c);
  Interval window{-10.0, 10.0};
  if (c.window) window = *c.window;
  else if (c.model == "laguerre") window = laguerre_trusted_window(LaguerreSecondOrderModel(c.truncation));
  const Spectrum s = spectrum_of(f, c.theta, window);
  Csv csv({"index", "eigenvalue", "multiplicity"});
  for (std::size_t i = 0; i < s.distinct_count(); ++i)
    csv.row({static_cast<double>(i), s.eigenvalues()[i], static_cast<double>(s.multiplicities()[i])});
  csv.write(dir / "spectra.csv");
  Artifacts a;
  a.files.push_back("spectra.csv");
  a.extra["window"] = {num(window.lo), num(window.hi)};
  return a;
}

Artifacts run_curve(const RunConfig& c, const std::filesystem::path& dir) {
  Artifacts a;
  if (c.model == "half-line") {
    // No extensions: the curve is replaced by the quasi-state witnesses whose
    // uncertainty tends to zero at every t.
    const double lambda = c.lambda.value_or(0.0);
    Csv csv({"eps", "lambda", "mean", "uncertainty"});
    for (double e = 1e-1; e >= c.eps * (1.0 - 1e-12); e /= 10.0) {
      const QuasiMoments q = quasi_state_moments(HalfLineDerivativeModel{}, e, lambda);
      csv.row({e, lambda, q.mean, q.uncertainty()});
    }
    csv.write(dir / "curve.csv");
    a.files.push_back("curve.csv");
    return a;
  }
  const ExtensionFamily f = family_for(c);
  const auto ts = t_grid(c);
  Interval window;
  if (c.window) {
    window = *c.window;
  } else if (c.model == "laguerre") {
    window = laguerre_trusted_window(LaguerreSecondOrderModel(c.truncation));
  } else {
    const double pad = 4.0 * f.mean_gap(Interval{c.t_lo, c.t_hi});
    window = {c.t_lo - pad, c.t_hi + pad};
  }
  const Spectrum s = spectrum_of(f, c.theta, window);
  const UncertaintyCurve curve = sample_curve(s, ts, f.name);
  Csv csv({"t", "value"});
  for (const auto& [t, v] : curve.samples) csv.row({t, v});
  csv.write(dir / "curve.csv");
  a.files.push_back("curve.csv");
  return a;
}

Artifacts run_envelope(const RunConfig& c, const std::filesystem::path& dir) {
  const ExtensionFamily f = family_for(c);
  const auto ts = t_grid(c);
  std::vector<EnvelopeValue> values(ts.size());
  const EnvelopeOptions opts{c.theta_count, 30};
  for (std::size_t i = 0; i < ts.size(); ++i) values[i] = envelope_at(f, ts[i], padded_window(f, ts[i]), opts);
  Csv csv({"t", "value", "theta"});
  for (std::size_t i = 0; i < ts.size(); ++i) csv.row({ts[i], values[i].value, values[i].theta});
  csv.write(dir / "envelope.csv");
  Artifacts a;
  a.files.push_back("envelope.csv");
  return a;
}

Artifacts run_bracket(const RunConfig& c, const std::filesystem::path& dir) {
  if (c.model != "momentum") fail(ErrorKind::UnsupportedModel, "bracket: only the momentum truncation is available");
  const MomentumIntervalModel m(c.length);
  const ConstrainedPair pair = momentum_restricted_pair(m, c.truncation);
  Csv csv({"t", "lo", "hi", "alpha_star"});
  for (const double t : t_grid(c)) {
    const Bracket b = constrained_min_bracket(pair, t);
    csv.row({t, b.lo, b.hi, b.alpha_star});
  }
  csv.write(dir / "bracket.csv");
  Artifacts a;
  a.files.push_back("bracket.csv");
  a.extra["truncation_dim"] = static_cast<int>(pair.dim());
  return a;
}

Artifacts run_verify(const RunConfig& c, const std::filesystem::path& dir, std::ostream& log) {
  const VerificationReport r = assemble_report(run_suite(c.suite, c.seed));
  {
    std::ofstream f(dir / "report.json", std::ios::binary);
    if (!f) fail(ErrorKind::Input, "cannot write report.json");
    f << report_json(r);
  }
  Artifacts a;
  a.files.push_back("report.json");
  auto runtimes = nlohmann::json::object();
  for (const auto& chk : r.checks) {
    runtimes[chk.name] = num(chk.runtime_seconds);
    log << to_string(chk.status) << "  " << chk.name << '\n';
  }
  a.extra["check_runtimes_seconds"] = runtimes;
  log << r.passed << " pass, " << r.failed << " fail, " << r.inconclusive << " inconclusive\n";
  if (r.failed > 0) a.status = kExitVerification;
  return a;
}

Artifacts run_sample(const RunConfig& c, const std::filesystem::path& dir) {
  const BandlimitedTestFunction g(c.coeffs, c.length);
  std::vector<double> grid;
  if (c.lambda) grid = {*c.lambda};
  else if (c.t_range_set) grid = t_grid(c);
  else grid = interior_grid(c.length, c.theta, c.k_window, 201);
  Csv csv({"lambda", "re_reconstruct", "im_reconstruct", "re_exact", "im_exact", "abs_error"});
  std::vector<Complex> rec(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { rec[i] = reconstruct(g, c.theta, c.k_window, grid[i]); });
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const Complex ex = transform_value(g, grid[i]);
    csv.row({grid[i], rec[i].real(), rec[i].imag(), ex.real(), ex.imag(), std::abs(rec[i] - ex)});
  }
  csv.write(dir / "sample.csv");
  Artifacts a;
  a.files.push_back("sample.csv");
  return a;
}

nlohmann::json config_echo(const RunConfig& c) {
  nlohmann::json j;
  j["command"] = c.command;
  j["model"] = c.model;
  j["length"] = num(c.length);
  j["theta"] = num(c.theta);
  j["N"] = c.truncation;
  j["eps"] = num(c.eps);
  j["lambda"] = c.lambda ? nlohmann::json(num(*c.lambda)) : nlohmann::json(nullptr);
  j["t_range"] = {num(c.t_lo), num(c.t_hi), c.t_count};
  j["theta_count"] = c.theta_count;
  j["k_window"] = {c.k_window.lo, c.k_window.hi};
  j["window"] = c.window ? nlohmann::json({num(c.window->lo), num(c.window->hi)}) : nlohmann::json(nullptr);
  auto coeffs = nlohmann::json::array();
  for (const double x : c.coeffs) coeffs.push_back(num(x));
  j["coeffs"] = coeffs;
  j["seed"] = c.seed;
  j["suite"] = c.suite;
  j["out"] = c.out;
  j["config"] = c.config_file;
  return j;
}

std::pair<double, double> parse_pair(const std::string& s, const std::string& what) {
  const auto p = split(s, ':');
  if (p.size() != 2) usage(what + " expects lo:hi, got '" + s + "'");
  return {parse_real(p[0], what), parse_real(p[1], what)};
}

}  // namespace

RunConfig parse(int argc, const char* const* argv, std::ostream& out) {
  RunConfig c;
  CLI::App app{"defspec: self-adjoint extension spectra and minimum-uncertainty experiments", "defspec"};
  app.set_version_flag("--version", DEFSPEC_VERSION);
  app.set_config("--config", "", "flat key = value file; command-line flags take precedence");
  app.allow_config_extras(CLI::config_extras_mode::error);

  std::string theta_s, length_s, eps_s, lambda_s, t_range_s, window_s, k_window_s, coeffs_s, seed_s;
  int truncation = c.truncation;
  int theta_count = c.theta_count;
  app.add_option("command", c.command, "spectra | curve | envelope | bracket | verify | sample")
      ->required()
      ->check(CLI::IsMember({"spectra", "curve", "envelope", "bracket", "verify", "sample"}));
  app.add_option("--model", c.model, "momentum | laguerre | half-line")
      ->check(CLI::IsMember({"momentum", "laguerre", "half-line"}));
  app.add_option("--length", length_s, "interval length L > 0");
  app.add_option("--theta", theta_s, "extension parameter, reduced mod 2 pi");
  app.add_option("--N", truncation, "truncation size");
  app.add_option("--eps", eps_s, "half-line regularisation, smallest value");
  app.add_option("--lambda", lambda_s, "single lambda");
  app.add_option("--t-range", t_range_s, "a:b:n");
  app.add_option("--theta-count", theta_count, "theta grid for envelopes");
  app.add_option("--k-window", k_window_s, "klo:khi");
  app.add_option("--window", window_s, "lo:hi");
  app.add_option("--coeffs", coeffs_s, "sample profile coefficients c0,c1,... on [0, L]");
  app.add_option("--seed", seed_s, "master seed (unsigned)");
  app.add_option("--suite", c.suite, "verification suite");
  app.add_option("--out", c.out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, out);
    return RunConfig{};
  } catch (const CLI::CallForVersion& e) {
    app.exit(e, out, out);
    return RunConfig{};
  } catch (const CLI::ParseError& e) {
    usage(e.what());
  }
  if (auto* cfg = app.get_config_ptr(); cfg != nullptr && cfg->count() > 0) c.config_file = cfg->as<std::string>();

  if (!length_s.empty()) c.length = parse_real(length_s, "--length");
  if (!(c.length > 0.0)) usage("--length must be positive");
  c.truncation = truncation;
  if (c.truncation < 1) usage("--N must be positive");
  if (c.model == "laguerre" && c.truncation < 2) usage("--N must be at least 2 for the Laguerre model");
  if (!theta_s.empty()) {
    const double raw = parse_real(theta_s, "--theta");
    c.theta = reduce_theta(raw);
    if (c.theta != raw) c.warnings.push_back("theta " + num(raw) + " normalized to " + num(c.theta) + " (mod 2 pi)");
  }
  if (!eps_s.empty()) c.eps = parse_real(eps_s, "--eps");
  if (!(c.eps > 0.0 && c.eps < 1.0)) usage("--eps must lie in (0, 1)");
  if (!lambda_s.empty()) c.lambda = parse_real(lambda_s, "--lambda");
  if (!t_range_s.empty()) {
    const auto p = split(t_range_s, ':');
    if (p.size() != 3) usage("--t-range expects a:b:n");
    c.t_lo = parse_real(p[0], "--t-range");
    c.t_hi = parse_real(p[1], "--t-range");
    const long n = parse_integer(p[2], "--t-range");
    if (n < 1 || n > 10'000'000) usage("--t-range count must be in [1, 1e7]");
    if (c.t_hi < c.t_lo || (n > 1 && c.t_hi == c.t_lo)) usage("--t-range needs a < b");
    c.t_count = static_cast<int>(n);
    c.t_range_set = true;
  } else if (c.command == "bracket") {
    c.t_lo = c.t_hi = 0.0;
    c.t_count = 1;
  }
  c.theta_count = theta_count;
  if (c.theta_count < 1) usage("--theta-count must be positive");
  if (!k_window_s.empty()) {
    const auto p = split(k_window_s, ':');
    if (p.size() != 2) usage("--k-window expects klo:khi");
    c.k_window = {parse_integer(p[0], "--k-window"), parse_integer(p[1], "--k-window")};
    if (c.k_window.hi < c.k_window.lo) usage("--k-window is empty");
  }
  if (!window_s.empty()) {
    const auto [lo, hi] = parse_pair(window_s, "--window");
    if (!(hi > lo)) usage("--window needs lo < hi");
    c.window = Interval{lo, hi};
  }
  if (!coeffs_s.empty()) {
    c.coeffs.clear();
    for (const auto& part : split(coeffs_s, ',')) c.coeffs.push_back(parse_real(part, "--coeffs"));
  }
  if (!seed_s.empty()) {
    if (seed_s.find_first_not_of("0123456789") != std::string::npos) usage("--seed must be an unsigned integer");
    errno = 0;
    c.seed = std::strtoull(seed_s.c_str(), nullptr, 10);
    if (errno == ERANGE) usage("--seed out of range");
  }
  return c;
}

int run(const RunConfig& c, std::ostream& log) {
  const auto start = std::chrono::steady_clock::now();
  const std::filesystem::path dir(c.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (!std::filesystem::is_directory(dir)) fail(ErrorKind::Usage, "output directory '" + c.out + "' is not usable");
  for (const auto& w : c.warnings) log << "warning: " << w << '\n';

  Artifacts a;
  if (c.command == "spectra") a = run_spectra(c, dir);
  else if (c.command == "curve") a = run_curve(c, dir);
  else if (c.command == "envelope") a = run_envelope(c, dir);
  else if (c.command == "bracket") a = run_bracket(c, dir);
  else if (c.command == "verify") a = run_verify(c, dir, log);
  else if (c.command == "sample") a = run_sample(c, dir);
  else fail(ErrorKind::Usage, "unknown command '" + c.command + "'");

  nlohmann::json m;
  m["config"] = config_echo(c);
  m["warnings"] = c.warnings;
  m["artifacts"] = a.files;
  m["details"] = a.extra;
  m["exit_status"] = a.status;
  m["versions"] = {{"defspec", DEFSPEC_VERSION},
                   {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                 std::to_string(EIGEN_MINOR_VERSION)},
                   {"boost", BOOST_LIB_VERSION},
                   {"compiler", __VERSION__}};
  m["threads"] = worker_count();
  m["wall_time_seconds"] = num(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  std::ofstream f(dir / "manifest.json", std::ios::binary);
  if (!f) fail(ErrorKind::Input, "cannot write manifest.json");
  f << m.dump(2) << '\n';
  for (const auto& file : a.files) log << "wrote " << (dir / file).string() << '\n';
  return a.status;
}

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    const RunConfig c = parse(argc, argv, out);
    if (c.command.empty()) return kExitOk;
    return run(c, err);
  } catch (const Error& e) {
    err << "defspec: " << e.what() << '\n';
    return e.kind() == ErrorKind::Usage ? kExitUsage : kExitNumeric;
  } catch (const std::exception& e) {
    err << "defspec: " << e.what() << '\n';
    return kExitNumeric;
  }
}

}  // namespace defspec
