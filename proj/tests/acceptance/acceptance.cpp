// Acceptance runner: one PASS/FAIL line per criterion. `--only k` runs a
// single criterion (each is its own ctest entry); exit status is 0 iff every
// selected criterion passed within its time budget.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "cli.hpp"
#include "condlab/bounds.hpp"
#include "condlab/errors.hpp"
#include "condlab/geometry.hpp"
#include "condlab/instances.hpp"
#include "condlab/montecarlo.hpp"
#include "condlab/radial.hpp"
#include "condlab/samplers.hpp"
#include "condlab/validation_csv.hpp"

namespace {

using namespace condlab;
using std::numbers::pi;
constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

std::string fmt(double v) { return csv::format_double(v); }

std::string short_fmt(double v) {
  std::ostringstream s;
  s.precision(4);
  s << v;
  return s.str();
}

const int kMatrixN[] = {2, 5, 6, 10, 20};
const double kMatrixSigma[] = {0.05, 0.3, 1.0, 3.0, 100.0};

Outcome density_normalization() {
  double worst = 0.0;
  for (int N : kMatrixN) {
    for (double sigma : kMatrixSigma) {
      try {
        const auto p = radial::build_profile(N, sigma);
        worst = std::max(worst, std::abs(p.raw_mass() - 1.0));
      } catch (const QuadratureFailure& e) {
        return {false, e.what()};
      }
    }
  }
  return {worst <= 1e-6, "max |mass - 1| = " + short_fmt(worst) + " (tol 1e-6, 25 pairs)"};
}

Outcome half_sphere_mass() {
  double worst = 0.0;
  for (int N : kMatrixN) {
    for (double sigma : kMatrixSigma) {
      const double log_h = radial::eval_log_G(pi / 2, N, sigma) + std::log(omega(N) / 2);
      worst = std::max(worst, std::abs(std::expm1(log_h + 0.5 / (sigma * sigma))));
    }
  }
  return {worst <= 1e-8, "max relative error = " + short_fmt(worst) + " (tol 1e-8, 25 pairs)"};
}

Outcome decomposition_identity() {
  int failures = 0;
  double worst_z = 0.0;
  std::uint64_t stream = 0;
  for (int N : {6, 10}) {
    for (double sigma : {0.2, 1.0}) {
      for (double t : {pi / 8, pi / 6, pi / 4}) {
        const auto r = mc::decomposition_mc_check(N, sigma, t, 1000000, RngHandle{3, stream++});
        const double z = std::abs(r.lhs.mean - r.rhs) / r.lhs.std_error;
        worst_z = std::max(worst_z, z);
        if (!r.ok) ++failures;
      }
    }
  }
  return {failures == 0, std::to_string(12 - failures) + "/12 within 3 se, max |z| = " + short_fmt(worst_z)};
}

// The arrangement used by the theorem validations: three fixed random normals.
HyperplaneArrangement validation_instance(int N) {
  Engine eng = RngHandle{2024, static_cast<std::uint64_t>(N)}.engine();
  // Two orthonormal random normals: every target condition >= 1 is then
  // reachable, since rotating toward one normal leaves the other at cos(tau).
  Eigen::VectorXd a = sample_uniform_sphere(N, eng).coords();
  Eigen::VectorXd b = sample_uniform_sphere(N, eng).coords();
  b -= a.dot(b) * a;
  b -= a.dot(b) * a;
  b.normalize();
  return HyperplaneArrangement({a, b});
}

struct Center {
  double cond;
  UnitPoint point;
};

std::vector<Center> validation_centers(const HyperplaneArrangement& h, bool finite_only) {
  std::vector<Center> out;
  for (double C : {1.5, 4.0, 20.0}) out.push_back({C, center_at_condition(h, C)});
  if (!finite_only) out.push_back({kInfinity, center_on_sigma(h)});
  return out;
}

Outcome theorem_validation(const std::vector<int>& dims, const std::vector<mc::Measure>& measures,
                           mc::BoundName bound, bool finite_only, std::uint64_t seed) {
  int total = 0, passed = 0;
  double min_margin_se = kInfinity;
  std::string first_failure;
  std::uint64_t stream = 0;
  for (int N : dims) {
    const auto h = validation_instance(N);
    for (const auto& c : validation_centers(h, finite_only)) {
      for (const auto& m : measures) {
        const auto row = mc::validate_bound(h, c.point, "C=" + fmt(c.cond), m, bound, 100000,
                                            RngHandle{seed, stream++});
        ++total;
        const double se = std::max(row.estimate.std_error, 1e-300);
        min_margin_se = std::min(min_margin_se, row.margin / se);
        if (row.verdict == mc::Verdict::kPass) {
          ++passed;
        } else if (first_failure.empty()) {
          first_failure = "; first failure N=" + std::to_string(N) + " C=" + fmt(c.cond) + " " +
                          row.measure + "=" + fmt(row.nu) + " verdict " +
                          std::string(mc::to_string(row.verdict));
        }
      }
    }
  }
  return {passed == total, std::to_string(passed) + "/" + std::to_string(total) +
                               " pass, min margin = " + short_fmt(min_margin_se) + " se" + first_failure};
}

std::vector<mc::Measure> gaussians() {
  return {mc::Gaussian{0.05}, mc::Gaussian{0.3}, mc::Gaussian{1.0}, mc::Gaussian{10.0}};
}

Outcome theorem_uniform() {
  return theorem_validation({6, 10},
                            {mc::UniformCap{0.05}, mc::UniformCap{0.3}, mc::UniformCap{pi / 4},
                             mc::UniformCap{pi / 2}},
                            mc::BoundName::kLocalUniform, false, 4);
}

Outcome theorem_smooth_gaussian() {
  return theorem_validation({6, 10}, gaussians(), mc::BoundName::kSmoothGaussian, false, 5);
}

Outcome theorem_local_gaussian() {
  return theorem_validation({6, 10}, gaussians(), mc::BoundName::kLocalGaussian, true, 6);
}

Outcome limit_suite() {
  std::ostringstream detail;
  bool ok = true;
  const double sa2 = std::abs(bounds::smooth_gaussian_H(6, 2, 1e6) - std::log(12.0) - bounds::kK);
  ok = ok && sa2 <= 1e-3;
  detail << "smooth_gaussian(sigma=1e6) " << short_fmt(sa2) << (sa2 <= 1e-3 ? " ok" : " FAIL");
  for (double C : {2.0, 10.0, 1e4}) {
    const double la1 = std::abs(bounds::local_gaussian_H({6, 2, 1e-4, C}) - std::log(C) - bounds::kKBar);
    ok = ok && la1 <= 1e-2;
    detail << "; local_gaussian(sigma=1e-4, C=" << C << ") " << short_fmt(la1) << (la1 <= 1e-2 ? " ok" : " FAIL");
  }
  for (double C : {2.0, 10.0, 1e4}) {
    const double la2 = std::abs(bounds::local_gaussian_H({6, 2, 1e6, C}) - std::log(12.0) - bounds::kKBar);
    ok = ok && la2 <= 1e-3;
    detail << "; local_gaussian(sigma=1e6, C=" << C << ") " << short_fmt(la2) << (la2 <= 1e-3 ? " ok" : " FAIL");
  }
  const double anchor = std::abs(bounds::local_uniform_H({6, 2, pi / 2, kInfinity}) -
                                 (std::log(23.0) + std::log(12.0) + 2.0));
  ok = ok && anchor <= 1e-12;
  detail << "; local_uniform(pi/2, C=inf) " << short_fmt(anchor) << (anchor <= 1e-12 ? " ok" : " FAIL");
  return {ok, detail.str()};
}

Outcome lemma_suite() {
  int checks = 0, failed = 0;
  std::vector<std::string> failures;
  auto record = [&](const char* what, int N, double sigma, double t, const radial::LemmaCheck& c) {
    ++checks;
    if (!c.ok) ++failed;
    if (!c.ok && failures.size() < 3) {
      failures.push_back(std::string(what) + " N=" + std::to_string(N) + " sigma=" + fmt(sigma) +
                         " t=" + fmt(t) + ": " + fmt(c.lhs) + " > " + fmt(c.rhs));
    }
  };
  for (int N : kMatrixN) {
    for (double sigma : kMatrixSigma) {
      const auto p = radial::build_profile(N, sigma);
      for (int k = 0; k <= 16; ++k) {
        const double t = (pi / 4) * k / 16;
        if (N >= 5) record("head", N, sigma, t, radial::check_head_mass(p, t));
        record("log-split", N, sigma, t, radial::check_log_split(p, t));
      }
      for (int k = 1; k <= 16; ++k) {
        const double t = (pi / 2) * k / 16;
        record("tail", N, sigma, t, radial::check_tail_mass(p, t));
      }
      if (N >= 5) record("log-expectation", N, sigma, 0.0, radial::check_log_expectation(p));
    }
  }
  double gamma_worst = 0.0;
  for (int N = 5; N <= 60; ++N) gamma_worst = std::max(gamma_worst, bounds::gamma_coefficient(N));
  double c_worst = 0.0;
  for (int N = 2; N <= 40; ++N) {
    for (int e = -30; e <= 30; ++e) c_worst = std::max(c_worst, bounds::c_helper(N, std::pow(10.0, e / 10.0)));
  }
  const bool gamma_ok = gamma_worst <= 1.0;
  const bool c_ok = c_worst < std::sqrt(2.0) / 2;
  std::string detail = std::to_string(checks - failed) + "/" +
                       std::to_string(checks) + " lemma checks hold; max Gamma coefficient " +
                       short_fmt(gamma_worst) + "; max c_helper " + short_fmt(c_worst);
  for (const auto& f : failures) detail += "; " + f;
  return {failed == 0 && gamma_ok && c_ok, detail};
}

// Exact E ln C over the arc of half-width theta around angle gamma for the
// circle arrangement with normal angles phis: ln C = -ln min_i |cos(gamma + u - phi_i)|.
double circle_oracle(double gamma, double theta, const std::vector<double>& phis) {
  std::vector<double> cuts{-theta, theta};
  auto add_family = [&](double base, double period) {
    for (int k = -8; k <= 8; ++k) {
      const double u = base + k * period;
      if (u > -theta && u < theta) cuts.push_back(u);
    }
  };
  for (std::size_t i = 0; i < phis.size(); ++i) {
    add_family(phis[i] - gamma + pi / 2, pi);
    for (std::size_t j = i + 1; j < phis.size(); ++j) add_family(0.5 * (phis[i] + phis[j]) - gamma, pi / 2);
  }
  std::sort(cuts.begin(), cuts.end());
  auto ln_cond = [&](double u) {
    double m = kInfinity;
    for (double phi : phis) m = std::min(m, std::abs(std::cos(gamma + u - phi)));
    return -std::log(m);
  };
  boost::math::quadrature::tanh_sinh<double> ts;
  double total = 0.0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    if (cuts[k + 1] > cuts[k]) total += ts.integrate(ln_cond, cuts[k], cuts[k + 1], 1e-12);
  }
  return total / (2.0 * theta);
}

Outcome circle_oracle_equivalence() {
  Engine eng = RngHandle{9, 0}.engine();
  std::uniform_real_distribution<double> angle(0.0, 2.0 * pi);
  std::uniform_real_distribution<double> radius(0.05, pi / 2);
  const std::vector<double> phis{angle(eng), angle(eng)};
  std::vector<Eigen::VectorXd> normals;
  for (double phi : phis) normals.push_back(Eigen::Vector2d(std::cos(phi), std::sin(phi)));
  const HyperplaneArrangement h(normals);
  int passed = 0;
  double worst_z = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double gamma = angle(eng);
    const double theta = radius(eng);
    const UnitPoint c = UnitPoint::normalize(Eigen::Vector2d(std::cos(gamma), std::sin(gamma)));
    const auto e = mc::estimate_ln_cond(h, c, mc::UniformCap{theta}, 1000000,
                                        RngHandle{9, static_cast<std::uint64_t>(i + 1)});
    const double exact = circle_oracle(gamma, theta, phis);
    const double z = std::abs(e.mean - exact) / e.std_error;
    worst_z = std::max(worst_z, z);
    if (z <= 3.0) ++passed;
  }
  return {passed == 20, std::to_string(passed) + "/20 within 3 se, max |z| = " + short_fmt(worst_z)};
}

Outcome mutation_selftest() {
  std::ostringstream out, err;
  const int clean = cli::run({"selftest"}, out, err);
  std::ostringstream flip_out, flip_err;
  const int flip = cli::run({"selftest", "--inject", "gprime_sign_flip"}, flip_out, flip_err);
  const bool flip_named = (flip_out.str() + flip_err.str()).find("density_mass") != std::string::npos;
  std::ostringstream bound_out, bound_err;
  const int corrupt = cli::run({"selftest", "--inject", "bound_corruption"}, bound_out, bound_err);
  const bool ok = flip == 1 && flip_named && corrupt == 1;
  return {ok, "clean exit " + std::to_string(clean) + ", G' sign flip exit " + std::to_string(flip) +
                  (flip_named ? " (density_mass named)" : " (density_mass not named)") +
                  ", bound corruption exit " + std::to_string(corrupt)};
}

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "density normalization", 30, density_normalization},
      {2, "half-sphere mass identity", 10, half_sphere_mass},
      {3, "decomposition identity", 300, decomposition_identity},
      {4, "local uniform bound validation", 300, theorem_uniform},
      {5, "smoothed Gaussian bound validation", 300, theorem_smooth_gaussian},
      {6, "local Gaussian bound validation", 300, theorem_local_gaussian},
      {7, "limit suite", 1, limit_suite},
      {8, "lemma suite", 120, lemma_suite},
      {9, "circle oracle equivalence", 120, circle_oracle_equivalence},
      {10, "mutation self-test", 60, mutation_selftest},
  };
  return all;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"condlab acceptance criteria"};
  std::vector<int> only;
  app.add_option("--only", only, "run only these criteria (1-10)")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);

  int failed = 0;
  for (const auto& c : criteria()) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds <= c.budget_seconds;
    const bool pass = o.pass && in_time;
    if (!pass) ++failed;
    std::printf("%s criterion %d (%s): %s [%.1f s, budget %.0f s%s]\n", pass ? "PASS" : "FAIL", c.id,
                c.name, o.detail.c_str(), seconds, c.budget_seconds, in_time ? "" : ", over budget");
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
