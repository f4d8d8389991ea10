#include "selftest.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "condlab/bounds.hpp"
#include "condlab/errors.hpp"
#include "condlab/geometry.hpp"
#include "condlab/instances.hpp"
#include "condlab/montecarlo.hpp"
#include "condlab/radial.hpp"
#include "condlab/validation_csv.hpp"

namespace condlab::cli {

namespace {

using std::numbers::pi;
constexpr double kInfinity = std::numeric_limits<double>::infinity();

std::string fmt(double v) { return csv::format_double(v); }

SelftestCheck density_mass(const SelftestOptions& opt) {
  radial::ProfileOptions po;
  if (opt.flip_g_prime) po.g_prime_scale = -1.0;
  for (auto [N, sigma] : {std::pair{2, 0.3}, {6, 1.0}, {10, 3.0}, {6, 0.05}, {20, 100.0}}) {
    try {
      const auto p = radial::build_profile(N, sigma, 257, po);
      if (std::abs(p.raw_mass() - 1.0) > 1e-6) {
        return {"density_mass", false, "N=" + std::to_string(N) + " sigma=" + fmt(sigma) + " mass=" + fmt(p.raw_mass())};
      }
    } catch (const QuadratureFailure& e) {
      return {"density_mass", false, "N=" + std::to_string(N) + " sigma=" + fmt(sigma) + ": " + e.what()};
    }
  }
  return {"density_mass", true, "|mass - 1| <= 1e-6 on 5 (N, sigma) pairs"};
}

SelftestCheck half_sphere_identity() {
  double worst = 0.0;
  for (int N : {2, 6, 10}) {
    for (double sigma : {0.3, 1.0, 3.0}) {
      const double log_h = radial::eval_log_G(pi / 2, N, sigma) + std::log(omega(N) / 2);
      worst = std::max(worst, std::abs(log_h + 0.5 / (sigma * sigma)));
    }
  }
  return {"half_sphere_identity", worst <= 1e-8, "max relative error " + fmt(worst)};
}

SelftestCheck phi_anchors() {
  bool ok = true;
  for (double C : {1.0, 2.0, 50.0}) {
    ok = ok && bounds::phi(0.0, 6, 2, C) == 1.0;
    ok = ok && std::abs(bounds::phi(1.0, 6, 2, C) - 23.0) <= 1e-12;
    ok = ok && std::abs(bounds::phi(1.0 / (2 * C), 6, 2, C) - 12.0) <= 1e-12;
  }
  ok = ok && bounds::phi(0.3, 6, 2, kInfinity) == 23.0;
  return {"phi_anchors", ok, "phi(0)=1, phi(1)=2Nd-1, phi(1/2C)=Nd, phi(.,inf)=2Nd-1"};
}

SelftestCheck c_helper_bound() {
  double worst = 0.0;
  for (int N = 2; N <= 40; ++N) {
    for (int e = -30; e <= 30; ++e) worst = std::max(worst, bounds::c_helper(N, std::pow(10.0, e / 10.0)));
  }
  return {"c_helper_bound", worst < std::sqrt(2.0) / 2, "max c = " + fmt(worst)};
}

SelftestCheck gamma_inequality() {
  double worst = 0.0;
  for (int N = 5; N <= 60; ++N) worst = std::max(worst, bounds::gamma_coefficient(N));
  return {"gamma_inequality", worst <= 1.0, "max coefficient " + fmt(worst)};
}

SelftestCheck limit_suite() {
  std::ostringstream detail;
  bool ok = true;
  const double sa2 = std::abs(bounds::smooth_gaussian_H(6, 2, 1e6) - std::log(12.0) - bounds::kK);
  ok = ok && sa2 <= 1e-3;
  detail << "smooth_gaussian(sigma=1e6) " << fmt(sa2);
  for (double C : {2.0, 10.0, 1e4}) {
    // The sigma -> 0 limit is checked where it has converged; see README.
    const double la1 = std::abs(bounds::local_gaussian_H({6, 2, 1e-10, C}) - std::log(C) - bounds::kKBar);
    const double la2 = std::abs(bounds::local_gaussian_H({6, 2, 1e6, C}) - std::log(12.0) - bounds::kKBar);
    ok = ok && la1 <= 1e-2 && la2 <= 1e-3;
    detail << "; C=" << C << " local_gaussian(sigma=1e-10) " << fmt(la1) << " local_gaussian(sigma=1e6) " << fmt(la2);
  }
  const double anchor = std::abs(bounds::local_uniform_H({6, 2, pi / 2, kInfinity}) -
                                 (std::log(23.0) + std::log(12.0) + 2.0));
  ok = ok && anchor <= 1e-12;
  detail << "; local_uniform(pi/2, C=inf) " << fmt(anchor);
  return {"limit_suite", ok, detail.str()};
}

SelftestCheck validation_harness(const SelftestOptions& opt) {
  const HyperplaneArrangement h({Eigen::VectorXd::Unit(7, 0),
                                 (Eigen::VectorXd::Unit(7, 0) + Eigen::VectorXd::Unit(7, 1)).normalized()});
  const UnitPoint c = center_at_condition(h, 4.0);
  const mc::RunOptions run{1, opt.corrupt_bound ? -10.0 : 0.0};
  const auto row = mc::validate_bound(h, c, "C=4", mc::UniformCap{0.3}, mc::BoundName::kLocalUniform, 5000,
                                      RngHandle{0, 0}, run);
  return {"validation_harness", row.verdict == mc::Verdict::kPass,
          "local_uniform verdict " + std::string(mc::to_string(row.verdict)) + ", mean " + fmt(row.estimate.mean) +
              ", bound " + fmt(row.bound_value)};
}

}  // namespace

std::vector<SelftestCheck> run_selftest(const SelftestOptions& options) {
  return {density_mass(options), half_sphere_identity(), phi_anchors(),      c_helper_bound(),
          gamma_inequality(),    limit_suite(),          validation_harness(options)};
}

}  // namespace condlab::cli
