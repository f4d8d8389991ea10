#include "condlab/radial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "condlab/bounds.hpp"
#include "condlab/errors.hpp"
#include "condlab/geometry.hpp"
#include "condlab/numeric.hpp"

namespace condlab::radial {

namespace {

constexpr double kHalfPi = 0.5 * kPi;
constexpr double kMassTolerance = 1e-6;
constexpr double kIntegrateTolerance = 1e-8;
constexpr double kSegmentTolerance = 1e-10;

enum class Fold { kEven, kOdd };

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= kHalfPi)) throw DomainError("angle must lie in [0, pi/2]");
}

// ln(1/sin x), accurate at both ends of (0, pi/2].
double neg_log_sin(double x) {
  if (x < 0.25 * kPi) return -std::log(std::sin(x));
  const double c = std::cos(x);
  return -0.5 * std::log1p(-c * c);
}

void check_sigma(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError("sigma must be finite and > 0");
}

// ln ∫_0^∞ l^m e^{-(l-c)^2/(2 s^2)} w(l) dl with w = 1 + e^{-2lc/s^2} (even
// fold) or w = 1 - e^{-2lc/s^2} (odd fold). The integrand is log-concave
// times a bounded weight, so a window of 12 + sqrt(2m) standard deviations
// around its mode captures it to double precision. Integration runs in
// z = (l - c)/s: in l itself, rounding of l near c is amplified by the
// Gaussian's slope once s is small.
double log_folded_moment(int m, double c, double sigma, Fold fold) {
  const double s2 = sigma * sigma;
  if (fold == Fold::kOdd && c <= 0.0) return -kInf;
  const double mode = 0.5 * (c + std::sqrt(c * c + 4.0 * m * s2));
  const double mode_z = (mode - c) / sigma;
  const double reach = 12.0 + std::sqrt(2.0 * m);
  const double lo = std::max(-c / sigma, -reach);
  const double hi = std::max(0.0, mode_z) + reach;
  auto integrand = [=](double z) {
    const double l = c + sigma * z;
    if (l <= 0.0) return 0.0;
    const double core =
        std::exp(m * std::log1p(sigma * (z - mode_z) / mode) - 0.5 * (z * z - mode_z * mode_z));
    const double w = fold == Fold::kEven ? 1.0 + std::exp(-2.0 * l * c / s2)
                                         : -std::expm1(-2.0 * l * c / s2);
    return core * w;
  };
  const double value = integrate_adaptive(integrand, lo, hi, 1e-12).value;
  if (!(value > 0.0)) return -kInf;
  return m * std::log(mode) - 0.5 * mode_z * mode_z + std::log(sigma) + std::log(value);
}

// ln of the common prefactor (2 pi s^2)^{-(N+1)/2} e^{-sin^2(alpha)/(2 s^2)}.
double log_prefactor(double alpha, int N, double sigma) {
  const double s = std::sin(alpha);
  return -0.5 * (N + 1) * std::log(2.0 * kPi * sigma * sigma) - s * s / (2.0 * sigma * sigma);
}

// ln |G'(alpha)|; -inf at the endpoints.
double log_abs_g_prime(double alpha, int N, double sigma) {
  if (alpha == 0.0) return -kInf;
  return std::log(std::sin(alpha)) - 2.0 * std::log(sigma) + log_prefactor(alpha, N, sigma) +
         log_folded_moment(N + 1, std::cos(alpha), sigma, Fold::kOdd);
}

double log_f_unscaled(double theta, int N, double sigma) {
  if (theta <= 0.0 || theta >= kHalfPi) return -kInf;
  return std::log(cap_volume(N, theta)) + log_abs_g_prime(theta, N, sigma) -
         std::log(gaussian_cap_weight(sigma));
}

}  // namespace

double eval_log_G(double alpha, int N, double sigma) {
  check_alpha(alpha);
  check_sigma(sigma);
  if (N < 1) throw DomainError("eval_G requires N >= 1");
  return log_prefactor(alpha, N, sigma) +
         log_folded_moment(N, std::cos(alpha), sigma, Fold::kEven);
}

double eval_G(double alpha, int N, double sigma) { return std::exp(eval_log_G(alpha, N, sigma)); }

double eval_G_prime(double alpha, int N, double sigma) {
  check_alpha(alpha);
  check_sigma(sigma);
  if (N < 1) throw DomainError("eval_G_prime requires N >= 1");
  return -std::exp(log_abs_g_prime(alpha, N, sigma));
}

double eval_f(double theta, int N, double sigma) {
  check_alpha(theta);
  check_sigma(sigma);
  if (N < 2) throw DomainError("eval_f requires N >= 2");
  return std::exp(log_f_unscaled(theta, N, sigma));
}

double RadialProfile::raw_density(double theta) const {
  return options_.g_prime_scale * std::exp(log_f_unscaled(theta, N_, sigma_));
}

double RadialProfile::density(double theta) const {
  check_alpha(theta);
  return raw_density(theta) / raw_mass_;
}

std::size_t RadialProfile::segment_of(double t) const {
  auto it = std::upper_bound(theta_.begin(), theta_.end(), t);
  const auto k = static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - theta_.begin() - 1, 0));
  return std::min(k, theta_.size() - 2);
}

double RadialProfile::cdf_at(double t) const {
  check_alpha(t);
  if (t == kHalfPi) return cdf_.back();
  const std::size_t k = segment_of(t);
  const double part = integrate_adaptive([this](double x) { return raw_density(x); },
                                         theta_[k], t, 1e-10, 1e-16)
                          .value;
  return cdf_[k] + part / raw_mass_;
}

QuadratureResult RadialProfile::segment_integral(
    const std::function<double(double, double)>& gf, std::size_t k) const {
  const double lo = theta_[k];
  const double hi = theta_[k + 1];
  const detail::KronrodValues nodes = detail::kronrod_nodes(lo, hi);
  detail::KronrodValues values{};
  for (std::size_t j = 0; j < nodes.size(); ++j) values[j] = gf(nodes[j], kronrod_f_[k][j]);
  const detail::Panel panel = detail::kronrod_panel(lo, hi, values);
  if (panel.error <= kSegmentTolerance * panel.l1) return {panel.value, panel.error, panel.l1};
  return gauss_kronrod([&](double x) { return gf(x, raw_density(x)); }, lo, hi, kSegmentTolerance,
                       1e-300, 200);
}

double RadialProfile::integrate(const std::function<double(double)>& g, double a, double b,
                                double singular_cut) const {
  check_alpha(a);
  check_alpha(b);
  if (b <= a) return 0.0;
  auto gf = [&](double x, double fx) {
    const double gx = g(x);
    if (!std::isfinite(gx)) {
      if (x < singular_cut && fx == 0.0) return 0.0;
      throw DomainError("integrand is not finite at theta = " + std::to_string(x));
    }
    return gx * fx;
  };
  // Error is pooled over the grid segments so a jump in g (an indicator,
  // say) only has to meet the overall target, not every segment's.
  double total = 0.0;
  double error = 0.0;
  double l1 = 0.0;
  for (std::size_t k = segment_of(a); k + 1 < theta_.size() && theta_[k] < b; ++k) {
    const double lo = std::max(a, theta_[k]);
    const double hi = std::min(b, theta_[k + 1]);
    if (hi <= lo) continue;
    const QuadratureResult r =
        lo == theta_[k] && hi == theta_[k + 1]
            ? segment_integral(gf, k)
            : gauss_kronrod([&](double x) { return gf(x, raw_density(x)); }, lo, hi,
                            kSegmentTolerance, 1e-300, 200);
    total += r.value;
    error += r.error;
    l1 += r.l1;
  }
  if (!std::isfinite(total) || error > kIntegrateTolerance * l1 + 1e-300) {
    throw QuadratureFailure("profile integral on [" + std::to_string(a) + ", " +
                            std::to_string(b) + "] missed tolerance: error " +
                            std::to_string(error) + " vs L1 " + std::to_string(l1));
  }
  return total / raw_mass_;
}

RadialProfile build_profile(int N, double sigma, int grid_size, const ProfileOptions& options) {
  if (N < 2) throw DomainError("build_profile requires N >= 2");
  check_sigma(sigma);
  if (grid_size < 129) throw DomainError("build_profile requires grid_size >= 129");

  RadialProfile p;
  p.N_ = N;
  p.sigma_ = sigma;
  p.options_ = options;
  const auto m = static_cast<std::size_t>(grid_size);
  p.theta_.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    p.theta_[k] = 0.25 * kPi * (1.0 - std::cos(kPi * static_cast<double>(k) / (m - 1)));
  }
  p.theta_.front() = 0.0;
  p.theta_.back() = kHalfPi;

  p.g_prime_.resize(m);
  p.f_.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    p.g_prime_[k] = options.g_prime_scale * eval_G_prime(p.theta_[k], N, sigma);
    p.f_[k] = p.raw_density(p.theta_[k]);
  }

  // G by the fundamental theorem of calculus from G(pi/2): strictly
  // decreasing wherever G' < 0, independent of quadrature noise in G itself.
  p.g_.resize(m);
  p.g_.back() = eval_G(kHalfPi, N, sigma);
  for (std::size_t k = m - 1; k-- > 0;) {
    const double drop = integrate_adaptive(
        [&](double x) { return -eval_G_prime(x, N, sigma); }, p.theta_[k], p.theta_[k + 1],
        1e-11, 1e-300).value;
    p.g_[k] = p.g_[k + 1] + drop;
  }

  p.kronrod_f_.resize(m - 1);
  for (std::size_t k = 0; k + 1 < m; ++k) {
    const detail::KronrodValues nodes = detail::kronrod_nodes(p.theta_[k], p.theta_[k + 1]);
    for (std::size_t j = 0; j < nodes.size(); ++j) p.kronrod_f_[k][j] = p.raw_density(nodes[j]);
  }

  std::vector<double> cumulative(m, 0.0);
  auto identity = [](double, double fx) { return fx; };
  for (std::size_t k = 0; k + 1 < m; ++k) {
    const QuadratureResult r = p.segment_integral(identity, k);
    if (r.error > std::max(kSegmentTolerance * r.l1, 1e-16)) {
      throw QuadratureFailure("density quadrature missed tolerance on [" +
                              std::to_string(p.theta_[k]) + ", " +
                              std::to_string(p.theta_[k + 1]) + "]");
    }
    cumulative[k + 1] = cumulative[k] + r.value;
  }
  p.raw_mass_ = cumulative.back();
  if (!(std::abs(p.raw_mass_ - 1.0) <= kMassTolerance)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "density mass check failed for N = " << N << ", sigma = " << sigma
        << ": integral of f = " << p.raw_mass_ << " (|mass - 1| > 1e-6)";
    throw QuadratureFailure(msg.str());
  }
  p.cdf_.resize(m);
  for (std::size_t k = 0; k < m; ++k) p.cdf_[k] = cumulative[k] / p.raw_mass_;
  return p;
}

double expect_under_f(const RadialProfile& profile, const std::function<double(double)>& g,
                      double singular_cut) {
  return profile.integrate(g, 0.0, kHalfPi, singular_cut);
}

LemmaCheck check_head_mass(const RadialProfile& profile, double t) {
  const int N = profile.N();
  if (N < 5) throw PreconditionError("head-mass bound requires N >= 5");
  if (!(t >= 0.0 && t <= 0.25 * kPi)) throw DomainError("head-mass bound requires t in [0, pi/4]");
  const double sigma = profile.sigma();
  const double mass = profile.cdf_at(t);
  double bound = 0.0;
  if (t > 0.0) {
    const double log_sum =
        log_add_exp(N * std::log(std::sin(2.0 * t)) - std::numbers::ln2,
                    N * std::log(std::sin(t)) - (N + 1) * std::log(sigma));
    bound = std::min(1.0, std::exp(log_sum - std::log(gaussian_cap_weight(sigma))));
  }
  return {mass, bound, mass <= bound + 1e-9};
}

LemmaCheck check_tail_mass(const RadialProfile& profile, double t) {
  if (!(t > 0.0 && t <= kHalfPi)) throw DomainError("tail-mass bound requires t in (0, pi/2]");
  const double sigma = profile.sigma();
  const double mass = std::max(0.0, 1.0 - profile.cdf_at(t));
  const double bound = std::min(
      1.0, 2.0 * kPi * sigma * std::sqrt(profile.N() + 1.0) / (gaussian_cap_weight(sigma) * t));
  return {mass, bound, mass <= bound + 1e-9};
}

LemmaCheck check_log_split(const RadialProfile& profile, double t) {
  if (!(t >= 0.0 && t <= 0.25 * kPi)) throw DomainError("log-split bound requires t in [0, pi/4]");
  const double lhs =
      profile.integrate(neg_log_sin, t, kHalfPi, 1e-3);
  // ∫_{sin t}^{s_hi} (F(asin s) - F(t)) / s ds, with the order of
  // integration swapped: ∫_t^{pi/4} f(x) ln(s_hi / sin x) dx.
  const double s_hi = std::sqrt(0.5);
  const double tail = profile.integrate(
      [s_hi](double x) { return std::log(s_hi / std::sin(x)); }, t, 0.25 * kPi, 1e-3);
  const double rhs = 0.5 * std::numbers::ln2 + tail;
  return {lhs, rhs, lhs <= rhs + 1e-6};
}

LemmaCheck check_log_expectation(const RadialProfile& profile) {
  const double lhs =
      expect_under_f(profile, neg_log_sin, 1e-3);
  const double rhs = bounds::log_sine_expectation_bound(profile.N(), profile.sigma());
  return {lhs, rhs, lhs <= rhs + 1e-6};
}

double decomposition_rhs(const RadialProfile& profile, double t) {
  if (!(t > 0.0 && t <= kHalfPi)) throw DomainError("decomposition_rhs requires t in (0, pi/2]");
  const int N = profile.N();
  const double a = gaussian_cap_weight(profile.sigma());
  const double v_t = cap_volume(N, t);
  double inner = profile.cdf_at(t);
  if (t < kHalfPi) {
    inner += v_t * profile.integrate([N](double x) { return 1.0 / cap_volume(N, x); }, t, kHalfPi);
  }
  return a * inner + (1.0 - a) * v_t / (0.5 * omega(N));
}

}  // namespace condlab::radial
