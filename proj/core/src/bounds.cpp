#include "condlab/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "condlab/errors.hpp"
#include "condlab/numeric.hpp"

namespace condlab::bounds {

namespace {

void check_degree(int N, int d) {
  if (N < 1) throw DomainError("bounds require N >= 1");
  if (d < 1) throw DomainError("bounds require d >= 1");
}

void check_cond(double c) {
  if (!(c >= 1.0)) throw DomainError("cond_center must lie in [1, inf]");
}

void check_sigma(double sigma) {
  if (!(sigma >= 0.0 && std::isfinite(sigma))) throw DomainError("sigma must be finite and >= 0");
}

double rho_of(double theta) {
  if (!(theta > 0.0 && theta <= 0.5 * kPi)) {
    throw DomainError("theta must lie in (0, pi/2]; larger caps are outside the validated domain");
  }
  return std::sin(theta);
}

// rho + (1 - rho)/C with (1 - rho)/inf = 0.
double blended_distance(double rho, double c) {
  return std::isinf(c) ? rho : rho + (1.0 - rho) / c;
}

}  // namespace

double smooth_uniform(int N, int d, double theta) {
  check_degree(N, d);
  if (!(theta >= 0.0 && theta <= 0.5 * kPi)) throw DomainError("theta must lie in [0, pi/2]");
  if (theta == 0.0) return kInf;
  return std::log(static_cast<double>(N) * d / std::sin(theta)) + kK;
}

double phi(double rho, int N, int d, double cond_center) {
  check_degree(N, d);
  check_cond(cond_center);
  if (!(rho >= 0.0 && rho <= 1.0)) throw DomainError("phi requires rho in [0, 1]");
  const double nd = static_cast<double>(N) * d;
  if (std::isinf(cond_center)) return 2.0 * nd - 1.0;
  // log_{1/(2C)}(1/2) = ln 2 / ln(2C).
  const double exponent = std::numbers::ln2 / std::log(2.0 * cond_center);
  return 2.0 * (nd - 1.0) * std::pow(rho, exponent) + 1.0;
}

double local_uniform_cases(const UniformBoundInputs& in) {
  check_degree(in.N, in.d);
  check_cond(in.cond_center);
  const double rho = rho_of(in.theta);
  const double denom = blended_distance(rho, in.cond_center);
  const double threshold = std::isinf(in.cond_center) ? 0.0 : 1.0 / (2.0 * in.cond_center + 1.0);
  if (rho > threshold) {
    return std::log(static_cast<double>(in.N) * in.d / denom) + std::log(12.0) + 2.0;
  }
  return std::log(1.0 / denom) + std::log(4.0);
}

double local_uniform_H(const UniformBoundInputs& in) {
  const double rho = rho_of(in.theta);
  const double p = phi(rho, in.N, in.d, in.cond_center);
  return std::log(p / blended_distance(rho, in.cond_center)) + std::log(12.0) + 2.0;
}

double log_sine_expectation_bound(int N, double sigma) {
  if (N < 5) throw PreconditionError("log-sine expectation bound requires N >= 5");
  if (!(sigma > 0.0)) throw DomainError("sigma must be > 0");
  const double a = gaussian_cap_weight(sigma);
  return (1.0 + log_pow2_plus_inv_sigma(N, sigma) - std::log(a)) / N;
}

double smooth_gaussian_H(int N, int d, double sigma) {
  if (N < 5) throw PreconditionError("smooth_gaussian requires N >= 5, got N = " + std::to_string(N));
  check_degree(N, d);
  check_sigma(sigma);
  if (sigma == 0.0) return kInf;
  const double a = gaussian_cap_weight(sigma);
  return a * log_sine_expectation_bound(N, sigma) + std::log(static_cast<double>(N) * d) + kK;
}

LocalGaussianTerms local_gaussian_terms(const GaussianBoundInputs& in) {
  if (in.N < 6) {
    throw PreconditionError("local_gaussian requires N >= 6, got N = " + std::to_string(in.N));
  }
  check_degree(in.N, in.d);
  check_sigma(in.sigma);
  check_cond(in.cond_center);
  const int N = in.N;
  const double sigma = in.sigma;
  const double C = in.cond_center;
  const double a = gaussian_cap_weight(sigma);
  const double e = 1.0 - a;
  const double log_nd = std::log(static_cast<double>(N) * in.d);
  // ln(2^{N-1} + sigma^{-(N+1)}); +inf at sigma = 0.
  const double lse = sigma == 0.0 ? kInf : log_pow2_plus_inv_sigma(N, sigma);
  const double smoothed = sigma == 0.0 ? kInf : (a / N) * (lse - std::log(a));

  LocalGaussianTerms t{};
  if (std::isinf(C)) {
    t.term1 = 0.0;
    t.term2 = smoothed;
    t.term3 = log_nd;
    return t;
  }
  const double log_c = std::log(C);
  const double spread = 4.0 * kPi * sigma * C * std::sqrt(N + 1.0);
  const double head = std::exp(lse - N * std::log(2.0 * C));
  t.term1 = log_c == 0.0 ? 0.0 : log_c * std::min(a, head);
  t.term2 = std::min({a * log_c, spread * log_c, smoothed});
  t.term3 = log_nd * std::min(1.0, e + spread);
  return t;
}

double local_gaussian_H(const GaussianBoundInputs& in) {
  const LocalGaussianTerms t = local_gaussian_terms(in);
  return t.term1 + t.term2 + t.term3 + kKBar;
}

double c_helper(int N, double sigma) {
  if (N < 2) throw DomainError("c_helper requires N >= 2");
  if (!(sigma > 0.0)) throw DomainError("c_helper requires sigma > 0");
  const double a = gaussian_cap_weight(sigma);
  const double log_s = (N + 1) * std::log(sigma);
  const double log_den = log_add_exp(0.0, (N - 1) * std::numbers::ln2 + log_s);
  return std::exp((std::log(a) + log_s - log_den) / N);
}

double gamma_coefficient(int N) {
  if (N < 2) throw DomainError("gamma_coefficient requires N >= 2");
  const double log_value = (N + 0.5) * std::numbers::ln2 + 0.5 * (N - 1) -
                           0.5 * std::log(kPi) - 0.5 * N * std::log(N - 1.0) -
                           std::log(N + 1.0);
  return std::exp(log_value);
}

}  // namespace condlab::bounds
