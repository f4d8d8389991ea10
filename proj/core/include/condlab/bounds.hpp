#pragma once

#include <cmath>
#include <numbers>

namespace condlab::bounds {

// K = 2(ln 2 + 1), the constant of the uniform smoothed bound.
inline constexpr double kK = 2.0 * (std::numbers::ln2 + 1.0);
// K̄ = K + ln 2 = 3 ln 2 + 2, the constant of the local Gaussian bound.
inline constexpr double kKBar = kK + std::numbers::ln2;

// Local uniform bounds. theta in (0, pi/2]; cond_center in [1, +inf].
struct UniformBoundInputs {
  int N;
  int d;
  double theta;
  double cond_center;
};

// Gaussian bounds. sigma >= 0 (sigma = 0 is the point-mass limit).
struct GaussianBoundInputs {
  int N;
  int d;
  double sigma;
  double cond_center;
};

// ln(Nd / sin theta) + K, theta in [0, pi/2]; +inf at theta = 0.
double smooth_uniform(int N, int d, double theta);

// phi(rho) = 2(Nd - 1) rho^{ln 2 / ln(2 C)} + 1 on [0, 1]; the exponent is
// 0 when C = inf, so phi is then the constant 2Nd - 1.
double phi(double rho, int N, int d, double cond_center);

// The two-branch local bound for the cap average of ln C.
double local_uniform_cases(const UniformBoundInputs& in);

// Single-formula local bound H(N, d, theta, C) = ln(phi(rho) / (rho + (1 -
// rho)/C)) + ln 12 + 2, rho = sin theta. Dominates local_uniform_cases.
double local_uniform_H(const UniformBoundInputs& in);

// Smoothed Gaussian bound, N >= 5:
//   (a/N)(1 + ln(2^{N-1} + sigma^{-(N+1)}) - ln a) + ln(Nd) + K,
// a = 1 - exp(-1/(2 sigma^2)). +inf at sigma = 0.
double smooth_gaussian_H(int N, int d, double sigma);

// The three bracketed terms of the local Gaussian bound (before + K̄).
struct LocalGaussianTerms {
  double term1;  // ln C * min{a, (2C)^{-N}(2^{N-1} + sigma^{-(N+1)})}
  double term2;  // min{a ln C, 4 pi sigma C sqrt(N+1) ln C, (a/N)(ln(2^{N-1}+sigma^{-(N+1)}) - ln a)}
  double term3;  // ln(Nd) min{1, e^{-1/(2 sigma^2)} + 4 pi C sigma sqrt(N+1)}
};

// C = inf convention: term1 = 0 (its (2C)^{-N} ln C factor vanishes), the
// first two entries of term2 are +inf, term3 = ln(Nd).
LocalGaussianTerms local_gaussian_terms(const GaussianBoundInputs& in);

// Local Gaussian bound, N >= 6: term1 + term2 + term3 + K̄.
double local_gaussian_H(const GaussianBoundInputs& in);

// c(N, sigma) = ((a sigma^{N+1}) / (1 + 2^{N-1} sigma^{N+1}))^{1/N}, N >= 2.
double c_helper(int N, double sigma);

// Upper bound on E_{theta~f} ln(1/sin theta), N >= 5:
//   (1/N)(1 + ln(2^{N-1} + sigma^{-(N+1)}) - ln a).
double log_sine_expectation_bound(int N, double sigma);

// 2^{N+1/2} e^{(N-1)/2} / (sqrt(pi) (N-1)^{N/2} (N+1)); at most 1 for N >= 5.
double gamma_coefficient(int N);

}  // namespace condlab::bounds
