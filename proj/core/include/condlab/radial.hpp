#pragma once

#include <functional>
#include <span>
#include <vector>

#include "condlab/numeric.hpp"

namespace condlab::radial {

// Radial decomposition of N(center, sigma^2 Id) on R^{N+1} for a center on
// S^N. Everything here depends only on (N, sigma).
//
//   G(alpha)  = (2 pi sigma^2)^{-(N+1)/2} ∫ exp(-(l^2 + 1 - 2 l cos alpha)/(2 sigma^2)) |l|^N dl
//   f(theta)  = -vol(B_S(theta)) G'(theta) / (1 - exp(-1/(2 sigma^2)))
//
// G is evaluated on the folded form ∫_0^∞ l^N [e^{-(l-c)^2/2s^2} + e^{-(l+c)^2/2s^2}] dl
// (c = cos alpha), which makes G' a positive integral times -sin(alpha) and
// avoids the cancellation of the signed integrand.

// alpha in [0, pi/2], N >= 1, sigma > 0. Relative error <= 1e-8.
double eval_G(double alpha, int N, double sigma);
// ln G(alpha); finite where G underflows.
double eval_log_G(double alpha, int N, double sigma);

// dG/dalpha; <= 0 on [0, pi/2], zero at both endpoints.
double eval_G_prime(double alpha, int N, double sigma);

// The radial density f; theta in [0, pi/2], N >= 2. f(0) = f(pi/2) = 0.
double eval_f(double theta, int N, double sigma);

struct ProfileOptions {
  // Multiplies G' inside f. Only the mutation self-test sets this to -1.
  double g_prime_scale = 1.0;
};

// Tabulated G, G', f and CDF on a Chebyshev grid over [0, pi/2]. The CDF is
// built from adaptive quadrature of f between grid nodes (not from the
// tabulated values), then renormalized by the raw mass. Immutable after
// construction.
class RadialProfile {
 public:
  int N() const { return N_; }
  double sigma() const { return sigma_; }
  std::span<const double> theta_grid() const { return theta_; }
  std::span<const double> g_values() const { return g_; }
  std::span<const double> g_prime_values() const { return g_prime_; }
  std::span<const double> f_values() const { return f_; }
  std::span<const double> cdf() const { return cdf_; }
  // ∫_0^{pi/2} f before renormalization.
  double raw_mass() const { return raw_mass_; }

  // Renormalized density at theta.
  double density(double theta) const;
  // ∫_0^t f for t in [0, pi/2].
  double cdf_at(double t) const;
  // ∫_a^b g f (renormalized), split at the grid nodes. Non-finite g values
  // are an error except below singular_cut where f vanishes.
  double integrate(const std::function<double(double)>& g, double a, double b,
                   double singular_cut = 0.0) const;

 private:
  friend RadialProfile build_profile(int, double, int, const ProfileOptions&);
  RadialProfile() = default;
  double raw_density(double theta) const;
  std::size_t segment_of(double t) const;
  // ∫ g f over grid segment k before renormalization, starting from the
  // tabulated Kronrod values of f.
  QuadratureResult segment_integral(const std::function<double(double, double)>& gf,
                                    std::size_t k) const;

  int N_ = 0;
  double sigma_ = 0.0;
  ProfileOptions options_;
  std::vector<double> theta_, g_, g_prime_, f_, cdf_;
  std::vector<detail::KronrodValues> kronrod_f_;  // raw f at each segment's Kronrod nodes
  double raw_mass_ = 0.0;
};

// N >= 2, sigma > 0, grid_size >= 129. Throws QuadratureFailure (with the
// computed mass in the message) when |mass - 1| > 1e-6.
RadialProfile build_profile(int N, double sigma, int grid_size = 257,
                            const ProfileOptions& options = {});

// E_{theta~f} g(theta).
double expect_under_f(const RadialProfile& profile, const std::function<double(double)>& g,
                      double singular_cut = 0.0);

struct LemmaCheck {
  double lhs;
  double rhs;
  bool ok;
};

// Head mass ∫_0^t f <= min{1, (sin(2t)^N / 2 + sin(t)^N / sigma^{N+1}) / a};
// N >= 5, t in [0, pi/4]. ok when lhs <= rhs + 1e-9.
LemmaCheck check_head_mass(const RadialProfile& profile, double t);

// Tail mass ∫_t^{pi/2} f <= min{1, 2 pi sigma sqrt(N+1) / (a t)};
// t in (0, pi/2]. ok when lhs <= rhs + 1e-9.
LemmaCheck check_tail_mass(const RadialProfile& profile, double t);

// ∫_t^{pi/2} ln(1/sin) f <= ln sqrt 2 + ∫_{sin t}^{sqrt2/2} (F(asin s) - F(t)) / s ds,
// F the CDF; t in [0, pi/4]. ok when lhs <= rhs + 1e-6.
LemmaCheck check_log_split(const RadialProfile& profile, double t);

// E_f ln(1/sin theta) <= bounds::log_sine_expectation_bound(N, sigma);
// N >= 5. ok when lhs <= rhs + 1e-6.
LemmaCheck check_log_expectation(const RadialProfile& profile);

// Right-hand side of the decomposition identity for the indicator of
// angle(psi(y), center) <= t:
//   a ∫ min(1, v(min(t, theta)) / v(theta)) f dtheta + (1 - a) v(t) / (omega_N / 2).
double decomposition_rhs(const RadialProfile& profile, double t);

}  // namespace condlab::radial
