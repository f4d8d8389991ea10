#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "condlab/geometry.hpp"

namespace condlab {

using Engine = std::mt19937_64;

// Identity of a reproducible random stream. The same (seed, stream) always
// yields the same engine state; different streams are seeded from disjoint
// seed sequences.
struct RngHandle {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  Engine engine() const;
  // Child stream for worker / grid-point k. Deterministic in (seed, stream, k).
  RngHandle substream(std::uint64_t k) const;

  friend bool operator==(const RngHandle&, const RngHandle&) = default;
};

// N(center, sigma^2 Id) on R^{N+1}.
struct GaussianSpec {
  GaussianSpec(UnitPoint center, double sigma);
  UnitPoint center;
  double sigma;
};

// center + sigma z, z standard normal.
Point sample_gaussian(const GaussianSpec& spec, Engine& rng);

// Uniform on S^N (normalized standard Gaussian).
UnitPoint sample_uniform_sphere(int N, Engine& rng);

// Inverse-CDF sampler for the polar angle of a uniform point in a cap of
// S^N: density proportional to sin^{N-1}(alpha) on [0, theta]. The CDF is
// tabulated panel-wise by Gauss-Legendre quadrature at construction; each
// draw is inverted by a bisection-safeguarded Newton iteration to 1e-14 theta.
// The density is carried as (sin a / sin theta)^{N-1} so large N cannot
// underflow.
class CapAngleSampler {
 public:
  // theta in [0, pi/2].
  CapAngleSampler(int N, double theta);

  int N() const { return N_; }
  double theta() const { return theta_; }

  // P(alpha <= a) for a in [0, theta].
  double cdf(double a) const;
  // Smallest a with cdf(a) >= u, u in [0, 1].
  double quantile(double u) const;
  double sample(Engine& rng) const;

  // Uniform point of B_S(center, theta).
  UnitPoint sample_point(const UnitPoint& center, Engine& rng) const;

 private:
  double partial_mass(std::size_t panel, double a) const;
  double density(double a) const;

  int N_;
  double theta_;
  double sin_theta_;
  std::vector<double> knots_;       // panel boundaries, knots_.front() = 0
  std::vector<double> cumulative_;  // unnormalized mass up to each knot
};

// Uniform on B_S(cap.center, cap.theta), theta in [0, pi/2]. theta = 0
// returns the center.
UnitPoint sample_uniform_cap(const CapSpec& cap, Engine& rng);

// Uniform on B_sin(center, rho) = B_S(center, asin rho) ∪ B_S(-center, asin rho).
UnitPoint sample_sin_ball(const UnitPoint& center, double rho, Engine& rng);

// Uniform unit vector orthogonal to center (uniform on S^{N-1} of center^perp).
Eigen::VectorXd sample_orthogonal_direction(const UnitPoint& center, Engine& rng);

}  // namespace condlab
