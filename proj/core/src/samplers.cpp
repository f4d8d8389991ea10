#include "condlab/samplers.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

#include "condlab/errors.hpp"
#include "condlab/numeric.hpp"

namespace condlab {

namespace {

constexpr std::size_t kPanels = 64;
constexpr double kAngleTolerance = 1e-14;  // relative to theta

using Legendre = boost::math::quadrature::gauss<double, 20>;

Eigen::VectorXd standard_normal_vector(int dim, Engine& rng) {
  std::normal_distribution<double> normal;
  Eigen::VectorXd z(dim);
  for (int i = 0; i < dim; ++i) z[i] = normal(rng);
  return z;
}

}  // namespace

Engine RngHandle::engine() const {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32), 0x636f6e64u};
  return Engine(seq);
}

RngHandle RngHandle::substream(std::uint64_t k) const {
  // splitmix64 finalizer over (stream, k): distinct k give unrelated streams.
  std::uint64_t z = stream + 0x9e3779b97f4a7c15ull * (k + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  z ^= z >> 31;
  return {seed, z};
}

GaussianSpec::GaussianSpec(UnitPoint c, double s) : center(std::move(c)), sigma(s) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw DomainError("Gaussian sampler requires 0 < sigma < inf");
  }
}

Point sample_gaussian(const GaussianSpec& spec, Engine& rng) {
  Eigen::VectorXd z = standard_normal_vector(spec.center.size(), rng);
  return Point(spec.center.coords() + spec.sigma * z);
}

UnitPoint sample_uniform_sphere(int N, Engine& rng) {
  if (N < 1) throw DomainError("sample_uniform_sphere requires N >= 1");
  for (;;) {
    Eigen::VectorXd z = standard_normal_vector(N + 1, rng);
    if (z.norm() > 0.0) return UnitPoint::normalize(z);
  }
}

Eigen::VectorXd sample_orthogonal_direction(const UnitPoint& center, Engine& rng) {
  const Eigen::VectorXd& c = center.coords();
  for (;;) {
    Eigen::VectorXd z = standard_normal_vector(static_cast<int>(c.size()), rng);
    z -= c.dot(z) * c;
    z -= c.dot(z) * c;
    const double n = z.norm();
    if (n > 1e-12) return z / n;
  }
}

CapAngleSampler::CapAngleSampler(int N, double theta)
    : N_(N), theta_(theta), sin_theta_(std::sin(theta)) {
  if (N_ < 1) throw DomainError("cap sampler requires N >= 1");
  if (!(theta_ >= 0.0 && theta_ <= 0.5 * kPi)) {
    throw DomainError("cap sampler requires theta in [0, pi/2]");
  }
  knots_.resize(kPanels + 1);
  cumulative_.assign(kPanels + 1, 0.0);
  for (std::size_t i = 0; i <= kPanels; ++i) {
    knots_[i] = theta_ * static_cast<double>(i) / static_cast<double>(kPanels);
  }
  knots_.back() = theta_;
  for (std::size_t i = 0; i < kPanels; ++i) {
    cumulative_[i + 1] = cumulative_[i] + partial_mass(i, knots_[i + 1]);
  }
}

double CapAngleSampler::density(double a) const {
  return N_ == 1 ? 1.0 : std::pow(std::sin(a) / sin_theta_, N_ - 1);
}

double CapAngleSampler::partial_mass(std::size_t panel, double a) const {
  const double lo = knots_[panel];
  if (a <= lo) return 0.0;
  return Legendre::integrate([this](double t) { return density(t); }, lo, a);
}

double CapAngleSampler::cdf(double a) const {
  if (theta_ == 0.0) return 1.0;
  a = std::clamp(a, 0.0, theta_);
  auto it = std::upper_bound(knots_.begin(), knots_.end(), a);
  const std::size_t panel =
      std::min<std::size_t>(static_cast<std::size_t>(it - knots_.begin()) - 1, kPanels - 1);
  return (cumulative_[panel] + partial_mass(panel, a)) / cumulative_.back();
}

double CapAngleSampler::quantile(double u) const {
  if (theta_ == 0.0) return 0.0;
  u = std::clamp(u, 0.0, 1.0);
  const double target = u * cumulative_.back();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
  std::size_t panel = static_cast<std::size_t>(it - cumulative_.begin());
  panel = std::clamp<std::size_t>(panel, 1, kPanels) - 1;
  const double residual = target - cumulative_[panel];

  double lo = knots_[panel];
  double hi = knots_[panel + 1];
  const double tol = kAngleTolerance * theta_;
  double a = 0.5 * (lo + hi);
  for (int iter = 0; iter < 200 && hi - lo > tol; ++iter) {
    const double g = partial_mass(panel, a) - residual;
    if (g > 0.0) {
      hi = a;
    } else {
      lo = a;
    }
    const double slope = density(a);
    double next = slope > 0.0 ? a - g / slope : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(next - a) <= tol) {
      a = next;
      break;
    }
    a = next;
  }
  return std::clamp(a, 0.0, theta_);
}

double CapAngleSampler::sample(Engine& rng) const {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  return quantile(unif(rng));
}

UnitPoint CapAngleSampler::sample_point(const UnitPoint& center, Engine& rng) const {
  if (center.sphere_dim() != N_) throw DomainError("cap sampler: center dimension mismatch");
  if (theta_ == 0.0) return center;
  const double alpha = sample(rng);
  const Eigen::VectorXd v = sample_orthogonal_direction(center, rng);
  return UnitPoint::normalize(Eigen::VectorXd(std::cos(alpha) * center.coords() +
                                              std::sin(alpha) * v));
}

UnitPoint sample_uniform_cap(const CapSpec& cap, Engine& rng) {
  if (cap.theta > 0.5 * kPi) throw DomainError("sample_uniform_cap requires theta <= pi/2");
  if (cap.theta == 0.0) return cap.center;
  return CapAngleSampler(cap.center.sphere_dim(), cap.theta).sample_point(cap.center, rng);
}

UnitPoint sample_sin_ball(const UnitPoint& center, double rho, Engine& rng) {
  if (!(rho > 0.0 && rho <= 1.0)) throw DomainError("sample_sin_ball requires rho in (0, 1]");
  const UnitPoint x = sample_uniform_cap(CapSpec(center, std::asin(rho)), rng);
  std::bernoulli_distribution flip(0.5);
  return flip(rng) ? -x : x;
}

}  // namespace condlab
