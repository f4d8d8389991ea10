#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include <boost/math/special_functions/beta.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "condlab/errors.hpp"
#include "condlab/geometry.hpp"
#include "condlab/samplers.hpp"

using namespace condlab;
using std::numbers::pi;

namespace {

// P(alpha <= a) for the polar angle of a uniform point in B_S(x̄, θ), θ <= π/2.
double angle_cdf_oracle(int N, double theta, double a) {
  if (N == 1) return a / theta;
  if (N <= 50) {
    auto mass = [N](double t) {
      const double s = std::sin(t);
      return boost::math::ibeta(N / 2.0, 0.5, s * s);
    };
    return mass(a) / mass(theta);
  }
  // Wide exponent range: sin^N underflows double for large N, small theta.
  using Big = boost::multiprecision::cpp_bin_float_50;
  auto mass = [N](double t) {
    const Big s = sin(Big(t));
    return boost::math::ibeta(Big(N) / 2, Big(0.5), s * s);
  };
  return static_cast<double>(mass(a) / mass(theta));
}

// Kolmogorov distribution: critical value at the 1e-3 level is about 1.9495.
constexpr double kKsCritical = 1.9495;

double ks_statistic(std::vector<double> xs, const std::function<double(double)>& cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max({d, f - i / n, (i + 1) / n - f});
  }
  return d;
}

struct Moments {
  double mean = 0, var = 0;
};

Moments moments(const std::vector<double>& v) {
  Moments m;
  for (double x : v) m.mean += x;
  m.mean /= v.size();
  for (double x : v) m.var += (x - m.mean) * (x - m.mean);
  m.var /= (v.size() - 1);
  return m;
}

UnitPoint random_center(int N, Engine& eng) { return sample_uniform_sphere(N, eng); }

}  // namespace

TEST(Rng, Determinism) {
  const RngHandle h{42, 7};
  Engine a = h.engine(), b = h.engine();
  for (int i = 0; i < 10; ++i) EXPECT_EQ(a(), b());
  EXPECT_NE(RngHandle({42, 7}).engine()(), RngHandle({42, 8}).engine()());
  EXPECT_NE(RngHandle({42, 7}).engine()(), RngHandle({43, 7}).engine()());
  EXPECT_EQ(h.substream(3), h.substream(3));
  EXPECT_FALSE(h.substream(3) == h.substream(4));
  EXPECT_NE(h.substream(0).engine()(), h.engine()());
}

TEST(Rng, StreamsLookIndependent) {
  // Correlation of uniforms from neighbouring streams stays at the 1/sqrt(n) level.
  const int n = 100000;
  Engine a = RngHandle{1, 0}.engine(), b = RngHandle{1, 1}.engine();
  std::uniform_real_distribution<double> u;
  double sxy = 0;
  for (int i = 0; i < n; ++i) sxy += (u(a) - 0.5) * (u(b) - 0.5);
  const double corr = sxy / n * 12.0;
  EXPECT_LT(std::abs(corr), 4.0 / std::sqrt(n));
}

TEST(Gaussian, MeanAndSpread) {
  Engine eng = RngHandle{1, 2}.engine();
  const int N = 4, n = 100000;
  const double sigma = 0.7;
  const UnitPoint c = random_center(N, eng);
  const GaussianSpec spec(c, sigma);
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(N + 1);
  std::vector<double> sq;
  sq.reserve(n);
  for (int i = 0; i < n; ++i) {
    const Point y = sample_gaussian(spec, eng);
    ASSERT_TRUE(y.coords().allFinite());
    sum += y.coords();
    sq.push_back((y.coords() - c.coords()).squaredNorm());
  }
  const Eigen::VectorXd mean = sum / n;
  for (int i = 0; i <= N; ++i) EXPECT_LT(std::abs(mean[i] - c.coords()[i]), 4 * sigma / std::sqrt(n));
  const auto m = moments(sq);
  EXPECT_LT(std::abs(m.mean - (N + 1) * sigma * sigma), 4 * std::sqrt(m.var / n));
  EXPECT_THROW(GaussianSpec(c, 0.0), DomainError);
  EXPECT_THROW(GaussianSpec(c, -1.0), DomainError);
}

TEST(Gaussian, Reproducible) {
  const UnitPoint c(Eigen::Vector3d(0, 0, 1));
  const GaussianSpec spec(c, 0.3);
  Engine a = RngHandle{9, 9}.engine(), b = RngHandle{9, 9}.engine();
  for (int i = 0; i < 10; ++i) {
    const Point x = sample_gaussian(spec, a), y = sample_gaussian(spec, b);
    EXPECT_EQ(x.coords(), y.coords());
  }
}

TEST(UniformSphere, Moments) {
  Engine eng = RngHandle{5, 0}.engine();
  const int N = 2, n = 100000;
  std::vector<double> x1sq;
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(N + 1);
  for (int i = 0; i < n; ++i) {
    const UnitPoint x = sample_uniform_sphere(N, eng);
    ASSERT_NEAR(x.coords().norm(), 1.0, 1e-14);
    sum += x.coords();
    x1sq.push_back(x.coords()[0] * x.coords()[0]);
  }
  // Each coordinate has variance 1/(N+1).
  for (int i = 0; i <= N; ++i) EXPECT_LT(std::abs(sum[i] / n), 4 * std::sqrt(1.0 / 3 / n));
  const auto m = moments(x1sq);
  EXPECT_LT(std::abs(m.mean - 1.0 / (N + 1)), 4 * std::sqrt(m.var / n));
}

TEST(CapAngleSampler, CdfAndQuantileInvert) {
  for (int N : {1, 2, 6, 40, 400}) {
    for (double theta : {1e-4, 0.3, pi / 4, pi / 2}) {
      const CapAngleSampler s(N, theta);
      EXPECT_EQ(s.cdf(0.0), 0.0);
      EXPECT_NEAR(s.cdf(theta), 1.0, 1e-14);
      for (double u = 0.0; u <= 1.0; u += 0.03125) {
        const double a = s.quantile(u);
        EXPECT_GE(a, 0.0);
        EXPECT_LE(a, theta);
        EXPECT_NEAR(s.cdf(a), u, 1e-11) << N << " " << theta << " " << u;
      }
      for (double a : {0.1 * theta, 0.5 * theta, 0.9 * theta}) {
        EXPECT_NEAR(s.cdf(a), angle_cdf_oracle(N, theta, a), 1e-10) << N << " " << theta;
      }
    }
  }
  EXPECT_THROW(CapAngleSampler(3, pi / 2 + 1e-9), DomainError);
  EXPECT_THROW(CapAngleSampler(0, 0.5), DomainError);
}

TEST(UniformCap, SupportAndHalfSphere) {
  Engine eng = RngHandle{3, 1}.engine();
  for (int N : {1, 3, 8}) {
    const UnitPoint c = random_center(N, eng);
    for (double theta : {0.01, 0.7, pi / 2}) {
      const CapSpec cap(c, theta);
      for (int i = 0; i < 5000; ++i) {
        const UnitPoint x = sample_uniform_cap(cap, eng);
        ASSERT_LE(angle(x, c), theta + 1e-12);
        if (theta == pi / 2) ASSERT_GE(x.coords().dot(c.coords()), -1e-15);
      }
    }
  }
}

TEST(UniformCap, DegenerateAndOutOfDomain) {
  Engine eng = RngHandle{3, 2}.engine();
  const UnitPoint c(Eigen::Vector3d(0, 1, 0));
  EXPECT_EQ(sample_uniform_cap(CapSpec(c, 0.0), eng).coords(), c.coords());
  EXPECT_THROW(sample_uniform_cap(CapSpec(c, 2.0), eng), DomainError);
}

TEST(UniformCap, CircleAngleIsUniform) {
  Engine eng = RngHandle{4, 0}.engine();
  const UnitPoint c(Eigen::Vector2d(1, 0));
  const double theta = pi / 4;
  const int n = 100000;
  std::vector<double> a;
  for (int i = 0; i < n; ++i) a.push_back(angle(sample_uniform_cap(CapSpec(c, theta), eng), c));
  const auto m = moments(a);
  EXPECT_LT(std::abs(m.mean - theta / 2), 4 * std::sqrt(m.var / n));
}

TEST(UniformCap, CosineMomentMatchesQuadrature) {
  Engine eng = RngHandle{4, 1}.engine();
  const int N = 6, n = 100000;
  const double theta = pi / 3;
  const UnitPoint c = random_center(N, eng);
  std::vector<double> cs;
  for (int i = 0; i < n; ++i) cs.push_back(sample_uniform_cap(CapSpec(c, theta), eng).coords().dot(c.coords()));
  // ∫cos sin^5 = sin^6/6; ∫sin^5 from the incomplete beta function.
  const double s = std::sin(theta);
  const double denom = 0.5 * boost::math::beta(3.0, 0.5, s * s);
  const double expected = std::pow(s, 6) / 6 / denom;
  const auto m = moments(cs);
  EXPECT_LT(std::abs(m.mean - expected), 4 * std::sqrt(m.var / n));
}

TEST(UniformCap, AngleLawKolmogorovSmirnov) {
  const int n = 20000;
  for (int N : {1, 6, 10}) {
    for (double theta : {pi / 6, pi / 4, pi / 2}) {
      Engine eng = RngHandle{100 + static_cast<std::uint64_t>(N), 0}.engine();
      const UnitPoint c = random_center(N, eng);
      std::vector<double> a;
      for (int i = 0; i < n; ++i) a.push_back(angle(sample_uniform_cap(CapSpec(c, theta), eng), c));
      const double d = ks_statistic(a, [&](double x) {
        return angle_cdf_oracle(N, theta, std::min(x, theta));
      });
      EXPECT_LT(d * std::sqrt(static_cast<double>(n)), kKsCritical) << N << " " << theta;
    }
  }
}

TEST(SinBall, SupportAndSymmetry) {
  Engine eng = RngHandle{6, 0}.engine();
  const int N = 5, n = 100000;
  const UnitPoint c = random_center(N, eng);
  int positive = 0;
  for (int i = 0; i < n; ++i) {
    const UnitPoint x = sample_sin_ball(c, 1.0, eng);
    if (x.coords().dot(c.coords()) > 0) ++positive;
  }
  EXPECT_LT(std::abs(positive / double(n) - 0.5), 4 * 0.5 / std::sqrt(n));
  for (double rho : {0.05, 0.5, std::sin(pi / 4)}) {
    for (int i = 0; i < 5000; ++i) ASSERT_LE(sin_distance(sample_sin_ball(c, rho, eng), c), rho + 1e-12);
  }
  EXPECT_THROW(sample_sin_ball(c, 0.0, eng), DomainError);
  EXPECT_THROW(sample_sin_ball(c, 1.5, eng), DomainError);
}

TEST(OrthogonalDirection, UnitAndOrthogonal) {
  Engine eng = RngHandle{8, 0}.engine();
  for (int N : {1, 4, 20}) {
    const UnitPoint c = random_center(N, eng);
    for (int i = 0; i < 1000; ++i) {
      const Eigen::VectorXd u = sample_orthogonal_direction(c, eng);
      ASSERT_NEAR(u.norm(), 1.0, 1e-14);
      ASSERT_NEAR(u.dot(c.coords()), 0.0, 1e-14);
    }
  }
}
