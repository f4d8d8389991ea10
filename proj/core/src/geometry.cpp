#include "condlab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/special_functions/beta.hpp>

#include "condlab/errors.hpp"
#include "condlab/numeric.hpp"

namespace condlab {

namespace {

void check_finite(const Eigen::VectorXd& v) {
  if (v.size() < 2) throw DomainError("point must lie in R^{N+1} with N >= 1");
  if (!v.allFinite()) throw DomainError("point has non-finite coordinates");
}

// vol(S^n) for n >= 0 (vol(S^0) = 2 counts the two points).
double sphere_volume(int n) {
  const double half = 0.5 * (n + 1);
  if (n > 100) {
    return std::exp(std::numbers::ln2 + half * std::log(kPi) - std::lgamma(half));
  }
  return 2.0 * std::pow(kPi, half) / std::tgamma(half);
}

// ln int_0^theta sin^m(t) dt for theta in (0, pi/2]:
//   (1/2) B((m+1)/2, 1/2) I_{sin^2 theta}((m+1)/2, 1/2).
// Where the regularized beta underflows (large m, tiny theta) the integral
// is done by quadrature on sin^m scaled by sin^m(theta).
double log_sine_power_integral(int m, double theta) {
  if (m == 0) return std::log(theta);
  const double a = 0.5 * (m + 1);
  const double s = std::sin(theta);
  const double log_half_beta = std::lgamma(a) + std::lgamma(0.5) - std::lgamma(a + 0.5) - std::numbers::ln2;
  const double ib = boost::math::ibeta(a, 0.5, s * s);
  if (ib > 1e-280) return log_half_beta + std::log(ib);
  auto integrand = [m, s](double t) { return std::pow(std::sin(t) / s, m); };
  return m * std::log(s) + std::log(integrate_adaptive(integrand, 0.0, theta, 1e-11).value);
}

}  // namespace

Point::Point(Eigen::VectorXd coords) : coords_(std::move(coords)) { check_finite(coords_); }

Point::Point(std::initializer_list<double> coords)
    : coords_(Eigen::Map<const Eigen::VectorXd>(coords.begin(),
                                                 static_cast<Eigen::Index>(coords.size()))) {
  check_finite(coords_);
}

Point Point::basis(int dim, int index) {
  if (index < 0 || index >= dim) throw DomainError("basis index out of range");
  Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
  v[index] = 1.0;
  return Point(std::move(v));
}

UnitPoint::UnitPoint(Eigen::VectorXd coords) : point_(std::move(coords)) {
  if (std::abs(point_.norm() - 1.0) > kNormTolerance) {
    throw DomainError("UnitPoint norm deviates from 1 by more than 1e-12");
  }
}

UnitPoint::UnitPoint(Eigen::VectorXd coords, Trusted) : point_(std::move(coords)) {}

UnitPoint UnitPoint::normalize(const Eigen::VectorXd& x) {
  const double n = x.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw DomainError("cannot normalize a zero vector");
  Eigen::VectorXd u = x / n;
  // One refinement step keeps the norm within a few ulps of 1.
  u /= u.norm();
  return UnitPoint(std::move(u), Trusted{});
}

UnitPoint UnitPoint::normalize(const Point& x) { return normalize(x.coords()); }

UnitPoint UnitPoint::operator-() const { return UnitPoint(-coords(), Trusted{}); }

CapSpec::CapSpec(UnitPoint c, double t) : center(std::move(c)), theta(t) {
  if (!(theta >= 0.0 && theta <= kPi)) throw DomainError("cap radius must lie in [0, pi]");
}

double omega(int N) {
  if (N < 1) throw DomainError("omega requires N >= 1, got " + std::to_string(N));
  return sphere_volume(N);
}

double unit_ball_volume(int N) {
  if (N < 1) throw DomainError("unit_ball_volume requires N >= 1, got " + std::to_string(N));
  return sphere_volume(N) / (N + 1);
}

double cap_volume(int N, double theta) {
  if (N < 1) throw DomainError("cap_volume requires N >= 1");
  if (!(theta >= 0.0 && theta <= kPi)) throw DomainError("cap_volume requires theta in [0, pi]");
  if (theta == 0.0) return 0.0;
  const int m = N - 1;
  const double log_omega = std::numbers::ln2 + 0.5 * N * std::log(kPi) - std::lgamma(0.5 * N);
  if (theta <= 0.5 * kPi) return std::exp(log_omega + log_sine_power_integral(m, theta));
  // Past the equator: int_0^theta = (1/2) B (1 + I^c_{sin^2 theta}).
  const double a = 0.5 * N;
  const double s = std::sin(theta);
  const double log_half_beta = std::lgamma(a) + std::lgamma(0.5) - std::lgamma(a + 0.5) - std::numbers::ln2;
  return std::exp(log_omega + log_half_beta) * (1.0 + boost::math::ibetac(a, 0.5, s * s));
}

CapVolumeBounds cap_volume_bounds(int N, double theta) {
  if (N < 1) throw DomainError("cap_volume_bounds requires N >= 1");
  if (!(theta >= 0.0 && theta <= 0.5 * kPi)) {
    throw DomainError("cap_volume_bounds requires theta in [0, pi/2]");
  }
  const double om = omega(N);
  const double s = std::pow(std::sin(theta), N);
  return {om * s / std::sqrt(2.0 * kPi * (N + 1)), 0.5 * om * s};
}

double angle(const Point& x, const Point& y) {
  if (x.size() != y.size()) throw DomainError("angle: dimension mismatch");
  const double nx = x.norm();
  const double ny = y.norm();
  if (!(nx > 0.0) || !(ny > 0.0)) throw DomainError("angle: zero vector");
  const double c = x.coords().dot(y.coords()) / (nx * ny);
  return std::acos(std::clamp(c, -1.0, 1.0));
}

double sin_distance(const Point& x, const Point& y) { return std::sin(angle(x, y)); }

UnitPoint psi(const UnitPoint& center, const Point& x) {
  if (x.size() != center.size()) throw DomainError("psi: dimension mismatch");
  const double nx = x.norm();
  if (!(nx > 0.0)) throw MeasureZeroEvent("psi: zero vector");
  const double ip = x.coords().dot(center.coords()) / nx;
  if (std::abs(ip) <= 1e-300) throw MeasureZeroEvent("psi: point lies on center^perp");
  const UnitPoint u = UnitPoint::normalize(x);
  return ip > 0.0 ? u : -u;
}

}  // namespace condlab
