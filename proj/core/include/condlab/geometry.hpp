#pragma once

#include <initializer_list>

#include <Eigen/Dense>

namespace condlab {

// A vector in R^{N+1}, N >= 1. Entries are finite.
class Point {
 public:
  explicit Point(Eigen::VectorXd coords);
  Point(std::initializer_list<double> coords);

  // e_i in R^{dim}, zero-based index.
  static Point basis(int dim, int index);

  const Eigen::VectorXd& coords() const { return coords_; }
  int size() const { return static_cast<int>(coords_.size()); }
  // N for a point of R^{N+1}.
  int sphere_dim() const { return size() - 1; }
  double norm() const { return coords_.norm(); }

 private:
  Eigen::VectorXd coords_;
};

// A point of S^N: | ||x|| - 1 | <= 1e-12.
class UnitPoint {
 public:
  static constexpr double kNormTolerance = 1e-12;

  // Checks the invariant; throws DomainError when it does not hold.
  explicit UnitPoint(Eigen::VectorXd coords);
  // x / ||x||; throws DomainError for the zero vector.
  static UnitPoint normalize(const Point& x);
  static UnitPoint normalize(const Eigen::VectorXd& x);

  const Point& point() const { return point_; }
  operator const Point&() const { return point_; }  // NOLINT
  const Eigen::VectorXd& coords() const { return point_.coords(); }
  int size() const { return point_.size(); }
  int sphere_dim() const { return point_.sphere_dim(); }

  UnitPoint operator-() const;

 private:
  struct Trusted {};
  UnitPoint(Eigen::VectorXd coords, Trusted);
  Point point_;
};

// The closed cap B_S(center, theta) of S^N. theta in [0, pi]; operations that
// need a narrower range check it themselves.
struct CapSpec {
  CapSpec(UnitPoint center, double theta);
  UnitPoint center;
  double theta;
};

// vol(S^N) = 2 pi^{(N+1)/2} / Gamma((N+1)/2). Log-space for N > 100.
double omega(int N);

// vol of the unit ball of R^{N+1}: omega(N)/(N+1).
double unit_ball_volume(int N);

// Exact vol(B_S(x, theta)) on S^N, theta in [0, pi]:
// omega(N-1) * int_0^theta sin^{N-1}, relative error <= 1e-10.
double cap_volume(int N, double theta);

struct CapVolumeBounds {
  double lower;
  double upper;
};

// Two-sided bound on the cap volume for theta in [0, pi/2]:
//   omega(N) sin^N / sqrt(2 pi (N+1))  <=  vol  <=  omega(N)/2 sin^N.
CapVolumeBounds cap_volume_bounds(int N, double theta);

// Angle between nonzero vectors in [0, pi]; cosine clamped to [-1, 1].
double angle(const Point& x, const Point& y);

// sin(angle(x, y)).
double sin_distance(const Point& x, const Point& y);

// Projection R^{N+1} \ center^perp -> open half-sphere around center:
// x/||x|| when <x, center> > 0, else -x/||x||. Throws MeasureZeroEvent when
// the normalized inner product is within 1e-300 of zero.
UnitPoint psi(const UnitPoint& center, const Point& x);

}  // namespace condlab
