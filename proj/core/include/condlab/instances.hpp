#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include <limits>

#include "condlab/geometry.hpp"

namespace condlab {

// Relative distances ||x||^{-1} d(x, Sigma) at or below this are rounding
// noise and treated as exactly zero (C = infinity); the Monte Carlo layer
// counts such samples as censored.
inline constexpr double kIllPosedDistance = 64 * std::numeric_limits<double>::epsilon();

// C(x) in [1, +inf]; +inf is represented explicitly.
class ConditionValue {
 public:
  static ConditionValue infinite() { return ConditionValue(); }
  // Throws DomainError for value < 1 (beyond rounding) or NaN.
  static ConditionValue finite(double value);

  bool is_infinite() const { return infinite_; }
  // +inf when is_infinite().
  double value() const;
  double log() const;

 private:
  ConditionValue() = default;
  double value_ = 0.0;
  bool infinite_ = true;
};

// A conic condition number C(x) = ||x|| / d(x, Sigma) with Sigma inside the
// zero set of a degree-d homogeneous polynomial on R^{N+1}.
class ConditionInstance {
 public:
  virtual ~ConditionInstance() = default;

  // N: inputs live in R^{N+1}.
  virtual int ambient_dim() const = 0;
  virtual int degree() const = 0;
  virtual std::string id() const = 0;

  // Euclidean distance from x to Sigma.
  virtual double dist_to_sigma(const Point& x) const = 0;

  // d_sin(x, Sigma ∩ S^N) when the instance has it in closed form.
  virtual std::optional<double> exact_sin_distance(const UnitPoint&) const {
    return std::nullopt;
  }
};

// Sigma = union of the hyperplanes a_i^perp; degree = number of normals.
// Normals are normalized on construction.
class HyperplaneArrangement final : public ConditionInstance {
 public:
  explicit HyperplaneArrangement(std::vector<Eigen::VectorXd> normals, std::string id = "");

  int ambient_dim() const override { return dim_ - 1; }
  int degree() const override { return static_cast<int>(normals_.size()); }
  std::string id() const override { return id_; }
  double dist_to_sigma(const Point& x) const override;
  std::optional<double> exact_sin_distance(const UnitPoint& x) const override;

  const std::vector<Eigen::VectorXd>& normals() const { return normals_; }

 private:
  std::vector<Eigen::VectorXd> normals_;
  int dim_;
  std::string id_;
};

// Singular n x n matrices, with x in R^{n^2} read column-major as a matrix.
// d(A, Sigma) = sigma_min(A) in the Frobenius metric, so C(A) = ||A||_F /
// sigma_min(A). Sigma = {det = 0}: degree n, N = n^2 - 1.
class DeterminantInstance final : public ConditionInstance {
 public:
  explicit DeterminantInstance(int n, std::string id = "");

  int ambient_dim() const override { return n_ * n_ - 1; }
  int degree() const override { return n_; }
  std::string id() const override { return id_; }
  double dist_to_sigma(const Point& x) const override;

  int side() const { return n_; }

 private:
  int n_;
  std::string id_;
};

// ||x|| / dist_to_sigma(x); infinite when the distance is <= 1e-300.
// Throws DomainError for x = 0 or a dimension mismatch.
ConditionValue cond(const ConditionInstance& instance, const Point& x);

// Same value for unit x, via 1/d_sin when the instance has an exact sine
// distance, otherwise through cond().
ConditionValue cond_from_unit(const ConditionInstance& instance, const UnitPoint& x);

// A unit point on Sigma (cond = inf).
UnitPoint center_on_sigma(const HyperplaneArrangement& instance);

// A unit point with cond(center) = target (within 1e-9 relative), built as
// cos(tau) u + sin(tau) a_k with u ⊥ a_k and sin(tau) = 1/target, trying
// each normal a_k as pivot. Throws ConfigError when no pivot keeps the other
// hyperplanes at least as far away.
UnitPoint center_at_condition(const HyperplaneArrangement& instance, double target);

}  // namespace condlab
