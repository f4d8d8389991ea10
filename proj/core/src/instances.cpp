#include "condlab/instances.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "condlab/errors.hpp"
#include "condlab/numeric.hpp"

namespace condlab {

ConditionValue ConditionValue::finite(double value) {
  if (std::isnan(value) || value < 1.0 - 1e-12) {
    throw DomainError("condition value must lie in [1, inf]");
  }
  ConditionValue c;
  if (std::isinf(value)) return c;
  c.value_ = std::max(value, 1.0);
  c.infinite_ = false;
  return c;
}

double ConditionValue::value() const { return infinite_ ? kInf : value_; }

double ConditionValue::log() const { return infinite_ ? kInf : std::log(value_); }

HyperplaneArrangement::HyperplaneArrangement(std::vector<Eigen::VectorXd> normals, std::string id)
    : normals_(std::move(normals)), dim_(0), id_(std::move(id)) {
  if (normals_.empty()) throw DomainError("hyperplane arrangement needs at least one normal");
  dim_ = static_cast<int>(normals_.front().size());
  if (dim_ < 2) throw DomainError("hyperplane normals must live in R^{N+1}, N >= 1");
  for (auto& a : normals_) {
    if (a.size() != dim_) throw DomainError("hyperplane normals have mismatched dimensions");
    const double n = a.norm();
    if (!(n > 0.0) || !a.allFinite()) throw DomainError("hyperplane normal must be nonzero");
    a /= n;
  }
  if (id_.empty()) id_ = "hyperplanes_N" + std::to_string(dim_ - 1) + "_d" +
                         std::to_string(normals_.size());
}

double HyperplaneArrangement::dist_to_sigma(const Point& x) const {
  if (x.size() != dim_) throw DomainError("point dimension does not match the arrangement");
  double best = kInf;
  for (const auto& a : normals_) best = std::min(best, std::abs(a.dot(x.coords())));
  return best;
}

std::optional<double> HyperplaneArrangement::exact_sin_distance(const UnitPoint& x) const {
  return dist_to_sigma(x.point());
}

DeterminantInstance::DeterminantInstance(int n, std::string id) : n_(n), id_(std::move(id)) {
  if (n_ < 2) throw DomainError("determinant instance needs matrix side n >= 2");
  if (id_.empty()) id_ = "determinant_n" + std::to_string(n_);
}

double DeterminantInstance::dist_to_sigma(const Point& x) const {
  if (x.size() != n_ * n_) throw DomainError("point dimension does not match n^2");
  const Eigen::Map<const Eigen::MatrixXd> a(x.coords().data(), n_, n_);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  return svd.singularValues()(n_ - 1);
}

ConditionValue cond(const ConditionInstance& instance, const Point& x) {
  if (x.size() != instance.ambient_dim() + 1) throw DomainError("cond: dimension mismatch");
  const double nx = x.norm();
  if (!(nx > 0.0)) throw DomainError("cond: zero vector");
  const double dist = instance.dist_to_sigma(x);
  if (dist <= kIllPosedDistance * nx) return ConditionValue::infinite();
  return ConditionValue::finite(nx / dist);
}

ConditionValue cond_from_unit(const ConditionInstance& instance, const UnitPoint& x) {
  if (x.size() != instance.ambient_dim() + 1) throw DomainError("cond: dimension mismatch");
  if (auto dsin = instance.exact_sin_distance(x)) {
    if (*dsin <= kIllPosedDistance) return ConditionValue::infinite();
    return ConditionValue::finite(1.0 / *dsin);
  }
  return cond(instance, x.point());
}

UnitPoint center_on_sigma(const HyperplaneArrangement& instance) {
  // Any unit vector orthogonal to the first normal: remove the a-component
  // from the coordinate axis least aligned with a.
  const Eigen::VectorXd& a = instance.normals().front();
  Eigen::Index axis = 0;
  a.cwiseAbs().minCoeff(&axis);
  Eigen::VectorXd u = Eigen::VectorXd::Unit(a.size(), axis);
  u -= a.dot(u) * a;
  u -= a.dot(u) * a;
  return UnitPoint::normalize(u);
}

UnitPoint center_at_condition(const HyperplaneArrangement& instance, double target) {
  if (!(target >= 1.0)) throw ConfigError("at_condition target must be >= 1");
  if (std::isinf(target)) return center_on_sigma(instance);
  const auto& normals = instance.normals();
  const double s = 1.0 / target;
  const double c = std::sqrt(std::max(0.0, 1.0 - s * s));
  for (std::size_t k = 0; k < normals.size(); ++k) {
    const Eigen::VectorXd& a = normals[k];
    // Direction orthogonal to a_k that leans toward the other normals, so
    // their hyperplanes stay farther away than a_k's.
    Eigen::VectorXd lean = Eigen::VectorXd::Zero(a.size());
    for (std::size_t i = 0; i < normals.size(); ++i) {
      if (i == k) continue;
      Eigen::VectorXd b = normals[i] - a.dot(normals[i]) * a;
      if (b.norm() > 1e-12) lean += b / b.norm();
    }
    if (lean.norm() < 1e-12) {
      Eigen::Index axis = 0;
      a.cwiseAbs().minCoeff(&axis);
      lean = Eigen::VectorXd::Unit(a.size(), axis);
    }
    lean -= a.dot(lean) * a;
    lean -= a.dot(lean) * a;
    if (lean.norm() < 1e-12) continue;
    const Eigen::VectorXd u = lean / lean.norm();
    const UnitPoint x = UnitPoint::normalize(Eigen::VectorXd(c * u + s * a));
    const ConditionValue got = cond_from_unit(instance, x);
    if (!got.is_infinite() && std::abs(got.value() - target) <= 1e-9 * target) return x;
  }
  throw ConfigError("no center with condition " + std::to_string(target) +
                    " reachable by rotating toward a single normal");
}

}  // namespace condlab
