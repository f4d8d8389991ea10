#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "condlab/errors.hpp"

namespace condlab {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// ln(e^a + e^b) without overflow.
inline double log_add_exp(double a, double b) {
  if (a == -kInf) return b;
  if (b == -kInf) return a;
  if (a == kInf || b == kInf) return kInf;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

// 1 - exp(-1/(2 sigma^2)); the Gaussian's off-half-sphere weight.
inline double gaussian_cap_weight(double sigma) {
  if (sigma == 0.0) return 1.0;
  return -std::expm1(-0.5 / (sigma * sigma));
}

// ln(2^{N-1} + sigma^{-(N+1)}), finite for any sigma > 0.
inline double log_pow2_plus_inv_sigma(int N, double sigma) {
  return log_add_exp((N - 1) * std::numbers::ln2, -(N + 1) * std::log(sigma));
}

struct QuadratureResult {
  double value;
  double error;
  double l1 = 0.0;
};

namespace detail {

struct Panel {
  double a, b;
  double value, error, l1;
};

inline constexpr std::size_t kKronrodPoints = 15;
using KronrodValues = std::array<double, kKronrodPoints>;

// The 15 Kronrod nodes on [a, b]: the midpoint, then +/- pairs outward.
inline KronrodValues kronrod_nodes(double a, double b) {
  const auto& x = boost::math::quadrature::gauss_kronrod<double, 15>::abscissa();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  KronrodValues nodes{};
  nodes[0] = mid;
  for (std::size_t i = 1; i < x.size(); ++i) {
    nodes[2 * i - 1] = mid + half * x[i];
    nodes[2 * i] = mid - half * x[i];
  }
  return nodes;
}

// One 7/15-point Gauss-Kronrod panel from integrand values at
// kronrod_nodes(a, b); error and L1 in the units of [a, b].
inline Panel kronrod_panel(double a, double b, const KronrodValues& fx) {
  const auto& wk = boost::math::quadrature::gauss_kronrod<double, 15>::weights();
  const auto& wg = boost::math::quadrature::gauss<double, 7>::weights();
  double kronrod = fx[0] * wk[0];
  double gauss = fx[0] * wg[0];
  double l1 = std::abs(fx[0]) * wk[0];
  for (std::size_t i = 1; i < wk.size(); ++i) {
    const double fp = fx[2 * i - 1];
    const double fm = fx[2 * i];
    kronrod += (fp + fm) * wk[i];
    l1 += (std::abs(fp) + std::abs(fm)) * wk[i];
    if (i % 2 == 0) gauss += (fp + fm) * wg[i / 2];
  }
  const double half = 0.5 * (b - a);
  const double err = std::max(std::abs(kronrod - gauss),
                              50.0 * std::numeric_limits<double>::epsilon() * l1);
  return {a, b, half * kronrod, half * err, half * l1};
}

template <class F>
Panel gk15_panel(F& f, double a, double b) {
  const KronrodValues nodes = kronrod_nodes(a, b);
  KronrodValues fx{};
  for (std::size_t j = 0; j < kKronrodPoints; ++j) fx[j] = f(nodes[j]);
  return kronrod_panel(a, b, fx);
}

}  // namespace detail

// Globally adaptive 15-point Gauss-Kronrod on [a, b] (Boost nodes and
// weights): the panel with the largest error is bisected until the summed
// error is at most max(rel_tol * L1, abs_floor) or max_panels is reached.
// Endpoints are never evaluated. No acceptance check.
template <class F>
QuadratureResult gauss_kronrod(F&& f, double a, double b, double rel_tol,
                               double abs_floor = 1e-300, std::size_t max_panels = 2000) {
  if (a == b) return {0.0, 0.0, 0.0};
  auto by_error = [](const detail::Panel& p, const detail::Panel& q) { return p.error < q.error; };
  std::vector<detail::Panel> heap{detail::gk15_panel(f, a, b)};
  double value = heap.front().value;
  double error = heap.front().error;
  double l1 = heap.front().l1;
  while (error > std::max(rel_tol * l1, abs_floor) && heap.size() < max_panels) {
    std::pop_heap(heap.begin(), heap.end(), by_error);
    const detail::Panel worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      heap.push_back(worst);
      std::push_heap(heap.begin(), heap.end(), by_error);
      break;
    }
    for (const auto& child : {detail::gk15_panel(f, worst.a, mid), detail::gk15_panel(f, mid, worst.b)}) {
      heap.push_back(child);
      std::push_heap(heap.begin(), heap.end(), by_error);
    }
    value = error = l1 = 0.0;
    for (const auto& p : heap) {
      value += p.value;
      error += p.error;
      l1 += p.l1;
    }
  }
  return {value, error, l1};
}

// gauss_kronrod plus an acceptance check: throws QuadratureFailure when the
// error estimate exceeds max(rel_tol * L1, abs_floor). Integrable endpoint
// singularities are tolerated; silent inaccuracy is not.
template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, double rel_tol,
                                    double abs_floor = 1e-300, std::size_t max_panels = 2000) {
  const QuadratureResult r = gauss_kronrod(f, a, b, rel_tol, abs_floor, max_panels);
  if (!std::isfinite(r.value) || r.error > std::max(rel_tol * r.l1, abs_floor)) {
    throw QuadratureFailure("adaptive quadrature on [" + std::to_string(a) + ", " +
                            std::to_string(b) + "] missed tolerance: value " +
                            std::to_string(r.value) + ", error " + std::to_string(r.error));
  }
  return r;
}

}  // namespace condlab
