#include "condlab/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <thread>

#include "condlab/bounds.hpp"
#include "condlab/errors.hpp"
#include "condlab/numeric.hpp"
#include "condlab/radial.hpp"

namespace condlab::mc {

namespace {

constexpr double kCensoredFractionLimit = 1e-4;

// Welford accumulator; merged pairwise (Chan et al.) in worker order.
struct Accumulator {
  std::size_t attempted = 0;
  std::size_t count = 0;
  std::size_t censored = 0;
  double mean = 0.0;
  double m2 = 0.0;
  std::vector<double> values;

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
    values.push_back(x);
  }

  void merge(Accumulator&& other) {
    attempted += other.attempted;
    censored += other.censored;
    if (other.count == 0) return;
    if (count == 0) {
      count = other.count;
      mean = other.mean;
      m2 = other.m2;
      values = std::move(other.values);
      return;
    }
    const double na = static_cast<double>(count);
    const double nb = static_cast<double>(other.count);
    const double delta = other.mean - mean;
    const double total = na + nb;
    mean += delta * nb / total;
    m2 += other.m2 + delta * delta * na * nb / total;
    count += other.count;
    values.insert(values.end(), other.values.begin(), other.values.end());
  }
};

// A draw returns the sampled value, or nullopt for a censored draw.
using Draw = std::function<std::optional<double>(Engine&)>;

Estimate run_estimate(std::size_t n, const RngHandle& rng, const RunOptions& options,
                      const Draw& draw) {
  const int workers = std::max(1, options.workers);
  std::vector<Accumulator> parts(static_cast<std::size_t>(workers));
  auto work = [&](int w) {
    const std::size_t share = n / workers + (static_cast<std::size_t>(w) < n % workers ? 1 : 0);
    Engine engine = rng.substream(static_cast<std::uint64_t>(w)).engine();
    Accumulator& acc = parts[static_cast<std::size_t>(w)];
    acc.values.reserve(share);
    for (std::size_t i = 0; i < share; ++i) {
      ++acc.attempted;
      if (auto v = draw(engine)) {
        acc.add(*v);
      } else {
        ++acc.censored;
      }
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) threads.emplace_back(work, w);
    for (auto& t : threads) t.join();
  }
  Accumulator total;
  for (auto& part : parts) total.merge(std::move(part));

  Estimate e;
  e.n = total.attempted;
  e.censored = total.censored;
  if (total.count == 0) throw std::runtime_error("every Monte Carlo draw was censored");
  e.mean = total.mean;
  const double nc = static_cast<double>(total.count);
  e.std_error = total.count > 1 ? std::sqrt(total.m2 / (nc - 1.0) / nc) : 0.0;
  const auto k = static_cast<std::size_t>(std::ceil(0.99 * nc)) - 1;
  std::nth_element(total.values.begin(), total.values.begin() + static_cast<std::ptrdiff_t>(k),
                   total.values.end());
  e.p99 = total.values[k];
  return e;
}

std::optional<double> log_cond_or_censored(const ConditionValue& c) {
  if (c.is_infinite()) return std::nullopt;
  return c.log();
}

UnitPoint first_axis(int N) { return UnitPoint(Point::basis(N + 1, 0).coords()); }

}  // namespace

bool Estimate::reliable() const {
  return n > 0 && static_cast<double>(censored) <= kCensoredFractionLimit * static_cast<double>(n);
}

std::string measure_kind(const Measure& m) {
  struct Visitor {
    std::string operator()(const UniformCap&) const { return "uniform_cap"; }
    std::string operator()(const SinBall&) const { return "sin_ball"; }
    std::string operator()(const Gaussian&) const { return "gaussian"; }
    std::string operator()(const PointMass&) const { return "point_mass"; }
  };
  return std::visit(Visitor{}, m);
}

double measure_parameter(const Measure& m) {
  struct Visitor {
    double operator()(const UniformCap& c) const { return c.theta; }
    double operator()(const SinBall& s) const { return s.rho; }
    double operator()(const Gaussian& g) const { return g.sigma; }
    double operator()(const PointMass&) const { return 0.0; }
  };
  return std::visit(Visitor{}, m);
}

std::string_view to_string(BoundName name) {
  switch (name) {
    case BoundName::kSmoothUniform: return "smooth_uniform";
    case BoundName::kLocalUniform: return "local_uniform";
    case BoundName::kLocalUniformCases: return "local_uniform_cases";
    case BoundName::kSmoothGaussian: return "smooth_gaussian";
    case BoundName::kLocalGaussian: return "local_gaussian";
  }
  return "unknown";
}

std::optional<BoundName> parse_bound_name(std::string_view text) {
  for (auto b : {BoundName::kSmoothUniform, BoundName::kLocalUniform,
                 BoundName::kLocalUniformCases, BoundName::kSmoothGaussian,
                 BoundName::kLocalGaussian}) {
    if (to_string(b) == text) return b;
  }
  return std::nullopt;
}

bool is_gaussian_bound(BoundName name) {
  return name == BoundName::kSmoothGaussian || name == BoundName::kLocalGaussian;
}

double evaluate_bound(BoundName name, int N, int d, const Measure& measure, double cond_center) {
  if (is_gaussian_bound(name)) {
    double sigma = 0.0;
    if (const auto* g = std::get_if<Gaussian>(&measure)) {
      sigma = g->sigma;
    } else if (!std::holds_alternative<PointMass>(measure)) {
      throw ConfigError(std::string(to_string(name)) + " needs a gaussian or point_mass measure");
    }
    if (name == BoundName::kSmoothGaussian) return bounds::smooth_gaussian_H(N, d, sigma);
    return bounds::local_gaussian_H({N, d, sigma, cond_center});
  }

  double theta = 0.0;
  if (const auto* c = std::get_if<UniformCap>(&measure)) {
    theta = c->theta;
  } else if (const auto* s = std::get_if<SinBall>(&measure)) {
    if (!(s->rho > 0.0 && s->rho <= 1.0)) throw DomainError("sin_ball requires rho in (0, 1]");
    theta = std::asin(s->rho);
  } else if (std::holds_alternative<PointMass>(measure) && name == BoundName::kSmoothUniform) {
    return kInf;
  } else {
    throw ConfigError(std::string(to_string(name)) + " needs a uniform_cap or sin_ball measure");
  }
  if (name == BoundName::kSmoothUniform) return bounds::smooth_uniform(N, d, theta);
  if (name == BoundName::kLocalUniform) return bounds::local_uniform_H({N, d, theta, cond_center});
  return bounds::local_uniform_cases({N, d, theta, cond_center});
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass: return "pass";
    case Verdict::kViolation: return "violation";
    case Verdict::kUnreliable: return "unreliable";
  }
  return "unknown";
}

std::optional<Verdict> parse_verdict(std::string_view text) {
  for (auto v : {Verdict::kPass, Verdict::kViolation, Verdict::kUnreliable}) {
    if (to_string(v) == text) return v;
  }
  return std::nullopt;
}

Estimate estimate_ln_cond(const ConditionInstance& instance, const UnitPoint& center,
                          const Measure& measure, std::size_t n, const RngHandle& rng,
                          const RunOptions& options) {
  if (n < 100) throw DomainError("Monte Carlo estimates need n >= 100");
  if (center.sphere_dim() != instance.ambient_dim()) {
    throw DomainError("center dimension does not match the instance");
  }
  const bool point_mass = std::holds_alternative<PointMass>(measure) ||
                          (std::holds_alternative<Gaussian>(measure) &&
                           std::get<Gaussian>(measure).sigma == 0.0);
  if (point_mass) {
    const ConditionValue c = cond_from_unit(instance, center);
    if (c.is_infinite()) throw std::runtime_error("every Monte Carlo draw was censored");
    Estimate e;
    e.mean = c.log();
    e.n = n;
    e.p99 = e.mean;
    return e;
  }

  const int N = instance.ambient_dim();
  if (const auto* g = std::get_if<Gaussian>(&measure)) {
    const GaussianSpec spec(center, g->sigma);
    return run_estimate(n, rng, options, [&](Engine& eng) -> std::optional<double> {
      const Point y = sample_gaussian(spec, eng);
      if (!(y.norm() > 0.0)) return std::nullopt;
      return log_cond_or_censored(cond(instance, y));
    });
  }

  double theta = 0.0;
  bool symmetric = false;
  if (const auto* c = std::get_if<UniformCap>(&measure)) {
    theta = c->theta;
  } else {
    const double rho = std::get<SinBall>(measure).rho;
    if (!(rho > 0.0 && rho <= 1.0)) throw DomainError("sin_ball requires rho in (0, 1]");
    theta = std::asin(rho);
    symmetric = true;
  }
  if (!(theta > 0.0 && theta <= 0.5 * kPi)) {
    throw DomainError("uniform cap measure requires theta in (0, pi/2]");
  }
  const CapAngleSampler sampler(N, theta);
  return run_estimate(n, rng, options, [&](Engine& eng) -> std::optional<double> {
    UnitPoint x = sampler.sample_point(center, eng);
    if (symmetric && std::bernoulli_distribution(0.5)(eng)) x = -x;
    return log_cond_or_censored(cond_from_unit(instance, x));
  });
}

Verdict verdict_for(const Estimate& e, double bound_value) {
  if (e.mean - 3.0 * e.std_error > bound_value) return Verdict::kViolation;
  if (!e.reliable()) return Verdict::kUnreliable;
  return Verdict::kPass;
}

ValidationRow validate_bound(const ConditionInstance& instance, const UnitPoint& center,
                             std::string center_id, const Measure& measure, BoundName bound,
                             std::size_t n, const RngHandle& rng, const RunOptions& options) {
  ValidationRow row;
  row.instance_id = instance.id();
  row.measure = measure_kind(measure);
  row.nu = measure_parameter(measure);
  row.center_id = std::move(center_id);
  row.cond_center = cond_from_unit(instance, center).value();
  row.bound_name = std::string(to_string(bound));
  row.bound_value = evaluate_bound(bound, instance.ambient_dim(), instance.degree(), measure,
                                   row.cond_center) +
                    options.bound_offset;
  row.estimate = estimate_ln_cond(instance, center, measure, n, rng, options);
  row.margin = row.bound_value - row.estimate.mean;
  row.verdict = verdict_for(row.estimate, row.bound_value);
  return row;
}

std::vector<ValidationRow> sweep(const ConditionInstance& instance, const UnitPoint& center,
                                 std::string center_id, const std::vector<double>& nu_grid,
                                 BoundName bound, std::size_t n, const RngHandle& rng,
                                 const RunOptions& options) {
  if (nu_grid.empty()) throw DomainError("sweep grid is empty");
  std::vector<ValidationRow> rows;
  rows.reserve(nu_grid.size());
  for (std::size_t i = 0; i < nu_grid.size(); ++i) {
    const Measure m = is_gaussian_bound(bound) ? Measure{Gaussian{nu_grid[i]}}
                                               : Measure{UniformCap{nu_grid[i]}};
    rows.push_back(
        validate_bound(instance, center, center_id, m, bound, n, rng.substream(i), options));
  }
  return rows;
}

DecompositionCheck decomposition_mc_check(int N, double sigma, double t, std::size_t n,
                                          const RngHandle& rng, const RunOptions& options) {
  if (N < 2) throw DomainError("decomposition check requires N >= 2");
  if (!(t > 0.0 && t <= 0.5 * kPi)) throw DomainError("decomposition check requires t in (0, pi/2]");
  const radial::RadialProfile profile = radial::build_profile(N, sigma);
  const double rhs = radial::decomposition_rhs(profile, t);

  const UnitPoint center = first_axis(N);
  const GaussianSpec spec(center, sigma);
  const Estimate lhs = run_estimate(n, rng, options, [&](Engine& eng) -> std::optional<double> {
    const Point y = sample_gaussian(spec, eng);
    try {
      return angle(psi(center, y), center) <= t ? 1.0 : 0.0;
    } catch (const MeasureZeroEvent&) {
      return std::nullopt;
    }
  });
  // The 1e-9 slack absorbs the quadrature error of rhs when the indicator is
  // deterministic (t = pi/2 gives stderr 0).
  return {lhs, rhs, std::abs(lhs.mean - rhs) <= 3.0 * lhs.std_error + 1e-9};
}

ProofStepReport proof_step_suite(int N, double sigma, double theta, std::size_t n,
                                 const RngHandle& rng, const RunOptions& options) {
  if (N < 6) throw PreconditionError("the chord expectation bound requires N >= 6");
  if (!(theta > 0.0 && theta <= 0.5 * kPi)) throw DomainError("theta must lie in (0, pi/2]");
  const UnitPoint center = first_axis(N);
  ProofStepReport r{};

  const CapAngleSampler sampler(N, theta);
  r.chord_mean = run_estimate(n, rng.substream(0), options,
                              [&](Engine& eng) -> std::optional<double> {
                                const UnitPoint x = sampler.sample_point(center, eng);
                                return (x.coords() - center.coords()).norm();
                              });
  r.chord_lower = std::sqrt(2.0) / (2.0 * kPi) * theta;
  r.chord_ok = r.chord_mean.mean + 3.0 * r.chord_mean.std_error >= r.chord_lower;

  const GaussianSpec spec(center, sigma);
  r.projection_mean = run_estimate(n, rng.substream(1), options,
                                   [&](Engine& eng) -> std::optional<double> {
                                     const Point y = sample_gaussian(spec, eng);
                                     try {
                                       return (psi(center, y).coords() - center.coords()).norm();
                                     } catch (const MeasureZeroEvent&) {
                                       return std::nullopt;
                                     }
                                   });
  r.projection_upper = std::sqrt(2.0) * sigma * std::sqrt(N + 1.0);
  r.projection_ok =
      r.projection_mean.mean - 3.0 * r.projection_mean.std_error <= r.projection_upper;
  return r;
}

}  // namespace condlab::mc
