#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "condlab/geometry.hpp"
#include "condlab/instances.hpp"
#include "condlab/samplers.hpp"

namespace condlab::mc {

// Sample mean of ln C with its standard error. Censored draws (numerically
// on Sigma) are excluded from mean/stderr and counted.
struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t n = 0;         // draws attempted
  std::size_t censored = 0;  // draws with C(x) = +inf (d(x, Sigma) at rounding level)
  double p99 = 0.0;          // tail diagnostic, not used in verdicts

  // censored / n <= 1e-4.
  bool reliable() const;
};

// Dispersion around the center.
struct UniformCap {
  double theta;  // (0, pi/2]
};
struct SinBall {
  double rho;  // (0, 1]
};
struct Gaussian {
  double sigma;  // >= 0; 0 collapses to the point mass
};
struct PointMass {};
using Measure = std::variant<UniformCap, SinBall, Gaussian, PointMass>;

std::string measure_kind(const Measure& m);
// theta, rho or sigma; 0 for the point mass.
double measure_parameter(const Measure& m);

enum class BoundName {
  kSmoothUniform,
  kLocalUniform,
  kLocalUniformCases,
  kSmoothGaussian,
  kLocalGaussian,
};

std::string_view to_string(BoundName name);
std::optional<BoundName> parse_bound_name(std::string_view text);
bool is_gaussian_bound(BoundName name);

// Evaluates a named bound for (instance, measure) with cond_center given.
// Throws ConfigError when the bound family does not match the measure, and
// PreconditionError when N is below the bound's threshold.
double evaluate_bound(BoundName name, int N, int d, const Measure& measure, double cond_center);

enum class Verdict { kPass, kViolation, kUnreliable };
std::string_view to_string(Verdict v);
std::optional<Verdict> parse_verdict(std::string_view text);

struct ValidationRow {
  std::string instance_id;
  std::string measure;  // measure_kind()
  double nu = 0.0;      // measure_parameter()
  std::string center_id;
  double cond_center = 1.0;
  Estimate estimate;
  std::string bound_name;
  double bound_value = 0.0;
  double margin = 0.0;  // bound_value - mean
  Verdict verdict = Verdict::kPass;
};

struct RunOptions {
  // Samples are split across this many worker threads, each with its own
  // substream; results are deterministic for fixed (seed, stream, workers).
  int workers = 1;
  // Added to the bound before the verdict; nonzero only in harness
  // self-tests that plant a violation.
  double bound_offset = 0.0;
};

// Mean of ln cond(x) for x drawn from the measure around center. n >= 100.
// Throws std::runtime_error when every draw is censored.
Estimate estimate_ln_cond(const ConditionInstance& instance, const UnitPoint& center,
                          const Measure& measure, std::size_t n, const RngHandle& rng,
                          const RunOptions& options = {});

// verdict = violation iff mean - 3 stderr > bound; unreliable when too many
// draws were censored.
Verdict verdict_for(const Estimate& e, double bound_value);

ValidationRow validate_bound(const ConditionInstance& instance, const UnitPoint& center,
                             std::string center_id, const Measure& measure, BoundName bound,
                             std::size_t n, const RngHandle& rng, const RunOptions& options = {});

// One validation row per grid value. nu is a cap radius theta for the
// uniform bounds and sigma for the Gaussian bounds. Grid point i uses
// rng.substream(i).
std::vector<ValidationRow> sweep(const ConditionInstance& instance, const UnitPoint& center,
                                 std::string center_id, const std::vector<double>& nu_grid,
                                 BoundName bound, std::size_t n, const RngHandle& rng,
                                 const RunOptions& options = {});

struct DecompositionCheck {
  Estimate lhs;  // Monte Carlo P(angle(psi(y), center) <= t), y ~ N(center, sigma^2 Id)
  double rhs;    // radial::decomposition_rhs
  bool ok;       // |lhs.mean - rhs| <= 3 lhs.stderr + 1e-9 (quadrature slack)
};

// N >= 2, t in (0, pi/2]. The center is e_1; the identity is rotation
// invariant.
DecompositionCheck decomposition_mc_check(int N, double sigma, double t, std::size_t n,
                                          const RngHandle& rng, const RunOptions& options = {});

struct ProofStepReport {
  Estimate chord_mean;      // E_{x in B_S(center, theta)} ||x - center||
  double chord_lower;       // (sqrt 2 / (2 pi)) theta
  bool chord_ok;            // mean + 3 se >= lower
  Estimate projection_mean; // E_{y ~ N(center, sigma^2)} ||psi(y) - center||
  double projection_upper;  // sqrt 2 sigma sqrt(N+1)
  bool projection_ok;       // mean - 3 se <= upper
};

// N >= 6 (the chord bound relies on cap halving), theta in (0, pi/2].
ProofStepReport proof_step_suite(int N, double sigma, double theta, std::size_t n,
                                 const RngHandle& rng, const RunOptions& options = {});

}  // namespace condlab::mc
