#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "condlab/instances.hpp"
#include "condlab/montecarlo.hpp"
#include "json.hpp"

namespace condlab::cli {

// One fully resolved experiment. Configs may hold an "experiments" array whose
// entries override the top-level fields; each entry resolves to one of these.
struct Experiment {
  std::shared_ptr<const ConditionInstance> instance;
  std::optional<UnitPoint> center;
  std::string center_id;
  mc::Measure measure = mc::PointMass{};
  std::optional<mc::BoundName> bound;
  double bound_offset = 0.0;
  std::size_t n = 100000;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  int workers = 1;
  std::vector<double> nu;
  // Position inside an "experiments" array; such entries draw from
  // substream(index) of (seed, stream) so list entries never share draws.
  std::optional<std::size_t> index;

  RngHandle rng() const {
    const RngHandle base{seed, stream};
    return index ? base.substream(*index) : base;
  }
};

struct Config {
  std::vector<Experiment> experiments;
  std::string output;  // empty: standard output
};

// Schema check only; returns one diagnostic per violation ("path: message").
std::vector<std::string> validate_schema(const nlohmann::json& doc, const std::string& command);

// Validates, then resolves instances and centers. Throws ConfigError with the
// collected diagnostics.
Config load_config(const nlohmann::json& doc, const std::string& command);

nlohmann::json parse_json_file(const std::string& path);

}  // namespace condlab::cli
