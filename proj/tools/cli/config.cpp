#include "config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "condlab/errors.hpp"
#include "condlab/validation_csv.hpp"

namespace condlab::cli {

using nlohmann::json;

namespace {

const std::set<std::string> kTopKeys = {"$schema", "description", "instance", "center",
                                        "measure", "bound",       "bound_offset", "n",
                                        "seed",    "stream",      "workers", "nu",
                                        "output",  "experiments"};

class Checker {
 public:
  void fail(const std::string& path, const std::string& msg) { errors.push_back(path + ": " + msg); }

  bool require_object(const json& j, const std::string& path) {
    if (j.is_object()) return true;
    fail(path, "must be an object");
    return false;
  }

  void number(const json& j, const std::string& path, double lo, double hi, bool lo_open,
              bool hi_open, const std::string& range) {
    if (!j.is_number()) return fail(path, "must be a number");
    const double v = j.get<double>();
    const bool below = lo_open ? !(v > lo) : !(v >= lo);
    const bool above = hi_open ? !(v < hi) : !(v <= hi);
    if (below || above) fail(path, "must lie in " + range);
  }

  void integer(const json& j, const std::string& path, std::int64_t lo, std::int64_t hi) {
    if (!j.is_number_integer()) return fail(path, "must be an integer");
    if (j.is_number_unsigned()) {
      if (j.get<std::uint64_t>() > static_cast<std::uint64_t>(hi)) fail(path, "is too large");
      return;
    }
    const auto v = j.get<std::int64_t>();
    if (v < lo || v > hi) {
      fail(path, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
  }

  void kind_of(const json& j, const std::string& path, const std::set<std::string>& kinds) {
    if (!j.contains("kind")) return fail(path + ".kind", "is required");
    if (!j["kind"].is_string() || !kinds.count(j["kind"].get<std::string>())) {
      std::string allowed;
      for (const auto& k : kinds) allowed += (allowed.empty() ? "" : ", ") + k;
      fail(path + ".kind", "must be one of " + allowed);
    }
  }

  std::vector<std::string> errors;
};

// Dimension R^{N+1} implied by an instance object, or -1 when unknown.
int instance_dim(const json& inst) {
  if (!inst.is_object() || !inst.contains("kind") || !inst["kind"].is_string()) return -1;
  if (inst["kind"] == "hyperplanes" && inst.contains("normals") && inst["normals"].is_array() &&
      !inst["normals"].empty() && inst["normals"][0].is_array()) {
    return static_cast<int>(inst["normals"][0].size());
  }
  if (inst["kind"] == "determinant" && inst.contains("n") && inst["n"].is_number_integer()) {
    const auto n = inst["n"].get<std::int64_t>();
    if (n >= 2 && n <= 64) return static_cast<int>(n * n);
  }
  return -1;
}

void check_instance(Checker& c, const json& j, const std::string& path) {
  if (!c.require_object(j, path)) return;
  c.kind_of(j, path, {"hyperplanes", "determinant"});
  if (j.contains("id") && !j["id"].is_string()) c.fail(path + ".id", "must be a string");
  if (!j.contains("kind") || !j["kind"].is_string()) return;
  if (j["kind"] == "hyperplanes") {
    if (!j.contains("normals")) return c.fail(path + ".normals", "is required");
    const json& normals = j["normals"];
    if (!normals.is_array() || normals.empty()) return c.fail(path + ".normals", "must be a nonempty array");
    std::size_t len = 0;
    for (std::size_t i = 0; i < normals.size(); ++i) {
      const std::string p = path + ".normals[" + std::to_string(i) + "]";
      if (!normals[i].is_array() || normals[i].size() < 2) {
        c.fail(p, "must be an array of at least 2 numbers");
        continue;
      }
      if (i == 0) len = normals[i].size();
      if (normals[i].size() != len) c.fail(p, "length differs from normals[0]");
      double sq = 0.0;
      for (const auto& v : normals[i]) {
        if (!v.is_number()) {
          c.fail(p, "entries must be numbers");
          break;
        }
        sq += v.get<double>() * v.get<double>();
      }
      if (!(sq > 0.0) || !std::isfinite(sq)) c.fail(p, "must be a finite nonzero vector");
    }
  } else if (j["kind"] == "determinant") {
    if (!j.contains("n")) return c.fail(path + ".n", "is required");
    c.integer(j["n"], path + ".n", 2, 64);
  }
}

void check_center(Checker& c, const json& j, const std::string& path, int dim, const json& inst) {
  if (!c.require_object(j, path)) return;
  c.kind_of(j, path, {"coords", "on_sigma", "at_condition"});
  if (j.contains("id") && !j["id"].is_string()) c.fail(path + ".id", "must be a string");
  if (!j.contains("kind") || !j["kind"].is_string()) return;
  const bool hyperplanes = inst.is_object() && inst.value("kind", "") == "hyperplanes";
  if (j["kind"] == "coords") {
    if (!j.contains("coords") || !j["coords"].is_array()) return c.fail(path + ".coords", "must be an array of numbers");
    double sq = 0.0;
    for (const auto& v : j["coords"]) {
      if (!v.is_number()) return c.fail(path + ".coords", "entries must be numbers");
      sq += v.get<double>() * v.get<double>();
    }
    if (!(sq > 0.0) || !std::isfinite(sq)) c.fail(path + ".coords", "must be a finite nonzero vector");
    if (dim > 0 && static_cast<int>(j["coords"].size()) != dim) {
      c.fail(path + ".coords", "must have " + std::to_string(dim) + " entries to match the instance");
    }
  } else if (j["kind"] == "at_condition") {
    if (!hyperplanes) c.fail(path + ".kind", "at_condition centers need a hyperplanes instance");
    if (!j.contains("target")) return c.fail(path + ".target", "is required");
    const json& t = j["target"];
    if (t.is_string()) {
      if (t != "inf") c.fail(path + ".target", "must be a number >= 1 or \"inf\"");
    } else {
      c.number(t, path + ".target", 1.0, HUGE_VAL, false, true, "[1, inf)");
    }
  } else if (j["kind"] == "on_sigma" && !hyperplanes) {
    c.fail(path + ".kind", "on_sigma centers need a hyperplanes instance");
  }
}

void check_measure(Checker& c, const json& j, const std::string& path) {
  if (!c.require_object(j, path)) return;
  c.kind_of(j, path, {"uniform_cap", "gaussian", "sin_ball", "point_mass"});
  if (!j.contains("kind") || !j["kind"].is_string()) return;
  const std::string kind = j["kind"];
  auto field = [&](const char* name) -> const json* {
    if (!j.contains(name)) {
      c.fail(path + "." + name, "is required for " + kind);
      return nullptr;
    }
    return &j[name];
  };
  if (kind == "uniform_cap") {
    if (const json* t = field("theta")) c.number(*t, path + ".theta", 0.0, std::numbers::pi / 2, true, false, "(0, pi/2]");
  } else if (kind == "gaussian") {
    if (const json* s = field("sigma")) c.number(*s, path + ".sigma", 0.0, HUGE_VAL, false, true, "[0, inf)");
  } else if (kind == "sin_ball") {
    if (const json* r = field("rho")) c.number(*r, path + ".rho", 0.0, 1.0, true, false, "(0, 1]");
  }
}

void check_experiment(Checker& c, const json& e, const std::string& path, const std::string& command) {
  for (const char* key : {"instance", "center"}) {
    if (!e.contains(key)) c.fail(path + key, "is required");
  }
  if (e.contains("instance")) check_instance(c, e["instance"], path + "instance");
  if (e.contains("center")) {
    check_center(c, e["center"], path + "center", instance_dim(e.value("instance", json())), e.value("instance", json()));
  }
  if (command == "sweep") {
    if (!e.contains("nu")) {
      c.fail(path + "nu", "is required for sweep");
    } else if (!e["nu"].is_array() || e["nu"].empty()) {
      c.fail(path + "nu", "must be a nonempty array of numbers");
    } else {
      for (std::size_t i = 0; i < e["nu"].size(); ++i) {
        c.number(e["nu"][i], path + "nu[" + std::to_string(i) + "]", 0.0, HUGE_VAL, false, true, "[0, inf)");
      }
    }
  } else {
    if (!e.contains("measure")) c.fail(path + "measure", "is required");
    else check_measure(c, e["measure"], path + "measure");
  }
  if (command != "estimate") {
    if (!e.contains("bound")) {
      c.fail(path + "bound", "is required for " + command);
    } else if (!e["bound"].is_string() || !mc::parse_bound_name(e["bound"].get<std::string>())) {
      c.fail(path + "bound",
             "must be one of smooth_uniform, local_uniform, local_uniform_cases, smooth_gaussian, local_gaussian");
    }
  }
  if (e.contains("bound_offset")) c.number(e["bound_offset"], path + "bound_offset", -HUGE_VAL, HUGE_VAL, true, true, "the reals");
  if (e.contains("n")) c.integer(e["n"], path + "n", 100, std::int64_t{1} << 40);
  if (e.contains("seed")) c.integer(e["seed"], path + "seed", 0, INT64_MAX);
  if (e.contains("stream")) c.integer(e["stream"], path + "stream", 0, INT64_MAX);
  if (e.contains("workers")) c.integer(e["workers"], path + "workers", 1, 256);
}

json merged(const json& top, const json& entry) {
  json out = top;
  out.erase("experiments");
  out.erase("output");
  for (auto it = entry.begin(); it != entry.end(); ++it) out[it.key()] = it.value();
  return out;
}

std::vector<json> experiment_docs(const json& doc) {
  if (!doc.contains("experiments")) return {doc};
  std::vector<json> out;
  for (const auto& e : doc["experiments"]) out.push_back(merged(doc, e));
  return out;
}

std::shared_ptr<const ConditionInstance> make_instance(const json& j) {
  const std::string id = j.value("id", "");
  if (j["kind"] == "determinant") return std::make_shared<DeterminantInstance>(j["n"].get<int>(), id);
  std::vector<Eigen::VectorXd> normals;
  for (const auto& row : j["normals"]) {
    const auto v = row.get<std::vector<double>>();
    normals.push_back(Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size())));
  }
  return std::make_shared<HyperplaneArrangement>(std::move(normals), id);
}

std::pair<UnitPoint, std::string> make_center(const json& j, const ConditionInstance& instance) {
  const std::string kind = j["kind"];
  std::string id = j.value("id", "");
  if (kind == "coords") {
    const auto v = j["coords"].get<std::vector<double>>();
    return {UnitPoint::normalize(Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()))),
            id.empty() ? "coords" : id};
  }
  const auto& h = dynamic_cast<const HyperplaneArrangement&>(instance);
  if (kind == "on_sigma" || (j["target"].is_string() && j["target"] == "inf")) {
    return {center_on_sigma(h), id.empty() ? "on_sigma" : id};
  }
  const double target = j["target"].get<double>();
  return {center_at_condition(h, target), id.empty() ? "C=" + csv::format_double(target) : id};
}

mc::Measure make_measure(const json& j) {
  const std::string kind = j["kind"];
  if (kind == "uniform_cap") return mc::UniformCap{j["theta"].get<double>()};
  if (kind == "gaussian") return mc::Gaussian{j["sigma"].get<double>()};
  if (kind == "sin_ball") return mc::SinBall{j["rho"].get<double>()};
  return mc::PointMass{};
}

}  // namespace

std::vector<std::string> validate_schema(const json& doc, const std::string& command) {
  Checker c;
  if (!c.require_object(doc, "config")) return c.errors;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    if (!kTopKeys.count(it.key())) c.fail("config." + it.key(), "is not a known field");
  }
  if (doc.contains("output") && !doc["output"].is_string()) c.fail("config.output", "must be a string");
  if (doc.contains("experiments")) {
    const json& list = doc["experiments"];
    if (!list.is_array() || list.empty()) {
      c.fail("config.experiments", "must be a nonempty array");
      return c.errors;
    }
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string path = "config.experiments[" + std::to_string(i) + "]";
      if (!c.require_object(list[i], path)) continue;
      for (auto it = list[i].begin(); it != list[i].end(); ++it) {
        if (!kTopKeys.count(it.key()) || it.key() == "experiments" || it.key() == "output") {
          c.fail(path + "." + it.key(), "is not allowed inside an experiment");
        }
      }
    }
    if (!c.errors.empty()) return c.errors;
    for (std::size_t i = 0; i < list.size(); ++i) {
      check_experiment(c, merged(doc, list[i]), "config.experiments[" + std::to_string(i) + "].", command);
    }
  } else {
    check_experiment(c, doc, "config.", command);
  }
  return c.errors;
}

Config load_config(const json& doc, const std::string& command) {
  const auto errors = validate_schema(doc, command);
  if (!errors.empty()) {
    std::ostringstream msg;
    msg << "config does not match the schema:";
    for (const auto& e : errors) msg << "\n  " << e;
    throw ConfigError(msg.str());
  }
  Config cfg;
  cfg.output = doc.value("output", "");
  const auto docs = experiment_docs(doc);
  for (std::size_t i = 0; i < docs.size(); ++i) {
    const json& e = docs[i];
    Experiment x;
    if (doc.contains("experiments")) x.index = i;
    x.instance = make_instance(e["instance"]);
    auto [center, id] = make_center(e["center"], *x.instance);
    if (center.sphere_dim() != x.instance->ambient_dim()) {
      throw ConfigError("center dimension does not match the instance");
    }
    x.center = center;
    x.center_id = id;
    if (e.contains("measure")) x.measure = make_measure(e["measure"]);
    if (e.contains("bound")) x.bound = mc::parse_bound_name(e["bound"].get<std::string>());
    x.bound_offset = e.value("bound_offset", 0.0);
    x.n = e.value("n", std::size_t{100000});
    x.seed = e.value("seed", std::uint64_t{0});
    x.stream = e.value("stream", std::uint64_t{0});
    x.workers = e.value("workers", 1);
    if (e.contains("nu")) x.nu = e["nu"].get<std::vector<double>>();
    cfg.experiments.push_back(std::move(x));
  }
  return cfg;
}

json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config is not valid JSON: " + std::string(e.what()));
  }
}

}  // namespace condlab::cli
