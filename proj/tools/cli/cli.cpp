#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>

#include "CLI11.hpp"
#include "condlab/bounds.hpp"
#include "condlab/errors.hpp"
#include "condlab/radial.hpp"
#include "condlab/validation_csv.hpp"
#include "config.hpp"
#include "json.hpp"
#include "selftest.hpp"

#ifndef CONDLAB_VERSION
#define CONDLAB_VERSION "dev"
#endif

namespace condlab::cli {

using nlohmann::json;

namespace {

json number_or_string(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

double parse_cond(const std::string& text) {
  if (text == "inf" || text == "infinity") return std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size()) throw ConfigError("--cond must be a number >= 1 or 'inf', got '" + text + "'");
  return v;
}

// --- bound -----------------------------------------------------------------

struct BoundArgs {
  std::string name;
  std::optional<int> N, d;
  std::optional<double> theta, sigma, rho;
  std::string cond = "inf";
};

int cmd_bound(const BoundArgs& a, std::ostream& out) {
  json params;
  auto need_int = [&](const std::optional<int>& v, const char* flag) {
    if (!v) throw ConfigError(a.name + " requires --" + flag);
    params[flag] = *v;
    return *v;
  };
  auto need_real = [&](const std::optional<double>& v, const char* flag) {
    if (!v) throw ConfigError(a.name + " requires --" + flag);
    params[flag] = *v;
    return *v;
  };
  auto cond = [&] {
    const double c = parse_cond(a.cond);
    params["cond"] = number_or_string(c);
    return c;
  };

  double value = 0.0;
  if (a.name == "smooth_uniform") {
    const int N = need_int(a.N, "N"), d = need_int(a.d, "d");
    value = bounds::smooth_uniform(N, d, need_real(a.theta, "theta"));
  } else if (a.name == "local_uniform" || a.name == "local_uniform_cases") {
    const bounds::UniformBoundInputs in{need_int(a.N, "N"), need_int(a.d, "d"), need_real(a.theta, "theta"), cond()};
    value = a.name == "local_uniform" ? bounds::local_uniform_H(in) : bounds::local_uniform_cases(in);
  } else if (a.name == "smooth_gaussian") {
    const int N = need_int(a.N, "N"), d = need_int(a.d, "d");
    value = bounds::smooth_gaussian_H(N, d, need_real(a.sigma, "sigma"));
  } else if (a.name == "local_gaussian") {
    const int N = need_int(a.N, "N"), d = need_int(a.d, "d");
    const double sigma = need_real(a.sigma, "sigma");
    value = bounds::local_gaussian_H({N, d, sigma, cond()});
  } else if (a.name == "phi") {
    const double rho = need_real(a.rho, "rho");
    const int N = need_int(a.N, "N"), d = need_int(a.d, "d");
    value = bounds::phi(rho, N, d, cond());
  } else if (a.name == "c_helper") {
    const int N = need_int(a.N, "N");
    value = bounds::c_helper(N, need_real(a.sigma, "sigma"));
  } else if (a.name == "log_sine_expectation") {
    const int N = need_int(a.N, "N");
    value = bounds::log_sine_expectation_bound(N, need_real(a.sigma, "sigma"));
  } else if (a.name == "gamma_coefficient") {
    value = bounds::gamma_coefficient(need_int(a.N, "N"));
  } else {
    throw ConfigError("unknown bound '" + a.name + "'");
  }
  out << json{{"bound", a.name}, {"params", params}, {"value", number_or_string(value)}}.dump() << '\n';
  return kExitOk;
}

// --- density ---------------------------------------------------------------

struct DensityArgs {
  int N = 0;
  double sigma = 0.0;
  int grid = 257;
  std::string output;
};

int cmd_density(const DensityArgs& a, std::ostream& out, std::ostream& err) {
  if (a.grid < 129) throw ConfigError("--grid must be >= 129, got " + std::to_string(a.grid));
  if (a.N < 2) throw ConfigError("density requires --N >= 2");
  if (!(a.sigma > 0.0)) throw ConfigError("density requires --sigma > 0");
  const auto p = radial::build_profile(a.N, a.sigma, a.grid);
  std::ofstream file;
  if (!a.output.empty()) {
    file.open(a.output, std::ios::binary);
    if (!file) throw ConfigError("cannot write " + a.output);
  }
  std::ostream& csv_out = a.output.empty() ? out : file;
  csv_out << "theta,G,G_prime,f,cdf\n";
  for (std::size_t i = 0; i < p.theta_grid().size(); ++i) {
    csv_out << csv::format_double(p.theta_grid()[i]) << ',' << csv::format_double(p.g_values()[i]) << ','
            << csv::format_double(p.g_prime_values()[i]) << ',' << csv::format_double(p.f_values()[i]) << ','
            << csv::format_double(p.cdf()[i]) << '\n';
  }
  err << "density N=" << a.N << " sigma=" << csv::format_double(a.sigma) << " grid=" << a.grid
      << " mass=" << csv::format_double(p.raw_mass())
      << " |mass-1|=" << csv::format_double(std::abs(p.raw_mass() - 1.0)) << " (limit 1e-6)\n";
  return kExitOk;
}

// --- estimate / validate / sweep -------------------------------------------

struct RunArgs {
  std::string config;
  std::string output;
  std::optional<int> workers;
  std::optional<std::uint64_t> seed;
};

int cmd_run(const std::string& command, const RunArgs& a, std::ostream& out, std::ostream& err) {
  json doc = parse_json_file(a.config);
  if (doc.is_object()) {
    if (a.workers) doc["workers"] = *a.workers;
    if (a.seed) doc["seed"] = *a.seed;
    if (!a.output.empty()) doc["output"] = a.output;
    if (doc.contains("experiments") && doc["experiments"].is_array()) {
      for (auto& e : doc["experiments"]) {
        if (!e.is_object()) continue;
        if (a.workers) e.erase("workers");
        if (a.seed) e.erase("seed");
      }
    }
  }
  const Config cfg = load_config(doc, command);

  std::vector<mc::ValidationRow> rows;
  json record = json::array();
  for (const Experiment& x : cfg.experiments) {
    const mc::RunOptions opt{x.workers, x.bound_offset};
    const RngHandle rng = x.rng();
    if (command == "estimate") {
      mc::ValidationRow r;
      r.instance_id = x.instance->id();
      r.measure = mc::measure_kind(x.measure);
      r.nu = mc::measure_parameter(x.measure);
      r.center_id = x.center_id;
      r.cond_center = cond_from_unit(*x.instance, *x.center).value();
      r.estimate = mc::estimate_ln_cond(*x.instance, *x.center, x.measure, x.n, rng, opt);
      rows.push_back(std::move(r));
    } else if (command == "validate") {
      rows.push_back(mc::validate_bound(*x.instance, *x.center, x.center_id, x.measure, *x.bound, x.n, rng, opt));
    } else {
      auto swept = mc::sweep(*x.instance, *x.center, x.center_id, x.nu, *x.bound, x.n, rng, opt);
      rows.insert(rows.end(), swept.begin(), swept.end());
    }
    json r{{"seed", x.seed}, {"stream", x.stream}, {"workers", x.workers}, {"n", x.n}};
    if (x.index) r["substream"] = *x.index;
    record.push_back(r);
  }

  const csv::Table table = command == "estimate" ? csv::Table::kEstimate : csv::Table::kValidation;
  if (cfg.output.empty()) {
    csv::write_rows(out, rows, table);
  } else {
    std::ofstream file(cfg.output, std::ios::binary);
    if (!file) throw ConfigError("cannot write " + cfg.output);
    csv::write_rows(file, rows, table);
  }

  std::map<mc::Verdict, int> counts;
  if (command != "estimate") {
    for (const auto& r : rows) ++counts[r.verdict];
  }
  json summary{{"command", command},
               {"config", a.config},
               {"output", cfg.output.empty() ? "-" : cfg.output},
               {"rows", rows.size()},
               {"reproducibility", {{"version", CONDLAB_VERSION}, {"experiments", record}}}};
  if (command != "estimate") {
    summary["pass"] = counts[mc::Verdict::kPass];
    summary["violation"] = counts[mc::Verdict::kViolation];
    summary["unreliable"] = counts[mc::Verdict::kUnreliable];
  }
  (cfg.output.empty() ? err : out) << summary.dump(2) << '\n';
  return counts[mc::Verdict::kViolation] > 0 ? kExitViolation : kExitOk;
}

// --- selftest --------------------------------------------------------------

int cmd_selftest(bool as_json, const std::string& inject, std::ostream& out) {
  SelftestOptions opt;
  if (inject == "gprime_sign_flip") {
    opt.flip_g_prime = true;
  } else if (inject == "bound_corruption") {
    opt.corrupt_bound = true;
  } else if (!inject.empty()) {
    throw ConfigError("unknown --inject value '" + inject + "' (gprime_sign_flip, bound_corruption)");
  }
  const auto checks = run_selftest(opt);
  bool ok = true;
  for (const auto& c : checks) ok = ok && c.ok;
  if (as_json) {
    json list = json::array();
    for (const auto& c : checks) list.push_back({{"name", c.name}, {"ok", c.ok}, {"detail", c.detail}});
    json report{{"ok", ok}, {"checks", list}, {"version", CONDLAB_VERSION}};
    if (!inject.empty()) report["injected"] = inject;
    out << report.dump(2) << '\n';
  } else {
    for (const auto& c : checks) out << (c.ok ? "PASS " : "FAIL ") << c.name << "  " << c.detail << '\n';
    out << (ok ? "selftest passed" : "selftest FAILED") << '\n';
  }
  return ok ? kExitOk : kExitViolation;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"condlab: conic condition number bound laboratory", "condlab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", CONDLAB_VERSION);

  BoundArgs bound_args;
  auto* bound = app.add_subcommand("bound", "Evaluate a named bound; prints JSON {bound, params, value}");
  bound->add_option("--name", bound_args.name,
                    "smooth_uniform | local_uniform | local_uniform_cases | smooth_gaussian | local_gaussian | "
                    "phi | c_helper | log_sine_expectation | gamma_coefficient")
      ->required();
  bound->add_option("--N", bound_args.N, "sphere dimension");
  bound->add_option("--d", bound_args.d, "degree");
  bound->add_option("--theta", bound_args.theta, "cap radius (radians)");
  bound->add_option("--sigma", bound_args.sigma, "Gaussian dispersion");
  bound->add_option("--rho", bound_args.rho, "phi argument in [0, 1]");
  bound->add_option("--cond", bound_args.cond, "condition of the center, number or 'inf'")->capture_default_str();

  DensityArgs density_args;
  auto* density = app.add_subcommand("density", "Tabulate G, G', f and the CDF as CSV");
  density->add_option("--N", density_args.N)->required();
  density->add_option("--sigma", density_args.sigma)->required();
  density->add_option("--grid", density_args.grid, "grid size (>= 129)")->capture_default_str();
  density->add_option("--output,-o", density_args.output, "CSV path (default: standard output)");

  std::map<std::string, RunArgs> run_args;
  for (const char* name : {"estimate", "validate", "sweep"}) {
    RunArgs& ra = run_args[name];
    auto* sub = app.add_subcommand(name, std::string(name) + " from a JSON config (see experiment.schema.json)");
    sub->add_option("config", ra.config, "config file")->required();
    sub->add_option("--output,-o", ra.output, "CSV path, overrides the config");
    sub->add_option("--workers", ra.workers, "worker threads, overrides the config");
    sub->add_option("--seed", ra.seed, "seed, overrides the config");
  }

  bool selftest_json = false;
  std::string inject;
  auto* selftest = app.add_subcommand("selftest", "Fast invariant suite");
  selftest->add_flag("--json", selftest_json, "machine-readable report");
  selftest->add_option("--inject", inject, "planted mutation: gprime_sign_flip | bound_corruption");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*bound) return cmd_bound(bound_args, out);
    if (*density) return cmd_density(density_args, out, err);
    if (*selftest) return cmd_selftest(selftest_json, inject, out);
    for (auto& [name, ra] : run_args) {
      if (*app.get_subcommand(name)) return cmd_run(name, ra, out, err);
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::logic_error& e) {
    // DomainError and PreconditionError: arguments outside a stated domain.
    err << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitConfig;
}

}  // namespace condlab::cli
