#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cli_io.hpp"
#include "fringelab/fringelab.h"

namespace cli = fringelab::cli;
using nlohmann::json;

namespace {

enum ExitCode { kOk = 0, kVerifyFailed = 1, kInvalidConfig = 2, kInfeasible = 3, kRuntimeError = 4 };

struct Failure : std::runtime_error {
  Failure(std::string code, const std::string& message, int exit_code)
      : std::runtime_error(message), code(std::move(code)), exit_code(exit_code) {}
  std::string code;
  int exit_code;
};

Failure invalid_config(const std::string& message) { return {"InvalidConfig", message, kInvalidConfig}; }

struct Settings {
  std::string family = "werner";
  double p = 1.0;
  double alpha2 = 0.5;
  double a = 0.5;
  double x = 1.0;
  std::optional<std::int64_t> shots;
  std::uint64_t seed = 0;
  std::string grid = "21x11";
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<std::string> suite;
  bool numeric = false;
  double background = 0.0;
  fl_optimizer optimizer = fl_optimizer_default();
  std::optional<std::string> inject_fault;
};

void apply_config_file(const std::string& path, Settings& s) {
  std::ifstream in(path);
  if (!in) throw invalid_config("cannot read config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw invalid_config("config file '" + path + "' is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw invalid_config("config file must hold a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "family") s.family = value.get<std::string>();
      else if (key == "p") s.p = value.get<double>();
      else if (key == "alpha2") s.alpha2 = value.get<double>();
      else if (key == "a") s.a = value.get<double>();
      else if (key == "x") s.x = value.get<double>();
      else if (key == "shots") s.shots = value.is_null() ? std::nullopt : std::optional(value.get<std::int64_t>());
      else if (key == "seed") s.seed = value.get<std::uint64_t>();
      else if (key == "grid") s.grid = value.get<std::string>();
      else if (key == "out") s.out = value.get<std::string>();
      else if (key == "format") s.format = value.get<std::string>();
      else if (key == "suite") s.suite = value.get<std::string>();
      else if (key == "numeric") s.numeric = value.get<bool>();
      else if (key == "background") s.background = value.get<double>();
      else if (key == "optimizer") {
        for (const auto& [k, v] : value.items()) {
          if (k == "grid_points_per_angle") s.optimizer.grid_points_per_angle = v.get<int>();
          else if (k == "refine_iterations") s.optimizer.refine_iterations = v.get<int>();
          else if (k == "tolerance") s.optimizer.tolerance = v.get<double>();
          else throw invalid_config("unknown optimizer key '" + k + "' in config file");
        }
      } else {
        throw invalid_config("unknown key '" + key + "' in config file");
      }
    }
  } catch (const json::exception& e) {
    throw invalid_config(std::string("config file has a value of the wrong type: ") + e.what());
  }
}

fl_family require_family(const std::string& name) {
  const auto f = cli::parse_family(name);
  if (!f) throw invalid_config("unknown family '" + name + "' (werner, gisin, pure, random)");
  return *f;
}

std::string require_format(const Settings& s, const char* fallback) {
  const std::string f = s.format.value_or(fallback);
  if (f != "csv" && f != "json") throw invalid_config("format must be csv or json, got '" + f + "'");
  return f;
}

fl_estimate_config estimate_config(const Settings& s, fl_family family) {
  fl_estimate_config c = fl_estimate_config_default();
  c.family = family;
  c.p = s.p;
  c.alpha2 = s.alpha2;
  c.a = s.a;
  c.x = s.x;
  if (s.shots) {
    c.has_shots = 1;
    c.shots = *s.shots;
  }
  c.seed = s.seed;
  c.numeric = s.numeric ? 1 : 0;
  c.optimizer = s.optimizer;
  c.background = s.background;
  return c;
}

json config_json(const Settings& s) {
  json j = {{"family", s.family}, {"p", s.p},       {"alpha2", s.alpha2},   {"a", s.a},
            {"x", s.x},           {"seed", s.seed}, {"numeric", s.numeric}, {"background", s.background}};
  j["shots"] = s.shots ? json(*s.shots) : json(nullptr);
  j["optimizer"] = {{"grid_points_per_angle", s.optimizer.grid_points_per_angle},
                    {"refine_iterations", s.optimizer.refine_iterations},
                    {"tolerance", s.optimizer.tolerance}};
  return j;
}

void emit(const Settings& s, const std::string& text) {
  if (!s.out) {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream f(*s.out, std::ios::binary | std::ios::trunc);
  if (!f) throw invalid_config("cannot write output file '" + *s.out + "'");
  f << text;
}

int exit_for(fl_status status) {
  switch (status) {
    case FL_FEASIBILITY_VIOLATION:
    case FL_INCONSISTENT_OBSERVABLES: return kInfeasible;
    case FL_INVALID_DIMENSION:
    case FL_INVALID_PARAMETER:
    case FL_NOT_NORMALIZED:
    case FL_NON_FINITE:
    case FL_INVALID_PLAN: return kInvalidConfig;
    default: return kRuntimeError;
  }
}

int cmd_estimate(const Settings& s) {
  const fl_family family = require_family(s.family);
  const std::string format = require_format(s, "json");
  const fl_estimate_config c = estimate_config(s, family);
  fl_estimate_result r{};
  const fl_status status = fl_estimate(&c, &r);
  if (status != FL_OK) throw Failure(fl_status_name(status), fl_last_error(), exit_for(status));
  const cli::Row row = cli::make_row(family, r);
  emit(s, format == "csv" ? cli::to_csv({row}) : cli::estimate_document(row, config_json(s)).dump(2) + "\n");
  return kOk;
}

std::vector<double> axis_values(int n, double lo, double hi, double single) {
  if (n == 1) return {single};
  std::vector<double> v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
  return v;
}

std::pair<int, int> parse_grid(const std::string& text) {
  int n1 = 0;
  int n2 = 1;
  char sep = 0;
  char extra = 0;
  const int got = std::sscanf(text.c_str(), "%d%c%d%c", &n1, &sep, &n2, &extra);
  if (!((got == 1) || (got == 3 && sep == 'x')) || n1 < 1 || n2 < 1) {
    throw invalid_config("grid must look like N or N1xN2 with positive sizes, got '" + text + "'");
  }
  return {n1, n2};
}

unsigned thread_cap() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("FRINGELAB_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1) throw invalid_config("FRINGELAB_THREADS must be a positive integer");
    n = std::min(n, static_cast<unsigned>(v));
  }
  return n;
}

int cmd_sweep(const Settings& s) {
  const fl_family family = require_family(s.family);
  const std::string format = require_format(s, "csv");
  const auto [n1, n2] = parse_grid(s.grid);

  // (param1, param2) per row in lexicographic order; random draws use
  // consecutive state seeds as their second coordinate.
  std::vector<fl_estimate_config> configs;
  std::vector<std::pair<double, double>> params;
  const fl_estimate_config base = estimate_config(s, family);
  switch (family) {
    case FL_FAMILY_WERNER:
      for (double p : axis_values(n1, 0.0, 1.0, s.p))
        for (double a2 : axis_values(n2, 0.5, 1.0, s.alpha2)) {
          fl_estimate_config c = base;
          c.p = p;
          c.alpha2 = a2;
          configs.push_back(c);
          params.emplace_back(p, a2);
        }
      break;
    case FL_FAMILY_GISIN:
      for (double a : axis_values(n1, 0.0, 1.0, s.a))
        for (double x : axis_values(n2, 0.0, 1.0, s.x)) {
          fl_estimate_config c = base;
          c.a = a;
          c.x = x;
          configs.push_back(c);
          params.emplace_back(a, x);
        }
      break;
    case FL_FAMILY_PURE:
      if (n2 != 1) throw invalid_config("the pure family has one parameter; use --grid N");
      for (double a2 : axis_values(n1, 0.5, 1.0, s.alpha2)) {
        fl_estimate_config c = base;
        c.alpha2 = a2;
        configs.push_back(c);
        params.emplace_back(1.0, a2);
      }
      break;
    case FL_FAMILY_RANDOM:
      for (double p : axis_values(n1, 0.0, 1.0, s.p))
        for (int j = 0; j < n2; ++j) {
          fl_estimate_config c = base;
          c.p = p;
          c.seed = s.seed + static_cast<std::uint64_t>(j);
          configs.push_back(c);
          params.emplace_back(p, static_cast<double>(j));
        }
      break;
  }

  std::vector<cli::Row> rows(configs.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < configs.size(); i = next++) {
      fl_estimate_result r{};
      const fl_status status = fl_estimate(&configs[i], &r);
      rows[i] = status == FL_OK ? cli::make_row(family, r)
                                : cli::error_row(family, params[i].first, params[i].second, status, fl_last_error());
    }
  };
  const unsigned threads = std::min<std::size_t>(thread_cap(), std::max<std::size_t>(configs.size(), 1));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  json cfg = config_json(s);
  cfg["grid"] = s.grid;
  emit(s, format == "csv" ? cli::to_csv(rows) : cli::sweep_document(rows, cfg).dump(2) + "\n");
  return kOk;
}

int cmd_verify(const Settings& s) {
  // sigma_y with the sign of its upper entry flipped; the mutation check.
  static const double broken_sigma_y[8] = {0, 0, 0, -1, 0, -1, 0, 0};
  const double* flip = nullptr;
  if (s.inject_fault) {
    if (*s.inject_fault != "sigma_y") throw invalid_config("unknown fault '" + *s.inject_fault + "'");
    flip = broken_sigma_y;
  }
  fl_verify_result* result = nullptr;
  const fl_status status = fl_verify_run(s.suite ? s.suite->c_str() : nullptr, flip, &result);
  if (status != FL_OK) throw Failure(fl_status_name(status), fl_last_error(), exit_for(status));

  json suites = json::array();
  std::ostringstream text;
  std::ostringstream csv;
  csv << "suite,passed,worst_residual,threshold,cases\n";
  for (std::size_t i = 0; i < fl_verify_count(result); ++i) {
    fl_suite_entry e{};
    fl_verify_entry(result, i, &e);
    char line[256];
    std::snprintf(line, sizeof line, "%-10s %s  worst %.3e  threshold %.1e  cases %d\n", e.name,
                  e.passed ? "PASS" : "FAIL", e.worst_residual, e.threshold, e.cases);
    text << line;
    std::snprintf(line, sizeof line, "%s,%d,%.12g,%.12g,%d\n", e.name, e.passed, e.worst_residual, e.threshold,
                  e.cases);
    csv << line;
    suites.push_back({{"suite", e.name},
                      {"passed", e.passed != 0},
                      {"worst_residual", e.worst_residual},
                      {"threshold", e.threshold},
                      {"cases", e.cases}});
  }
  const bool passed = fl_verify_all_passed(result) != 0;
  fl_verify_free(result);

  if (!s.format) {
    emit(s, text.str());
  } else if (require_format(s, "json") == "csv") {
    emit(s, csv.str());
  } else {
    emit(s, json({{"schema_version", cli::kSchemaVersion}, {"command", "verify"}, {"passed", passed},
                  {"suites", suites}})
                    .dump(2) +
                "\n");
  }
  return passed ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement from two-particle interference fringes"};
  app.set_version_flag("--version", std::string(fl_version()));
  app.require_subcommand(1);

  Settings flags;
  std::string config_path;
  std::string shots_text;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file; flags override it");
    sub->add_option("--family", flags.family, "werner | gisin | pure | random");
    sub->add_option("--p", flags.p, "Werner mixing weight");
    sub->add_option("--alpha2", flags.alpha2, "Schmidt weight |alpha|^2");
    sub->add_option("--a", flags.a, "Gisin amplitude weight");
    sub->add_option("--x", flags.x, "Gisin mixing weight");
    sub->add_option("--shots", shots_text, "shots per setting (omit for exact probabilities)");
    sub->add_option("--seed", flags.seed, "random seed");
    sub->add_option("--out", flags.out, "output file (default stdout)");
    sub->add_option("--format", flags.format, "csv | json");
    sub->add_flag("--numeric", flags.numeric, "exact mode: optimizers instead of closed forms");
    sub->add_option("--background", flags.background, "uniform background fraction of detected pairs");
    sub->add_option("--optimizer-grid", flags.optimizer.grid_points_per_angle, "grid points per angle");
    sub->add_option("--optimizer-iterations", flags.optimizer.refine_iterations, "refinement budget per start");
    sub->add_option("--tolerance", flags.optimizer.tolerance, "optimizer step tolerance");
  };

  CLI::App* estimate = app.add_subcommand("estimate", "estimate concurrence for one state");
  add_common(estimate);
  CLI::App* sweep = app.add_subcommand("sweep", "estimate over a parameter grid");
  add_common(sweep);
  sweep->add_option("--grid", flags.grid, "N1xN2 grid over the family parameters");
  CLI::App* verify = app.add_subcommand("verify", "run the invariant suites");
  verify->add_option("--config", config_path, "JSON config file; flags override it");
  verify->add_option("--suite", flags.suite, "run a single suite");
  verify->add_option("--out", flags.out, "output file (default stdout)");
  verify->add_option("--format", flags.format, "csv | json (default: text)");
  verify->add_option("--inject-fault", flags.inject_fault)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << cli::error_record("InvalidConfig", e.what(), kInvalidConfig);
    return kInvalidConfig;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    Settings s;
    if (!config_path.empty()) apply_config_file(config_path, s);
    const auto given = [&](const char* name) {
      const CLI::Option* o = sub->get_option_no_throw(name);
      return o != nullptr && o->count() > 0;
    };
    if (given("--family")) s.family = flags.family;
    if (given("--p")) s.p = flags.p;
    if (given("--alpha2")) s.alpha2 = flags.alpha2;
    if (given("--a")) s.a = flags.a;
    if (given("--x")) s.x = flags.x;
    if (given("--seed")) s.seed = flags.seed;
    if (given("--out")) s.out = flags.out;
    if (given("--format")) s.format = flags.format;
    if (given("--suite")) s.suite = flags.suite;
    if (given("--grid")) s.grid = flags.grid;
    if (given("--numeric")) s.numeric = flags.numeric;
    if (given("--background")) s.background = flags.background;
    if (given("--optimizer-grid")) s.optimizer.grid_points_per_angle = flags.optimizer.grid_points_per_angle;
    if (given("--optimizer-iterations")) s.optimizer.refine_iterations = flags.optimizer.refine_iterations;
    if (given("--tolerance")) s.optimizer.tolerance = flags.optimizer.tolerance;
    if (given("--inject-fault")) s.inject_fault = flags.inject_fault;
    if (given("--shots")) {
      std::int64_t v = 0;
      std::size_t used = 0;
      try {
        v = std::stoll(shots_text, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != shots_text.size()) throw invalid_config("--shots must be an integer");
      s.shots = v;
    }
    if (s.shots && *s.shots < 1) throw invalid_config("--shots must be at least 1");

    if (sub == estimate) return cmd_estimate(s);
    if (sub == sweep) return cmd_sweep(s);
    return cmd_verify(s);
  } catch (const Failure& f) {
    std::cerr << cli::error_record(f.code, f.what(), f.exit_code);
    return f.exit_code;
  } catch (const std::exception& e) {
    std::cerr << cli::error_record("Internal", e.what(), kRuntimeError);
    return kRuntimeError;
  }
}
