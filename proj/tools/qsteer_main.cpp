// qsteer: steering classification of the two-qubit target family from the
// command line. Emits machine-readable CSV or JSON; every command is
// deterministic given its full option set including --seed.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsteer/qsteer.hpp"

namespace {

using nlohmann::json;
using namespace qsteer;

struct RunConfig {
  double alpha = 0.0;
  double theta = kQuarterPi;
  double mu1 = kInvSqrt3;
  double mu2 = kInvSqrt3;
  int grid_n = 101;
  long long shots = 10000;
  int trials = 100;
  std::uint64_t seed = 42;
  std::string output_path;  // empty = stdout
  std::string format = "csv";
};

// CSV numbers carry 12 significant digits; JSON doubles serialize
// round-trip safe via the JSON library.
std::string csv_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw IoError("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  void finish() {
    stream().flush();
    if (file_.is_open() && !file_) throw IoError("write to output file failed");
  }

 private:
  std::ofstream file_;
};

json metadata(const char* command, const RunConfig& cfg) {
  json m;
  m["version"] = kVersion;
  m["command"] = command;
  m["seed"] = cfg.seed;
  m["mu1"] = cfg.mu1;
  m["mu2"] = cfg.mu2;
  return m;
}

// One flat record rendered either as a two-line CSV or a JSON object.
struct Record {
  std::vector<std::pair<std::string, json>> fields;

  void add(const std::string& key, json value) { fields.emplace_back(key, value); }

  void write_csv(std::ostream& os) const {
    for (std::size_t i = 0; i < fields.size(); ++i)
      os << (i ? "," : "") << fields[i].first;
    os << "\n";
    write_csv_row(os);
  }

  void write_csv_row(std::ostream& os) const {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      const json& v = fields[i].second;
      os << (i ? "," : "");
      if (v.is_number_float())
        os << csv_num(v.get<double>());
      else if (v.is_boolean())
        os << (v.get<bool>() ? "true" : "false");
      else if (v.is_string())
        os << v.get<std::string>();
      else
        os << v.dump();
    }
    os << "\n";
  }

  json as_json() const {
    json o = json::object();
    for (const auto& [k, v] : fields) o[k] = v;
    return o;
  }
};

int run_classify(const RunConfig& cfg) {
  const DensityMatrix rho =
      target_state(StateFamilyParams{cfg.alpha, cfg.theta, cfg.mu1, cfg.mu2});
  const SteeringVerdict verdict = witness_steering(rho, cfg.mu1, cfg.mu2);
  const BellGeomResult bell = bell_geom(rho);
  const Region region = classify_region(cfg.alpha, cfg.theta, cfg.mu1, cfg.mu2);

  Record r;
  r.add("alpha", cfg.alpha);
  r.add("theta", cfg.theta);
  r.add("mu1", cfg.mu1);
  r.add("mu2", cfg.mu2);
  r.add("c_tau1", verdict.c_tau1);
  r.add("c_tau2", verdict.c_tau2);
  r.add("bob_steers_alice", to_string(verdict.bob_steers_alice));
  r.add("alice_steers_bob", to_string(verdict.alice_steers_bob));
  r.add("region", to_string(region));
  r.add("eq6_boundary", boundary_bob_to_alice(cfg.theta));
  r.add("alice_threshold", boundary_alice_to_bob());
  r.add("bell_lhs", bell.lhs);
  r.add("bell_rhs", bell.rhs);
  r.add("bell_violated", bell.violated);
  r.add("inf_setting", infinite_setting_a_to_b_only(cfg.alpha, cfg.theta) ? 1 : 0);

  Output out(cfg.output_path);
  if (cfg.format == "json") {
    json doc;
    doc["metadata"] = metadata("classify", cfg);
    doc["result"] = r.as_json();
    out.stream() << doc.dump(2) << "\n";
  } else {
    r.write_csv(out.stream());
  }
  out.finish();
  return 0;
}

// Theta grid starts just above zero: the boundary formulas exclude
// theta = 0, where the family is classical.
constexpr double kThetaEps = 1e-4;

int run_scan(const RunConfig& cfg) {
  if (cfg.grid_n < 2) throw ParameterError("grid-n must be >= 2");
  const int n = cfg.grid_n;

  std::vector<Record> rows;
  rows.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int ia = 0; ia < n; ++ia) {
    const double alpha = static_cast<double>(ia) / (n - 1);
    for (int it = 0; it < n; ++it) {
      const double theta =
          kThetaEps + (kQuarterPi - kThetaEps) * static_cast<double>(it) / (n - 1);
      const SteeringVerdict verdict = witness_steering(
          target_state(StateFamilyParams{alpha, theta, cfg.mu1, cfg.mu2}), cfg.mu1,
          cfg.mu2);
      Record r;
      r.add("alpha", alpha);
      r.add("theta", theta);
      r.add("c_tau1", verdict.c_tau1);
      r.add("c_tau2", verdict.c_tau2);
      r.add("region", to_string(classify_region(alpha, theta, cfg.mu1, cfg.mu2)));
      r.add("eq6_boundary", boundary_bob_to_alice(theta));
      r.add("inf_setting", infinite_setting_a_to_b_only(alpha, theta) ? 1 : 0);
      rows.push_back(std::move(r));
    }
  }

  Output out(cfg.output_path);
  if (cfg.format == "json") {
    json doc;
    doc["metadata"] = metadata("scan", cfg);
    doc["metadata"]["grid_n"] = n;
    doc["metadata"]["theta_min"] = kThetaEps;
    json arr = json::array();
    for (const Record& r : rows) arr.push_back(r.as_json());
    doc["rows"] = arr;
    out.stream() << doc.dump(2) << "\n";
  } else {
    std::ostream& os = out.stream();
    os << "# qsteer scan: steering classification of the target family\n";
    os << "# theta grid starts at " << csv_num(kThetaEps)
       << " (boundary formulas exclude theta = 0)\n";
    os << "# version=" << kVersion << " grid_n=" << n << " mu1=" << csv_num(cfg.mu1)
       << " mu2=" << csv_num(cfg.mu2) << "\n";
    os << "alpha,theta,c_tau1,c_tau2,region,eq6_boundary,inf_setting\n";
    for (const Record& r : rows) r.write_csv_row(os);
  }
  out.finish();
  return 0;
}

int run_tomo(const RunConfig& cfg) {
  const StateFamilyParams params{cfg.alpha, cfg.theta, cfg.mu1, cfg.mu2};
  const DensityMatrix target = target_state(params);
  const DensityMatrix tau1 = construct_tau1(target, cfg.mu1);
  const DensityMatrix tau2 = construct_tau2(target, cfg.mu2);

  const std::pair<const char*, const DensityMatrix*> states[] = {
      {"target", &target}, {"tau1", &tau1}, {"tau2", &tau2}};

  std::vector<Record> rows;
  for (std::size_t k = 0; k < 3; ++k) {
    const TomographyRun run = run_tomography(*states[k].second, cfg.shots, cfg.trials,
                                             derive_seed(cfg.seed, k));
    Record r;
    r.add("state", states[k].first);
    r.add("fidelity_mean", run.fid_mean);
    r.add("fidelity_stddev", run.fid_stderr);
    r.add("fidelity_run", run.fid);
    r.add("concurrence_mean", run.concurrence_mean);
    r.add("concurrence_stddev", run.concurrence_stderr);
    r.add("concurrence_true", concurrence(*states[k].second));
    rows.push_back(std::move(r));
  }

  Output out(cfg.output_path);
  if (cfg.format == "json") {
    json doc;
    doc["metadata"] = metadata("tomo", cfg);
    doc["metadata"]["alpha"] = cfg.alpha;
    doc["metadata"]["theta"] = cfg.theta;
    doc["metadata"]["shots"] = cfg.shots;
    doc["metadata"]["trials"] = cfg.trials;
    json arr = json::array();
    for (const Record& r : rows) arr.push_back(r.as_json());
    doc["states"] = arr;
    out.stream() << doc.dump(2) << "\n";
  } else {
    std::ostream& os = out.stream();
    os << "# qsteer tomo: simulated tomography with Poisson counting noise\n";
    os << "# version=" << kVersion << " alpha=" << csv_num(cfg.alpha)
       << " theta=" << csv_num(cfg.theta) << " shots=" << cfg.shots
       << " trials=" << cfg.trials << " seed=" << cfg.seed << "\n";
    bool first = true;
    for (const Record& r : rows) {
      if (first) {
        r.write_csv(os);
        first = false;
      } else {
        r.write_csv_row(os);
      }
    }
  }
  out.finish();
  return 0;
}

int run_bellgeom(const RunConfig& cfg) {
  const DensityMatrix rho =
      target_state(StateFamilyParams{cfg.alpha, cfg.theta, cfg.mu1, cfg.mu2});
  const BellGeomResult exact = bell_geom(rho);
  const ErrorBar lhs_mc = monte_carlo_errorbar(rho, cfg.shots, cfg.trials,
                                               TomoStatistic::BellGeomLhs, cfg.seed);
  const ErrorBar rhs_mc = monte_carlo_errorbar(rho, cfg.shots, cfg.trials,
                                               TomoStatistic::BellGeomRhs, cfg.seed);

  Record r;
  r.add("alpha", cfg.alpha);
  r.add("theta", cfg.theta);
  r.add("lhs", exact.lhs);
  r.add("rhs", exact.rhs);
  r.add("violated", exact.violated);
  r.add("lhs_mc_mean", lhs_mc.mean);
  r.add("lhs_mc_stddev", lhs_mc.stddev);
  r.add("rhs_mc_mean", rhs_mc.mean);
  r.add("rhs_mc_stddev", rhs_mc.stddev);

  Output out(cfg.output_path);
  if (cfg.format == "json") {
    json doc;
    doc["metadata"] = metadata("bellgeom", cfg);
    doc["metadata"]["shots"] = cfg.shots;
    doc["metadata"]["trials"] = cfg.trials;
    doc["result"] = r.as_json();
    out.stream() << doc.dump(2) << "\n";
  } else {
    r.write_csv(out.stream());
  }
  out.finish();
  return 0;
}

void add_common_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--mu1", cfg.mu1, "Mixing weight of tau1, in [0, 1/sqrt(3)]");
  cmd->add_option("--mu2", cfg.mu2, "Mixing weight of tau2, in [0, 1/sqrt(3)]");
  cmd->add_option("--out", cfg.output_path, "Output file (default: stdout)");
  cmd->add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
}

void add_point_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--alpha", cfg.alpha, "Mixing parameter alpha in [0, 1]")
      ->required();
  cmd->add_option("--theta", cfg.theta, "Angle theta in [0, pi/4] (default pi/4)");
}

void add_noise_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--shots", cfg.shots, "Expected counts per setting (>= 1)");
  cmd->add_option("--trials", cfg.trials, "Monte-Carlo resamples (>= 2)");
  cmd->add_option("--seed", cfg.seed, "RNG seed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steering of two-qubit target states via entanglement detection"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  RunConfig cfg;

  CLI::App* classify =
      app.add_subcommand("classify", "Witness + analytic verdicts for one (alpha, theta)");
  add_point_options(classify, cfg);
  add_common_options(classify, cfg);

  CLI::App* scan =
      app.add_subcommand("scan", "Grid over the (alpha, theta) plane");
  scan->add_option("--grid-n", cfg.grid_n, "Grid points per axis (>= 2)");
  add_common_options(scan, cfg);

  CLI::App* tomo = app.add_subcommand(
      "tomo", "Simulated tomography of the target state and both witness states");
  add_point_options(tomo, cfg);
  add_noise_options(tomo, cfg);
  add_common_options(tomo, cfg);

  CLI::App* bellgeom = app.add_subcommand(
      "bellgeom", "Geometric Bell-like steering test with noisy estimates");
  add_point_options(bellgeom, cfg);
  add_noise_options(bellgeom, cfg);
  add_common_options(bellgeom, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (classify->parsed()) return run_classify(cfg);
    if (scan->parsed()) return run_scan(cfg);
    if (tomo->parsed()) return run_tomo(cfg);
    if (bellgeom->parsed()) return run_bellgeom(cfg);
  } catch (const ParameterError& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 4;
  }
  return 0;
}
