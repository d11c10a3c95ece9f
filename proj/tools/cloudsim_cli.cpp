// Command-line front end: runs scenarios, re-verifies exported traces,
// ranks providers, and prints workload profiles.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cloudsim/compliance.hpp"
#include "cloudsim/scenario.hpp"
#include "cloudsim/simulation.hpp"

namespace fs = std::filesystem;
using cloudsim::json;

namespace {

cloudsim::Outcome outcome_from_string(const std::string& s) {
  using O = cloudsim::Outcome;
  if (s == "completed") return O::kCompleted;
  if (s == "denied-threat-intel") return O::kDeniedThreatIntel;
  if (s == "denied-no-rule") return O::kDeniedNoRule;
  if (s == "denied-rate-limited") return O::kDeniedRateLimited;
  if (s == "failed-outage") return O::kFailedOutage;
  throw cloudsim::SyntaxError("unknown outcome: " + s);
}

cloudsim::PriceCategory category_from_string(const std::string& s) {
  using PC = cloudsim::PriceCategory;
  static const std::map<std::string, PC> table = {
      {"storage-gb-month", PC::kStorageGbMonth},
      {"general-compute", PC::kGeneralCompute},
      {"optimized-compute", PC::kOptimizedCompute},
      {"general-discounted", PC::kGeneralDiscounted},
      {"optimized-discounted", PC::kOptimizedDiscounted},
      {"spot", PC::kSpot},
      {"accelerated", PC::kAccelerated},
      {"gpu-a100", PC::kGpuA100},
  };
  auto it = table.find(s);
  if (it == table.end()) {
    throw cloudsim::SyntaxError("unknown price category: " + s);
  }
  return it->second;
}

std::vector<std::vector<std::string>> read_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw cloudsim::IoError("cannot open " + path.string());
  std::vector<std::vector<std::string>> rows;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    // A trailing empty field is dropped by getline; pad it back.
    if (!line.empty() && line.back() == ',') fields.push_back("");
    rows.push_back(std::move(fields));
  }
  return rows;
}

json meta_from_run(const cloudsim::RunResult& result) {
  json meta;
  meta["seed"] = result.trace.seed;
  meta["horizon_us"] = result.trace.horizon_us;
  meta["backups"] = json::array();
  for (const auto& b : result.trace.backups) {
    meta["backups"].push_back({{"time_us", b.time_us},
                               {"copies", b.copies},
                               {"locations", b.locations},
                               {"offsite", b.offsite},
                               {"encrypted_at_rest", b.encrypted_at_rest},
                               {"encrypted_in_flight", b.encrypted_in_flight}});
  }
  meta["node_service_max_us"] = json::object();
  for (const auto& [node, us] : result.trace.node_service_max_us) {
    meta["node_service_max_us"][node] = us;
  }
  meta["ledger"] = json::array();
  for (const auto& e : result.ledger.entries) {
    meta["ledger"].push_back({{"resource", e.resource_id},
                              {"provider", e.provider},
                              {"category", cloudsim::to_string(e.category)},
                              {"quantity", e.quantity},
                              {"rate", e.rate},
                              {"amount", e.amount}});
  }
  return meta;
}

struct StoredRun {
  cloudsim::SimTrace trace;
  cloudsim::CostLedger ledger;
};

StoredRun load_run(const fs::path& dir) {
  StoredRun run;
  std::ifstream meta_in(dir / "run_meta.json");
  if (!meta_in) {
    throw cloudsim::MissingInputError("missing run_meta.json in " +
                                      dir.string());
  }
  json meta = json::parse(meta_in);
  run.trace.seed = meta.at("seed").get<std::uint64_t>();
  run.trace.horizon_us = meta.at("horizon_us").get<cloudsim::Micros>();
  for (const auto& jb : meta.value("backups", json::array())) {
    run.trace.backups.push_back({jb.at("time_us").get<cloudsim::Micros>(),
                                 jb.at("copies").get<int>(),
                                 jb.at("locations").get<int>(),
                                 jb.at("offsite").get<int>(),
                                 jb.at("encrypted_at_rest").get<bool>(),
                                 jb.at("encrypted_in_flight").get<bool>()});
  }
  const json node_max = meta.value("node_service_max_us", json::object());
  for (auto it = node_max.begin(); it != node_max.end(); ++it) {
    run.trace.node_service_max_us[it.key()] =
        it.value().get<cloudsim::Micros>();
  }
  for (const auto& je : meta.value("ledger", json::array())) {
    run.ledger.entries.push_back(
        {je.at("resource").get<std::string>(),
         je.at("provider").get<std::string>(),
         category_from_string(je.at("category").get<std::string>()),
         je.at("quantity").get<double>(), je.at("rate").get<double>(),
         je.at("amount").get<double>()});
  }

  for (const auto& row : read_csv(dir / "requests.csv")) {
    cloudsim::RequestRecord r;
    r.id = std::stoull(row.at(0));
    r.arrival_us = std::stoll(row.at(1));
    r.complete_us = std::stoll(row.at(2));
    r.path = row.at(3);
    r.version = row.at(4);
    r.outcome = outcome_from_string(row.at(5));
    r.latency_us = std::stoll(row.at(6));
    run.trace.requests.push_back(r);
  }
  for (const auto& row : read_csv(dir / "replicas.csv")) {
    cloudsim::ReplicaSample s;
    s.time_us = std::stoll(row.at(0));
    s.deployment = row.at(1);
    s.replicas = std::stoi(row.at(2));
    s.cpu = std::stod(row.at(3));
    run.trace.replica_timeline.push_back(s);
  }
  for (const auto& row : read_csv(dir / "outages.csv")) {
    run.trace.outages.push_back(
        {row.at(0), std::stoll(row.at(1)), std::stoll(row.at(2))});
  }
  for (const auto& row : read_csv(dir / "alerts.csv")) {
    run.trace.alerts.push_back({std::stoll(row.at(0)), row.at(1), row.at(2)});
  }
  return run;
}

cloudsim::ComplianceReport evaluate(const cloudsim::Scenario& sc,
                                    const StoredRun& run) {
  cloudsim::CompliancePolicies policies;
  policies.scaling = sc.scaling;
  policies.backup = sc.backup;
  policies.mttr_target_hours = sc.faults.mttr_hours;
  policies.budget_usd = sc.compliance.budget_usd;
  policies.enabled = sc.compliance.enabled;
  return cloudsim::run_checks(sc.graph, run.trace, run.ledger, policies);
}

std::map<std::string, double> parse_weights(const std::string& spec) {
  std::map<std::string, double> out;
  if (spec.empty()) return out;
  std::stringstream ss(spec);
  std::string pair;
  while (std::getline(ss, pair, ',')) {
    auto eq = pair.find('=');
    if (eq == std::string::npos) {
      throw cloudsim::SyntaxError("weight must be key=value: " + pair);
    }
    out[pair.substr(0, eq)] = std::stod(pair.substr(eq + 1));
  }
  return out;
}

int cmd_run(const std::string& scenario_path, std::uint64_t seed,
            double horizon_s, const std::string& out_dir) {
  cloudsim::Scenario sc = cloudsim::load_scenario(scenario_path);
  cloudsim::Simulation sim(sc, seed);
  cloudsim::RunResult result = sim.run(horizon_s);

  fs::create_directories(out_dir);
  fs::path dir(out_dir);
  using K = cloudsim::TraceExportKind;
  cloudsim::export_trace(result.trace, K::kRequests, dir / "requests.csv");
  cloudsim::export_trace(result.trace, K::kReplicas, dir / "replicas.csv");
  cloudsim::export_trace(result.trace, K::kOutages, dir / "outages.csv");
  cloudsim::export_trace(result.trace, K::kAlerts, dir / "alerts.csv");
  cloudsim::detail::write_file(dir / "run_meta.json",
                               meta_from_run(result).dump(2) + "\n");

  cloudsim::ComplianceReport report = cloudsim::run_checks(
      sc.graph, result.trace, result.ledger, sim.compliance_policies());
  report.scenario_fingerprint = sc.fingerprint;
  cloudsim::write_report(report, cloudsim::ReportFormat::kCsv,
                         dir / "compliance_report.csv");
  cloudsim::write_report(report, cloudsim::ReportFormat::kText,
                         dir / "compliance_report.txt");
  std::cout << cloudsim::render_report(report, cloudsim::ReportFormat::kText);
  return 0;
}

int cmd_verify(const std::string& scenario_path, const std::string& out_dir) {
  cloudsim::Scenario sc = cloudsim::load_scenario(scenario_path);
  StoredRun run = load_run(out_dir);
  cloudsim::ComplianceReport report = evaluate(sc, run);
  std::cout << cloudsim::render_report(report, cloudsim::ReportFormat::kText);
  return report.failed() > 0 ? 1 : 0;
}

int cmd_report(const std::string& scenario_path, const std::string& out_dir) {
  cloudsim::Scenario sc = cloudsim::load_scenario(scenario_path);
  StoredRun run = load_run(out_dir);
  cloudsim::ComplianceReport report = evaluate(sc, run);
  std::cout << cloudsim::render_report(report, cloudsim::ReportFormat::kText);
  return 0;
}

int cmd_rank_providers(const std::string& weights_spec) {
  cloudsim::DecisionMatrix matrix = cloudsim::paper_decision_matrix();
  auto weights = parse_weights(weights_spec);
  for (const auto& [name, w] : weights) {
    if (!matrix.criteria.count(name)) {
      throw cloudsim::SyntaxError("unknown criterion: " + name);
    }
    if (w < 0.0) throw cloudsim::SyntaxError("weights must be non-negative");
    matrix.weights[name] = w;
  }
  cloudsim::McdaResult result = cloudsim::mcda_rank(matrix);
  std::cout << "provider,score\n";
  for (const auto& row : result.ranking) {
    std::cout << row.provider << ',' << cloudsim::detail::sig6(row.score)
              << '\n';
  }
  std::cout << "winner: " << result.winner << (result.tie ? " (tie)" : "")
            << '\n';

  std::cout << "\ngpu-a100 $/h ranking\n";
  for (const auto& e : cloudsim::gpu_rank(cloudsim::paper_price_book())) {
    std::cout << e.rank << ',' << e.provider << ','
              << cloudsim::detail::sig6(e.price) << '\n';
  }
  return 0;
}

int cmd_profile(const std::string& name) {
  if (name != "paper-locust") {
    throw cloudsim::SyntaxError("unknown profile: " + name);
  }
  cloudsim::WorkloadProfile p = cloudsim::paper_locust_profile();
  std::cout << "t_s,users\n";
  for (double t = 0.0; t <= p.end_s(); t += 1.0) {
    std::cout << t << ',' << cloudsim::users_at(p, t) << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-cloud MLOps network simulator and compliance verifier"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  double horizon_s = 0.0;
  std::string weights_spec;
  std::string profile_name = "paper-locust";

  auto* run = app.add_subcommand("run", "simulate a scenario and export");
  run->add_option("--scenario", scenario_path, "scenario JSON path")
      ->required();
  run->add_option("--seed", seed, "run seed")->required();
  run->add_option("--horizon", horizon_s, "simulated seconds")
      ->required()
      ->check(CLI::PositiveNumber);
  run->add_option("--out", out_dir, "output directory");

  auto* verify = app.add_subcommand("verify", "re-check an exported trace");
  verify->add_option("--scenario", scenario_path, "scenario JSON path")
      ->required();
  verify->add_option("--out", out_dir, "trace directory")->required();

  auto* report = app.add_subcommand("report", "print the compliance report");
  report->add_option("--scenario", scenario_path, "scenario JSON path")
      ->required();
  report->add_option("--out", out_dir, "trace directory")->required();

  auto* rank = app.add_subcommand("rank-providers", "print the MCDA table");
  rank->add_option("--weights", weights_spec, "k=v[,k=v...] criterion weights");

  auto* profile = app.add_subcommand("profile", "print users_at samples");
  profile->add_option("--profile", profile_name, "profile name");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }

  try {
    if (run->parsed()) return cmd_run(scenario_path, seed, horizon_s, out_dir);
    if (verify->parsed()) return cmd_verify(scenario_path, out_dir);
    if (report->parsed()) return cmd_report(scenario_path, out_dir);
    if (rank->parsed()) return cmd_rank_providers(weights_spec);
    if (profile->parsed()) return cmd_profile(profile_name);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
