// Acceptance suite: one pass/fail line per criterion, exit 0 only when
// every criterion holds.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "cloudsim/balancing.hpp"
#include "cloudsim/cluster.hpp"
#include "cloudsim/compliance.hpp"
#include "cloudsim/economics.hpp"
#include "cloudsim/resilience.hpp"
#include "cloudsim/scenario.hpp"
#include "cloudsim/simulation.hpp"
#include "cloudsim/telemetry.hpp"
#include "cloudsim/workload.hpp"

using namespace cloudsim;

namespace {

int g_failures = 0;

void report(int number, const std::string& name, bool ok,
            const std::string& detail = "") {
  std::printf("%s  %2d. %s%s%s\n", ok ? "PASS" : "FAIL", number, name.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!ok) ++g_failures;
}

MeshConfig canary_mesh(int stable_weight, int canary_weight) {
  MeshConfig m;
  m.virtual_services = {{"ml-model",
                         {{"stable", stable_weight}, {"canary", canary_weight}}}};
  m.destination_rules = {{"ml-model", {{"stable", "v1"}, {"canary", "v2"}}}};
  return m;
}

void criterion_workload_endpoints() {
  WorkloadProfile p = paper_locust_profile();
  bool ok = users_at(p, 20.0) == 20.0 && users_at(p, 80.0) == 6000.0 &&
            users_at(p, 140.0) == 20.0 && users_at(p, 160.0) == 10.0;
  report(1, "staged workload hits 20/6000/20/10 users exactly", ok);
}

void criterion_canary_ratio() {
  MeshConfig mesh = canary_mesh(90, 10);
  RngStream stream(2025, "canary");
  Request r;
  int v2 = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    if (route_version(mesh, r, "ml-model", stream) == "v2") ++v2;
  }
  double fraction = static_cast<double>(v2) / n;
  bool ok = std::abs(fraction - 0.10) <= 0.003;

  MeshConfig all_stable = canary_mesh(100, 0);
  RngStream stream2(2025, "canary");
  for (int i = 0; i < n && ok; ++i) {
    if (route_version(all_stable, r, "ml-model", stream2) != "v1") ok = false;
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "v2 fraction %.4f", fraction);
  report(2, "90/10 canary split within 0.003 and 100/0 is exact", ok, buf);
}

void criterion_hpa_property() {
  ScalingPolicy policy;
  policy.min_replicas = 1;
  policy.max_replicas = 10;
  RngStream rng(99, "hpa-series");
  bool ok = true;
  for (int series = 0; series < 1000 && ok; ++series) {
    ClusterState state;
    state.replicas = 1 + static_cast<int>(rng.next_below(10));
    Micros last_change = std::numeric_limits<Micros>::min() / 2;
    double cpu = 0.0;
    for (Micros t = 0; t <= 30 * 60 * kMicrosPerSecond;
         t += 15 * kMicrosPerSecond) {
      if (t % (60 * kMicrosPerSecond) == 0) {
        cpu = rng.next_double() * 1.2;
        if (cpu > 1.0) cpu = 1.0;
        state.last_sampled_cpu = cpu;
      }
      int before = state.replicas;
      hpa_step(state, policy, t);
      int delta = state.replicas - before;
      if (delta != 0) {
        if (std::abs(delta) > 1) ok = false;
        if (delta == 1 && !(cpu > 0.70)) ok = false;
        if (delta == -1 && !(cpu < 0.50)) ok = false;
        if (t - last_change < 60 * kMicrosPerSecond) ok = false;
        last_change = t;
      }
      if (state.replicas < 1 || state.replicas > 10) ok = false;
    }
  }
  report(3, "hpa steps obey thresholds, step size, period, and bounds", ok);
}

Scenario headless_cluster_scenario() {
  Scenario sc;
  ServiceNode fd;
  fd.id = "fd";
  fd.kind = NodeKind::kFrontDoor;
  fd.service_time_us = 500;
  ServiceNode cluster;
  cluster.id = "cluster";
  cluster.kind = NodeKind::kContainerCluster;
  cluster.service_time_us = 1000;
  cluster.capacity_rps = 20.0;
  cluster.deployments = {{"m", "v1", 5}};
  sc.graph.nodes["fd"] = fd;
  sc.graph.nodes["cluster"] = cluster;
  sc.graph.links.push_back({"fd", "cluster", 1000, LinkMedium::kPrivate});
  sc.graph.ingress["untrusted"] = "fd";
  sc.workload.target_node = "cluster";
  sc.prices = paper_price_book();
  sc.backup.enabled = false;
  return sc;
}

void criterion_calendar() {
  Scenario sc = headless_cluster_scenario();
  sc.scaling.min_replicas = 2;
  sc.scaling.max_replicas = 12;
  sc.scaling.calendar_enabled = true;
  sc.scaling.weekday_target = 10;
  sc.scaling.weekend_target = 4;
  sc.scaling.epoch_weekday = 0;
  sc.balancer.probe_interval_us = 0;

  Simulation sim(sc, 1);
  RunResult result = sim.run(14.0 * 24.0 * 3600.0);

  std::map<Micros, int> calendar_rows;
  for (const auto& row : result.trace.replica_timeline) {
    if (row.calendar_override) calendar_rows[row.time_us] = row.replicas;
  }
  bool ok = calendar_rows.size() == 14;
  for (int day = 1; day <= 14 && ok; ++day) {
    int expected = (0 + day) % 7 < 5 ? 10 : 4;
    auto it = calendar_rows.find(day * kMicrosPerDay);
    if (it == calendar_rows.end() || it->second != expected) ok = false;
  }

  CompliancePolicies policies = sim.compliance_policies();
  policies.enabled = {"TR35"};
  ComplianceReport rep =
      run_checks(sc.graph, result.trace, result.ledger, policies);
  ok = ok && rep.failed() == 0;
  report(4, "14-day calendar run hits 10 weekday / 4 weekend targets", ok);
}

void criterion_persistence() {
  BackendPool pool({"b0", "b1", "b2", "b3", "b4", "b5", "b6", "b7"},
                   BalancingPolicy::kTupleHash3);
  RngStream rng(31, "tuples");
  std::vector<Request> tuples;
  for (int i = 0; i < 10000; ++i) {
    Request r;
    r.src_ip = static_cast<std::uint32_t>(rng.next_u64());
    r.dst_node = "ml-cluster";
    r.protocol = rng.next_below(2) == 0 ? Protocol::kTcp : Protocol::kUdp;
    tuples.push_back(r);
  }

  bool ok = true;
  std::vector<std::string> before;
  before.reserve(tuples.size());
  for (const auto& r : tuples) before.push_back(pool.pick_backend(r));
  for (int rep = 0; rep < 50 && ok; ++rep) {
    for (std::size_t i = 0; i < tuples.size(); ++i) {
      if (pool.pick_backend(tuples[i]) != before[i]) ok = false;
    }
  }

  pool.remove_member("b7");
  std::vector<std::string> after;
  after.reserve(tuples.size());
  int remapped = 0;
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    after.push_back(pool.pick_backend(tuples[i]));
    if (after[i] != before[i]) ++remapped;
  }
  for (int rep = 0; rep < 50 && ok; ++rep) {
    for (std::size_t i = 0; i < tuples.size(); ++i) {
      if (pool.pick_backend(tuples[i]) != after[i]) ok = false;
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "remap fraction %.4f",
                static_cast<double>(remapped) / tuples.size());
  report(5, "tuple-hash persistence holds before and after a pool change", ok,
         buf);
}

void criterion_availability() {
  SimTrace trace;
  trace.horizon_us = 30 * kMicrosPerDay;
  trace.outages.push_back({"node", kMicrosPerDay,
                           kMicrosPerDay + 180 * kMicrosPerSecond});
  Availability a = availability(trace, "node");
  bool ok = std::abs(a.fraction - 0.9999306) <= 1e-7;

  CompliancePolicies policies;
  policies.enabled = {"TR15"};
  ok = ok && run_checks({}, trace, {}, policies).failed() == 0;

  SimTrace worse = trace;
  worse.outages[0].end_us = kMicrosPerDay +
                            static_cast<Micros>(3.02 * 60 * kMicrosPerSecond);
  ok = ok && run_checks({}, worse, {}, policies).failed() == 1;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "availability %.7f", a.fraction);
  report(6, "3-minute outage in 30 days gives 0.9999306 and a sharp TR15",
         ok, buf);
}

void criterion_backup_cadence() {
  BackupPolicy policy;
  policy.enabled = true;
  policy.period_us = 12 * kMicrosPerHour;
  SimTrace trace;
  trace.horizon_us = 48 * kMicrosPerHour;
  trace.backups = schedule_backups(policy, trace.horizon_us);

  bool ok = trace.backups.size() == 4;
  for (int k = 0; k < 4 && ok; ++k) {
    if (trace.backups[k].time_us != (k + 1) * 12 * kMicrosPerHour) ok = false;
  }
  ok = ok && detail::check_tr27(trace, policy).verdict == Verdict::kPass;

  SimTrace stretched = trace;
  stretched.backups[1].time_us =
      stretched.backups[0].time_us +
      static_cast<Micros>(12.5 * kMicrosPerHour);
  ok = ok && detail::check_tr27(stretched, policy).verdict == Verdict::kFail;
  report(7, "backups land at 12/24/36/48 h and a 12.5 h gap flips TR27", ok);
}

void criterion_latency_monotone() {
  const double loads[] = {0.2, 0.5, 0.8, 0.95};
  std::vector<double> means;
  for (double load : loads) {
    Scenario sc = headless_cluster_scenario();
    sc.scaling.min_replicas = 5;
    sc.scaling.max_replicas = 5;
    sc.overheads.two_factor_us = 0;
    double users = load * 20.0 * 5;  // capacity_rps x replicas
    sc.workload.profile.stages = {{0.0, 60.0, users, users}};
    Simulation sim(sc, 12);
    RunResult result = sim.run(60.0);
    double sum = 0.0;
    int n = 0;
    for (const auto& r : result.trace.requests) {
      if (r.outcome != Outcome::kCompleted) continue;
      sum += static_cast<double>(r.latency_us);
      ++n;
    }
    means.push_back(n > 0 ? sum / n : 0.0);
  }
  // Spearman rank correlation of a strictly increasing series is +1.
  bool ok = means.size() == 4;
  for (std::size_t i = 1; i < means.size() && ok; ++i) {
    if (!(means[i] > means[i - 1])) ok = false;
  }
  char buf[128];
  std::snprintf(buf, sizeof(buf), "means us: %.0f %.0f %.0f %.0f", means[0],
                means[1], means[2], means[3]);
  report(8, "mean latency is strictly increasing in offered load", ok, buf);
}

void criterion_economics() {
  auto ranks = gpu_rank(paper_price_book());
  bool ok = ranks.size() == 4 && ranks[0].provider == "coreweave" &&
            ranks[0].rank == 1 && ranks[1].rank == 2 && ranks[2].rank == 2 &&
            ranks[3].provider == "aws" && ranks[3].rank == 4;
  std::set<std::string> middle = {ranks[1].provider, ranks[2].provider};
  ok = ok && middle == std::set<std::string>{"azure", "gcp"};

  CostLedger ledger;
  ledger.entries.push_back({"vm", "azure", PriceCategory::kGeneralCompute,
                            1000.0, 0.1, 100.0});
  double total = apply_savings_plan(ledger, 1.0, 0.65).total();
  ok = ok && std::abs(total - 35.0) <= 0.01;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "discounted total $%.2f", total);
  report(9, "gpu ranking and 65% savings-plan arithmetic are exact", ok, buf);
}

void criterion_mcda() {
  DecisionMatrix m = paper_decision_matrix();
  for (auto& [name, w] : m.weights) w = 0.5 / 6.0;
  m.weights["cost"] = 0.25;
  m.weights["identity-management"] = 0.25;
  bool ok = mcda_rank(m).winner == "azure";

  DecisionMatrix az = paper_decision_matrix();
  for (auto& [name, w] : az.weights) w = 0.0;
  az.weights["availability-zones"] = 1.0;
  ok = ok && mcda_rank(az).winner == "aws";
  report(10, "mcda winners: azure on cost+identity, aws on zones", ok);
}

void criterion_determinism(const std::string& scenario_path) {
  Scenario sc = load_scenario(scenario_path);

  auto run_once = [&](std::vector<std::string>& out) {
    Simulation sim(sc, 7);
    RunResult result = sim.run(160.0);
    out.push_back(render_trace_csv(result.trace, TraceExportKind::kRequests));
    out.push_back(render_trace_csv(result.trace, TraceExportKind::kReplicas));
    ComplianceReport rep = run_checks(sc.graph, result.trace, result.ledger,
                                      sim.compliance_policies());
    out.push_back(render_report(rep, ReportFormat::kCsv));
    out.push_back(render_report(rep, ReportFormat::kText));
  };
  std::vector<std::string> first;
  std::vector<std::string> second;
  run_once(first);
  run_once(second);
  bool ok = first == second && first[0].size() > 100;
  report(11, "two seed-7 runs of the shipped scenario are byte-identical", ok);
}

void criterion_mesh_validation() {
  std::vector<Deployment> deployments = {{"ml-model-v1", "v1", 5, 20.0, 1000},
                                         {"ml-model-v2", "v2", 1, 20.0, 1000}};
  MeshConfig clean = canary_mesh(90, 10);
  bool ok = validate_mesh(clean, deployments).empty();

  auto detects = [&](MeshConfig broken, const std::string& rule) {
    auto v = validate_mesh(broken, deployments);
    return std::any_of(v.begin(), v.end(),
                       [&](const Violation& x) { return x.rule == rule; });
  };
  MeshConfig weights = canary_mesh(80, 10);
  ok = ok && detects(weights, "WeightSum");
  MeshConfig subset = canary_mesh(90, 10);
  subset.virtual_services[0].routes[1].subset = "shadow";
  ok = ok && detects(subset, "UnknownSubset");
  MeshConfig host = canary_mesh(90, 10);
  host.destination_rules[0].host = "other";
  ok = ok && detects(host, "UnmatchedHost");
  MeshConfig version = canary_mesh(90, 10);
  version.destination_rules[0].subsets[0].version_label = "v9";
  ok = ok && detects(version, "UnmatchedVersion");
  MeshConfig dangling = canary_mesh(90, 10);
  dangling.virtual_services[0].host = "other";
  ok = ok && detects(dangling, "DanglingService");
  report(12, "clean canary mesh validates; all five violations detected", ok);
}

}  // namespace

int main(int argc, char** argv) {
  std::string scenario_path =
      argc > 1 ? argv[1] : "scenarios/paper.json";
  try {
    criterion_workload_endpoints();
    criterion_canary_ratio();
    criterion_hpa_property();
    criterion_calendar();
    criterion_persistence();
    criterion_availability();
    criterion_backup_cadence();
    criterion_latency_monotone();
    criterion_economics();
    criterion_mcda();
    criterion_determinism(scenario_path);
    criterion_mesh_validation();
  } catch (const std::exception& e) {
    std::cerr << "acceptance suite aborted: " << e.what() << '\n';
    return 1;
  }
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all 12 criteria passed\n");
  return 0;
}
