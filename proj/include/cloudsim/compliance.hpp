#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cloudsim/cluster.hpp"
#include "cloudsim/economics.hpp"
#include "cloudsim/resilience.hpp"
#include "cloudsim/telemetry.hpp"
#include "cloudsim/topology.hpp"
#include "cloudsim/trace.hpp"

namespace cloudsim {

enum class Verdict { kPass, kFail, kNotApplicable };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass: return "pass";
    case Verdict::kFail: return "fail";
    case Verdict::kNotApplicable: return "not-applicable";
  }
  return "unknown";
}

struct Check {
  std::string id;  // TR label
  std::string description;
  Verdict verdict = Verdict::kNotApplicable;
  double measured = 0.0;
  double threshold = 0.0;
  std::string evidence;
};

struct ComplianceReport {
  std::vector<Check> checks;
  std::uint64_t seed = 0;
  std::string scenario_fingerprint;

  int passed() const { return count(Verdict::kPass); }
  int failed() const { return count(Verdict::kFail); }
  int not_applicable() const { return count(Verdict::kNotApplicable); }

 private:
  int count(Verdict v) const {
    int n = 0;
    for (const auto& c : checks) {
      if (c.verdict == v) ++n;
    }
    return n;
  }
};

// Policy context the verifier needs beyond the trace itself.
struct CompliancePolicies {
  ScalingPolicy scaling;
  BackupPolicy backup;
  double mttr_target_hours = 9.0;
  double budget_usd = 0.0;
  std::set<std::string> enabled;
};

namespace detail {

inline Check check_tr15(const SimTrace& trace) {
  // System downtime is the union of all node outage intervals.
  std::vector<std::pair<Micros, Micros>> ivs;
  for (const auto& o : trace.outages) {
    Micros s = std::clamp<Micros>(o.start_us, 0, trace.horizon_us);
    Micros e = std::clamp<Micros>(o.end_us, 0, trace.horizon_us);
    if (e > s) ivs.emplace_back(s, e);
  }
  std::sort(ivs.begin(), ivs.end());
  Micros down = 0;
  Micros cover_end = 0;
  for (const auto& [s, e] : ivs) {
    Micros from = std::max(s, cover_end);
    if (e > from) down += e - from;
    cover_end = std::max(cover_end, e);
  }
  double down_min = static_cast<double>(down) / (60.0 * kMicrosPerSecond);
  double months = static_cast<double>(trace.horizon_us) /
                  static_cast<double>(30 * kMicrosPerDay);
  double monthly = months > 0.0 ? down_min / months : 0.0;
  Check c{"TR15", "monthly-normalized downtime at most 3 minutes"};
  c.measured = monthly;
  c.threshold = 3.0;
  c.verdict = monthly <= 3.0 ? Verdict::kPass : Verdict::kFail;
  c.evidence = "downtime-minutes-per-month";
  return c;
}

inline Check check_tr19(const SimTrace& trace) {
  // Interpreted as a service-level fraction: at least 99.999% of
  // completed requests finish under 3 s end to end.
  std::int64_t completed = 0;
  std::int64_t under = 0;
  for (const auto& r : trace.requests) {
    if (r.outcome != Outcome::kCompleted) continue;
    ++completed;
    if (r.latency_us < 3 * kMicrosPerSecond) ++under;
  }
  Check c{"TR19", "at least 99.999% of completed requests under 3 s"};
  c.threshold = 0.99999;
  c.measured = completed == 0 ? 1.0
                              : static_cast<double>(under) /
                                    static_cast<double>(completed);
  c.verdict = c.measured >= c.threshold ? Verdict::kPass : Verdict::kFail;
  c.evidence = "fraction-under-3s";
  return c;
}

inline Check check_latency_max(const TopologyGraph& graph,
                               const SimTrace& trace, const std::string& id,
                               const std::string& desc,
                               const std::set<NodeKind>& kinds,
                               Micros bound_us) {
  Check c{id, desc};
  c.threshold = static_cast<double>(bound_us) / 1000.0;  // milliseconds
  Micros worst = -1;
  for (const auto& [node, us] : trace.node_service_max_us) {
    if (!graph.has_node(node)) continue;
    if (kinds.count(graph.node(node).kind)) worst = std::max(worst, us);
  }
  if (worst < 0) {
    c.verdict = Verdict::kNotApplicable;
    c.evidence = "no matching hops observed";
    return c;
  }
  c.measured = static_cast<double>(worst) / 1000.0;
  c.verdict = worst < bound_us ? Verdict::kPass : Verdict::kFail;
  c.evidence = "p100-service-latency-ms";
  return c;
}

inline Check check_tr23(const SimTrace& trace, double target_hours) {
  Check c{"TR23", "empirical mean repair time within 10% of target"};
  c.threshold = target_hours;
  if (trace.outages.size() < 30) {
    c.verdict = Verdict::kNotApplicable;
    c.evidence = "fewer than 30 outages observed";
    return c;
  }
  double sum_h = 0.0;
  for (const auto& o : trace.outages) {
    sum_h += static_cast<double>(o.end_us - o.start_us) /
             static_cast<double>(kMicrosPerHour);
  }
  double mean = sum_h / static_cast<double>(trace.outages.size());
  c.measured = mean;
  c.verdict = std::abs(mean - target_hours) <= 0.10 * target_hours
                  ? Verdict::kPass
                  : Verdict::kFail;
  c.evidence = "mean-repair-hours";
  return c;
}

inline Check check_tr25(const SimTrace& trace) {
  Check c{"TR25", "backups keep 3 copies in 2 locations, one offsite"};
  if (trace.backups.empty()) {
    c.verdict = Verdict::kNotApplicable;
    c.evidence = "no backup events in trace";
    return c;
  }
  bool ok = true;
  for (const auto& b : trace.backups) {
    if (b.copies != 3 || b.locations != 2 || b.offsite < 1) ok = false;
  }
  c.measured = ok ? 1.0 : 0.0;
  c.threshold = 1.0;
  c.verdict = ok ? Verdict::kPass : Verdict::kFail;
  c.evidence = "copies=3,locations=2,offsite>=1";
  return c;
}

inline Check check_tr27(const SimTrace& trace, const BackupPolicy& policy) {
  Check c{"TR27", "maximum inter-backup gap at most 12 hours"};
  double period_h = static_cast<double>(policy.period_us) /
                    static_cast<double>(kMicrosPerHour);
  c.threshold = period_h;
  if (!policy.enabled) {
    c.verdict = Verdict::kNotApplicable;
    c.evidence = "backup policy disabled";
    return c;
  }
  Micros max_gap = 0;
  Micros prev = 0;
  for (const auto& b : trace.backups) {
    max_gap = std::max(max_gap, b.time_us - prev);
    prev = b.time_us;
  }
  max_gap = std::max(max_gap, trace.horizon_us - prev);
  c.measured = static_cast<double>(max_gap) /
               static_cast<double>(kMicrosPerHour);
  c.verdict = max_gap <= policy.period_us ? Verdict::kPass : Verdict::kFail;
  c.evidence = "max-gap-hours";
  return c;
}

inline Check check_tr34(const SimTrace& trace, const ScalingPolicy& policy) {
  Check c{"TR34", "replica steps are +/-1 and threshold-consistent"};
  c.threshold = 1.0;
  int prev_replicas = -1;
  Micros prev_change = std::numeric_limits<Micros>::min() / 2;
  bool ok = true;
  std::string bad;
  for (const auto& s : trace.replica_timeline) {
    if (prev_replicas < 0) {
      prev_replicas = s.replicas;
      continue;
    }
    int delta = s.replicas - prev_replicas;
    if (delta != 0 && !s.calendar_override) {
      if (std::abs(delta) > 1) {
        ok = false;
        bad = "step larger than 1 at t=" + std::to_string(s.time_us);
      } else if (delta == 1 && !(s.cpu > policy.scale_out_threshold)) {
        ok = false;
        bad = "scale-out without cpu above threshold at t=" +
              std::to_string(s.time_us);
      } else if (delta == -1 && !(s.cpu < policy.scale_in_threshold)) {
        ok = false;
        bad = "scale-in without cpu below threshold at t=" +
              std::to_string(s.time_us);
      } else if (s.time_us - prev_change < policy.hpa_update_period_us) {
        ok = false;
        bad = "two steps inside one update period at t=" +
              std::to_string(s.time_us);
      }
      prev_change = s.time_us;
    }
    if (s.replicas < policy.min_replicas || s.replicas > policy.max_replicas) {
      ok = false;
      bad = "replica count outside [min,max] at t=" + std::to_string(s.time_us);
    }
    prev_replicas = s.replicas;
  }
  c.measured = ok ? 1.0 : 0.0;
  c.verdict = ok ? Verdict::kPass : Verdict::kFail;
  c.evidence = ok ? "all replica steps consistent" : bad;
  return c;
}

inline Check check_tr35(const SimTrace& trace, const ScalingPolicy& policy) {
  Check c{"TR35", "replicas match the calendar target at day boundaries"};
  c.threshold = 1.0;
  if (!policy.calendar_enabled) {
    c.verdict = Verdict::kNotApplicable;
    c.evidence = "calendar scaling disabled";
    return c;
  }
  bool ok = true;
  std::string bad;
  for (Micros t = kMicrosPerDay; t <= trace.horizon_us; t += kMicrosPerDay) {
    auto target = scheduled_scale(policy, t);
    if (!target) continue;
    // Replica count in effect at the boundary instant.
    int at_boundary = -1;
    for (const auto& s : trace.replica_timeline) {
      if (s.time_us <= t) at_boundary = s.replicas;
    }
    if (at_boundary != *target) {
      ok = false;
      bad = "expected " + std::to_string(*target) + " replicas at t=" +
            std::to_string(t) + ", saw " + std::to_string(at_boundary);
      break;
    }
  }
  c.measured = ok ? 1.0 : 0.0;
  c.verdict = ok ? Verdict::kPass : Verdict::kFail;
  c.evidence = ok ? "all boundaries on target" : bad;
  return c;
}

inline Check check_structural(const TopologyGraph& graph,
                              const std::string& id,
                              const std::string& desc) {
  Check c{id, desc};
  c.threshold = 0.0;
  auto violations = validate_structure(graph);
  std::string evidence;
  int hits = 0;
  for (const auto& v : violations) {
    if (v.rule == id) {
      ++hits;
      evidence = v.detail;
    }
  }
  c.measured = static_cast<double>(hits);
  c.verdict = hits == 0 ? Verdict::kPass : Verdict::kFail;
  c.evidence = hits == 0 ? "no structural violations" : evidence;
  return c;
}

inline Check check_tr53(const CostLedger& ledger, double budget_usd) {
  Check c{"TR53", "cloud cost budget alert configured and evaluated"};
  c.threshold = budget_usd;
  if (budget_usd <= 0.0) {
    c.measured = 0.0;
    c.verdict = Verdict::kFail;
    c.evidence = "no budget threshold configured";
    return c;
  }
  auto alert = budget_check(ledger, budget_usd);
  c.measured = ledger.total();
  c.verdict = Verdict::kPass;
  c.evidence = alert ? "budget alert fired on entry '" + alert->resource_id + "'"
                     : "spend within budget";
  return c;
}

}  // namespace detail

inline ComplianceReport run_checks(const TopologyGraph& graph,
                                   const SimTrace& trace,
                                   const CostLedger& ledger,
                                   const CompliancePolicies& policies) {
  ComplianceReport report;
  report.seed = trace.seed;

  const auto& on = policies.enabled;
  auto want = [&](const std::string& id) { return on.empty() || on.count(id); };

  if (want("TR15")) report.checks.push_back(detail::check_tr15(trace));
  if (want("TR19")) report.checks.push_back(detail::check_tr19(trace));
  if (want("TR20")) {
    report.checks.push_back(detail::check_latency_max(
        graph, trace, "TR20", "core application service latency under 10 ms",
        {NodeKind::kContainerCluster}, 10'000));
  }
  if (want("TR21")) {
    report.checks.push_back(detail::check_latency_max(
        graph, trace, "TR21", "storage query latency under 100 ms",
        {NodeKind::kDataLake, NodeKind::kWarehouse}, 100'000));
  }
  if (want("TR23")) {
    report.checks.push_back(
        detail::check_tr23(trace, policies.mttr_target_hours));
  }
  if (want("TR25")) report.checks.push_back(detail::check_tr25(trace));
  if (want("TR27")) {
    report.checks.push_back(detail::check_tr27(trace, policies.backup));
  }
  if (want("TR34")) {
    report.checks.push_back(detail::check_tr34(trace, policies.scaling));
  }
  if (want("TR35")) {
    report.checks.push_back(detail::check_tr35(trace, policies.scaling));
  }
  if (want("TR45")) {
    report.checks.push_back(detail::check_structural(
        graph, "TR45", "trusted and untrusted networking environments exist"));
  }
  if (want("TR48")) {
    report.checks.push_back(detail::check_structural(
        graph, "TR48", "untrusted ingress paths pass a firewall"));
  }
  if (want("TR61")) {
    report.checks.push_back(detail::check_structural(
        graph, "TR61", "every service node is inside a vnet"));
  }
  if (want("TR53")) {
    report.checks.push_back(detail::check_tr53(ledger, policies.budget_usd));
  }

  std::sort(report.checks.begin(), report.checks.end(),
            [](const Check& a, const Check& b) {
              return std::stoi(a.id.substr(2)) < std::stoi(b.id.substr(2));
            });
  return report;
}

namespace detail {

inline std::string sig6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace detail

enum class ReportFormat { kText, kCsv };

inline std::string render_report(const ComplianceReport& report,
                                 ReportFormat format) {
  std::ostringstream out;
  if (format == ReportFormat::kCsv) {
    out << "tr,verdict,measured,threshold\n";
    for (const auto& c : report.checks) {
      out << c.id << ',' << to_string(c.verdict) << ','
          << detail::sig6(c.measured) << ',' << detail::sig6(c.threshold)
          << '\n';
    }
    return out.str();
  }
  out << "compliance report (seed " << report.seed << ")\n";
  out << "TR19 is graded as a service-level fraction: >= 99.999% of "
         "completed requests under 3 s\n";
  for (const auto& c : report.checks) {
    out << c.id << "  " << to_string(c.verdict) << "  measured="
        << detail::sig6(c.measured) << " threshold=" << detail::sig6(c.threshold)
        << "  " << c.description << " [" << c.evidence << "]\n";
  }
  out << "summary: " << report.passed() << " pass, " << report.failed()
      << " fail, " << report.not_applicable() << " not-applicable\n";
  return out.str();
}

inline void write_report(const ComplianceReport& report, ReportFormat format,
                         const std::filesystem::path& path) {
  detail::write_file(path, render_report(report, format));
}

}  // namespace cloudsim
