#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cloudsim/balancing.hpp"
#include "cloudsim/cluster.hpp"
#include "cloudsim/compliance.hpp"
#include "cloudsim/economics.hpp"
#include "cloudsim/kernel.hpp"
#include "cloudsim/resilience.hpp"
#include "cloudsim/scenario.hpp"
#include "cloudsim/telemetry.hpp"
#include "cloudsim/trace.hpp"
#include "cloudsim/workload.hpp"

namespace cloudsim {

struct RunResult {
  SimTrace trace;
  CostLedger ledger;
  std::vector<MetricPoint> metrics;
};

// One-shot, single-threaded run orchestration: wires the staged workload
// through the topology's security path, canary routing, the autoscaled
// cluster, failure and backup schedules, and cost accrual.
class Simulation {
 public:
  Simulation(Scenario scenario, std::uint64_t seed)
      : sc_(std::move(scenario)), seed_(seed) {}

  RunResult run(double horizon_s) {
    if (sc_.graph.nodes.empty()) {
      throw NoScenarioError("no scenario loaded");
    }
    Micros horizon = seconds_to_us(horizon_s);
    RunResult result;
    SimTrace& trace = result.trace;
    trace.seed = seed_;
    trace.horizon_us = horizon;

    const bool has_target = !sc_.workload.target_node.empty();
    const ServiceNode* cluster =
        has_target ? &sc_.graph.node(sc_.workload.target_node) : nullptr;

    // Pre-run schedules are immutable inputs to the kernel.
    trace.outages = inject_failures(sc_.faults, seed_, horizon);
    std::vector<BackupEvent> backup_plan = schedule_backups(sc_.backup, horizon);

    ClusterState state;
    std::vector<Deployment> deployments;
    if (cluster != nullptr) {
      int total = 0;
      for (const auto& d : cluster->deployments) {
        deployments.push_back({d.name, d.version_label, d.replicas,
                               cluster->capacity_rps,
                               cluster->service_time_us});
        total += d.replicas;
      }
      state.replicas = std::max(total, sc_.scaling.min_replicas);
    }

    BackendPool pool(pool_members(state.replicas), sc_.balancer.policy);
    std::map<std::string, std::vector<OutageInterval>> member_outages;
    if (cluster != nullptr) {
      for (const auto& iv : trace.outages) {
        if (iv.node_id != cluster->id) continue;
        for (const auto& m : pool.members()) member_outages[m].push_back(iv);
      }
    }

    FirewallState fw;
    fw.blocklist_ips = sc_.firewall.blocklist_ips;
    fw.blocklist_fqdns = sc_.firewall.blocklist_fqdns;
    fw.network_rules = sc_.firewall.allow;
    fw.dns_proxy_enabled = sc_.firewall.dns_proxy;

    RateLimiter limiter(sc_.rate_limit.enabled ? sc_.rate_limit.cap : 0,
                        sc_.rate_limit.window_us);

    RngStream arrivals_stream(seed_, "arrivals");
    RngStream canary_stream(seed_, "canary");
    RngStream source_stream(seed_, "sources");

    EventQueue queue;

    // Replica-hour accounting segments, closed on every count change.
    Micros billing_since = 0;
    double replica_hours = 0.0;
    auto close_billing_segment = [&](Micros t, int replicas) {
      replica_hours += static_cast<double>(replicas) *
                       static_cast<double>(t - billing_since) /
                       static_cast<double>(kMicrosPerHour);
      billing_since = t;
    };

    auto record_replicas = [&](Micros t, double cpu, bool calendar) {
      trace.replica_timeline.push_back(
          {t, cluster != nullptr ? cluster->id : "cluster", state.replicas,
           cpu, calendar});
    };
    if (cluster != nullptr) record_replicas(0, 0.0, false);

    // Trailing-60s arrival window drives both the sampled CPU metric and
    // the per-request congestion latency.
    std::deque<Micros> window;
    auto offered_rps = [&](Micros t) {
      while (!window.empty() && window.front() <= t - 60 * kMicrosPerSecond) {
        window.pop_front();
      }
      return static_cast<double>(window.size()) / 60.0;
    };

    std::set<std::uint32_t> authenticated_sources;
    std::map<TrustZone, Path> path_cache;
    auto route_for = [&](TrustZone zone) -> const Path& {
      auto it = path_cache.find(zone);
      if (it == path_cache.end()) {
        it = path_cache
                 .emplace(zone, resolve_path(sc_.graph, zone,
                                             sc_.workload.target_node))
                 .first;
      }
      return it->second;
    };

    // Backups.
    for (const auto& b : backup_plan) {
      queue.schedule({b.time_us, EventKind::kBackupDue,
                      [&trace, b](Micros) { trace.backups.push_back(b); }});
    }

    // Health probes.
    if (cluster != nullptr && sc_.balancer.probe_interval_us > 0) {
      for (Micros t = sc_.balancer.probe_interval_us; t <= horizon;
           t += sc_.balancer.probe_interval_us) {
        queue.schedule({t, EventKind::kProbeDue, [&](Micros now) {
                          pool.probe(member_outages, now);
                        }});
      }
    }

    // Metric samples on the collection cadence.
    if (cluster != nullptr) {
      for (Micros t = sc_.scaling.metrics_sample_period_us; t <= horizon;
           t += sc_.scaling.metrics_sample_period_us) {
        queue.schedule({t, EventKind::kMetricSample, [&, this](Micros now) {
                          double cpu = cpu_utilization(
                              offered_rps(now), cluster->capacity_rps,
                              state.replicas);
                          state.last_sampled_cpu = cpu;
                          result.metrics.push_back(
                              {now, MetricLayer::kContainer, "cpu", cpu});
                          record_replicas(now, cpu, false);
                        }});
      }

      // HPA control loop.
      for (Micros t = sc_.scaling.hpa_check_period_us; t <= horizon;
           t += sc_.scaling.hpa_check_period_us) {
        queue.schedule({t, EventKind::kHpaCheck, [&](Micros now) {
                          int before = state.replicas;
                          hpa_step(state, sc_.scaling, now);
                          if (state.replicas != before) {
                            close_billing_segment(now, before);
                            sync_pool(pool, state.replicas, member_outages,
                                      trace);
                            record_replicas(now, state.last_sampled_cpu,
                                            false);
                          }
                        }});
      }

      // Calendar overrides win over HPA at the boundary instant.
      if (sc_.scaling.calendar_enabled) {
        for (Micros t = kMicrosPerDay; t <= horizon; t += kMicrosPerDay) {
          queue.schedule({t, EventKind::kHpaUpdate, [&](Micros now) {
                            auto target = scheduled_scale(sc_.scaling, now);
                            if (!target) return;
                            if (*target != state.replicas) {
                              close_billing_segment(now, state.replicas);
                              state.replicas = *target;
                              sync_pool(pool, state.replicas, member_outages,
                                        trace);
                            }
                            state.last_update_us = now;
                            record_replicas(now, state.last_sampled_cpu, true);
                          }});
        }
      }
    }

    // Request arrivals.
    std::vector<Micros> arrival_times =
        generate_arrivals(sc_.workload.profile, arrivals_stream, horizon_s);
    trace.requests.reserve(arrival_times.size());
    std::uint64_t next_id = 1;
    for (Micros at : arrival_times) {
      std::uint64_t id = next_id++;
      queue.schedule({at, EventKind::kRequestArrival,
                      [&, id](Micros now) {
                        handle_arrival(now, id, trace, queue, fw, limiter,
                                       pool, state, cluster, deployments,
                                       canary_stream, source_stream,
                                       authenticated_sources, window,
                                       route_for, horizon);
                      }});
    }

    queue.run_until(horizon);

    // Post-run: alerts over the sampled metrics, then the cost ledger.
    trace.alerts = evaluate_alerts(sc_.alert_rules, result.metrics);

    if (cluster != nullptr) {
      close_billing_segment(horizon, state.replicas);
      accrue(result.ledger, cluster->id, sc_.provider,
             PriceCategory::kGeneralCompute, replica_hours, sc_.prices);
    }
    if (sc_.storage_gb > 0.0) {
      double gb_months = sc_.storage_gb * static_cast<double>(horizon) /
                         static_cast<double>(30 * kMicrosPerDay);
      accrue(result.ledger, "storage", sc_.provider,
             PriceCategory::kStorageGbMonth, gb_months, sc_.prices);
    }
    if (sc_.savings_commitment_per_h > 0.0) {
      result.ledger = apply_savings_plan(result.ledger,
                                         sc_.savings_commitment_per_h,
                                         sc_.savings_discount);
    }

    std::sort(trace.requests.begin(), trace.requests.end(),
              [](const RequestRecord& a, const RequestRecord& b) {
                return a.id < b.id;
              });
    return result;
  }

  CompliancePolicies compliance_policies() const {
    CompliancePolicies p;
    p.scaling = sc_.scaling;
    p.backup = sc_.backup;
    p.mttr_target_hours = sc_.faults.mttr_hours;
    p.budget_usd = sc_.compliance.budget_usd;
    p.enabled = sc_.compliance.enabled;
    return p;
  }

  const Scenario& scenario() const { return sc_; }

 private:
  std::vector<std::string> pool_members(int replicas) const {
    std::vector<std::string> out;
    for (int i = 0; i < replicas; ++i) {
      out.push_back(sc_.workload.target_node + "#" + std::to_string(i));
    }
    return out;
  }

  void sync_pool(BackendPool& pool, int replicas,
                 std::map<std::string, std::vector<OutageInterval>>& outages,
                 const SimTrace& trace) {
    while (static_cast<int>(pool.members().size()) < replicas) {
      std::string id = sc_.workload.target_node + "#" +
                       std::to_string(pool.members().size());
      pool.add_member(id);
      for (const auto& iv : trace.outages) {
        if (iv.node_id == sc_.workload.target_node) outages[id].push_back(iv);
      }
    }
    while (static_cast<int>(pool.members().size()) > replicas) {
      pool.remove_member(pool.members().back());
    }
  }

  template <typename RouteFor>
  void handle_arrival(Micros now, std::uint64_t id, SimTrace& trace,
                      EventQueue& queue, FirewallState& fw,
                      RateLimiter& limiter, BackendPool& pool,
                      ClusterState& state, const ServiceNode* cluster,
                      const std::vector<Deployment>& deployments,
                      RngStream& canary_stream, RngStream& source_stream,
                      std::set<std::uint32_t>& authenticated,
                      std::deque<Micros>& window, RouteFor&& route_for,
                      Micros horizon) {
    Request req;
    req.id = id;
    req.arrival_us = now;
    req.src_ip = 0x0a000000u + static_cast<std::uint32_t>(source_stream.next_below(
                                   static_cast<std::uint64_t>(
                                       std::max(1, sc_.workload.source_pool))));
    req.dst_node = sc_.workload.target_node;
    req.protocol = Protocol::kTcp;
    bool trusted = source_stream.next_double() < sc_.workload.trusted_fraction;
    req.origin_ingress =
        trusted ? ingress_node("trusted") : ingress_node("untrusted");
    req.trust = classify_trust(req, sc_.graph);

    RequestRecord rec;
    rec.id = id;
    rec.arrival_us = now;

    const Path& path = route_for(req.trust);
    rec.path = join_path(path.nodes);

    Micros latency = path.latency_us;
    latency += sc_.overheads.tls_per_hop_us *
               static_cast<Micros>(path.nodes.size() > 0 ? path.nodes.size() - 1
                                                         : 0);
    if (req.trust == TrustZone::kUntrusted &&
        authenticated.insert(req.src_ip).second) {
      latency += sc_.overheads.two_factor_us;
    }

    for (const auto& node_id : path.nodes) {
      const ServiceNode& n = sc_.graph.node(node_id);
      if (n.kind != NodeKind::kContainerCluster) {
        auto& worst = trace.node_service_max_us[node_id];
        worst = std::max(worst, n.service_time_us);
      }
    }

    bool passes_firewall = std::any_of(
        path.nodes.begin(), path.nodes.end(), [&](const std::string& nid) {
          return sc_.graph.node(nid).kind == NodeKind::kFirewall;
        });
    if (passes_firewall) {
      Decision d = admit(req, fw);
      if (!d.allowed) {
        rec.outcome = d.reason == DenyReason::kThreatIntel
                          ? Outcome::kDeniedThreatIntel
                          : Outcome::kDeniedNoRule;
        trace.requests.push_back(rec);
        return;
      }
    }

    if (sc_.rate_limit.enabled && req.trust == TrustZone::kUntrusted) {
      Decision d = limiter.check(req);
      if (!d.allowed) {
        rec.outcome = Outcome::kDeniedRateLimited;
        trace.requests.push_back(rec);
        return;
      }
    }

    if (cluster != nullptr) {
      if (!sc_.workload.host.empty() && !sc_.mesh.virtual_services.empty()) {
        rec.version =
            route_version(sc_.mesh, req, sc_.workload.host, canary_stream);
      }
      try {
        (void)pool.pick_backend(req);
      } catch (const NoHealthyBackendError&) {
        rec.outcome = Outcome::kFailedOutage;
        trace.requests.push_back(rec);
        return;
      }
      if (in_outage(trace, cluster->id, now)) {
        rec.outcome = Outcome::kFailedOutage;
        trace.requests.push_back(rec);
        return;
      }

      window.push_back(now);
      while (!window.empty() && window.front() <= now - 60 * kMicrosPerSecond) {
        window.pop_front();
      }
      double offered = static_cast<double>(window.size()) / 60.0;
      double cpu =
          cpu_utilization(offered, cluster->capacity_rps, state.replicas);
      Micros scaled = service_latency_us(cluster->service_time_us, cpu);
      // The path sum already counted the cluster's idle service time once.
      latency += scaled - cluster->service_time_us;
      auto& worst = trace.node_service_max_us[cluster->id];
      worst = std::max(worst, scaled);
    }

    rec.outcome = Outcome::kCompleted;
    rec.latency_us = latency;
    rec.complete_us = now + latency;

    trace.requests.push_back(rec);
    if (rec.complete_us <= horizon) {
      queue.schedule({rec.complete_us, EventKind::kHopComplete,
                      [](Micros) { /* completion marker for the clock */ }});
    }
  }

  std::string ingress_node(const std::string& zone) const {
    auto it = sc_.graph.ingress.find(zone);
    if (it == sc_.graph.ingress.end()) {
      throw UnknownIngressError("no ingress bound for zone " + zone);
    }
    return it->second;
  }

  static bool in_outage(const SimTrace& trace, const std::string& node,
                        Micros t) {
    for (const auto& iv : trace.outages) {
      if (iv.node_id == node && t >= iv.start_us && t < iv.end_us) return true;
    }
    return false;
  }

  static std::string join_path(const std::vector<std::string>& nodes) {
    std::string out;
    for (const auto& n : nodes) {
      if (!out.empty()) out += '>';
      out += n;
    }
    return out;
  }

  Scenario sc_;
  std::uint64_t seed_;
};

}  // namespace cloudsim
