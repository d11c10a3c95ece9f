#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cloudsim/errors.hpp"
#include "cloudsim/gateway.hpp"
#include "cloudsim/kernel.hpp"
#include "cloudsim/rng.hpp"
#include "cloudsim/topology.hpp"

namespace cloudsim {

struct Deployment {
  std::string name;
  std::string version_label;
  int replicas = 1;
  double capacity_rps = 0.0;   // per replica
  Micros service_time_us = kDefaultNodeServiceUs;
};

struct MeshRoute {
  std::string subset;
  int weight = 0;  // percent
};

struct VirtualService {
  std::string host;
  std::vector<MeshRoute> routes;
};

struct Subset {
  std::string name;
  std::string version_label;
};

struct DestinationRule {
  std::string host;
  std::vector<Subset> subsets;
};

struct MeshConfig {
  std::vector<VirtualService> virtual_services;
  std::vector<DestinationRule> destination_rules;
};

inline MeshConfig parse_mesh(const json& j) {
  MeshConfig mesh;
  detail::require_keys(j, {"virtual_services", "destination_rules"}, "mesh");
  for (const auto& jv : j.value("virtual_services", json::array())) {
    detail::require_keys(jv, {"host", "routes"}, "virtual_service");
    VirtualService vs;
    vs.host = jv.at("host").get<std::string>();
    for (const auto& jr : jv.at("routes")) {
      detail::require_keys(jr, {"subset", "weight"}, "route");
      vs.routes.push_back(
          {jr.at("subset").get<std::string>(), jr.at("weight").get<int>()});
    }
    mesh.virtual_services.push_back(vs);
  }
  for (const auto& jd : j.value("destination_rules", json::array())) {
    detail::require_keys(jd, {"host", "subsets"}, "destination_rule");
    DestinationRule dr;
    dr.host = jd.at("host").get<std::string>();
    for (const auto& js : jd.at("subsets")) {
      detail::require_keys(js, {"name", "version"}, "subset");
      dr.subsets.push_back(
          {js.at("name").get<std::string>(), js.at("version").get<std::string>()});
    }
    mesh.destination_rules.push_back(dr);
  }
  return mesh;
}

// The five routing-config correspondences: route weights sum to 100,
// every routed subset is declared, every virtual-service host has a
// destination rule, every subset version label matches a deployment, and
// every destination-rule host matches a virtual service.
inline std::vector<Violation> validate_mesh(
    const MeshConfig& mesh, const std::vector<Deployment>& deployments) {
  std::vector<Violation> out;

  for (const auto& vs : mesh.virtual_services) {
    int sum = 0;
    for (const auto& r : vs.routes) sum += r.weight;
    if (sum != 100) {
      out.push_back({"WeightSum", "host '" + vs.host + "' route weights sum to " +
                                      std::to_string(sum)});
    }
    const DestinationRule* dr = nullptr;
    for (const auto& d : mesh.destination_rules) {
      if (d.host == vs.host) dr = &d;
    }
    if (dr == nullptr) {
      out.push_back({"UnmatchedHost",
                     "virtual service host '" + vs.host +
                         "' has no destination rule"});
      continue;
    }
    for (const auto& r : vs.routes) {
      bool declared = std::any_of(
          dr->subsets.begin(), dr->subsets.end(),
          [&](const Subset& s) { return s.name == r.subset; });
      if (!declared) {
        out.push_back({"UnknownSubset", "route to undeclared subset '" +
                                            r.subset + "' for host '" +
                                            vs.host + "'"});
      }
    }
  }

  for (const auto& dr : mesh.destination_rules) {
    bool matched = std::any_of(
        mesh.virtual_services.begin(), mesh.virtual_services.end(),
        [&](const VirtualService& vs) { return vs.host == dr.host; });
    if (!matched) {
      out.push_back({"DanglingService",
                     "destination rule host '" + dr.host +
                         "' matches no virtual service"});
    }
    for (const auto& s : dr.subsets) {
      bool has_deploy = std::any_of(
          deployments.begin(), deployments.end(), [&](const Deployment& d) {
            return d.version_label == s.version_label;
          });
      if (!has_deploy) {
        out.push_back({"UnmatchedVersion",
                       "subset '" + s.name + "' version label '" +
                           s.version_label + "' matches no deployment"});
      }
    }
  }
  return out;
}

// Weighted canary draw on the request's dedicated stream.
inline std::string route_version(const MeshConfig& mesh, const Request& req,
                                 const std::string& host, RngStream& stream) {
  const VirtualService* vs = nullptr;
  for (const auto& v : mesh.virtual_services) {
    if (v.host == host) vs = &v;
  }
  if (vs == nullptr || vs->routes.empty()) throw NoRouteForHostError(host);

  const DestinationRule* dr = nullptr;
  for (const auto& d : mesh.destination_rules) {
    if (d.host == host) dr = &d;
  }

  int total = 0;
  for (const auto& r : vs->routes) total += r.weight;
  int draw = static_cast<int>(stream.next_below(static_cast<std::uint64_t>(total)));
  const MeshRoute* chosen = &vs->routes.back();
  for (const auto& r : vs->routes) {
    if (draw < r.weight) {
      chosen = &r;
      break;
    }
    draw -= r.weight;
  }
  if (dr != nullptr) {
    for (const auto& s : dr->subsets) {
      if (s.name == chosen->subset) return s.version_label;
    }
  }
  return chosen->subset;
}

// TR34/TR35 knobs plus the sampling cadences of the control loop.
struct ScalingPolicy {
  double scale_out_threshold = 0.70;
  double scale_in_threshold = 0.50;
  Micros metrics_sample_period_us = 60 * kMicrosPerSecond;
  Micros hpa_check_period_us = 15 * kMicrosPerSecond;
  Micros hpa_update_period_us = 60 * kMicrosPerSecond;
  int min_replicas = 1;
  int max_replicas = 10;
  bool calendar_enabled = false;
  int weekday_target = 10;
  int weekend_target = 4;
  int epoch_weekday = 0;  // 0 = Monday; weekday of simulated t = 0
};

struct ClusterState {
  int replicas = 1;
  int in_flight = 0;
  double last_sampled_cpu = 0.0;
  // Far in the past so the first check after t = 0 may act.
  Micros last_update_us = std::numeric_limits<Micros>::min() / 2;
};

// Pooled utilization: offered load over aggregate capacity, clamped.
inline double cpu_utilization(double offered_rps, double capacity_rps,
                              int replicas) {
  if (replicas < 1) throw ZeroReplicasError("cpu model requires replicas >= 1");
  double u = offered_rps / (capacity_rps * replicas);
  return std::clamp(u, 0.0, 1.0);
}

// Processor-sharing latency approximation; grows without bound as the
// pool saturates, capped by epsilon.
inline Micros service_latency_us(Micros service_time_us, double cpu) {
  constexpr double kEps = 0.01;
  double denom = std::max(kEps, 1.0 - cpu);
  return static_cast<Micros>(static_cast<double>(service_time_us) / denom);
}

// One control-loop check. Thresholds are strict comparisons so the
// [0.50, 0.70] deadband is closed; at most one step per update period.
inline int hpa_step(ClusterState& state, const ScalingPolicy& policy,
                    Micros t) {
  if (t - state.last_update_us < policy.hpa_update_period_us) {
    return state.replicas;
  }
  int next = state.replicas;
  if (state.last_sampled_cpu > policy.scale_out_threshold) {
    next = state.replicas + 1;
  } else if (state.last_sampled_cpu < policy.scale_in_threshold) {
    next = state.replicas - 1;
  }
  next = std::clamp(next, policy.min_replicas, policy.max_replicas);
  if (next != state.replicas) {
    state.replicas = next;
    state.last_update_us = t;
  }
  return state.replicas;
}

// TR35 calendar: at each simulated midnight the target is the weekday or
// weekend count; the override wins over HPA at that instant.
inline std::optional<int> scheduled_scale(const ScalingPolicy& policy,
                                          Micros t) {
  if (!policy.calendar_enabled) return std::nullopt;
  if (t % kMicrosPerDay != 0) return std::nullopt;
  std::int64_t day = t / kMicrosPerDay;
  int weekday = static_cast<int>((policy.epoch_weekday + day) % 7);
  return weekday < 5 ? policy.weekday_target : policy.weekend_target;
}

}  // namespace cloudsim
