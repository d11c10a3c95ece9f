#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "cloudsim/balancing.hpp"
#include "cloudsim/cluster.hpp"
#include "cloudsim/economics.hpp"
#include "cloudsim/errors.hpp"
#include "cloudsim/gateway.hpp"
#include "cloudsim/resilience.hpp"
#include "cloudsim/telemetry.hpp"
#include "cloudsim/topology.hpp"
#include "cloudsim/workload.hpp"

namespace cloudsim {

struct LoadBalancerPolicy {
  BalancingPolicy policy = BalancingPolicy::kTupleHash3;
  Micros probe_interval_us = 10 * kMicrosPerSecond;
};

struct FirewallPolicy {
  std::set<std::uint32_t> blocklist_ips;
  std::set<std::string> blocklist_fqdns;
  std::vector<AllowRule> allow;
  bool dns_proxy = false;
};

struct RateLimitPolicy {
  bool enabled = false;
  int cap = 0;
  Micros window_us = 60 * kMicrosPerSecond;
};

struct WorkloadBinding {
  WorkloadProfile profile;
  std::string host;         // mesh host requests are addressed to
  std::string target_node;  // cluster node serving the host
  double trusted_fraction = 0.0;
  int source_pool = 256;  // distinct simulated client addresses
};

struct ComplianceConfig {
  std::set<std::string> enabled;
  double budget_usd = 0.0;
};

struct Scenario {
  TopologyGraph graph;
  WorkloadBinding workload;
  MeshConfig mesh;
  FirewallPolicy firewall;
  RateLimitPolicy rate_limit;
  SecurityOverheads overheads;
  LoadBalancerPolicy balancer;
  ScalingPolicy scaling;
  FaultModel faults;
  BackupPolicy backup;
  std::vector<AlertRule> alert_rules;
  PriceBook prices;
  std::string provider = "azure";
  double storage_gb = 0.0;
  double savings_commitment_per_h = 0.0;
  double savings_discount = 0.65;
  ComplianceConfig compliance;
  std::string fingerprint;  // canonical serialization hash of the document
};

namespace detail {

inline std::uint32_t parse_ipv4(const std::string& s) {
  std::uint32_t parts[4] = {0, 0, 0, 0};
  int n = std::sscanf(s.c_str(), "%u.%u.%u.%u", &parts[0], &parts[1],
                      &parts[2], &parts[3]);
  if (n != 4 || parts[0] > 255 || parts[1] > 255 || parts[2] > 255 ||
      parts[3] > 255) {
    throw SyntaxError("invalid IPv4 address: " + s);
  }
  return (parts[0] << 24) | (parts[1] << 16) | (parts[2] << 8) | parts[3];
}

inline ScalingPolicy parse_autoscaler(const json& j) {
  require_keys(j, {"scale_out_threshold", "scale_in_threshold",
                   "sample_period_s", "check_period_s", "update_period_s",
                   "min_replicas", "max_replicas", "calendar"},
               "policies.autoscaler");
  ScalingPolicy p;
  p.scale_out_threshold = j.value("scale_out_threshold", 0.70);
  p.scale_in_threshold = j.value("scale_in_threshold", 0.50);
  if (p.scale_in_threshold >= p.scale_out_threshold) {
    throw SyntaxError("scale_in_threshold must be below scale_out_threshold");
  }
  p.metrics_sample_period_us = seconds_to_us(j.value("sample_period_s", 60.0));
  p.hpa_check_period_us = seconds_to_us(j.value("check_period_s", 15.0));
  p.hpa_update_period_us = seconds_to_us(j.value("update_period_s", 60.0));
  p.min_replicas = j.value("min_replicas", 1);
  p.max_replicas = j.value("max_replicas", 10);
  if (p.min_replicas > p.max_replicas) {
    throw SyntaxError("min_replicas must not exceed max_replicas");
  }
  if (j.contains("calendar")) {
    const auto& jc = j.at("calendar");
    require_keys(jc, {"enabled", "weekday_target", "weekend_target",
                      "epoch_weekday"},
                 "policies.autoscaler.calendar");
    p.calendar_enabled = jc.value("enabled", false);
    p.weekday_target = jc.value("weekday_target", 10);
    p.weekend_target = jc.value("weekend_target", 4);
    p.epoch_weekday = jc.value("epoch_weekday", 0);
  }
  return p;
}

}  // namespace detail

inline Scenario parse_scenario(const json& doc) {
  detail::require_keys(doc,
                       {"vnets", "nodes", "links", "ingress", "workload",
                        "policies", "prices", "compliance", "mesh"},
                       "scenario");
  Scenario sc;
  sc.graph = parse_topology(json{{"vnets", doc.value("vnets", json::array())},
                                 {"nodes", doc.value("nodes", json::array())},
                                 {"links", doc.value("links", json::array())},
                                 {"ingress", doc.value("ingress", json::object())}});

  if (doc.contains("workload")) {
    const auto& jw = doc.at("workload");
    detail::require_keys(jw,
                         {"profile", "stages", "name", "rps_per_user",
                          "payload_class", "host", "target", "trusted_fraction",
                          "source_pool"},
                         "workload");
    sc.workload.profile = parse_profile(jw);
    sc.workload.host = jw.value("host", "");
    sc.workload.target_node = jw.value("target", "");
    sc.workload.trusted_fraction = jw.value("trusted_fraction", 0.0);
    sc.workload.source_pool = jw.value("source_pool", 256);
    if (!sc.workload.target_node.empty() &&
        !sc.graph.has_node(sc.workload.target_node)) {
      throw UnknownReferenceError(sc.workload.target_node);
    }
  }

  if (doc.contains("mesh")) sc.mesh = parse_mesh(doc.at("mesh"));

  const json policies = doc.value("policies", json::object());
  detail::require_keys(policies,
                       {"firewall", "rate_limit", "security_overheads",
                        "load_balancer", "autoscaler", "faults", "backup",
                        "alerts"},
                       "policies");

  if (policies.contains("firewall")) {
    const auto& jf = policies.at("firewall");
    detail::require_keys(
        jf, {"threat_blocklist_ips", "threat_blocklist_fqdns", "allow",
             "dns_proxy"},
        "policies.firewall");
    for (const auto& ip : jf.value("threat_blocklist_ips", json::array())) {
      sc.firewall.blocklist_ips.insert(
          detail::parse_ipv4(ip.get<std::string>()));
    }
    for (const auto& f : jf.value("threat_blocklist_fqdns", json::array())) {
      sc.firewall.blocklist_fqdns.insert(f.get<std::string>());
    }
    for (const auto& jr : jf.value("allow", json::array())) {
      detail::require_keys(jr, {"zone", "dst"}, "firewall allow rule");
      AllowRule rule;
      rule.zone = trust_from_string(jr.at("zone").get<std::string>());
      rule.dst_node = jr.at("dst").get<std::string>();
      if (!sc.graph.has_node(rule.dst_node)) {
        throw UnknownReferenceError(rule.dst_node);
      }
      sc.firewall.allow.push_back(rule);
    }
    sc.firewall.dns_proxy = jf.value("dns_proxy", false);
  }

  if (policies.contains("rate_limit")) {
    const auto& jr = policies.at("rate_limit");
    detail::require_keys(jr, {"cap", "window_s"}, "policies.rate_limit");
    sc.rate_limit.enabled = true;
    sc.rate_limit.cap = jr.at("cap").get<int>();
    sc.rate_limit.window_us = seconds_to_us(jr.value("window_s", 60.0));
    if (sc.rate_limit.cap <= 0) throw SyntaxError("rate limit cap must be > 0");
  }

  if (policies.contains("security_overheads")) {
    const auto& js = policies.at("security_overheads");
    detail::require_keys(js, {"two_factor_us", "tls_per_hop_us"},
                         "policies.security_overheads");
    sc.overheads.two_factor_us = js.value("two_factor_us", 50'000);
    sc.overheads.tls_per_hop_us = js.value("tls_per_hop_us", 300);
  }

  if (policies.contains("load_balancer")) {
    const auto& jl = policies.at("load_balancer");
    detail::require_keys(jl, {"policy", "probe_interval_s"},
                         "policies.load_balancer");
    sc.balancer.policy =
        balancing_policy_from_string(jl.value("policy", "tuple-hash-3"));
    sc.balancer.probe_interval_us =
        seconds_to_us(jl.value("probe_interval_s", 10.0));
  }

  if (policies.contains("autoscaler")) {
    sc.scaling = detail::parse_autoscaler(policies.at("autoscaler"));
  }

  if (policies.contains("faults")) {
    const auto& jf = policies.at("faults");
    detail::require_keys(jf, {"mtbf_hours", "mttr_hours"}, "policies.faults");
    sc.faults.mttr_hours = jf.value("mttr_hours", 9.0);
    const json mtbf = jf.value("mtbf_hours", json::object());
    for (auto it = mtbf.begin(); it != mtbf.end(); ++it) {
      if (!sc.graph.has_node(it.key())) throw UnknownReferenceError(it.key());
      sc.faults.mtbf_hours[it.key()] = it.value().get<double>();
    }
  }

  if (policies.contains("backup")) {
    const auto& jb = policies.at("backup");
    detail::require_keys(jb,
                         {"period_h", "copies", "locations", "offsite",
                          "encrypted_at_rest", "encrypted_in_flight"},
                         "policies.backup");
    sc.backup.enabled = true;
    sc.backup.period_us = static_cast<Micros>(jb.value("period_h", 12.0) *
                                              static_cast<double>(kMicrosPerHour));
    sc.backup.copies = jb.value("copies", 3);
    sc.backup.locations = jb.value("locations", 2);
    sc.backup.offsite = jb.value("offsite", 1);
    sc.backup.encrypted_at_rest = jb.value("encrypted_at_rest", true);
    sc.backup.encrypted_in_flight = jb.value("encrypted_in_flight", true);
    if (sc.backup.copies < sc.backup.locations) {
      throw SyntaxError("backup copies must be >= locations");
    }
  }

  for (const auto& ja : policies.value("alerts", json::array())) {
    detail::require_keys(
        ja, {"metric", "comparator", "threshold", "sustained", "action_group"},
        "alert rule");
    AlertRule rule;
    rule.metric = ja.at("metric").get<std::string>();
    rule.comparator = ja.value("comparator", ">");
    rule.threshold = ja.at("threshold").get<double>();
    rule.sustained_samples = ja.value("sustained", 1);
    rule.action_group = ja.value("action_group", "ops");
    if (rule.sustained_samples < 1) {
      throw SyntaxError("alert sustained samples must be >= 1");
    }
    sc.alert_rules.push_back(rule);
  }

  const json prices = doc.value("prices", json::object());
  detail::require_keys(prices,
                       {"book", "provider", "storage_gb",
                        "savings_plan_commitment_per_h", "savings_discount"},
                       "prices");
  std::string book = prices.value("book", "paper-2022");
  if (book != "paper-2022") throw SyntaxError("unknown price book: " + book);
  sc.prices = paper_price_book();
  sc.provider = prices.value("provider", "azure");
  if (!sc.prices.rates.count(sc.provider)) {
    throw SyntaxError("unknown provider: " + sc.provider);
  }
  sc.storage_gb = prices.value("storage_gb", 0.0);
  sc.savings_commitment_per_h = prices.value("savings_plan_commitment_per_h", 0.0);
  sc.savings_discount = prices.value("savings_discount", 0.65);

  const json compliance = doc.value("compliance", json::object());
  detail::require_keys(compliance, {"enabled", "budget_usd"}, "compliance");
  for (const auto& id : compliance.value("enabled", json::array())) {
    sc.compliance.enabled.insert(id.get<std::string>());
  }
  sc.compliance.budget_usd = compliance.value("budget_usd", 0.0);
  if (compliance.contains("budget_usd") && sc.compliance.budget_usd <= 0.0) {
    throw SyntaxError("compliance.budget_usd must be positive");
  }

  sc.fingerprint = std::to_string(fnv1a64(doc.dump()));
  return sc;
}

inline Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario file: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw SyntaxError(std::string("scenario parse error: ") + e.what());
  }
  return parse_scenario(doc);
}

}  // namespace cloudsim
