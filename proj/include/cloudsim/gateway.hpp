#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "cloudsim/errors.hpp"
#include "cloudsim/kernel.hpp"
#include "cloudsim/topology.hpp"

namespace cloudsim {

enum class Protocol { kTcp, kUdp };

struct Request {
  std::uint64_t id = 0;
  Micros arrival_us = 0;
  std::uint32_t src_ip = 0;
  std::string dst_node;
  Protocol protocol = Protocol::kTcp;
  TrustZone trust = TrustZone::kUntrusted;
  std::string fqdn;
  std::string origin_ingress;  // node id the request entered through
};

enum class DenyReason { kThreatIntel, kNoRule, kRateLimited };

struct Decision {
  bool allowed = true;
  DenyReason reason = DenyReason::kNoRule;

  static Decision allow() { return {true, DenyReason::kNoRule}; }
  static Decision deny(DenyReason r) { return {false, r}; }
};

struct AllowRule {
  TrustZone zone = TrustZone::kUntrusted;
  std::string dst_node;
};

using FlowTuple = std::tuple<std::uint32_t, std::string, int>;

// Stateful L3/L4 filter: threat-intelligence blocklists, explicit allow
// rules with default-deny for untrusted traffic, and an established-flow
// table whose entries bypass rule evaluation.
struct FirewallState {
  std::set<std::uint32_t> blocklist_ips;
  std::set<std::string> blocklist_fqdns;
  std::vector<AllowRule> network_rules;
  bool dns_proxy_enabled = false;
  std::set<FlowTuple> stateful_table;
};

inline FlowTuple flow_of(const Request& req) {
  return {req.src_ip, req.dst_node, static_cast<int>(req.protocol)};
}

inline Decision admit(const Request& req, FirewallState& fw) {
  if (fw.blocklist_ips.count(req.src_ip) ||
      (!req.fqdn.empty() && fw.blocklist_fqdns.count(req.fqdn))) {
    return Decision::deny(DenyReason::kThreatIntel);
  }
  // Established flows keep flowing even after their rule is removed.
  if (fw.stateful_table.count(flow_of(req))) {
    return Decision::allow();
  }
  for (const AllowRule& rule : fw.network_rules) {
    if (rule.zone == req.trust && rule.dst_node == req.dst_node) {
      fw.stateful_table.insert(flow_of(req));
      return Decision::allow();
    }
  }
  if (req.trust == TrustZone::kTrusted) {
    // Trusted traffic is pre-authenticated at the private ingress.
    fw.stateful_table.insert(flow_of(req));
    return Decision::allow();
  }
  return Decision::deny(DenyReason::kNoRule);
}

inline TrustZone classify_trust(const Request& req, const TopologyGraph& g) {
  if (req.origin_ingress.empty() || !g.has_node(req.origin_ingress)) {
    throw UnknownIngressError("request bound to no known ingress");
  }
  switch (g.node(req.origin_ingress).kind) {
    case NodeKind::kExpressRoute:
    case NodeKind::kIotEdge:
      return TrustZone::kTrusted;
    case NodeKind::kFrontDoor:
      return TrustZone::kUntrusted;
    default:
      throw UnknownIngressError("node '" + req.origin_ingress +
                                "' is not an ingress kind");
  }
}

// Sliding-window per-source cap: the cap-th request in any window is
// still admitted, the cap+1-th is denied.
class RateLimiter {
 public:
  RateLimiter(int cap, Micros window_us) : cap_(cap), window_us_(window_us) {}

  Decision check(const Request& req) {
    auto& times = seen_[req.src_ip];
    Micros cutoff = req.arrival_us - window_us_;
    while (!times.empty() && times.front() <= cutoff) times.pop_front();
    if (static_cast<int>(times.size()) >= cap_) {
      return Decision::deny(DenyReason::kRateLimited);
    }
    times.push_back(req.arrival_us);
    return Decision::allow();
  }

  int cap() const { return cap_; }
  Micros window_us() const { return window_us_; }

 private:
  int cap_;
  Micros window_us_;
  std::map<std::uint32_t, std::deque<Micros>> seen_;
};

// Configurable latency surcharges for the modeled security mechanisms:
// a one-time 2FA handshake per new source and TLS per hop.
struct SecurityOverheads {
  Micros two_factor_us = 50'000;
  Micros tls_per_hop_us = 300;
};

}  // namespace cloudsim
