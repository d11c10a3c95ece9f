#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "cloudsim/errors.hpp"
#include "cloudsim/kernel.hpp"

namespace cloudsim {

using json = nlohmann::json;

// Documented defaults used when a descriptor omits timing fields.
inline constexpr Micros kDefaultInternetLinkUs = 20'000;
inline constexpr Micros kDefaultPrivateLinkUs = 1'000;
inline constexpr Micros kDefaultNodeServiceUs = 500;

enum class NodeKind {
  kFrontDoor,
  kFirewall,
  kApiGateway,
  kLoadBalancer,
  kDns,
  kPrivateEndpoint,
  kContainerCluster,
  kDataLake,
  kWarehouse,
  kMonitor,
  kAutomation,
  kExpressRoute,
  kIotEdge,
};

enum class VNetRole { kHub, kSpoke };
enum class TrustZone { kTrusted, kUntrusted, kInternal };
enum class LinkMedium { kInternet, kPrivate };

inline const char* to_string(NodeKind k) {
  switch (k) {
    case NodeKind::kFrontDoor: return "front-door";
    case NodeKind::kFirewall: return "firewall";
    case NodeKind::kApiGateway: return "api-gateway";
    case NodeKind::kLoadBalancer: return "load-balancer";
    case NodeKind::kDns: return "dns";
    case NodeKind::kPrivateEndpoint: return "private-endpoint";
    case NodeKind::kContainerCluster: return "container-cluster";
    case NodeKind::kDataLake: return "data-lake";
    case NodeKind::kWarehouse: return "warehouse";
    case NodeKind::kMonitor: return "monitor";
    case NodeKind::kAutomation: return "automation";
    case NodeKind::kExpressRoute: return "express-route";
    case NodeKind::kIotEdge: return "iot-edge";
  }
  return "unknown";
}

inline NodeKind node_kind_from_string(const std::string& s) {
  static const std::map<std::string, NodeKind> table = {
      {"front-door", NodeKind::kFrontDoor},
      {"firewall", NodeKind::kFirewall},
      {"api-gateway", NodeKind::kApiGateway},
      {"load-balancer", NodeKind::kLoadBalancer},
      {"dns", NodeKind::kDns},
      {"private-endpoint", NodeKind::kPrivateEndpoint},
      {"container-cluster", NodeKind::kContainerCluster},
      {"data-lake", NodeKind::kDataLake},
      {"warehouse", NodeKind::kWarehouse},
      {"monitor", NodeKind::kMonitor},
      {"automation", NodeKind::kAutomation},
      {"express-route", NodeKind::kExpressRoute},
      {"iot-edge", NodeKind::kIotEdge},
  };
  auto it = table.find(s);
  if (it == table.end()) throw SyntaxError("unknown node kind: " + s);
  return it->second;
}

inline const char* to_string(TrustZone z) {
  switch (z) {
    case TrustZone::kTrusted: return "trusted";
    case TrustZone::kUntrusted: return "untrusted";
    case TrustZone::kInternal: return "internal";
  }
  return "unknown";
}

inline TrustZone trust_from_string(const std::string& s) {
  if (s == "trusted") return TrustZone::kTrusted;
  if (s == "untrusted") return TrustZone::kUntrusted;
  if (s == "internal") return TrustZone::kInternal;
  throw SyntaxError("unknown trust zone: " + s);
}

// Deployment description embedded in a container-cluster node.
struct DeploymentSpec {
  std::string name;
  std::string version_label;
  int replicas = 1;
};

struct ServiceNode {
  std::string id;
  NodeKind kind = NodeKind::kContainerCluster;
  std::string vnet;
  Micros service_time_us = kDefaultNodeServiceUs;
  double capacity_rps = 0.0;  // requests/second per replica, cluster kinds
  std::vector<DeploymentSpec> deployments;
};

struct VNet {
  std::string id;
  VNetRole role = VNetRole::kSpoke;
  TrustZone trust = TrustZone::kInternal;
  std::string hub;   // required for spokes
  bool vwan = false; // managed-hub variant, affects cost and validation only
};

struct Link {
  std::string from;
  std::string to;
  Micros latency_us = 0;
  LinkMedium medium = LinkMedium::kPrivate;
};

struct Violation {
  std::string rule;  // e.g. "TR45", "TR48", "hub-spoke"
  std::string detail;
};

struct Path {
  std::vector<std::string> nodes;
  Micros latency_us = 0;  // link latencies plus per-node service times
};

class TopologyGraph {
 public:
  std::map<std::string, VNet> vnets;
  std::map<std::string, ServiceNode> nodes;
  std::vector<Link> links;
  std::map<std::string, std::string> ingress;  // trust zone -> node id

  const ServiceNode& node(const std::string& id) const {
    auto it = nodes.find(id);
    if (it == nodes.end()) throw UnknownNodeError(id);
    return it->second;
  }

  bool has_node(const std::string& id) const { return nodes.count(id) > 0; }

  std::vector<const Link*> links_from(const std::string& id) const {
    std::vector<const Link*> out;
    for (const auto& l : links) {
      if (l.from == id) out.push_back(&l);
    }
    return out;
  }
};

namespace detail {

inline void require_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (!allowed.count(it.key())) {
      throw SyntaxError("unknown key '" + it.key() + "' in " + where);
    }
  }
}

}  // namespace detail

inline TopologyGraph parse_topology(const json& doc) {
  TopologyGraph g;
  detail::require_keys(doc, {"vnets", "nodes", "links", "ingress"}, "topology");

  for (const auto& jv : doc.value("vnets", json::array())) {
    detail::require_keys(jv, {"id", "role", "trust", "hub", "vwan"}, "vnet");
    VNet v;
    v.id = jv.at("id").get<std::string>();
    std::string role = jv.value("role", "spoke");
    if (role == "hub") v.role = VNetRole::kHub;
    else if (role == "spoke") v.role = VNetRole::kSpoke;
    else throw SyntaxError("unknown vnet role: " + role);
    v.trust = trust_from_string(jv.value("trust", "internal"));
    v.hub = jv.value("hub", "");
    v.vwan = jv.value("vwan", false);
    if (g.vnets.count(v.id)) throw DuplicateIdError(v.id);
    g.vnets.emplace(v.id, v);
  }
  for (const auto& [id, v] : g.vnets) {
    if (!v.hub.empty() && !g.vnets.count(v.hub)) {
      throw UnknownReferenceError(v.hub);
    }
  }

  for (const auto& jn : doc.value("nodes", json::array())) {
    detail::require_keys(
        jn, {"id", "kind", "vnet", "service_time_us", "capacity_rps",
             "deployments"},
        "node");
    ServiceNode n;
    n.id = jn.at("id").get<std::string>();
    n.kind = node_kind_from_string(jn.at("kind").get<std::string>());
    n.vnet = jn.value("vnet", "");
    if (!n.vnet.empty() && !g.vnets.count(n.vnet)) {
      throw UnknownReferenceError(n.vnet);
    }
    n.service_time_us = jn.value("service_time_us", kDefaultNodeServiceUs);
    n.capacity_rps = jn.value("capacity_rps", 0.0);
    for (const auto& jd : jn.value("deployments", json::array())) {
      detail::require_keys(jd, {"name", "version", "replicas"}, "deployment");
      DeploymentSpec d;
      d.name = jd.at("name").get<std::string>();
      d.version_label = jd.at("version").get<std::string>();
      d.replicas = jd.value("replicas", 1);
      n.deployments.push_back(d);
    }
    if (n.kind == NodeKind::kContainerCluster && n.capacity_rps <= 0.0) {
      throw SyntaxError("cluster node '" + n.id + "' needs capacity_rps > 0");
    }
    if (g.nodes.count(n.id)) throw DuplicateIdError(n.id);
    g.nodes.emplace(n.id, n);
  }

  for (const auto& jl : doc.value("links", json::array())) {
    detail::require_keys(jl, {"from", "to", "latency_us", "medium"}, "link");
    Link l;
    l.from = jl.at("from").get<std::string>();
    l.to = jl.at("to").get<std::string>();
    if (!g.nodes.count(l.from)) throw UnknownReferenceError(l.from);
    if (!g.nodes.count(l.to)) throw UnknownReferenceError(l.to);
    std::string medium = jl.value("medium", "private");
    if (medium == "internet") l.medium = LinkMedium::kInternet;
    else if (medium == "private") l.medium = LinkMedium::kPrivate;
    else throw SyntaxError("unknown link medium: " + medium);
    l.latency_us = jl.value("latency_us", l.medium == LinkMedium::kInternet
                                              ? kDefaultInternetLinkUs
                                              : kDefaultPrivateLinkUs);
    if (l.latency_us < 0) throw SyntaxError("link latency must be >= 0");
    g.links.push_back(l);
  }

  if (doc.contains("ingress")) {
    for (auto it = doc.at("ingress").begin(); it != doc.at("ingress").end();
         ++it) {
      trust_from_string(it.key());
      std::string node_id = it.value().get<std::string>();
      if (!g.nodes.count(node_id)) throw UnknownReferenceError(node_id);
      g.ingress[it.key()] = node_id;
    }
  }
  return g;
}

inline json serialize_topology(const TopologyGraph& g) {
  json doc;
  doc["vnets"] = json::array();
  for (const auto& [id, v] : g.vnets) {
    json jv = {{"id", v.id},
               {"role", v.role == VNetRole::kHub ? "hub" : "spoke"},
               {"trust", to_string(v.trust)},
               {"vwan", v.vwan}};
    if (!v.hub.empty()) jv["hub"] = v.hub;
    doc["vnets"].push_back(jv);
  }
  doc["nodes"] = json::array();
  for (const auto& [id, n] : g.nodes) {
    json jn = {{"id", n.id},
               {"kind", to_string(n.kind)},
               {"vnet", n.vnet},
               {"service_time_us", n.service_time_us},
               {"capacity_rps", n.capacity_rps}};
    if (!n.deployments.empty()) {
      jn["deployments"] = json::array();
      for (const auto& d : n.deployments) {
        jn["deployments"].push_back({{"name", d.name},
                                     {"version", d.version_label},
                                     {"replicas", d.replicas}});
      }
    }
    doc["nodes"].push_back(jn);
  }
  doc["links"] = json::array();
  for (const auto& l : g.links) {
    doc["links"].push_back(
        {{"from", l.from},
         {"to", l.to},
         {"latency_us", l.latency_us},
         {"medium", l.medium == LinkMedium::kInternet ? "internet"
                                                      : "private"}});
  }
  doc["ingress"] = json::object();
  for (const auto& [zone, node] : g.ingress) doc["ingress"][zone] = node;
  return doc;
}

// Breadth-first route from the zone's ingress binding to the target;
// hop count is the tie-break-free metric since the descriptor lists
// directed links.
inline Path resolve_path(const TopologyGraph& g, TrustZone zone,
                         const std::string& target) {
  auto ing = g.ingress.find(to_string(zone));
  if (ing == g.ingress.end()) {
    throw UnknownIngressError(std::string("no ingress bound for zone ") +
                              to_string(zone));
  }
  if (!g.has_node(target)) throw UnreachableError(target);

  const std::string& start = ing->second;
  std::map<std::string, std::string> parent;
  std::deque<std::string> frontier{start};
  std::set<std::string> seen{start};
  while (!frontier.empty()) {
    std::string cur = frontier.front();
    frontier.pop_front();
    if (cur == target) break;
    for (const Link* l : g.links_from(cur)) {
      if (seen.insert(l->to).second) {
        parent[l->to] = cur;
        frontier.push_back(l->to);
      }
    }
  }
  if (target != start && !parent.count(target)) throw UnreachableError(target);

  Path path;
  for (std::string cur = target;; cur = parent.at(cur)) {
    path.nodes.push_back(cur);
    if (cur == start) break;
  }
  std::reverse(path.nodes.begin(), path.nodes.end());

  for (const auto& id : path.nodes) path.latency_us += g.node(id).service_time_us;
  for (std::size_t i = 0; i + 1 < path.nodes.size(); ++i) {
    for (const Link* l : g.links_from(path.nodes[i])) {
      if (l->to == path.nodes[i + 1]) {
        path.latency_us += l->latency_us;
        break;
      }
    }
  }
  return path;
}

// Structural policy validation. Violations are data, not errors.
inline std::vector<Violation> validate_structure(const TopologyGraph& g) {
  std::vector<Violation> out;

  bool has_trusted = false;
  bool has_untrusted = false;
  for (const auto& [id, v] : g.vnets) {
    if (v.trust == TrustZone::kTrusted) has_trusted = true;
    if (v.trust == TrustZone::kUntrusted) has_untrusted = true;
  }
  if (!has_trusted || !has_untrusted) {
    out.push_back({"TR45",
                   "topology must contain both a trusted and an untrusted "
                   "virtual networking environment"});
  }

  for (const auto& [id, n] : g.nodes) {
    if (n.vnet.empty()) {
      out.push_back({"TR61", "node '" + id + "' is not inside any vnet"});
    }
  }

  // Every untrusted ingress path to a cluster must pass a firewall.
  if (g.ingress.count("untrusted")) {
    for (const auto& [id, n] : g.nodes) {
      if (n.kind != NodeKind::kContainerCluster) continue;
      try {
        Path p = resolve_path(g, TrustZone::kUntrusted, id);
        bool has_fw = std::any_of(
            p.nodes.begin(), p.nodes.end(), [&](const std::string& nid) {
              return g.node(nid).kind == NodeKind::kFirewall;
            });
        if (!has_fw) {
          out.push_back({"TR48", "untrusted path to '" + id +
                                     "' bypasses every firewall"});
        }
      } catch (const UnreachableError&) {
        // Unreachable clusters cannot violate the firewall rule.
      }
    }
  }

  for (const auto& [id, v] : g.vnets) {
    if (v.role == VNetRole::kSpoke) {
      if (v.hub.empty()) {
        out.push_back({"hub-spoke", "spoke '" + id + "' links to no hub"});
      } else if (g.vnets.at(v.hub).role != VNetRole::kHub) {
        out.push_back(
            {"hub-spoke", "spoke '" + id + "' links to a non-hub vnet"});
      }
    }
    if (v.role == VNetRole::kHub && v.vwan) {
      bool fw_in_hub = std::any_of(
          g.nodes.begin(), g.nodes.end(), [&](const auto& kv) {
            return kv.second.kind == NodeKind::kFirewall &&
                   kv.second.vnet == id;
          });
      if (!fw_in_hub) {
        out.push_back(
            {"hub-spoke", "vwan hub '" + id + "' has no co-located firewall"});
      }
    }
  }
  return out;
}

}  // namespace cloudsim
