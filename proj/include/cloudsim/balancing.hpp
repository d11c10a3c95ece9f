#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cloudsim/errors.hpp"
#include "cloudsim/gateway.hpp"
#include "cloudsim/rng.hpp"
#include "cloudsim/trace.hpp"

namespace cloudsim {

enum class BalancingPolicy { kRoundRobin, kTupleHash2, kTupleHash3 };

inline BalancingPolicy balancing_policy_from_string(const std::string& s) {
  if (s == "round-robin") return BalancingPolicy::kRoundRobin;
  if (s == "tuple-hash-2") return BalancingPolicy::kTupleHash2;
  if (s == "tuple-hash-3") return BalancingPolicy::kTupleHash3;
  throw SyntaxError("unknown load balancer policy: " + s);
}

// Session persistence hash over the connection tuple. Two-tuple omits
// the protocol. Plain modulo over the sorted healthy list: persistence
// holds while membership and health are stable; on membership change the
// remap is deliberately unmitigated and measured instead.
inline std::uint64_t tuple_hash(std::uint32_t src_ip,
                                const std::string& dst_node,
                                Protocol protocol, bool include_protocol) {
  std::uint64_t h = mix64(static_cast<std::uint64_t>(src_ip));
  h = mix64(h ^ fnv1a64(dst_node));
  if (include_protocol) {
    h = mix64(h ^ static_cast<std::uint64_t>(protocol));
  }
  return h;
}

class BackendPool {
 public:
  BackendPool() = default;
  BackendPool(std::vector<std::string> members, BalancingPolicy policy)
      : members_(std::move(members)), policy_(policy) {
    for (const auto& m : members_) health_[m] = true;
  }

  const std::vector<std::string>& members() const { return members_; }
  BalancingPolicy policy() const { return policy_; }
  bool healthy(const std::string& id) const {
    auto it = health_.find(id);
    return it != health_.end() && it->second;
  }
  void set_health(const std::string& id, bool up) { health_[id] = up; }

  void add_member(const std::string& id) {
    members_.push_back(id);
    health_[id] = true;
  }
  void remove_member(const std::string& id) {
    members_.erase(std::remove(members_.begin(), members_.end(), id),
                   members_.end());
    health_.erase(id);
  }

  std::vector<std::string> healthy_members() const {
    std::vector<std::string> out;
    for (const auto& m : members_) {
      if (healthy(m)) out.push_back(m);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::string pick_backend(const Request& req) {
    std::vector<std::string> healthy = healthy_members();
    if (healthy.empty()) {
      throw NoHealthyBackendError("backend pool has no healthy member");
    }
    switch (policy_) {
      case BalancingPolicy::kRoundRobin: {
        const std::string& chosen = healthy[rr_cursor_ % healthy.size()];
        rr_cursor_ = (rr_cursor_ + 1) % healthy.size();
        return chosen;
      }
      case BalancingPolicy::kTupleHash2:
        return healthy[tuple_hash(req.src_ip, req.dst_node, req.protocol,
                                  false) %
                       healthy.size()];
      case BalancingPolicy::kTupleHash3:
        return healthy[tuple_hash(req.src_ip, req.dst_node, req.protocol,
                                  true) %
                       healthy.size()];
    }
    throw NoHealthyBackendError("unreachable");
  }

  // Marks a member unhealthy while it sits inside an outage interval
  // [start, end) and healthy again at the first probe at or after the
  // outage end.
  void probe(const std::map<std::string, std::vector<OutageInterval>>& outages,
             Micros t) {
    for (const auto& m : members_) {
      bool down = false;
      auto it = outages.find(m);
      if (it != outages.end()) {
        for (const auto& iv : it->second) {
          if (t >= iv.start_us && t < iv.end_us) {
            down = true;
            break;
          }
        }
      }
      health_[m] = !down;
    }
  }

 private:
  std::vector<std::string> members_;
  std::map<std::string, bool> health_;
  BalancingPolicy policy_ = BalancingPolicy::kTupleHash3;
  std::size_t rr_cursor_ = 0;
};

}  // namespace cloudsim
