#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cloudsim/kernel.hpp"

namespace cloudsim {

enum class Outcome {
  kCompleted,
  kDeniedThreatIntel,
  kDeniedNoRule,
  kDeniedRateLimited,
  kFailedOutage,
};

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::kCompleted: return "completed";
    case Outcome::kDeniedThreatIntel: return "denied-threat-intel";
    case Outcome::kDeniedNoRule: return "denied-no-rule";
    case Outcome::kDeniedRateLimited: return "denied-rate-limited";
    case Outcome::kFailedOutage: return "failed-outage";
  }
  return "unknown";
}

struct RequestRecord {
  std::uint64_t id = 0;
  Micros arrival_us = 0;
  Micros complete_us = 0;  // 0 when the request never completed
  std::string path;        // node ids joined by '>'
  std::string version;     // routed deployment version label, if any
  Outcome outcome = Outcome::kCompleted;
  Micros latency_us = 0;
};

struct ReplicaSample {
  Micros time_us = 0;
  std::string deployment;
  int replicas = 0;
  double cpu = 0.0;
  bool calendar_override = false;  // replica change forced by TR35 schedule
};

struct OutageInterval {
  std::string node_id;
  Micros start_us = 0;
  Micros end_us = 0;
};

struct AlertEvent {
  Micros time_us = 0;
  std::string rule;
  std::string action_group;
};

struct BackupEvent {
  Micros time_us = 0;
  int copies = 0;
  int locations = 0;
  int offsite = 0;
  bool encrypted_at_rest = false;
  bool encrypted_in_flight = false;
};

// Time-ordered record of a completed run; immutable once the kernel
// finishes.
struct SimTrace {
  std::uint64_t seed = 0;
  Micros horizon_us = 0;
  std::vector<RequestRecord> requests;
  std::vector<ReplicaSample> replica_timeline;
  std::vector<OutageInterval> outages;
  std::vector<AlertEvent> alerts;
  std::vector<BackupEvent> backups;
  // Worst observed per-node service latency, for the latency checks.
  std::map<std::string, Micros> node_service_max_us;
};

}  // namespace cloudsim
