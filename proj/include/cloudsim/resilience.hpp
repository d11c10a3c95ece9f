#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "cloudsim/errors.hpp"
#include "cloudsim/kernel.hpp"
#include "cloudsim/rng.hpp"
#include "cloudsim/trace.hpp"

namespace cloudsim {

// Exponential up/down renewal process per node; only the means are
// specified, so memoryless is the single-parameter choice.
struct FaultModel {
  std::map<std::string, double> mtbf_hours;  // absent node = no faults
  double mttr_hours = 9.0;
};

struct BackupPolicy {
  bool enabled = false;
  Micros period_us = 12 * kMicrosPerHour;
  int copies = 3;
  int locations = 2;
  int offsite = 1;
  bool encrypted_at_rest = true;
  bool encrypted_in_flight = true;
};

inline std::vector<OutageInterval> inject_failures(const FaultModel& model,
                                                   std::uint64_t seed,
                                                   Micros horizon_us) {
  std::vector<OutageInterval> out;
  for (const auto& [node, mtbf_h] : model.mtbf_hours) {
    if (mtbf_h <= 0.0) continue;
    // Per-node stream so adding a node never perturbs the others.
    RngStream stream(seed, "failures/" + node);
    Micros t = 0;
    while (t < horizon_us) {
      double up_h = stream.next_exponential(mtbf_h);
      t += static_cast<Micros>(up_h * static_cast<double>(kMicrosPerHour));
      if (t >= horizon_us) break;
      double down_h = stream.next_exponential(model.mttr_hours);
      Micros end =
          t + static_cast<Micros>(down_h * static_cast<double>(kMicrosPerHour));
      out.push_back({node, t, std::min(end, horizon_us)});
      t = end;
    }
  }
  std::sort(out.begin(), out.end(),
            [](const OutageInterval& a, const OutageInterval& b) {
              if (a.start_us != b.start_us) return a.start_us < b.start_us;
              return a.node_id < b.node_id;
            });
  return out;
}

// Backup k fires at exactly k * period; no drift.
inline std::vector<BackupEvent> schedule_backups(const BackupPolicy& policy,
                                                 Micros horizon_us) {
  std::vector<BackupEvent> out;
  if (!policy.enabled || policy.period_us <= 0) return out;
  for (Micros t = policy.period_us; t <= horizon_us; t += policy.period_us) {
    out.push_back({t, policy.copies, policy.locations, policy.offsite,
                   policy.encrypted_at_rest, policy.encrypted_in_flight});
  }
  return out;
}

struct Availability {
  double fraction = 1.0;
  double downtime_minutes_per_month = 0.0;  // normalized to a 30-day month
};

inline Availability availability(const SimTrace& trace,
                                 const std::string& node_id) {
  Micros down = 0;
  for (const auto& iv : trace.outages) {
    if (iv.node_id != node_id) continue;
    Micros start = std::clamp<Micros>(iv.start_us, 0, trace.horizon_us);
    Micros end = std::clamp<Micros>(iv.end_us, 0, trace.horizon_us);
    down += end - start;
  }
  Availability a;
  if (trace.horizon_us > 0) {
    a.fraction = 1.0 - static_cast<double>(down) /
                           static_cast<double>(trace.horizon_us);
    double down_min = static_cast<double>(down) / (60.0 * kMicrosPerSecond);
    double months = static_cast<double>(trace.horizon_us) /
                    static_cast<double>(30 * kMicrosPerDay);
    a.downtime_minutes_per_month = months > 0.0 ? down_min / months : 0.0;
  }
  return a;
}

}  // namespace cloudsim
