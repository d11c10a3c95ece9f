#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include <json.hpp>

#include "cloudsim/errors.hpp"
#include "cloudsim/kernel.hpp"
#include "cloudsim/rng.hpp"

namespace cloudsim {

using json = nlohmann::json;

// One ramp segment of the staged user profile. Interpolation is exact
// linear between the stated endpoint user counts; the per-second rates
// in the source description are internally inconsistent with the stated
// targets, so the endpoints win.
struct Stage {
  double t_start_s = 0.0;
  double t_end_s = 0.0;
  double start_users = 0.0;
  double target_users = 0.0;
};

struct WorkloadProfile {
  std::string name;
  std::vector<Stage> stages;
  double rps_per_user = 1.0;
  std::string payload_class = "inference";

  double end_s() const {
    return stages.empty() ? 0.0 : stages.back().t_end_s;
  }
};

// Canonical staged ramp: 0->20 users in 20 s, ramp to 6000 by 80 s,
// back down to 20 by 140 s, final drop to 10 by 160 s.
inline WorkloadProfile paper_locust_profile(double rps_per_user = 1.0) {
  WorkloadProfile p;
  p.name = "paper-locust";
  p.rps_per_user = rps_per_user;
  p.stages = {
      {0.0, 20.0, 0.0, 20.0},
      {20.0, 80.0, 20.0, 6000.0},
      {80.0, 140.0, 6000.0, 20.0},
      {140.0, 160.0, 20.0, 10.0},
  };
  return p;
}

inline double users_at(const WorkloadProfile& profile, double t_s) {
  if (profile.stages.empty() || t_s < 0.0 || t_s > profile.end_s()) {
    throw OutOfRangeError("time outside workload profile range");
  }
  for (const Stage& s : profile.stages) {
    if (t_s <= s.t_end_s) {
      double span = s.t_end_s - s.t_start_s;
      double frac = (t_s - s.t_start_s) / span;
      return s.start_users + frac * (s.target_users - s.start_users);
    }
  }
  return profile.stages.back().target_users;
}

inline void validate_profile(const WorkloadProfile& profile) {
  bool first = true;
  double prev_end = 0.0;
  double prev_users = 0.0;
  for (const Stage& s : profile.stages) {
    if (s.target_users < 0.0 || s.start_users < 0.0) {
      throw NegativeTargetError("stage user counts must be non-negative");
    }
    if (s.t_end_s <= s.t_start_s) {
      throw NonContiguousStagesError("stage must have t_end > t_start");
    }
    if (!first) {
      if (s.t_start_s != prev_end) {
        throw NonContiguousStagesError("stages must be contiguous in time");
      }
      if (s.start_users != prev_users) {
        throw NonContiguousStagesError(
            "user count must be continuous at stage boundaries");
      }
    }
    first = false;
    prev_end = s.t_end_s;
    prev_users = s.target_users;
  }
}

inline WorkloadProfile parse_profile(const json& j) {
  if (j.contains("profile")) {
    std::string name = j.at("profile").get<std::string>();
    if (name != "paper-locust") {
      throw SyntaxError("unknown named workload profile: " + name);
    }
    WorkloadProfile p = paper_locust_profile(j.value("rps_per_user", 1.0));
    p.payload_class = j.value("payload_class", p.payload_class);
    return p;
  }
  WorkloadProfile p;
  p.name = j.value("name", "custom");
  p.rps_per_user = j.value("rps_per_user", 1.0);
  p.payload_class = j.value("payload_class", p.payload_class);
  double prev_end = 0.0;
  double prev_users = 0.0;
  bool first = true;
  for (const auto& js : j.at("stages")) {
    Stage s;
    s.t_start_s = js.value("t_start", prev_end);
    s.t_end_s = js.at("t_end").get<double>();
    s.start_users = first ? js.value("start_users", 0.0) : prev_users;
    s.target_users = js.at("target_users").get<double>();
    first = false;
    p.stages.push_back(s);
    prev_end = s.t_end_s;
    prev_users = s.target_users;
  }
  validate_profile(p);
  return p;
}

// Open-loop Poisson arrivals with instantaneous rate
// lambda(t) = users_at(t) * rps_per_user, sampled by thinning against
// the profile's peak rate. Deterministic under a fixed stream.
inline std::vector<Micros> generate_arrivals(const WorkloadProfile& profile,
                                             RngStream& stream,
                                             double horizon_s) {
  std::vector<Micros> arrivals;
  double end = std::min(horizon_s, profile.end_s());
  double lambda_max = 0.0;
  for (const Stage& s : profile.stages) {
    lambda_max = std::max(lambda_max,
                          std::max(s.start_users, s.target_users) *
                              profile.rps_per_user);
  }
  if (lambda_max <= 0.0 || end <= 0.0) return arrivals;

  double t = 0.0;
  while (true) {
    t += stream.next_exponential(1.0 / lambda_max);
    if (t >= end) break;
    double lambda_t = users_at(profile, t) * profile.rps_per_user;
    if (stream.next_double() < lambda_t / lambda_max) {
      arrivals.push_back(seconds_to_us(t));
    }
  }
  return arrivals;
}

}  // namespace cloudsim
