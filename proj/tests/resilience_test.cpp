#include <catch2/catch_amalgamated.hpp>

#include "cloudsim/resilience.hpp"

using namespace cloudsim;

TEST_CASE("no fault model means no outages") {
  FaultModel model;
  CHECK(inject_failures(model, 1, 30 * kMicrosPerDay).empty());
}

TEST_CASE("injected outages are deterministic, sorted, and clipped") {
  FaultModel model;
  model.mtbf_hours["db"] = 24.0;
  model.mttr_hours = 9.0;
  Micros horizon = 30 * kMicrosPerDay;
  auto a = inject_failures(model, 7, horizon);
  auto b = inject_failures(model, 7, horizon);
  REQUIRE_FALSE(a.empty());
  CHECK(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].start_us == b[i].start_us);
    CHECK(a[i].end_us == b[i].end_us);
    CHECK(a[i].start_us < a[i].end_us);
    CHECK(a[i].end_us <= horizon);
    if (i > 0) CHECK(a[i].start_us >= a[i - 1].start_us);
  }
}

TEST_CASE("adding a node never perturbs another node's outages") {
  FaultModel one;
  one.mtbf_hours["db"] = 24.0;
  FaultModel two = one;
  two.mtbf_hours["cache"] = 48.0;
  Micros horizon = 30 * kMicrosPerDay;

  auto just_db = inject_failures(one, 5, horizon);
  auto both = inject_failures(two, 5, horizon);
  std::vector<OutageInterval> db_from_both;
  for (const auto& iv : both) {
    if (iv.node_id == "db") db_from_both.push_back(iv);
  }
  REQUIRE(db_from_both.size() == just_db.size());
  for (std::size_t i = 0; i < just_db.size(); ++i) {
    CHECK(db_from_both[i].start_us == just_db[i].start_us);
    CHECK(db_from_both[i].end_us == just_db[i].end_us);
  }
}

TEST_CASE("empirical repair times center on the configured mean") {
  FaultModel model;
  model.mtbf_hours["n"] = 20.0;
  model.mttr_hours = 9.0;
  // Long horizon so the sample is large.
  auto outages = inject_failures(model, 11, 3000 * kMicrosPerDay);
  REQUIRE(outages.size() > 500);
  double sum_h = 0.0;
  for (const auto& o : outages) {
    sum_h += static_cast<double>(o.end_us - o.start_us) /
             static_cast<double>(kMicrosPerHour);
  }
  CHECK(sum_h / outages.size() == Catch::Approx(9.0).epsilon(0.1));
}

TEST_CASE("backups fire at exact period multiples") {
  BackupPolicy policy;
  policy.enabled = true;
  policy.period_us = 12 * kMicrosPerHour;
  auto events = schedule_backups(policy, 48 * kMicrosPerHour);
  REQUIRE(events.size() == 4);
  for (int k = 0; k < 4; ++k) {
    CHECK(events[k].time_us == (k + 1) * 12 * kMicrosPerHour);
    CHECK(events[k].copies == 3);
    CHECK(events[k].locations == 2);
    CHECK(events[k].offsite == 1);
  }
}

TEST_CASE("disabled backup policy schedules nothing") {
  BackupPolicy policy;
  policy.enabled = false;
  CHECK(schedule_backups(policy, 48 * kMicrosPerHour).empty());
}

TEST_CASE("availability arithmetic on a known outage") {
  SimTrace trace;
  trace.horizon_us = 30 * kMicrosPerDay;
  trace.outages.push_back({"db", 0, 180 * kMicrosPerSecond});
  Availability a = availability(trace, "db");
  // 3 minutes down in a 30-day month, hand-computed.
  CHECK(a.fraction == Catch::Approx(1.0 - 180.0 / 2592000.0).margin(1e-12));
  CHECK(a.downtime_minutes_per_month == Catch::Approx(3.0).margin(1e-9));

  Availability other = availability(trace, "cache");
  CHECK(other.fraction == 1.0);
}
