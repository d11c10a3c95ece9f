#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cloudsim/errors.hpp"
#include "cloudsim/kernel.hpp"
#include "cloudsim/trace.hpp"

namespace cloudsim {

enum class MetricLayer {
  kApplication,
  kContainer,
  kGuestOs,
  kResource,
  kSubscription,
  kTenant,
};

struct MetricPoint {
  Micros time_us = 0;
  MetricLayer layer = MetricLayer::kContainer;
  std::string name;
  double value = 0.0;
};

struct AlertRule {
  std::string metric;
  std::string comparator;  // ">" or "<"
  double threshold = 0.0;
  int sustained_samples = 1;
  std::string action_group;

  bool satisfied(double v) const {
    return comparator == "<" ? v < threshold : v > threshold;
  }
};

// Nearest-rank percentile: value at 1-based index ceil(p/100 * n) of the
// sorted series. Exact and testable against a plain sort.
inline double percentile(std::vector<double> series, double p) {
  if (series.empty()) throw EmptySeriesError("percentile of empty series");
  std::sort(series.begin(), series.end());
  auto n = static_cast<double>(series.size());
  auto rank = static_cast<std::size_t>(std::ceil(p / 100.0 * n));
  rank = std::clamp<std::size_t>(rank, 1, series.size());
  return series[rank - 1];
}

// Fires at the first sample completing `sustained_samples` consecutive
// satisfying samples; one firing per excursion.
inline std::vector<AlertEvent> evaluate_alerts(
    const std::vector<AlertRule>& rules,
    const std::vector<MetricPoint>& points) {
  std::vector<AlertEvent> out;
  for (const auto& rule : rules) {
    int streak = 0;
    bool fired = false;
    for (const auto& pt : points) {
      if (pt.name != rule.metric) continue;
      if (rule.satisfied(pt.value)) {
        ++streak;
        if (!fired && streak >= rule.sustained_samples) {
          out.push_back({pt.time_us, rule.metric + rule.comparator +
                                         std::to_string(rule.threshold),
                         rule.action_group});
          fired = true;
        }
      } else {
        streak = 0;
        fired = false;
      }
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const AlertEvent& a, const AlertEvent& b) {
                     return a.time_us < b.time_us;
                   });
  return out;
}

// Completed requests per 1 s bucket; the sum over buckets equals the
// completed-request count.
inline std::vector<std::int64_t> throughput_series(const SimTrace& trace) {
  std::size_t buckets =
      static_cast<std::size_t>(trace.horizon_us / kMicrosPerSecond) + 1;
  std::vector<std::int64_t> out(buckets, 0);
  for (const auto& r : trace.requests) {
    if (r.outcome != Outcome::kCompleted) continue;
    auto b = static_cast<std::size_t>(r.complete_us / kMicrosPerSecond);
    if (b < out.size()) ++out[b];
  }
  return out;
}

namespace detail {

inline std::string format_cpu(double cpu) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", cpu);
  return buf;
}

inline void write_file(const std::filesystem::path& path,
                       const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << content;
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace detail

enum class TraceExportKind { kRequests, kReplicas, kOutages, kAlerts };

inline std::string render_trace_csv(const SimTrace& trace,
                                    TraceExportKind kind) {
  std::ostringstream csv;
  switch (kind) {
    case TraceExportKind::kRequests:
      csv << "id,arrival_us,complete_us,path,version,outcome,latency_us\n";
      for (const auto& r : trace.requests) {
        csv << r.id << ',' << r.arrival_us << ',' << r.complete_us << ','
            << r.path << ',' << r.version << ',' << to_string(r.outcome)
            << ',' << r.latency_us << '\n';
      }
      break;
    case TraceExportKind::kReplicas:
      csv << "time_us,deployment,replicas,cpu\n";
      for (const auto& s : trace.replica_timeline) {
        csv << s.time_us << ',' << s.deployment << ',' << s.replicas << ','
            << detail::format_cpu(s.cpu) << '\n';
      }
      break;
    case TraceExportKind::kOutages:
      csv << "node,start_us,end_us\n";
      for (const auto& o : trace.outages) {
        csv << o.node_id << ',' << o.start_us << ',' << o.end_us << '\n';
      }
      break;
    case TraceExportKind::kAlerts:
      csv << "time_us,rule,action_group\n";
      for (const auto& a : trace.alerts) {
        csv << a.time_us << ',' << a.rule << ',' << a.action_group << '\n';
      }
      break;
  }
  return csv.str();
}

inline void export_trace(const SimTrace& trace, TraceExportKind kind,
                         const std::filesystem::path& path) {
  detail::write_file(path, render_trace_csv(trace, kind));
}

}  // namespace cloudsim
