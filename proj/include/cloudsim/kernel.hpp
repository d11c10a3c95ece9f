#pragma once

#include <cstdint>
#include <functional>
#include <queue>
#include <unordered_set>
#include <vector>

#include "cloudsim/errors.hpp"

namespace cloudsim {

// All simulated time is integer microseconds; no floating-point event
// times, so trace bytes are reproducible across platforms.
using Micros = std::int64_t;

inline constexpr Micros kMicrosPerSecond = 1'000'000;
inline constexpr Micros kMicrosPerHour = 3'600 * kMicrosPerSecond;
inline constexpr Micros kMicrosPerDay = 24 * kMicrosPerHour;

inline constexpr Micros seconds_to_us(double s) {
  return static_cast<Micros>(s * static_cast<double>(kMicrosPerSecond));
}

enum class EventKind {
  kRequestArrival,
  kHopComplete,
  kMetricSample,
  kHpaCheck,
  kHpaUpdate,
  kBackupDue,
  kFailureStart,
  kFailureEnd,
  kProbeDue,
  kAlertEval,
};

struct Event {
  Micros time = 0;
  EventKind kind = EventKind::kRequestArrival;
  std::function<void(Micros)> action;
};

using EventHandle = std::uint64_t;

// Deterministic event queue: dispatch order is strictly (time, sequence)
// lexicographic, sequence being a monotone insertion counter.
class EventQueue {
 public:
  Micros now() const { return now_; }

  EventHandle schedule(Event ev) {
    if (ev.time < now_) {
      throw PastEventError("event scheduled before current simulated time");
    }
    EventHandle handle = next_sequence_++;
    queue_.push(Entry{ev.time, handle, ev.kind, std::move(ev.action)});
    return handle;
  }

  // Cancellation is lazy: the entry stays queued but is skipped at
  // dispatch. Cancelling an already-dispatched handle is a no-op.
  void cancel(EventHandle handle) { cancelled_.insert(handle); }

  bool empty() const { return queue_.empty(); }

  // Dispatches every event with time <= horizon and advances the clock
  // to exactly the horizon.
  void run_until(Micros horizon) {
    while (!queue_.empty() && queue_.top().time <= horizon) {
      Entry entry = queue_.top();
      queue_.pop();
      if (cancelled_.erase(entry.sequence) > 0) {
        continue;
      }
      now_ = entry.time;
      if (entry.action) {
        entry.action(now_);
      }
    }
    if (horizon > now_) {
      now_ = horizon;
    }
  }

 private:
  struct Entry {
    Micros time;
    std::uint64_t sequence;
    EventKind kind;
    std::function<void(Micros)> action;
  };
  struct Later {
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.time != b.time) return a.time > b.time;
      return a.sequence > b.sequence;
    }
  };

  Micros now_ = 0;
  std::uint64_t next_sequence_ = 0;
  std::priority_queue<Entry, std::vector<Entry>, Later> queue_;
  std::unordered_set<EventHandle> cancelled_;
};

}  // namespace cloudsim
