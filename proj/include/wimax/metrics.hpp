#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "wimax/core.hpp"
#include "wimax/sched.hpp"

namespace wimax::metrics {

/// Per output queue counters. `served` counts dequeues (delivered plus the
/// packet still on the wire at the horizon, if any).
struct QueueBreakdown {
  std::size_t index = 0;
  std::uint64_t arrivals = 0;
  std::uint64_t accepted = 0;
  std::uint64_t dropped = 0;
  std::uint64_t served = 0;
  std::uint64_t delivered = 0;
  std::uint64_t resident = 0;
  std::uint64_t offered_bits = 0;
  std::uint64_t delivered_bits = 0;
  std::uint64_t peak_bytes = 0;
  double avg_queue_length = 0.0;
  double avg_time_in_queue = 0.0;
  double total_wait = 0.0;
};

struct ClassBreakdown {
  std::uint64_t arrivals = 0;
  std::uint64_t delivered = 0;
  std::uint64_t offered_bits = 0;
  std::uint64_t delivered_bits = 0;
};

enum class FairnessBasis : std::uint8_t { PerQueue, PerFlow };

struct MetricsReport {
  // config echo
  sched::SchedulerKind scheduler = sched::SchedulerKind::SP;
  std::uint64_t queue_capacity_bytes = 0;
  std::size_t num_queues = 0;
  std::uint64_t seed = 0;
  double link_rate_bps = 0.0;
  SimTime duration = 0.0;

  double server_throughput = 0.0;
  double avg_end_to_end_delay = 0.0;
  std::uint64_t peak_queue_bytes = 0;
  double avg_queue_length = 0.0;
  double avg_time_in_queue = 0.0;
  std::uint64_t total_dropped = 0;
  double jain_fairness = 0.0;

  std::uint64_t total_arrivals = 0;
  std::uint64_t total_delivered = 0;
  std::uint64_t total_resident = 0;
  std::uint64_t delivered_bits = 0;
  std::uint64_t work_conservation_violations = 0;

  std::vector<QueueBreakdown> queues;
  std::array<ClassBreakdown, 5> classes{};
  std::vector<std::uint64_t> flow_delivered_bits;

  const ClassBreakdown& of(QosClass q) const { return classes[index_of(q)]; }

  /// The seven headline metrics with their units.
  std::vector<MetricsSample> samples() const;
};

/// delivered_bits / duration. Throws std::invalid_argument on duration <= 0.
double server_throughput(std::uint64_t delivered_bits, SimTime duration);

/// Jain's index (sum x)^2 / (n * sum x^2). Throws std::domain_error when no
/// entry is positive.
double jain_fairness(std::span<const double> xs);

/// Fairness over the queues that saw traffic, or over every flow.
double fairness_of(const MetricsReport& r, FairnessBasis basis);

}  // namespace wimax::metrics
