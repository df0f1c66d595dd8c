#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "wimax/core.hpp"
#include "wimax/metrics.hpp"
#include "wimax/sched.hpp"
#include "wimax/traffic.hpp"

namespace wimax {

/// Rejected configuration; `field()` names the offending setting.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

/// Serialization-only downlink: a packet occupies the server for bits / rate.
struct LinkModel {
  double rate_bps = 500000.0;
};

struct RunConfig {
  sched::SchedulerKind scheduler = sched::SchedulerKind::SP;
  std::size_t num_queues = 8;
  std::uint64_t queue_capacity_bytes = 1280000;
  sched::WeightVector weights = sched::WeightVector::monotone(8);
  LinkModel link;
  SimTime duration = 30.0;
  std::uint64_t seed = 0;
  std::vector<traffic::ServiceFlow> flows;
  metrics::FairnessBasis fairness = metrics::FairnessBasis::PerQueue;
  /// Spacing of queue-occupancy snapshots; 0 disables them.
  SimTime occupancy_interval = 0.0;
  /// Keep the dequeue order (packet id, queue) for inspection.
  bool record_service_order = false;

  /// Throws ConfigError.
  void validate() const;
};

struct OccupancySample {
  SimTime time = 0.0;
  std::size_t queue = 0;
  std::uint64_t bytes = 0;
};

struct ServiceRecord {
  PacketId packet = 0;
  std::size_t queue = 0;
  SimTime start = 0.0;

  friend bool operator==(const ServiceRecord&, const ServiceRecord&) = default;
};

struct RunResult {
  metrics::MetricsReport report;
  std::vector<OccupancySample> occupancy;
  std::vector<ServiceRecord> service_order;
};

/// Runs one configuration over a pre-generated arrival sequence, which must be
/// ordered by (time, flow id) and reference only flows in `cfg.flows`.
/// Arrivals past `cfg.duration` are ignored.
RunResult simulate(const RunConfig& cfg, std::span<const traffic::Arrival> arrivals);

/// Generates the flows' arrivals and runs.
metrics::MetricsReport run(const RunConfig& cfg);

/// delivery - arrival. Throws std::logic_error for an undelivered packet.
double end_to_end_delay(const Packet& p);

}  // namespace wimax
