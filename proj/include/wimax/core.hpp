#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace wimax {

/// Simulation time in seconds.
using SimTime = double;

using PacketId = std::uint64_t;
using FlowId = std::uint32_t;

/// IEEE 802.16 service classes.
enum class QosClass : std::uint8_t { UGS, ertPS, rtPS, nrtPS, BE };

inline constexpr std::array<QosClass, 5> kAllQosClasses = {
    QosClass::UGS, QosClass::ertPS, QosClass::rtPS, QosClass::nrtPS, QosClass::BE};

std::string_view to_string(QosClass q);
std::optional<QosClass> parse_qos(std::string_view s);

inline constexpr std::size_t index_of(QosClass q) { return static_cast<std::size_t>(q); }

/// 3-bit IP precedence, 0..7.
class Precedence {
 public:
  constexpr Precedence() = default;
  constexpr explicit Precedence(int v) : value_(checked(v)) {}

  constexpr int value() const { return value_; }
  friend constexpr auto operator<=>(Precedence, Precedence) = default;

 private:
  static constexpr std::uint8_t checked(int v) {
    if (v < 0 || v > 7) throw std::out_of_range("precedence must be in [0, 7]");
    return static_cast<std::uint8_t>(v);
  }
  std::uint8_t value_ = 0;
};

struct Packet {
  PacketId id = 0;
  FlowId flow_id = 0;
  QosClass qos = QosClass::BE;
  Precedence precedence;
  std::uint32_t size_bytes = 1;
  SimTime arrival_time = 0.0;
  std::optional<SimTime> enqueue_time;
  std::optional<SimTime> dequeue_time;
  std::optional<SimTime> delivery_time;
};

constexpr std::uint64_t packet_bits(const Packet& p) {
  return static_cast<std::uint64_t>(p.size_bytes) * 8U;
}

/// True when the per-stage timestamps are ordered wherever they are set.
bool timestamps_ordered(const Packet& p);

enum class MetricName : std::uint8_t {
  ServerThroughput,
  AvgEndToEndDelay,
  PeakQueueSize,
  AvgQueueLength,
  AvgTimeInQueue,
  TotalDropped,
  JainFairness,
};

enum class Unit : std::uint8_t { BitsPerSecond, Seconds, Bytes, Packets, Dimensionless };

Unit unit_of(MetricName m);
std::string_view to_string(MetricName m);
std::string_view to_string(Unit u);

struct MetricsSample {
  MetricName metric;
  double value = 0.0;
  Unit unit;
};

/// Builds a sample with the unit fixed by the metric.
MetricsSample make_sample(MetricName m, double value);

}  // namespace wimax
