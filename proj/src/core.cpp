#include "wimax/core.hpp"

#include <algorithm>
#include <cctype>

namespace wimax {

std::string_view to_string(QosClass q) {
  switch (q) {
    case QosClass::UGS: return "UGS";
    case QosClass::ertPS: return "ertPS";
    case QosClass::rtPS: return "rtPS";
    case QosClass::nrtPS: return "nrtPS";
    case QosClass::BE: return "BE";
  }
  return "?";
}

std::optional<QosClass> parse_qos(std::string_view s) {
  std::string lower(s);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (auto q : kAllQosClasses) {
    std::string name(to_string(q));
    std::transform(name.begin(), name.end(), name.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (name == lower) return q;
  }
  return std::nullopt;
}

bool timestamps_ordered(const Packet& p) {
  SimTime last = p.arrival_time;
  for (const auto& stage : {p.enqueue_time, p.dequeue_time, p.delivery_time}) {
    if (!stage) continue;
    if (*stage < last) return false;
    last = *stage;
  }
  return true;
}

Unit unit_of(MetricName m) {
  switch (m) {
    case MetricName::ServerThroughput: return Unit::BitsPerSecond;
    case MetricName::AvgEndToEndDelay:
    case MetricName::AvgTimeInQueue: return Unit::Seconds;
    case MetricName::PeakQueueSize:
    case MetricName::AvgQueueLength: return Unit::Bytes;
    case MetricName::TotalDropped: return Unit::Packets;
    case MetricName::JainFairness: return Unit::Dimensionless;
  }
  return Unit::Dimensionless;
}

std::string_view to_string(MetricName m) {
  switch (m) {
    case MetricName::ServerThroughput: return "server_throughput";
    case MetricName::AvgEndToEndDelay: return "avg_end_to_end_delay";
    case MetricName::PeakQueueSize: return "peak_queue_bytes";
    case MetricName::AvgQueueLength: return "avg_queue_length";
    case MetricName::AvgTimeInQueue: return "avg_time_in_queue";
    case MetricName::TotalDropped: return "total_dropped";
    case MetricName::JainFairness: return "jain_fairness";
  }
  return "?";
}

std::string_view to_string(Unit u) {
  switch (u) {
    case Unit::BitsPerSecond: return "bit/s";
    case Unit::Seconds: return "s";
    case Unit::Bytes: return "bytes";
    case Unit::Packets: return "packets";
    case Unit::Dimensionless: return "1";
  }
  return "?";
}

MetricsSample make_sample(MetricName m, double value) { return {m, value, unit_of(m)}; }

}  // namespace wimax
