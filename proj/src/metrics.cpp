#include "wimax/metrics.hpp"

#include <stdexcept>

namespace wimax::metrics {

std::vector<MetricsSample> MetricsReport::samples() const {
  return {
      make_sample(MetricName::ServerThroughput, server_throughput),
      make_sample(MetricName::AvgEndToEndDelay, avg_end_to_end_delay),
      make_sample(MetricName::PeakQueueSize, static_cast<double>(peak_queue_bytes)),
      make_sample(MetricName::AvgQueueLength, avg_queue_length),
      make_sample(MetricName::AvgTimeInQueue, avg_time_in_queue),
      make_sample(MetricName::TotalDropped, static_cast<double>(total_dropped)),
      make_sample(MetricName::JainFairness, jain_fairness),
  };
}

double server_throughput(std::uint64_t delivered_bits, SimTime duration) {
  if (!(duration > 0.0)) throw std::invalid_argument("server_throughput: duration must be > 0");
  return static_cast<double>(delivered_bits) / duration;
}

double jain_fairness(std::span<const double> xs) {
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double x : xs) {
    if (x < 0.0) throw std::invalid_argument("jain_fairness: negative allocation");
    sum += x;
    sum_sq += x * x;
  }
  if (!(sum > 0.0)) throw std::domain_error("jain_fairness: undefined for all-zero allocations");
  return sum * sum / (static_cast<double>(xs.size()) * sum_sq);
}

double fairness_of(const MetricsReport& r, FairnessBasis basis) {
  std::vector<double> xs;
  if (basis == FairnessBasis::PerQueue) {
    for (const auto& q : r.queues) {
      if (q.arrivals > 0) xs.push_back(static_cast<double>(q.delivered_bits));
    }
  } else {
    for (auto b : r.flow_delivered_bits) xs.push_back(static_cast<double>(b));
  }
  double sum = 0.0;
  for (double x : xs) sum += x;
  return sum > 0.0 ? jain_fairness(xs) : 0.0;
}

}  // namespace wimax::metrics
