#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "oracles/fair_queue_oracle.hpp"
#include "wimax/classify.hpp"
#include "wimax/engine.hpp"
#include "wimax/traffic.hpp"

namespace testing_support {

/// One flow per queue (flow id = precedence = queue index, at most 8 queues),
/// unbounded-in-practice buffers.
inline wimax::RunConfig instance_config(wimax::sched::SchedulerKind kind, std::vector<double> w,
                                        double rate, double duration) {
  wimax::RunConfig cfg;
  cfg.scheduler = kind;
  cfg.num_queues = w.size();
  cfg.weights = wimax::sched::WeightVector(std::move(w));
  cfg.link.rate_bps = rate;
  cfg.duration = duration;
  cfg.queue_capacity_bytes = 1ULL << 40;
  cfg.record_service_order = true;
  for (std::size_t q = 0; q < cfg.num_queues; ++q) {
    wimax::traffic::ServiceFlow f;
    f.flow_id = static_cast<wimax::FlowId>(q);
    f.precedence = wimax::Precedence(static_cast<int>(q));
    f.qos = wimax::classify::class_of(f.precedence);
    f.profile = wimax::traffic::profile_for(f.qos);
    cfg.flows.push_back(f);
  }
  return cfg;
}

/// Packets sorted the way the engine numbers them: by time, then queue.
inline void sort_packets(std::vector<oracle::Pkt>& pkts) {
  std::stable_sort(pkts.begin(), pkts.end(), [](const auto& a, const auto& b) {
    return a.time != b.time ? a.time < b.time : a.queue < b.queue;
  });
}

inline std::vector<wimax::traffic::Arrival> to_arrivals(const std::vector<oracle::Pkt>& pkts) {
  std::vector<wimax::traffic::Arrival> out;
  for (const auto& p : pkts) {
    out.push_back({p.time, static_cast<std::uint32_t>(p.bits / 8.0),
                   static_cast<wimax::FlowId>(p.queue)});
  }
  return out;
}

/// Engine service order as packet ids, which equal indices into `pkts`.
inline std::vector<std::size_t> engine_order(wimax::sched::SchedulerKind kind,
                                             const std::vector<double>& w,
                                             const std::vector<oracle::Pkt>& pkts, double rate) {
  double total_bits = 0.0;
  double last = 0.0;
  for (const auto& p : pkts) {
    total_bits += p.bits;
    last = std::max(last, p.time);
  }
  const auto cfg = instance_config(kind, w, rate, last + total_bits / rate + 1.0);
  const auto arrivals = to_arrivals(pkts);
  const auto result = wimax::simulate(cfg, arrivals);
  std::vector<std::size_t> order;
  for (const auto& r : result.service_order) order.push_back(static_cast<std::size_t>(r.packet));
  return order;
}

struct RandomInstance {
  std::vector<double> weights;
  std::vector<oracle::Pkt> pkts;
};

/// Up to 10 packets over up to 3 queues. With `idle_start` every packet
/// arrives at t = 0.
inline RandomInstance random_instance(std::mt19937_64& rng, bool idle_start) {
  std::uniform_int_distribution<int> nq(1, 3);
  std::uniform_int_distribution<int> np(1, 10);
  std::uniform_int_distribution<int> weight(1, 8);
  std::uniform_int_distribution<int> bytes(40, 1500);
  std::uniform_real_distribution<double> when(0.0, 0.3);
  RandomInstance inst;
  const int queues = nq(rng);
  for (int q = 0; q < queues; ++q) inst.weights.push_back(weight(rng));
  const int n = np(rng);
  std::uniform_int_distribution<int> pick(0, queues - 1);
  for (int i = 0; i < n; ++i) {
    inst.pkts.push_back({idle_start ? 0.0 : when(rng), static_cast<std::size_t>(pick(rng)),
                         8.0 * bytes(rng)});
  }
  sort_packets(inst.pkts);
  return inst;
}

}  // namespace testing_support
