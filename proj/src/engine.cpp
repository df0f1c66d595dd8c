#include "wimax/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "wimax/classify.hpp"
#include "wimax/queueing.hpp"

namespace wimax {

void RunConfig::validate() const {
  if (num_queues < 1) throw ConfigError("num_queues", "must be >= 1");
  if (weights.size() != num_queues) {
    throw ConfigError("weights", "expected " + std::to_string(num_queues) + " weights, got " +
                                     std::to_string(weights.size()));
  }
  if (queue_capacity_bytes == 0) throw ConfigError("queue_capacity_bytes", "must be positive");
  if (!(link.rate_bps > 0.0) || !std::isfinite(link.rate_bps)) {
    throw ConfigError("link.rate", "must be positive");
  }
  if (!(duration > 0.0) || !std::isfinite(duration)) throw ConfigError("duration", "must be > 0");
  if (!(occupancy_interval >= 0.0)) throw ConfigError("occupancy_interval", "must be >= 0");
  std::unordered_set<FlowId> ids;
  for (const auto& f : flows) {
    const std::string where = "flows[" + std::to_string(f.flow_id) + "]";
    if (!ids.insert(f.flow_id).second) throw ConfigError(where, "duplicate flow id");
    auto allowed = classify::precedences_of(f.qos);
    if (std::find(allowed.begin(), allowed.end(), f.precedence) == allowed.end()) {
      throw ConfigError(where, "precedence not permitted for its QoS class");
    }
    try {
      f.profile.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(where, e.what());
    }
  }
}

double end_to_end_delay(const Packet& p) {
  if (!p.delivery_time) throw std::logic_error("end_to_end_delay: packet was not delivered");
  return *p.delivery_time - p.arrival_time;
}

namespace {

struct FlowSlot {
  QosClass qos;
  Precedence precedence;
  std::size_t queue;
  std::size_t ordinal;
};

struct InFlight {
  Packet packet;
  std::size_t queue;
  SimTime done;
};

class Engine {
 public:
  explicit Engine(const RunConfig& cfg)
      : cfg_(cfg), scheduler_(cfg.scheduler, cfg.weights, cfg.link.rate_bps) {
    queues_.reserve(cfg.num_queues);
    for (std::size_t i = 0; i < cfg.num_queues; ++i) {
      queues_.emplace_back(i, cfg.queue_capacity_bytes);
    }
    for (std::size_t i = 0; i < cfg.flows.size(); ++i) {
      const auto& f = cfg.flows[i];
      flows_.emplace(f.flow_id,
                     FlowSlot{f.qos, f.precedence, classify::queue_index(f.precedence, cfg.num_queues), i});
    }
    auto& r = result_.report;
    r.scheduler = cfg.scheduler;
    r.queue_capacity_bytes = cfg.queue_capacity_bytes;
    r.num_queues = cfg.num_queues;
    r.seed = cfg.seed;
    r.link_rate_bps = cfg.link.rate_bps;
    r.duration = cfg.duration;
    r.queues.resize(cfg.num_queues);
    for (std::size_t i = 0; i < cfg.num_queues; ++i) r.queues[i].index = i;
    r.flow_delivered_bits.assign(cfg.flows.size(), 0);
  }

  RunResult run(std::span<const traffic::Arrival> arrivals) {
    constexpr double kNever = std::numeric_limits<double>::infinity();
    std::size_t next = 0;
    for (;;) {
      const SimTime t_arrival = next < arrivals.size() ? arrivals[next].time : kNever;
      const SimTime t_done = in_flight_ ? in_flight_->done : kNever;
      const SimTime now = std::min(t_arrival, t_done);
      if (now == kNever || now > cfg_.duration) break;
      if (now < clock_) throw std::logic_error("arrival sequence is not time-ordered");
      sample_until(now);
      clock_ = now;

      // Same-instant events: every arrival, then the completion, then one decision.
      while (next < arrivals.size() && arrivals[next].time == now) on_arrival(arrivals[next++]);
      if (in_flight_ && in_flight_->done == now) on_complete();
      if (!in_flight_) dispatch();
      if (!in_flight_) {
        if (all_empty()) {
          scheduler_.on_idle(now);
        } else {
          ++result_.report.work_conservation_violations;
        }
      }
    }
    sample_until(std::nextafter(cfg_.duration, kNever));
    finish();
    return std::move(result_);
  }

 private:
  void on_arrival(const traffic::Arrival& a) {
    auto it = flows_.find(a.flow_id);
    if (it == flows_.end()) throw std::logic_error("arrival for unknown flow");
    const FlowSlot& slot = it->second;
    Packet p;
    p.id = next_packet_id_++;
    p.flow_id = a.flow_id;
    p.qos = slot.qos;
    p.precedence = slot.precedence;
    p.size_bytes = a.size_bytes;
    p.arrival_time = clock_;

    auto& qb = result_.report.queues[slot.queue];
    auto& cb = result_.report.classes[index_of(p.qos)];
    ++qb.arrivals;
    qb.offered_bits += packet_bits(p);
    ++cb.arrivals;
    cb.offered_bits += packet_bits(p);

    auto& q = queues_[slot.queue];
    if (q.would_accept(p)) scheduler_.on_arrival(p, slot.queue, clock_);
    q.enqueue(std::move(p), clock_);
  }

  void on_complete() {
    InFlight done = std::move(*in_flight_);
    in_flight_.reset();
    done.packet.delivery_time = done.done;
    const auto bits = packet_bits(done.packet);
    auto& r = result_.report;
    ++r.total_delivered;
    r.delivered_bits += bits;
    delay_sum_ += end_to_end_delay(done.packet);
    ++r.queues[done.queue].delivered;
    r.queues[done.queue].delivered_bits += bits;
    ++r.classes[index_of(done.packet.qos)].delivered;
    r.classes[index_of(done.packet.qos)].delivered_bits += bits;
    r.flow_delivered_bits[flows_.at(done.packet.flow_id).ordinal] += bits;
  }

  void dispatch() {
    auto choice = scheduler_.select(queues_);
    if (!choice) return;
    auto p = queues_[*choice].dequeue(clock_);
    if (!p) throw std::logic_error("scheduler picked an empty queue");
    scheduler_.on_dequeue(*p);
    if (cfg_.record_service_order) result_.service_order.push_back({p->id, *choice, clock_});
    const SimTime done = clock_ + static_cast<double>(packet_bits(*p)) / cfg_.link.rate_bps;
    in_flight_ = InFlight{std::move(*p), *choice, done};
  }

  bool all_empty() const {
    return std::all_of(queues_.begin(), queues_.end(), [](const auto& q) { return q.empty(); });
  }

  // Snapshots at k * interval reflect every event at or before that instant.
  void sample_until(SimTime now) {
    if (cfg_.occupancy_interval <= 0.0) return;
    for (;;) {
      const SimTime s = static_cast<double>(next_sample_) * cfg_.occupancy_interval;
      if (s >= now || s > cfg_.duration) return;
      for (const auto& q : queues_) result_.occupancy.push_back({s, q.index(), q.occupied_bytes()});
      ++next_sample_;
    }
  }

  void finish() {
    auto& r = result_.report;
    double wait_sum = 0.0;
    std::uint64_t served = 0;
    for (auto& q : queues_) {
      q.advance_to(cfg_.duration);
      auto& b = r.queues[q.index()];
      b.accepted = q.accepted();
      b.dropped = q.drops();
      b.served = q.served();
      b.resident = q.size() + (in_flight_ && in_flight_->queue == q.index() ? 1 : 0);
      b.peak_bytes = q.peak_bytes();
      b.avg_queue_length = average_queue_length(q, cfg_.duration);
      b.avg_time_in_queue = average_time_in_queue(q);
      b.total_wait = q.total_wait();

      r.total_arrivals += b.arrivals;
      r.total_dropped += b.dropped;
      r.total_resident += b.resident;
      r.peak_queue_bytes += b.peak_bytes;
      r.avg_queue_length += b.avg_queue_length;
      wait_sum += q.total_wait();
      served += q.served();
    }
    r.server_throughput = metrics::server_throughput(r.delivered_bits, cfg_.duration);
    r.avg_end_to_end_delay =
        r.total_delivered > 0 ? delay_sum_ / static_cast<double>(r.total_delivered) : 0.0;
    r.avg_time_in_queue = served > 0 ? wait_sum / static_cast<double>(served) : 0.0;
    r.jain_fairness = metrics::fairness_of(r, cfg_.fairness);
  }

  const RunConfig& cfg_;
  sched::Scheduler scheduler_;
  std::vector<BoundedQueue> queues_;
  std::unordered_map<FlowId, FlowSlot> flows_;
  std::optional<InFlight> in_flight_;
  SimTime clock_ = 0.0;
  PacketId next_packet_id_ = 0;
  std::uint64_t next_sample_ = 0;
  double delay_sum_ = 0.0;
  RunResult result_;
};

}  // namespace

RunResult simulate(const RunConfig& cfg, std::span<const traffic::Arrival> arrivals) {
  cfg.validate();
  return Engine(cfg).run(arrivals);
}

metrics::MetricsReport run(const RunConfig& cfg) {
  cfg.validate();
  const auto arrivals = traffic::generate_all(cfg.flows, cfg.duration);
  return Engine(cfg).run(arrivals).report;
}

}  // namespace wimax
