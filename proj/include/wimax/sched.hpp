#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "wimax/core.hpp"
#include "wimax/queueing.hpp"

namespace wimax::sched {

enum class SchedulerKind : std::uint8_t { SP, RR, WRR, WFQ, SCF, DS };

inline constexpr std::array<SchedulerKind, 6> kAllSchedulers = {
    SchedulerKind::SP,  SchedulerKind::RR,  SchedulerKind::WRR,
    SchedulerKind::WFQ, SchedulerKind::SCF, SchedulerKind::DS};

std::string_view to_string(SchedulerKind k);
std::optional<SchedulerKind> parse_scheduler(std::string_view s);

using QueueSet = std::span<const BoundedQueue>;

/// Strictly positive per-queue weights.
class WeightVector {
 public:
  WeightVector() = default;
  explicit WeightVector(std::vector<double> weights);

  /// 1, 2, ..., n: queue 0 lowest.
  static WeightVector monotone(std::size_t n);

  std::size_t size() const { return weights_.size(); }
  double operator[](std::size_t i) const { return weights_[i]; }
  std::span<const double> values() const { return weights_; }

 private:
  std::vector<double> weights_;
};

// ---------------------------------------------------------------------------
// Strict priority and round robin

std::optional<std::size_t> sp_select(QueueSet queues);

struct RrDecision {
  std::optional<std::size_t> queue;
  std::size_t pointer;
};

/// Circular scan starting after `pointer`.
RrDecision rr_select(QueueSet queues, std::size_t pointer);

// ---------------------------------------------------------------------------
// Weighted round robin (packet credits)

struct WrrState {
  std::size_t current_queue = 0;
  std::uint64_t remaining_credit = 0;

  /// State whose first decision lands on queue 0, matching a fresh RR pointer.
  static WrrState initial(std::size_t num_queues) { return {num_queues - 1, 0}; }
};

/// Smallest integer vector proportional to the weights. Scaling the weights
/// leaves the quanta unchanged; all-equal weights yield all ones.
std::vector<std::uint64_t> wrr_quanta(const WeightVector& w);

struct WrrDecision {
  std::optional<std::size_t> queue;
  WrrState state;
};

WrrDecision wrr_select(QueueSet queues, WrrState state, std::span<const std::uint64_t> quanta);

/// WRR restricted to the queues flagged in `eligible`.
WrrDecision wrr_select(QueueSet queues, WrrState state, std::span<const std::uint64_t> quanta,
                       const std::vector<bool>& eligible);

// ---------------------------------------------------------------------------
// Fair queuing (WFQ with GPS virtual time, SCFQ with self-clocked anchor)

struct FairQueueState {
  explicit FairQueueState(std::size_t num_queues) : last_finish_tag(num_queues, 0.0) {}

  double virtual_time = 0.0;
  SimTime last_real_time = 0.0;
  std::vector<double> last_finish_tag;
  std::unordered_map<PacketId, double> finish_tags;
  std::optional<double> in_service_finish_tag;

  /// End of a busy period: virtual clock and per-queue tags restart at zero.
  void reset_idle(SimTime now);
};

/// Advances V to `now`. While the fluid system holds work V grows at
/// link_rate / (sum of weights of queues whose last finish tag exceeds V);
/// the rate changes whenever V crosses one of those tags.
double gps_virtual_time(FairQueueState& state, SimTime now, double link_rate,
                        const WeightVector& w);

double wfq_on_arrival(FairQueueState& state, const Packet& p, std::size_t qidx,
                      const WeightVector& w, SimTime now, double link_rate);

/// Anchors on the finish tag of the packet in service instead of V(t).
double scf_on_arrival(FairQueueState& state, const Packet& p, std::size_t qidx,
                      const WeightVector& w);

/// Smallest head finish tag; ties go to the higher queue index. Throws
/// std::logic_error when a nonempty head carries no tag.
std::optional<std::size_t> wfq_select(QueueSet queues, const FairQueueState& state);

// ---------------------------------------------------------------------------
// DiffServ composite: expedited tier by strict priority, assured tier by WRR

struct PhbMap {
  std::vector<bool> expedited;

  /// Queues whose lowest mapped precedence is >= 5 (class selector CS5 and up).
  static PhbMap for_queues(std::size_t num_queues);
};

struct DsDecision {
  std::optional<std::size_t> queue;
  WrrState assured_state;
};

DsDecision ds_select(QueueSet queues, WrrState assured_state,
                     std::span<const std::uint64_t> quanta, const PhbMap& phb);

// ---------------------------------------------------------------------------

/// Owns the per-run state of one discipline and exposes the hooks the engine
/// drives: admission tagging, selection, dequeue bookkeeping, and idle reset.
class Scheduler {
 public:
  Scheduler(SchedulerKind kind, WeightVector weights, double link_rate);

  SchedulerKind kind() const { return kind_; }
  const WeightVector& weights() const { return weights_; }

  /// Called for every admitted packet before it enters its queue.
  void on_arrival(const Packet& p, std::size_t qidx, SimTime now);
  std::optional<std::size_t> select(QueueSet queues);
  void on_dequeue(const Packet& p);
  /// Server idle and every queue empty.
  void on_idle(SimTime now);

  const FairQueueState* fair_state() const { return fair_ ? &*fair_ : nullptr; }

 private:
  SchedulerKind kind_;
  WeightVector weights_;
  double link_rate_;
  std::size_t rr_pointer_;
  WrrState wrr_;
  std::vector<std::uint64_t> quanta_;
  PhbMap phb_;
  std::optional<FairQueueState> fair_;
};

}  // namespace wimax::sched
