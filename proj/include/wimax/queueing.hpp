#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>

#include "wimax/core.hpp"

namespace wimax {

enum class EnqueueResult : std::uint8_t { Accepted, Dropped };

/// Drop-tail FIFO bounded in bytes, with occupancy statistics.
///
/// A packet is admitted iff occupied + size <= capacity; an oversize arrival
/// is discarded whole. The occupancy integral is advanced lazily at every
/// state change and by `advance_to`.
class BoundedQueue {
 public:
  BoundedQueue(std::size_t index, std::uint64_t capacity_bytes);

  bool would_accept(const Packet& p) const {
    return occupied_bytes_ + p.size_bytes <= capacity_bytes_;
  }

  EnqueueResult enqueue(Packet p, SimTime now);
  std::optional<Packet> dequeue(SimTime now);

  /// Advances the occupancy integral without changing contents.
  void advance_to(SimTime now);

  const Packet* head() const { return packets_.empty() ? nullptr : &packets_.front(); }
  bool empty() const { return packets_.empty(); }
  std::size_t size() const { return packets_.size(); }

  std::size_t index() const { return index_; }
  std::uint64_t capacity_bytes() const { return capacity_bytes_; }
  std::uint64_t occupied_bytes() const { return occupied_bytes_; }
  std::uint64_t peak_bytes() const { return peak_bytes_; }
  double byte_time_integral() const { return byte_time_integral_; }
  SimTime last_change_time() const { return last_change_time_; }
  std::uint64_t drops() const { return drops_; }
  std::uint64_t accepted() const { return accepted_; }
  std::uint64_t served() const { return served_; }
  double total_wait() const { return total_wait_; }

 private:
  std::size_t index_;
  std::uint64_t capacity_bytes_;
  std::deque<Packet> packets_;
  std::uint64_t occupied_bytes_ = 0;
  std::uint64_t peak_bytes_ = 0;
  double byte_time_integral_ = 0.0;
  SimTime last_change_time_ = 0.0;
  std::uint64_t drops_ = 0;
  std::uint64_t accepted_ = 0;
  std::uint64_t served_ = 0;
  double total_wait_ = 0.0;
};

/// Time-weighted mean occupancy in bytes over [0, horizon].
/// Throws std::invalid_argument when horizon <= 0.
double average_queue_length(const BoundedQueue& q, SimTime horizon);

/// Mean waiting time of served packets, 0 when nothing was served.
double average_time_in_queue(const BoundedQueue& q);

}  // namespace wimax
