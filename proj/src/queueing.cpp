#include "wimax/queueing.hpp"

#include <algorithm>
#include <stdexcept>

namespace wimax {

BoundedQueue::BoundedQueue(std::size_t index, std::uint64_t capacity_bytes)
    : index_(index), capacity_bytes_(capacity_bytes) {
  if (capacity_bytes == 0) throw std::invalid_argument("queue capacity must be positive");
}

void BoundedQueue::advance_to(SimTime now) {
  if (now < last_change_time_) throw std::logic_error("queue clock moved backwards");
  byte_time_integral_ += static_cast<double>(occupied_bytes_) * (now - last_change_time_);
  last_change_time_ = now;
}

EnqueueResult BoundedQueue::enqueue(Packet p, SimTime now) {
  if (!would_accept(p)) {
    if (now < last_change_time_) throw std::logic_error("queue clock moved backwards");
    ++drops_;
    return EnqueueResult::Dropped;
  }
  advance_to(now);
  p.enqueue_time = now;
  occupied_bytes_ += p.size_bytes;
  peak_bytes_ = std::max(peak_bytes_, occupied_bytes_);
  ++accepted_;
  packets_.push_back(std::move(p));
  return EnqueueResult::Accepted;
}

std::optional<Packet> BoundedQueue::dequeue(SimTime now) {
  if (packets_.empty()) return std::nullopt;
  advance_to(now);
  Packet p = std::move(packets_.front());
  packets_.pop_front();
  occupied_bytes_ -= p.size_bytes;
  p.dequeue_time = now;
  total_wait_ += now - p.enqueue_time.value_or(now);
  ++served_;
  return p;
}

double average_queue_length(const BoundedQueue& q, SimTime horizon) {
  if (!(horizon > 0.0)) throw std::invalid_argument("average_queue_length: horizon must be > 0");
  const double tail = horizon > q.last_change_time()
                          ? static_cast<double>(q.occupied_bytes()) * (horizon - q.last_change_time())
                          : 0.0;
  return (q.byte_time_integral() + tail) / horizon;
}

double average_time_in_queue(const BoundedQueue& q) {
  return q.served() > 0 ? q.total_wait() / static_cast<double>(q.served()) : 0.0;
}

}  // namespace wimax
