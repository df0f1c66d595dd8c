#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

#include "wimax/core.hpp"

namespace wimax::classify {

/// 6-bit DiffServ codepoint.
class Dscp {
 public:
  constexpr explicit Dscp(int v) : value_(checked(v)) {}
  constexpr int value() const { return value_; }
  friend constexpr auto operator<=>(Dscp, Dscp) = default;

 private:
  static constexpr std::uint8_t checked(int v) {
    if (v < 0 || v > 63) throw std::out_of_range("DSCP must be in [0, 63]");
    return static_cast<std::uint8_t>(v);
  }
  std::uint8_t value_;
};

/// Precedence values carried by each service class, ascending.
///   BE -> {0}, nrtPS -> {1, 2, 6}, rtPS -> {3}, ertPS -> {4}, UGS -> {5, 7}
std::span<const Precedence> precedences_of(QosClass qos);

/// Flows of a multi-valued class cycle through its precedence set by ordinal.
Precedence assign_precedence(QosClass qos, std::size_t flow_ordinal);

/// Service class owning a precedence value (inverse of precedences_of).
QosClass class_of(Precedence p);

/// Class-selector codepoint: precedence in the top three bits.
constexpr Dscp dscp_of(Precedence p) { return Dscp(p.value() << 3); }

/// Output queue for a precedence. With fewer than eight queues the top
/// precedences share the highest queue; with eight or more the mapping is the
/// identity and surplus queues stay empty. Higher index means higher priority.
std::size_t queue_index(Precedence p, std::size_t num_queues);

/// Lowest precedence that maps to `queue`, or the queue index itself when no
/// precedence lands there.
int lowest_precedence_in_queue(std::size_t queue, std::size_t num_queues);

}  // namespace wimax::classify
