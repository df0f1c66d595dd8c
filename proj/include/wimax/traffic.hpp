#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "wimax/core.hpp"

namespace wimax::traffic {

enum class GeneratorKind : std::uint8_t { CBR, OnOffCBR, PeriodicVBR, Poisson };

std::string_view to_string(GeneratorKind k);
std::optional<GeneratorKind> parse_generator(std::string_view s);

/// Inclusive packet-size range in bytes; min == max means a fixed size.
struct SizeRange {
  std::uint32_t min = 0;
  std::uint32_t max = 0;

  double mean() const { return (static_cast<double>(min) + static_cast<double>(max)) / 2.0; }
  bool fixed() const { return min == max; }
};

/// Source model for one service flow.
///
/// `rate_bps` is the emission rate for CBR, the on-rate for OnOffCBR and the
/// mean rate for Poisson. PeriodicVBR emits one packet per `period_s` and its
/// rate follows from the mean packet size.
struct GeneratorProfile {
  GeneratorKind kind = GeneratorKind::CBR;
  double rate_bps = 0.0;
  SizeRange size;
  double period_s = 0.0;
  double mean_on_s = 0.0;
  double mean_off_s = 0.0;

  /// Spacing between packets for the periodic kinds.
  double interval_s() const;
  double mean_rate_bps() const;
  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// Shipped per-class source models.
GeneratorProfile profile_for(QosClass qos);

struct ServiceFlow {
  FlowId flow_id = 0;
  std::uint32_t station_id = 1;
  QosClass qos = QosClass::BE;
  Precedence precedence;
  GeneratorProfile profile;
  std::uint64_t seed = 0;
};

/// Per-flow stream seed; depends only on (scenario seed, flow id).
std::uint64_t flow_seed(std::uint64_t scenario_seed, FlowId flow_id);

struct Arrival {
  SimTime time = 0.0;
  std::uint32_t size_bytes = 0;
  FlowId flow_id = 0;

  friend bool operator==(const Arrival&, const Arrival&) = default;
};

/// Stateful, deterministic packet source for one flow.
class FlowSource {
 public:
  explicit FlowSource(const ServiceFlow& flow);

  /// Next arrival; times strictly increase across calls.
  Arrival next();

 private:
  std::uint32_t draw_size();

  ServiceFlow flow_;
  std::mt19937_64 rng_;
  std::uint64_t tick_ = 0;
  SimTime last_ = 0.0;
  SimTime burst_start_ = 0.0;
  SimTime burst_end_ = 0.0;
  bool started_ = false;
};

/// First arrival strictly after `after`, consuming the source up to it.
Arrival next_arrival(FlowSource& source, SimTime after);

/// Every arrival of one flow in (0, horizon].
std::vector<Arrival> generate(const ServiceFlow& flow, SimTime horizon);

/// All flows merged in (time, flow id) order. The parallel variant generates
/// flows concurrently and must produce the same sequence as the serial one.
std::vector<Arrival> generate_all_serial(std::span<const ServiceFlow> flows, SimTime horizon);
std::vector<Arrival> generate_all(std::span<const ServiceFlow> flows, SimTime horizon);

struct FlowLayout {
  std::array<std::uint32_t, 5> stations_per_class{8, 8, 8, 8, 8};
  std::array<GeneratorProfile, 5> profiles{profile_for(QosClass::UGS), profile_for(QosClass::ertPS),
                                           profile_for(QosClass::rtPS), profile_for(QosClass::nrtPS),
                                           profile_for(QosClass::BE)};

  std::uint32_t total_stations() const;
};

/// One flow per station; classes dealt round-robin over stations in the order
/// UGS, ertPS, rtPS, nrtPS, BE until each class has its station count.
std::vector<ServiceFlow> build_flows(const FlowLayout& layout, std::uint64_t scenario_seed);

/// Sum of mean rates, bit/s.
double offered_load_bps(std::span<const ServiceFlow> flows);

}  // namespace wimax::traffic
