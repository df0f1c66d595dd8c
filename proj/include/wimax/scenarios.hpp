#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wimax/engine.hpp"
#include "wimax/metrics.hpp"
#include "wimax/sched.hpp"

namespace wimax::scenarios {

enum class SweepName : std::uint8_t { QueueSize, QueueCount };

std::string_view to_string(SweepName n);
/// Throws ConfigError("name", ...) for anything but queue_size / queue_count.
SweepName parse_sweep_name(std::string_view s);

/// One experiment axis crossed with a set of schedulers.
struct Sweep {
  SweepName name = SweepName::QueueSize;
  std::vector<std::uint64_t> axis;
  std::vector<sched::SchedulerKind> schedulers{sched::kAllSchedulers.begin(),
                                              sched::kAllSchedulers.end()};
  RunConfig base;
};

/// Queue sizes 128000, 1280000, 12800000 bytes; queue counts 6, 8, 10.
std::vector<std::uint64_t> default_axis(SweepName name);

Sweep make_sweep(SweepName name, RunConfig base);

struct SweepPoint {
  std::uint64_t axis_value = 0;
  RunConfig cfg;
};

/// Axis-major cross product. Every point keeps the base seed and flows; the
/// size sweep pins 8 queues, the count sweep pins 1280000-byte queues and
/// uses the monotone weight rule for each count.
std::vector<SweepPoint> build_sweep(const Sweep& sweep);

struct SweepResult {
  std::vector<SweepPoint> points;
  std::vector<RunResult> runs;
};

/// Runs every point over one shared arrival sequence, up to `jobs` at a time
/// (0 lets the runtime decide).
SweepResult run_sweep(const Sweep& sweep, int jobs = 0);

/// Reference path: one run after another on the calling thread.
SweepResult run_sweep_serial(const Sweep& sweep);

// ---------------------------------------------------------------------------

enum class VerdictStatus : std::uint8_t { Pass, Fail, NotApplicable };
std::string_view to_string(VerdictStatus s);

struct TrendVerdict {
  std::string claim;
  std::string description;
  VerdictStatus status = VerdictStatus::NotApplicable;
  std::string measured;
  std::string tolerance;
};

/// Relative spread (max - min) / mean; 0 for an all-zero series.
double relative_spread(std::span<const double> xs);

inline constexpr double kInvarianceTolerance = 0.05;
inline constexpr double kResidualDropFraction = 0.05;
inline constexpr double kOverloadFactor = 1.5;
inline constexpr double kStarvedShare = 0.05;
inline constexpr double kProtectedShare = 0.90;
inline constexpr double kRrFairnessFloor = 0.99;

/// Claims A1..A7 in order. A6 and A7 run their own synthetic instances.
/// Throws std::invalid_argument naming the missing (axis, scheduler) pairs
/// when the reports do not cover the sweep.
std::vector<TrendVerdict> evaluate_trends(const Sweep& sweep,
                                          std::span<const SweepPoint> points,
                                          std::span<const metrics::MetricsReport> reports);

// ---------------------------------------------------------------------------
// Synthetic instances

/// One flow per queue (precedence = queue index, up to 8 queues) with
/// `packets_per_queue` packets of `packet_bytes` each, all arriving at t = 0.
struct BackloggedInstance {
  RunConfig cfg;
  std::vector<traffic::Arrival> arrivals;
};

BackloggedInstance backlogged_instance(sched::SchedulerKind kind, std::vector<double> weights,
                                       std::uint32_t packet_bytes, std::size_t packets_per_queue,
                                       double link_rate_bps, SimTime duration);

struct ShareCheck {
  bool pass = false;
  std::vector<double> delivered_bits;
  double max_deviation_bits = 0.0;
  double tolerance_bits = 0.0;
};

/// Weights {1, 2, 4} on three backlogged queues with equal packets.
ShareCheck weighted_share_check(sched::SchedulerKind kind);

struct FairnessCheck {
  bool pass = false;
  double rr_fairness = 0.0;
  double sp_fairness = 0.0;
};

/// Eight equally backlogged queues under RR and SP.
FairnessCheck rr_fairness_check();

}  // namespace wimax::scenarios
