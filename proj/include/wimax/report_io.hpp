#pragma once

#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "wimax/engine.hpp"
#include "wimax/metrics.hpp"
#include "wimax/scenarios.hpp"

namespace wimax::io {

/// report.csv, schema v1. Column order is fixed:
/// scheduler, queue_capacity_bytes, num_queues, seed, server_throughput_bps,
/// avg_end_to_end_delay_s, peak_queue_bytes, avg_queue_length_bytes,
/// avg_time_in_queue_s, total_dropped, jain_fairness, arrived_packets,
/// delivered_packets
std::vector<std::string> report_columns();
void write_report_csv(std::ostream& out, std::span<const metrics::MetricsReport> reports);

/// queues.csv: one row per (run, queue).
void write_queues_csv(std::ostream& out, std::span<const metrics::MetricsReport> reports);

/// verdicts.csv: claim, status, measured, tolerance, description.
void write_verdicts_csv(std::ostream& out, std::span<const scenarios::TrendVerdict> verdicts);

/// time_s, queue, bytes
void write_occupancy_csv(std::ostream& out, std::span<const OccupancySample> samples);

/// Plot-ready files `<metric>_vs_<axis>.csv`: one row per axis value, one
/// column per scheduler in sweep order. Returns the paths written.
std::vector<std::filesystem::path> write_metric_vs_axis(
    const std::filesystem::path& dir, const scenarios::Sweep& sweep,
    std::span<const scenarios::SweepPoint> points,
    std::span<const metrics::MetricsReport> reports);

std::string occupancy_file_name(sched::SchedulerKind kind, std::uint64_t axis_value);

/// Shortest round-trip decimal form.
std::string format_number(double v);

}  // namespace wimax::io
