#include "wimax/report_io.hpp"

#include <fstream>
#include <map>
#include <stdexcept>

#include <fmt/format.h>
#include <fmt/ostream.h>

namespace wimax::io {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::ofstream open_for_write(const std::filesystem::path& p) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error(fmt::format("cannot write '{}'", p.string()));
  return f;
}

}  // namespace

std::string format_number(double v) { return fmt::format("{}", v); }

std::vector<std::string> report_columns() {
  return {"scheduler",           "queue_capacity_bytes",   "num_queues",
          "seed",                "server_throughput_bps",  "avg_end_to_end_delay_s",
          "peak_queue_bytes",    "avg_queue_length_bytes", "avg_time_in_queue_s",
          "total_dropped",       "jain_fairness",          "arrived_packets",
          "delivered_packets"};
}

void write_report_csv(std::ostream& out, std::span<const metrics::MetricsReport> reports) {
  out << fmt::format("{}\n", fmt::join(report_columns(), ","));
  for (const auto& r : reports) {
    out << fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{}\n", sched::to_string(r.scheduler),
                       r.queue_capacity_bytes, r.num_queues, r.seed,
                       format_number(r.server_throughput), format_number(r.avg_end_to_end_delay),
                       r.peak_queue_bytes, format_number(r.avg_queue_length),
                       format_number(r.avg_time_in_queue), r.total_dropped,
                       format_number(r.jain_fairness), r.total_arrivals, r.total_delivered);
  }
}

void write_queues_csv(std::ostream& out, std::span<const metrics::MetricsReport> reports) {
  out << "run,scheduler,queue_capacity_bytes,num_queues,queue,arrivals,accepted,dropped,served,"
         "delivered,resident,offered_bits,delivered_bits,peak_bytes,avg_queue_length_bytes,"
         "avg_time_in_queue_s\n";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    for (const auto& q : r.queues) {
      out << fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", i,
                         sched::to_string(r.scheduler), r.queue_capacity_bytes, r.num_queues,
                         q.index, q.arrivals, q.accepted, q.dropped, q.served, q.delivered,
                         q.resident, q.offered_bits, q.delivered_bits, q.peak_bytes,
                         format_number(q.avg_queue_length), format_number(q.avg_time_in_queue));
    }
  }
}

void write_verdicts_csv(std::ostream& out, std::span<const scenarios::TrendVerdict> verdicts) {
  out << "claim,status,measured,tolerance,description\n";
  for (const auto& v : verdicts) {
    out << fmt::format("{},{},{},{},{}\n", v.claim, scenarios::to_string(v.status),
                       csv_field(v.measured), csv_field(v.tolerance), csv_field(v.description));
  }
}

void write_occupancy_csv(std::ostream& out, std::span<const OccupancySample> samples) {
  out << "time_s,queue,bytes\n";
  for (const auto& s : samples) {
    out << fmt::format("{},{},{}\n", format_number(s.time), s.queue, s.bytes);
  }
}

std::vector<std::filesystem::path> write_metric_vs_axis(
    const std::filesystem::path& dir, const scenarios::Sweep& sweep,
    std::span<const scenarios::SweepPoint> points,
    std::span<const metrics::MetricsReport> reports) {
  if (points.size() != reports.size()) throw std::invalid_argument("points/reports mismatch");
  std::map<std::pair<std::uint64_t, sched::SchedulerKind>, const metrics::MetricsReport*> cell;
  for (std::size_t i = 0; i < points.size(); ++i) {
    cell[{points[i].axis_value, reports[i].scheduler}] = &reports[i];
  }
  const std::string axis_name(scenarios::to_string(sweep.name));
  std::vector<std::filesystem::path> written;
  for (auto metric : {MetricName::ServerThroughput, MetricName::AvgEndToEndDelay,
                      MetricName::PeakQueueSize, MetricName::AvgQueueLength,
                      MetricName::AvgTimeInQueue, MetricName::TotalDropped,
                      MetricName::JainFairness}) {
    const auto path = dir / fmt::format("{}_vs_{}.csv", to_string(metric), axis_name);
    auto f = open_for_write(path);
    f << axis_name;
    for (auto k : sweep.schedulers) f << ',' << sched::to_string(k);
    f << '\n';
    for (auto v : sweep.axis) {
      f << v;
      for (auto k : sweep.schedulers) {
        f << ',';
        auto it = cell.find({v, k});
        if (it == cell.end()) continue;
        for (const auto& s : it->second->samples()) {
          if (s.metric == metric) f << format_number(s.value);
        }
      }
      f << '\n';
    }
    written.push_back(path);
  }
  return written;
}

std::string occupancy_file_name(sched::SchedulerKind kind, std::uint64_t axis_value) {
  return fmt::format("queue_occupancy_{}_{}.csv", sched::to_string(kind), axis_value);
}

}  // namespace wimax::io
