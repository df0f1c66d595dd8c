#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "wimax/report_io.hpp"

using namespace wimax;

namespace {

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::size_t commas(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), ',')); }

metrics::MetricsReport sample_report() {
  metrics::MetricsReport r;
  r.scheduler = sched::SchedulerKind::WFQ;
  r.queue_capacity_bytes = 1280000;
  r.num_queues = 2;
  r.seed = 7;
  r.server_throughput = 106933.0;
  r.avg_end_to_end_delay = 2.28231;
  r.peak_queue_bytes = 1000;
  r.avg_queue_length = 12.5;
  r.avg_time_in_queue = 1.504912;
  r.total_dropped = 3;
  r.jain_fairness = 0.5;
  r.total_arrivals = 10;
  r.total_delivered = 7;
  r.queues.resize(2);
  r.queues[1].index = 1;
  return r;
}

}  // namespace

TEST_CASE("report.csv schema") {
  const auto cols = io::report_columns();
  REQUIRE(cols.size() == 13);
  CHECK(cols.front() == "scheduler");
  CHECK(cols.back() == "delivered_packets");
  const auto r = sample_report();
  std::ostringstream os;
  io::write_report_csv(os, std::span(&r, 1));
  const auto ls = lines(os.str());
  REQUIRE(ls.size() == 2);
  CHECK(ls[0] ==
        "scheduler,queue_capacity_bytes,num_queues,seed,server_throughput_bps,"
        "avg_end_to_end_delay_s,peak_queue_bytes,avg_queue_length_bytes,avg_time_in_queue_s,"
        "total_dropped,jain_fairness,arrived_packets,delivered_packets");
  CHECK(ls[1] == "WFQ,1280000,2,7,106933,2.28231,1000,12.5,1.504912,3,0.5,10,7");
}

TEST_CASE("numbers print in shortest round-trip form") {
  CHECK(io::format_number(0.1) == "0.1");
  CHECK(io::format_number(1.0 / 3.0) == "0.3333333333333333");
  CHECK(io::format_number(500000.0) == "500000");
  CHECK(std::stod(io::format_number(2.0 / 7.0)) == 2.0 / 7.0);
}

TEST_CASE("queues, verdicts and occupancy files") {
  const auto r = sample_report();
  std::ostringstream q;
  io::write_queues_csv(q, std::span(&r, 1));
  const auto ql = lines(q.str());
  REQUIRE(ql.size() == 3);
  CHECK(commas(ql[0]) == commas(ql[1]));
  CHECK(ql[2].rfind("0,WFQ,1280000,2,1,", 0) == 0);

  std::vector<scenarios::TrendVerdict> vs{
      {"A1", "has, a comma", scenarios::VerdictStatus::Pass, "x=\"1\"", "<= 0.05"}};
  std::ostringstream v;
  io::write_verdicts_csv(v, vs);
  CHECK(v.str() ==
        "claim,status,measured,tolerance,description\n"
        "A1,pass,\"x=\"\"1\"\"\",<= 0.05,\"has, a comma\"\n");

  std::vector<OccupancySample> occ{{0.0, 0, 0}, {0.1, 1, 250}};
  std::ostringstream o;
  io::write_occupancy_csv(o, occ);
  CHECK(o.str() == "time_s,queue,bytes\n0,0,0\n0.1,1,250\n");
  CHECK(io::occupancy_file_name(sched::SchedulerKind::DS, 128000) == "queue_occupancy_DS_128000.csv");
}

TEST_CASE("metric-vs-axis files are axis rows by scheduler columns") {
  RunConfig base;
  auto sweep = scenarios::make_sweep(scenarios::SweepName::QueueSize, base);
  const auto pts = scenarios::build_sweep(sweep);
  std::vector<metrics::MetricsReport> reports;
  for (const auto& p : pts) {
    metrics::MetricsReport r;
    r.scheduler = p.cfg.scheduler;
    r.total_dropped = 12800000 / p.axis_value;
    reports.push_back(r);
  }
  const auto dir = std::filesystem::temp_directory_path() / "wimax_metric_vs_axis";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const auto written = io::write_metric_vs_axis(dir, sweep, pts, reports);
  CHECK(written.size() == 7);
  std::ifstream f(dir / "total_dropped_vs_queue_size.csv");
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str() ==
        "queue_size,SP,RR,WRR,WFQ,SCF,DS\n"
        "128000,100,100,100,100,100,100\n"
        "1280000,10,10,10,10,10,10\n"
        "12800000,1,1,1,1,1,1\n");
  std::filesystem::remove_all(dir);
}
