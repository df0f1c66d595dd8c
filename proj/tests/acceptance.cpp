// Acceptance report: one line per criterion, nonzero exit if any fails.
//
// A1-A7 come from the queue-size sweep of the shipped default scenario.
// P1-P5 are checked over every run of both shipped sweeps plus randomized
// small instances compared against the reference models in oracles/.

#include <chrono>
#include <cstdio>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "support.hpp"
#include "wimax/report_io.hpp"
#include "wimax/scenario_file.hpp"
#include "wimax/scenarios.hpp"

using namespace wimax;
using sched::SchedulerKind;

namespace {

constexpr int kOracleInstances = 200;
constexpr int kDegeneracyInstances = 200;
constexpr std::uint64_t kRobustnessSeeds = 20;
constexpr double kOracleRate = 100000.0;

int failures = 0;

void report_line(const std::string& id, bool pass, const std::string& what,
                 const std::string& measured, const std::string& tolerance) {
  if (!pass) ++failures;
  fmt::print("{:<3} {}  {}\n      measured: {}\n      tolerance: {}\n", id, pass ? "PASS" : "FAIL",
             what, measured, tolerance);
}

std::string report_csv(const scenarios::SweepResult& r) {
  std::vector<metrics::MetricsReport> reports;
  for (const auto& run : r.runs) reports.push_back(run.report);
  std::ostringstream os;
  io::write_report_csv(os, reports);
  io::write_queues_csv(os, reports);
  return os.str();
}

struct Conservation {
  std::size_t runs = 0;
  std::size_t broken = 0;
  std::uint64_t violations = 0;

  void add(const metrics::MetricsReport& r) {
    ++runs;
    bool ok = r.total_arrivals == r.total_delivered + r.total_dropped + r.total_resident;
    for (const auto& q : r.queues) ok = ok && q.arrivals == q.delivered + q.dropped + q.resident;
    if (!ok) ++broken;
    violations += r.work_conservation_violations;
  }
};


}  // namespace

int main() {
  const std::string dir = WIMAX_SCENARIO_DIR;
  const auto size_scenario = load_scenario(dir + "/default.ini");
  const auto count_scenario = load_scenario(dir + "/queue_count.ini");
  const auto size_sweep = size_scenario.sweep(scenarios::SweepName::QueueSize);
  const auto count_sweep = count_scenario.sweep(scenarios::SweepName::QueueCount);

  const auto t0 = std::chrono::steady_clock::now();
  const auto size_runs = scenarios::run_sweep(size_sweep);
  const double sweep_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const auto count_runs = scenarios::run_sweep(count_sweep);

  std::vector<metrics::MetricsReport> size_reports;
  for (const auto& r : size_runs.runs) size_reports.push_back(r.report);
  const auto verdicts = scenarios::evaluate_trends(size_sweep, size_runs.points, size_reports);

  fmt::print("acceptance: scenario default.ini, seed {}, {} runs x {} s simulated ({:.2f} s wall)\n\n",
             size_sweep.base.seed, size_runs.runs.size(), size_sweep.base.duration, sweep_seconds);

  for (const auto& v : verdicts) {
    report_line(v.claim, v.status == scenarios::VerdictStatus::Pass, v.description, v.measured,
                v.tolerance);
  }

  // P1, P2: every sweep run plus the backlogged instances behind A6/A7.
  Conservation cons;
  for (const auto* res : {&size_runs, &count_runs}) {
    for (const auto& r : res->runs) cons.add(r.report);
  }
  for (auto kind : sched::kAllSchedulers) {
    auto inst = scenarios::backlogged_instance(kind, {1, 2, 4}, 125, 100, 1000.0, 70.0);
    cons.add(simulate(inst.cfg, inst.arrivals).report);
  }

  // P3: randomized instances against the fluid-GPS and self-clocked references.
  std::mt19937_64 rng(20240601);
  int wfq_match = 0;
  int scf_match = 0;
  for (int i = 0; i < kOracleInstances; ++i) {
    const auto inst = testing_support::random_instance(rng, i % 5 == 0);
    const auto wfq = testing_support::engine_order(SchedulerKind::WFQ, inst.weights, inst.pkts, kOracleRate);
    const auto scf = testing_support::engine_order(SchedulerKind::SCF, inst.weights, inst.pkts, kOracleRate);
    if (wfq == oracle::wfq_order(inst.pkts, inst.weights, kOracleRate)) ++wfq_match;
    if (scf == oracle::scfq_order(inst.pkts, inst.weights, kOracleRate)) ++scf_match;
    auto cfg = testing_support::instance_config(SchedulerKind::WFQ, inst.weights, kOracleRate, 10.0);
    cons.add(simulate(cfg, testing_support::to_arrivals(inst.pkts)).report);
  }

  report_line("P1", cons.broken == 0, "arrivals = delivered + dropped + resident, per queue and in total",
              fmt::format("{} of {} runs broken", cons.broken, cons.runs), "exact");
  report_line("P2", cons.violations == 0, "server never idle while a queue holds a packet",
              fmt::format("{} violations over {} runs", cons.violations, cons.runs), "0");
  report_line("P3", wfq_match == kOracleInstances && scf_match == kOracleInstances,
              "WFQ order = fluid GPS reference; SCFQ order = self-clocked tag reference",
              fmt::format("WFQ {}/{}, SCFQ {}/{} instances (<=10 packets, <=3 queues)", wfq_match,
                          kOracleInstances, scf_match, kOracleInstances),
              "exact order match on every instance");

  // P4: repeat both sweeps, once through the serial reference path.
  const bool size_same = report_csv(size_runs) == report_csv(scenarios::run_sweep(size_sweep)) &&
                         report_csv(size_runs) == report_csv(scenarios::run_sweep_serial(size_sweep));
  const bool count_same = report_csv(count_runs) == report_csv(scenarios::run_sweep(count_sweep)) &&
                          report_csv(count_runs) == report_csv(scenarios::run_sweep_serial(count_sweep));
  report_line("P4", size_same && count_same, "same seed reproduces report.csv byte for byte",
              fmt::format("queue_size {}, queue_count {} (parallel, parallel, serial)",
                          size_same ? "identical" : "DIFFERENT", count_same ? "identical" : "DIFFERENT"),
              "byte-identical");

  // P5: equal-weight WRR against RR on backlogged queues, WFQ against SCFQ
  // on idle-start instances.
  int wrr_rr = 0;
  int wrr_rr_total = 0;
  std::uniform_int_distribution<int> bytes(40, 1500);
  for (std::size_t n = 1; n <= 8; ++n) {
    for (double w : {1.0, 2.5, 7.0}) {
      auto rr = testing_support::instance_config(SchedulerKind::RR, std::vector<double>(n, w), 1e6, 1.0);
      auto wrr = rr;
      wrr.scheduler = SchedulerKind::WRR;
      std::vector<traffic::Arrival> as;
      for (int k = 0; k < 40; ++k) {
        for (std::size_t q = 0; q < n; ++q) {
          as.push_back({0.0, static_cast<std::uint32_t>(bytes(rng)), static_cast<FlowId>(q)});
        }
      }
      const auto a = simulate(rr, as);
      const auto b = simulate(wrr, as);
      ++wrr_rr_total;
      if (a.service_order == b.service_order && !a.service_order.empty()) ++wrr_rr;
    }
  }
  int fq = 0;
  for (int i = 0; i < kDegeneracyInstances; ++i) {
    const auto inst = testing_support::random_instance(rng, true);
    if (testing_support::engine_order(SchedulerKind::WFQ, inst.weights, inst.pkts, kOracleRate) ==
        testing_support::engine_order(SchedulerKind::SCF, inst.weights, inst.pkts, kOracleRate)) {
      ++fq;
    }
  }
  report_line("P5", wrr_rr == wrr_rr_total && fq == kDegeneracyInstances,
              "equal-weight WRR = RR; WFQ = SCFQ when every arrival finds an idle system",
              fmt::format("WRR/RR {}/{} configurations, WFQ/SCFQ {}/{} instances", wrr_rr,
                          wrr_rr_total, fq, kDegeneracyInstances),
              "exact service-sequence match");

  // Not a criterion: how many nearby seeds the trend claims survive.
  std::uint64_t robust = 0;
  for (std::uint64_t s = 1; s <= kRobustnessSeeds; ++s) {
    auto sc = size_scenario;
    sc.run.seed = s;
    const auto sw = sc.sweep(scenarios::SweepName::QueueSize);
    const auto res = scenarios::run_sweep(sw);
    std::vector<metrics::MetricsReport> rs;
    for (const auto& r : res.runs) rs.push_back(r.report);
    bool all = true;
    for (const auto& v : scenarios::evaluate_trends(sw, res.points, rs)) {
      all = all && v.status == scenarios::VerdictStatus::Pass;
    }
    if (all) ++robust;
  }
  fmt::print("\ninfo: A1-A7 all pass for {}/{} alternative seeds (1..{})\n", robust,
             kRobustnessSeeds, kRobustnessSeeds);

  fmt::print("\n{} criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
