// wimaxsim: run single scenarios or the queue-size / queue-count sweeps and
// write CSV reports.
//
//   wimaxsim run   <scenario> --out <dir> [--seed N] [--scheduler K]
//   wimaxsim sweep <scenario> --name queue_size|queue_count --out <dir>
//                  [--seed N] [--scheduler K]... [--jobs N]
//
// Exit codes: 0 success, 1 usage, 2 invalid scenario, 3 runtime failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "wimax/report_io.hpp"
#include "wimax/scenario_file.hpp"
#include "wimax/scenarios.hpp"

namespace fs = std::filesystem;
using namespace wimax;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitRuntime = 3;

struct Options {
  std::string scenario;
  std::string out = "out";
  std::optional<std::uint64_t> seed;
  std::vector<std::string> schedulers;
  std::string sweep_name;
  int jobs = 0;
};

std::ofstream create(const fs::path& p) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  return f;
}

std::vector<sched::SchedulerKind> parse_schedulers(const std::vector<std::string>& names) {
  std::vector<sched::SchedulerKind> out;
  for (const auto& n : names) {
    auto k = sched::parse_scheduler(n);
    if (!k) throw ConfigError("--scheduler", "unknown scheduler '" + n + "'");
    out.push_back(*k);
  }
  return out;
}

Scenario load(const Options& o) {
  Scenario s = load_scenario(o.scenario);
  if (o.seed) s.run.seed = *o.seed;
  return s;
}

int cmd_run(const Options& o) {
  Scenario s = load(o);
  auto kinds = parse_schedulers(o.schedulers);
  if (kinds.size() > 1) throw ConfigError("--scheduler", "run accepts a single scheduler");
  if (!kinds.empty()) s.run.scheduler = kinds.front();
  const RunConfig cfg = s.config();
  cfg.validate();

  const auto arrivals = traffic::generate_all(cfg.flows, cfg.duration);
  const RunResult result = simulate(cfg, arrivals);
  const auto& r = result.report;

  fs::create_directories(o.out);
  {
    auto f = create(fs::path(o.out) / "report.csv");
    io::write_report_csv(f, std::span(&r, 1));
  }
  {
    auto f = create(fs::path(o.out) / "queues.csv");
    io::write_queues_csv(f, std::span(&r, 1));
  }
  {
    auto f = create(fs::path(o.out) / io::occupancy_file_name(r.scheduler, r.queue_capacity_bytes));
    io::write_occupancy_csv(f, result.occupancy);
  }
  fmt::print("{} capacity={} queues={} seed={}\n", sched::to_string(r.scheduler),
             r.queue_capacity_bytes, r.num_queues, r.seed);
  for (const auto& sample : r.samples()) {
    fmt::print("  {:<22} {:>14} {}\n", to_string(sample.metric), io::format_number(sample.value),
               to_string(sample.unit));
  }
  return 0;
}

int cmd_sweep(const Options& o) {
  Scenario s = load(o);
  const auto name = o.sweep_name.empty()
                        ? s.sweep_name.value_or(scenarios::SweepName::QueueSize)
                        : scenarios::parse_sweep_name(o.sweep_name);
  auto sweep = s.sweep(name);
  if (auto kinds = parse_schedulers(o.schedulers); !kinds.empty()) sweep.schedulers = kinds;

  const auto result = scenarios::run_sweep(sweep, o.jobs);
  std::vector<metrics::MetricsReport> reports;
  reports.reserve(result.runs.size());
  for (const auto& r : result.runs) reports.push_back(r.report);
  const auto verdicts = scenarios::evaluate_trends(sweep, result.points, reports);

  const fs::path dir(o.out);
  fs::create_directories(dir);
  {
    auto f = create(dir / "report.csv");
    io::write_report_csv(f, reports);
  }
  {
    auto f = create(dir / "queues.csv");
    io::write_queues_csv(f, reports);
  }
  {
    auto f = create(dir / "verdicts.csv");
    io::write_verdicts_csv(f, verdicts);
  }
  io::write_metric_vs_axis(dir, sweep, result.points, reports);
  for (std::size_t i = 0; i < result.runs.size(); ++i) {
    auto f = create(dir / io::occupancy_file_name(result.points[i].cfg.scheduler,
                                                 result.points[i].axis_value));
    io::write_occupancy_csv(f, result.runs[i].occupancy);
  }

  fmt::print("{} sweep: {} runs, seed {}\n", scenarios::to_string(name), reports.size(),
             sweep.base.seed);
  for (const auto& v : verdicts) {
    fmt::print("  {} [{:>4}] {}\n       {}\n", v.claim, scenarios::to_string(v.status),
               v.description, v.measured);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"WiMAX base-station downlink scheduling simulator"};
  app.require_subcommand(1);
  Options o;

  auto* run = app.add_subcommand("run", "run the scenario's single configuration");
  run->add_option("scenario", o.scenario, "scenario file")->required();
  run->add_option("--out", o.out, "output directory");
  run->add_option("--seed", o.seed, "override the scenario seed");
  run->add_option("--scheduler", o.schedulers, "SP, RR, WRR, WFQ, SCF or DS");

  auto* sweep = app.add_subcommand("sweep", "run a queue_size or queue_count sweep");
  sweep->add_option("scenario", o.scenario, "scenario file")->required();
  sweep->add_option("--name", o.sweep_name, "queue_size or queue_count");
  sweep->add_option("--out", o.out, "output directory");
  sweep->add_option("--seed", o.seed, "override the scenario seed");
  sweep->add_option("--scheduler", o.schedulers, "restrict to these schedulers");
  sweep->add_option("--jobs", o.jobs, "concurrent runs (0 = all cores)")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    return run->parsed() ? cmd_run(o) : cmd_sweep(o);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "wimaxsim: invalid scenario: %s\n", e.what());
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "wimaxsim: %s\n", e.what());
    return kExitRuntime;
  }
}
