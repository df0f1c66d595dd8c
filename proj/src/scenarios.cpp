#include "wimax/scenarios.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

#include "wimax/classify.hpp"

namespace wimax::scenarios {

std::string_view to_string(SweepName n) {
  return n == SweepName::QueueSize ? "queue_size" : "queue_count";
}

SweepName parse_sweep_name(std::string_view s) {
  if (s == "queue_size") return SweepName::QueueSize;
  if (s == "queue_count") return SweepName::QueueCount;
  throw ConfigError("name", fmt::format("unknown sweep '{}' (expected queue_size or queue_count)", s));
}

std::vector<std::uint64_t> default_axis(SweepName name) {
  if (name == SweepName::QueueSize) return {128000, 1280000, 12800000};
  return {6, 8, 10};
}

Sweep make_sweep(SweepName name, RunConfig base) {
  Sweep s;
  s.name = name;
  s.axis = default_axis(name);
  s.base = std::move(base);
  return s;
}

std::vector<SweepPoint> build_sweep(const Sweep& sweep) {
  sweep.base.validate();
  if (sweep.axis.empty()) throw ConfigError("values", "sweep axis is empty");
  std::vector<SweepPoint> points;
  points.reserve(sweep.axis.size() * sweep.schedulers.size());
  for (auto value : sweep.axis) {
    for (auto kind : sweep.schedulers) {
      SweepPoint p{value, sweep.base};
      p.cfg.scheduler = kind;
      if (sweep.name == SweepName::QueueSize) {
        p.cfg.queue_capacity_bytes = value;
        if (p.cfg.num_queues != 8) {
          p.cfg.num_queues = 8;
          p.cfg.weights = sched::WeightVector::monotone(8);
        }
      } else {
        p.cfg.num_queues = static_cast<std::size_t>(value);
        p.cfg.queue_capacity_bytes = 1280000;
        p.cfg.weights = sched::WeightVector::monotone(p.cfg.num_queues);
      }
      p.cfg.validate();
      points.push_back(std::move(p));
    }
  }
  return points;
}

SweepResult run_sweep(const Sweep& sweep, int jobs) {
  SweepResult out;
  out.points = build_sweep(sweep);
  const auto arrivals = traffic::generate_all(sweep.base.flows, sweep.base.duration);
  out.runs.resize(out.points.size());
  const auto n = static_cast<std::ptrdiff_t>(out.points.size());
  const int threads = jobs > 0 ? jobs : 0;
#pragma omp parallel for schedule(dynamic) num_threads(threads) if (threads != 1)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out.runs[k] = simulate(out.points[k].cfg, arrivals);
  }
  return out;
}

SweepResult run_sweep_serial(const Sweep& sweep) {
  SweepResult out;
  out.points = build_sweep(sweep);
  const auto arrivals = traffic::generate_all_serial(sweep.base.flows, sweep.base.duration);
  out.runs.reserve(out.points.size());
  for (const auto& p : out.points) out.runs.push_back(simulate(p.cfg, arrivals));
  return out;
}

std::string_view to_string(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::Pass: return "pass";
    case VerdictStatus::Fail: return "fail";
    case VerdictStatus::NotApplicable: return "n/a";
  }
  return "?";
}

double relative_spread(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
  const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  if (mean == 0.0) return *hi == *lo ? 0.0 : 1.0;
  return (*hi - *lo) / mean;
}

namespace {

using Series = std::map<sched::SchedulerKind, std::vector<const metrics::MetricsReport*>>;

// Per scheduler, reports ordered by ascending axis value.
Series by_scheduler(const Sweep& sweep, std::span<const SweepPoint> points,
                    std::span<const metrics::MetricsReport> reports) {
  if (points.size() != reports.size()) {
    throw std::invalid_argument("evaluate_trends: points and reports differ in length");
  }
  std::map<std::pair<std::uint64_t, sched::SchedulerKind>, const metrics::MetricsReport*> cell;
  for (std::size_t i = 0; i < points.size(); ++i) {
    cell[{points[i].axis_value, reports[i].scheduler}] = &reports[i];
  }
  std::vector<std::string> missing;
  for (auto v : sweep.axis) {
    for (auto k : sweep.schedulers) {
      if (!cell.contains({v, k})) {
        missing.push_back(fmt::format("{}={}/{}", to_string(sweep.name), v, sched::to_string(k)));
      }
    }
  }
  if (!missing.empty()) {
    throw std::invalid_argument(fmt::format("incomplete sweep, missing: {}", fmt::join(missing, ", ")));
  }
  auto axis = sweep.axis;
  std::sort(axis.begin(), axis.end());
  Series s;
  for (auto k : sweep.schedulers) {
    for (auto v : axis) s[k].push_back(cell.at({v, k}));
  }
  return s;
}

template <typename Fn>
std::vector<double> column(const std::vector<const metrics::MetricsReport*>& rs, Fn fn) {
  std::vector<double> out;
  out.reserve(rs.size());
  for (const auto* r : rs) out.push_back(static_cast<double>(fn(*r)));
  return out;
}

template <typename Fn>
TrendVerdict invariance(const Series& series, std::string claim, std::string description, Fn fn) {
  TrendVerdict v{std::move(claim), std::move(description), VerdictStatus::Pass, {},
                 fmt::format("relative spread <= {}", kInvarianceTolerance)};
  std::vector<std::string> parts;
  for (const auto& [kind, rs] : series) {
    const double spread = relative_spread(column(rs, fn));
    parts.push_back(fmt::format("{}={:.4f}", sched::to_string(kind), spread));
    if (!(spread <= kInvarianceTolerance)) v.status = VerdictStatus::Fail;
  }
  v.measured = fmt::format("{}", fmt::join(parts, ";"));
  return v;
}

TrendVerdict not_applicable(std::string claim, std::string description, const Sweep& sweep) {
  return {std::move(claim), std::move(description), VerdictStatus::NotApplicable,
          fmt::format("not measured by the {} sweep", to_string(sweep.name)), "-"};
}

double delivered_share(const metrics::ClassBreakdown& c) {
  return c.offered_bits > 0
             ? static_cast<double>(c.delivered_bits) / static_cast<double>(c.offered_bits)
             : 0.0;
}

}  // namespace

std::vector<TrendVerdict> evaluate_trends(const Sweep& sweep,
                                          std::span<const SweepPoint> points,
                                          std::span<const metrics::MetricsReport> reports) {
  const Series series = by_scheduler(sweep, points, reports);
  const bool size_sweep = sweep.name == SweepName::QueueSize;
  std::vector<TrendVerdict> out;

  const std::string a1 = "server throughput invariant to output queue size";
  const std::string a2 = "average end-to-end delay invariant to output queue size";
  const std::string a3 = "total drops non-increasing in queue size; largest size below 5% of smallest";
  const std::string a4 = "SP under >=1.5x overload starves BE (<5%) and protects UGS (>90%)";
  const std::string a5 = "peak queue size non-decreasing in queue size";

  if (size_sweep) {
    out.push_back(invariance(series, "A1", a1, [](const auto& r) { return r.server_throughput; }));
    out.push_back(invariance(series, "A2", a2, [](const auto& r) { return r.avg_end_to_end_delay; }));

    TrendVerdict v3{"A3", a3, VerdictStatus::Pass, {},
                    fmt::format("non-increasing; last < {} * first", kResidualDropFraction)};
    std::vector<std::string> parts;
    for (const auto& [kind, rs] : series) {
      const auto drops = column(rs, [](const auto& r) { return r.total_dropped; });
      const bool monotone = std::is_sorted(drops.rbegin(), drops.rend());
      const bool residual = drops.back() < kResidualDropFraction * drops.front();
      if (!monotone || !residual) v3.status = VerdictStatus::Fail;
      std::vector<std::string> vals;
      for (double d : drops) vals.push_back(fmt::format("{:.0f}", d));
      parts.push_back(fmt::format("{}={}", sched::to_string(kind), fmt::join(vals, "/")));
    }
    v3.measured = fmt::format("{}", fmt::join(parts, ";"));
    out.push_back(std::move(v3));
  } else {
    out.push_back(not_applicable("A1", a1, sweep));
    out.push_back(not_applicable("A2", a2, sweep));
    out.push_back(not_applicable("A3", a3, sweep));
  }

  {
    TrendVerdict v4{"A4", a4, VerdictStatus::NotApplicable, {},
                    fmt::format("offered >= {}x link; BE < {}; UGS > {}", kOverloadFactor,
                                kStarvedShare, kProtectedShare)};
    std::vector<std::string> parts;
    if (auto it = series.find(sched::SchedulerKind::SP); it != series.end()) {
      for (std::size_t i = 0; i < it->second.size(); ++i) {
        const auto& r = *it->second[i];
        std::uint64_t offered_bits = 0;
        for (const auto& c : r.classes) offered_bits += c.offered_bits;
        const double load = static_cast<double>(offered_bits) / r.duration / r.link_rate_bps;
        if (load < kOverloadFactor) {
          parts.push_back(fmt::format("load={:.3f}x (not overloaded)", load));
          continue;
        }
        const double be = delivered_share(r.of(QosClass::BE));
        const double ugs = delivered_share(r.of(QosClass::UGS));
        const bool ok = be < kStarvedShare && ugs > kProtectedShare;
        if (v4.status != VerdictStatus::Fail) v4.status = ok ? VerdictStatus::Pass : VerdictStatus::Fail;
        parts.push_back(fmt::format("load={:.3f}x BE={:.4f} UGS={:.4f}", load, be, ugs));
      }
    }
    v4.measured = parts.empty() ? "no SP run in sweep" : fmt::format("{}", fmt::join(parts, ";"));
    out.push_back(std::move(v4));
  }

  if (size_sweep) {
    TrendVerdict v5{"A5", a5, VerdictStatus::Pass, {}, "non-decreasing"};
    std::vector<std::string> parts;
    for (const auto& [kind, rs] : series) {
      const auto peaks = column(rs, [](const auto& r) { return r.peak_queue_bytes; });
      if (!std::is_sorted(peaks.begin(), peaks.end())) v5.status = VerdictStatus::Fail;
      std::vector<std::string> vals;
      for (double p : peaks) vals.push_back(fmt::format("{:.0f}", p));
      parts.push_back(fmt::format("{}={}", sched::to_string(kind), fmt::join(vals, "/")));
    }
    v5.measured = fmt::format("{}", fmt::join(parts, ";"));
    out.push_back(std::move(v5));
  } else {
    out.push_back(not_applicable("A5", a5, sweep));
  }

  {
    const auto wrr = weighted_share_check(sched::SchedulerKind::WRR);
    const auto wfq = weighted_share_check(sched::SchedulerKind::WFQ);
    out.push_back({"A6", "WRR and WFQ deliver 1:2:4 on backlogged queues weighted 1:2:4",
                   wrr.pass && wfq.pass ? VerdictStatus::Pass : VerdictStatus::Fail,
                   fmt::format("WRR max dev={} bits;WFQ max dev={} bits", wrr.max_deviation_bits,
                               wfq.max_deviation_bits),
                   fmt::format("<= {} bits per queue", wrr.tolerance_bits)});
  }
  {
    const auto f = rr_fairness_check();
    out.push_back({"A7", "RR Jain fairness >= SP and >= 0.99 on a uniform backlog",
                   f.pass ? VerdictStatus::Pass : VerdictStatus::Fail,
                   fmt::format("RR={:.6f};SP={:.6f}", f.rr_fairness, f.sp_fairness),
                   fmt::format("RR >= SP and RR >= {}", kRrFairnessFloor)});
  }
  return out;
}

BackloggedInstance backlogged_instance(sched::SchedulerKind kind, std::vector<double> weights,
                                       std::uint32_t packet_bytes, std::size_t packets_per_queue,
                                       double link_rate_bps, SimTime duration) {
  const std::size_t n = weights.size();
  if (n == 0 || n > 8) throw std::invalid_argument("backlogged_instance: 1..8 queues");
  BackloggedInstance inst;
  auto& cfg = inst.cfg;
  cfg.scheduler = kind;
  cfg.num_queues = n;
  cfg.weights = sched::WeightVector(std::move(weights));
  cfg.link.rate_bps = link_rate_bps;
  cfg.duration = duration;
  cfg.queue_capacity_bytes = static_cast<std::uint64_t>(packet_bytes) * packets_per_queue;
  for (std::size_t q = 0; q < n; ++q) {
    traffic::ServiceFlow f;
    f.flow_id = static_cast<FlowId>(q);
    f.station_id = static_cast<std::uint32_t>(q + 1);
    f.precedence = Precedence(static_cast<int>(q));
    f.qos = classify::class_of(f.precedence);
    f.profile = traffic::profile_for(f.qos);
    cfg.flows.push_back(f);
  }
  for (std::size_t k = 0; k < packets_per_queue; ++k) {
    for (std::size_t q = 0; q < n; ++q) {
      inst.arrivals.push_back({0.0, packet_bytes, static_cast<FlowId>(q)});
    }
  }
  return inst;
}

ShareCheck weighted_share_check(sched::SchedulerKind kind) {
  // 125-byte packets on a 1000 bit/s link: one packet per second, exact in
  // binary floating point. 70 s is ten full rounds of 1 + 2 + 4 packets.
  const std::vector<double> w{1.0, 2.0, 4.0};
  const double packet_bits = 1000.0;
  auto inst = backlogged_instance(kind, w, 125, 100, 1000.0, 70.0);
  const auto report = simulate(inst.cfg, inst.arrivals).report;

  ShareCheck c;
  c.tolerance_bits = packet_bits;
  const double total = static_cast<double>(report.delivered_bits);
  const double wsum = std::accumulate(w.begin(), w.end(), 0.0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double got = static_cast<double>(report.queues[i].delivered_bits);
    c.delivered_bits.push_back(got);
    c.max_deviation_bits = std::max(c.max_deviation_bits, std::abs(got - total * w[i] / wsum));
  }
  c.pass = total > 0.0 && c.max_deviation_bits <= c.tolerance_bits;
  return c;
}

FairnessCheck rr_fairness_check() {
  const std::vector<double> w(8, 1.0);
  auto rr = backlogged_instance(sched::SchedulerKind::RR, w, 125, 100, 1000.0, 80.0);
  auto sp = backlogged_instance(sched::SchedulerKind::SP, w, 125, 100, 1000.0, 80.0);
  FairnessCheck f;
  f.rr_fairness = simulate(rr.cfg, rr.arrivals).report.jain_fairness;
  f.sp_fairness = simulate(sp.cfg, sp.arrivals).report.jain_fairness;
  f.pass = f.rr_fairness >= f.sp_fairness && f.rr_fairness >= kRrFairnessFloor;
  return f;
}

}  // namespace wimax::scenarios
