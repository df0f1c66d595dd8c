#include "wimax/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "wimax/classify.hpp"

namespace wimax::traffic {

std::string_view to_string(GeneratorKind k) {
  switch (k) {
    case GeneratorKind::CBR: return "CBR";
    case GeneratorKind::OnOffCBR: return "OnOffCBR";
    case GeneratorKind::PeriodicVBR: return "PeriodicVBR";
    case GeneratorKind::Poisson: return "Poisson";
  }
  return "?";
}

std::optional<GeneratorKind> parse_generator(std::string_view s) {
  for (auto k : {GeneratorKind::CBR, GeneratorKind::OnOffCBR, GeneratorKind::PeriodicVBR,
                 GeneratorKind::Poisson}) {
    if (to_string(k) == s) return k;
  }
  return std::nullopt;
}

double GeneratorProfile::interval_s() const {
  switch (kind) {
    case GeneratorKind::CBR:
    case GeneratorKind::OnOffCBR: return size.mean() * 8.0 / rate_bps;
    case GeneratorKind::PeriodicVBR: return period_s;
    case GeneratorKind::Poisson: return size.mean() * 8.0 / rate_bps;
  }
  return 0.0;
}

double GeneratorProfile::mean_rate_bps() const {
  switch (kind) {
    case GeneratorKind::CBR:
    case GeneratorKind::Poisson: return rate_bps;
    case GeneratorKind::OnOffCBR: return rate_bps * mean_on_s / (mean_on_s + mean_off_s);
    case GeneratorKind::PeriodicVBR: return size.mean() * 8.0 / period_s;
  }
  return 0.0;
}

void GeneratorProfile::validate() const {
  auto fail = [](const std::string& field, const std::string& why) {
    throw std::invalid_argument(field + ": " + why);
  };
  if (size.min < 1) fail("size_min", "packet size must be >= 1 byte");
  if (size.max < size.min) fail("size_max", "must be >= size_min");
  if (kind == GeneratorKind::PeriodicVBR) {
    if (!(period_s > 0.0)) fail("period", "must be > 0");
  } else if (!(rate_bps > 0.0)) {
    fail("rate", "must be > 0");
  }
  if (kind == GeneratorKind::OnOffCBR) {
    if (!(mean_on_s > 0.0)) fail("mean_on", "must be > 0");
    if (!(mean_off_s > 0.0)) fail("mean_off", "must be > 0");
  }
}

GeneratorProfile profile_for(QosClass qos) {
  GeneratorProfile p;
  switch (qos) {
    case QosClass::UGS:
      p.kind = GeneratorKind::CBR;
      p.rate_bps = 64000.0;
      p.size = {200, 200};
      break;
    case QosClass::ertPS:
      p.kind = GeneratorKind::OnOffCBR;
      p.rate_bps = 64000.0;
      p.size = {200, 200};
      p.mean_on_s = 1.0;
      p.mean_off_s = 1.35;
      break;
    case QosClass::rtPS:
      p.kind = GeneratorKind::PeriodicVBR;
      p.period_s = 0.020;
      p.size = {100, 1500};
      break;
    case QosClass::nrtPS:
      p.kind = GeneratorKind::Poisson;
      p.rate_bps = 40000.0;
      p.size = {1000, 1000};
      break;
    case QosClass::BE:
      p.kind = GeneratorKind::Poisson;
      p.rate_bps = 30000.0;
      p.size = {64, 1500};
      break;
  }
  return p;
}

std::uint64_t flow_seed(std::uint64_t scenario_seed, FlowId flow_id) {
  // splitmix64 finalizer over the combined key
  std::uint64_t z = scenario_seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(flow_id) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

FlowSource::FlowSource(const ServiceFlow& flow) : flow_(flow), rng_(flow.seed) {
  flow.profile.validate();
}

std::uint32_t FlowSource::draw_size() {
  const auto& s = flow_.profile.size;
  if (s.fixed()) return s.min;
  return std::uniform_int_distribution<std::uint32_t>(s.min, s.max)(rng_);
}

Arrival FlowSource::next() {
  const auto& prof = flow_.profile;
  SimTime t = 0.0;
  switch (prof.kind) {
    case GeneratorKind::CBR:
    case GeneratorKind::PeriodicVBR:
      ++tick_;
      t = static_cast<double>(tick_) * prof.interval_s();
      break;
    case GeneratorKind::Poisson: {
      std::exponential_distribution<double> gap(1.0 / prof.interval_s());
      t = last_ + gap(rng_);
      break;
    }
    case GeneratorKind::OnOffCBR: {
      std::exponential_distribution<double> on(1.0 / prof.mean_on_s);
      std::exponential_distribution<double> off(1.0 / prof.mean_off_s);
      if (!started_) {
        burst_start_ = off(rng_);
        burst_end_ = burst_start_ + on(rng_);
        tick_ = 0;
        started_ = true;
      }
      for (;;) {
        t = burst_start_ + static_cast<double>(tick_) * prof.interval_s();
        if (t < burst_end_) break;
        burst_start_ = burst_end_ + off(rng_);
        burst_end_ = burst_start_ + on(rng_);
        tick_ = 0;
      }
      ++tick_;
      break;
    }
  }
  if (t <= last_) t = std::nextafter(last_, std::numeric_limits<double>::infinity());
  last_ = t;
  return {t, draw_size(), flow_.flow_id};
}

Arrival next_arrival(FlowSource& source, SimTime after) {
  if (after < 0.0) throw std::invalid_argument("next_arrival: `after` must be >= 0");
  Arrival a = source.next();
  while (a.time <= after) a = source.next();
  return a;
}

std::vector<Arrival> generate(const ServiceFlow& flow, SimTime horizon) {
  std::vector<Arrival> out;
  FlowSource src(flow);
  for (Arrival a = src.next(); a.time <= horizon; a = src.next()) out.push_back(a);
  return out;
}

namespace {

std::vector<Arrival> merge(std::vector<std::vector<Arrival>>& per_flow) {
  std::size_t total = 0;
  for (const auto& v : per_flow) total += v.size();
  std::vector<Arrival> all;
  all.reserve(total);
  for (auto& v : per_flow) all.insert(all.end(), v.begin(), v.end());
  std::sort(all.begin(), all.end(), [](const Arrival& a, const Arrival& b) {
    return a.time != b.time ? a.time < b.time : a.flow_id < b.flow_id;
  });
  return all;
}

}  // namespace

std::vector<Arrival> generate_all_serial(std::span<const ServiceFlow> flows, SimTime horizon) {
  std::vector<std::vector<Arrival>> per_flow(flows.size());
  for (std::size_t i = 0; i < flows.size(); ++i) per_flow[i] = generate(flows[i], horizon);
  return merge(per_flow);
}

std::vector<Arrival> generate_all(std::span<const ServiceFlow> flows, SimTime horizon) {
  std::vector<std::vector<Arrival>> per_flow(flows.size());
  const auto n = static_cast<std::ptrdiff_t>(flows.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    per_flow[static_cast<std::size_t>(i)] = generate(flows[static_cast<std::size_t>(i)], horizon);
  }
  return merge(per_flow);
}

std::uint32_t FlowLayout::total_stations() const {
  std::uint32_t n = 0;
  for (auto c : stations_per_class) n += c;
  return n;
}

std::vector<ServiceFlow> build_flows(const FlowLayout& layout, std::uint64_t scenario_seed) {
  std::vector<ServiceFlow> flows;
  std::array<std::uint32_t, 5> placed{};
  const std::uint32_t total = layout.total_stations();
  std::size_t cls = 0;
  while (flows.size() < total) {
    if (placed[cls] < layout.stations_per_class[cls]) {
      const auto qos = kAllQosClasses[cls];
      ServiceFlow f;
      f.flow_id = static_cast<FlowId>(flows.size());
      f.station_id = static_cast<std::uint32_t>(flows.size() + 1);
      f.qos = qos;
      f.precedence = classify::assign_precedence(qos, placed[cls]);
      f.profile = layout.profiles[cls];
      f.seed = flow_seed(scenario_seed, f.flow_id);
      flows.push_back(f);
      ++placed[cls];
    }
    cls = (cls + 1) % kAllQosClasses.size();
  }
  return flows;
}

double offered_load_bps(std::span<const ServiceFlow> flows) {
  double sum = 0.0;
  for (const auto& f : flows) sum += f.profile.mean_rate_bps();
  return sum;
}

}  // namespace wimax::traffic
