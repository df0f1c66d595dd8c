#include "wimax/scenario_file.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

namespace wimax {

namespace pt = boost::property_tree;

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::uint64_t parse_u64(const std::string& field, const std::string& raw) {
  const std::string s = trim(raw);
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw ConfigError(field, fmt::format("expected a non-negative integer, got '{}'", raw));
  }
  return v;
}

double parse_double(const std::string& field, const std::string& raw) {
  const std::string s = trim(raw);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty() || !std::isfinite(v)) {
    throw ConfigError(field, fmt::format("expected a number, got '{}'", raw));
  }
  return v;
}

template <typename T, typename Parse>
std::vector<T> parse_list(const std::string& field, const std::string& raw, Parse parse) {
  std::vector<T> out;
  std::stringstream ss(raw);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse(field, item));
  if (out.empty()) throw ConfigError(field, "empty list");
  return out;
}

void parse_link(const pt::ptree& sec, Scenario& s) {
  for (const auto& [key, node] : sec) {
    const std::string field = "link." + key;
    const std::string v = node.data();
    if (key == "rate") {
      s.run.link.rate_bps = parse_double(field, v);
    } else {
      throw ConfigError(field, "unknown key");
    }
  }
}

void parse_run(const pt::ptree& sec, Scenario& s, bool& weights_given) {
  for (const auto& [key, node] : sec) {
    const std::string field = "run." + key;
    const std::string v = node.data();
    if (key == "scheduler") {
      auto k = sched::parse_scheduler(trim(v));
      if (!k) throw ConfigError(field, fmt::format("unknown scheduler '{}'", v));
      s.run.scheduler = *k;
    } else if (key == "duration") {
      s.run.duration = parse_double(field, v);
    } else if (key == "seed") {
      s.run.seed = parse_u64(field, v);
    } else if (key == "num_queues") {
      s.run.num_queues = static_cast<std::size_t>(parse_u64(field, v));
    } else if (key == "queue_capacity_bytes") {
      s.run.queue_capacity_bytes = parse_u64(field, v);
    } else if (key == "weights") {
      try {
        s.run.weights = sched::WeightVector(parse_list<double>(field, v, parse_double));
      } catch (const ConfigError&) {
        throw;
      } catch (const std::invalid_argument& e) {
        throw ConfigError(field, e.what());
      }
      weights_given = true;
    } else if (key == "fairness") {
      const auto t = trim(v);
      if (t == "per_queue") {
        s.run.fairness = metrics::FairnessBasis::PerQueue;
      } else if (t == "per_flow") {
        s.run.fairness = metrics::FairnessBasis::PerFlow;
      } else {
        throw ConfigError(field, "expected per_queue or per_flow");
      }
    } else if (key == "occupancy_interval") {
      s.run.occupancy_interval = parse_double(field, v);
    } else {
      throw ConfigError(field, "unknown key");
    }
  }
}

void parse_flows(const pt::ptree& sec, Scenario& s) {
  for (const auto& [key, node] : sec) {
    const std::string field = "flows." + key;
    const std::string v = node.data();
    const auto dot = key.find('.');
    if (dot == std::string::npos) throw ConfigError(field, "expected <class>.<attribute>");
    const auto qos = parse_qos(key.substr(0, dot));
    if (!qos) throw ConfigError(field, fmt::format("unknown QoS class '{}'", key.substr(0, dot)));
    const std::string attr = key.substr(dot + 1);
    auto& prof = s.layout.profiles[index_of(*qos)];
    auto size32 = [&](const std::string& raw) {
      const auto n = parse_u64(field, raw);
      if (n == 0 || n > 0xFFFFFFFFULL) throw ConfigError(field, "packet size out of range");
      return static_cast<std::uint32_t>(n);
    };
    if (attr == "stations") {
      s.layout.stations_per_class[index_of(*qos)] = static_cast<std::uint32_t>(parse_u64(field, v));
    } else if (attr == "kind") {
      auto k = traffic::parse_generator(trim(v));
      if (!k) throw ConfigError(field, fmt::format("unknown generator '{}'", v));
      prof.kind = *k;
    } else if (attr == "rate") {
      prof.rate_bps = parse_double(field, v);
    } else if (attr == "size") {
      prof.size.min = prof.size.max = size32(v);
    } else if (attr == "size_min") {
      prof.size.min = size32(v);
    } else if (attr == "size_max") {
      prof.size.max = size32(v);
    } else if (attr == "period") {
      prof.period_s = parse_double(field, v);
    } else if (attr == "mean_on") {
      prof.mean_on_s = parse_double(field, v);
    } else if (attr == "mean_off") {
      prof.mean_off_s = parse_double(field, v);
    } else {
      throw ConfigError(field, "unknown key");
    }
  }
}

void parse_sweep(const pt::ptree& sec, Scenario& s) {
  for (const auto& [key, node] : sec) {
    const std::string field = "sweep." + key;
    const std::string v = node.data();
    if (key == "name") {
      try {
        s.sweep_name = scenarios::parse_sweep_name(trim(v));
      } catch (const ConfigError& e) {
        throw ConfigError(field, e.what());
      }
    } else if (key == "values") {
      s.sweep_values = parse_list<std::uint64_t>(field, v, parse_u64);
    } else {
      throw ConfigError(field, "unknown key");
    }
  }
}

}  // namespace

Scenario parse_scenario(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(fmt::format("line {}", e.line()), e.message());
  }

  Scenario s;
  s.run.occupancy_interval = 0.1;
  bool weights_given = false;
  for (const auto& [name, sec] : tree) {
    if (!sec.data().empty()) throw ConfigError(name, "key outside of any section");
    if (name == "link") {
      parse_link(sec, s);
    } else if (name == "run") {
      parse_run(sec, s, weights_given);
    } else if (name == "flows") {
      parse_flows(sec, s);
    } else if (name == "sweep") {
      parse_sweep(sec, s);
    } else {
      throw ConfigError(name, "unknown section");
    }
  }
  if (!weights_given && s.run.num_queues >= 1) {
    s.run.weights = sched::WeightVector::monotone(s.run.num_queues);
  }
  for (auto qos : kAllQosClasses) {
    try {
      s.layout.profiles[index_of(qos)].validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(fmt::format("flows.{}", to_string(qos)), e.what());
    }
  }
  s.config().validate();
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("path", fmt::format("cannot read scenario file '{}'", path.string()));
  return parse_scenario(in);
}

RunConfig Scenario::config() const {
  RunConfig cfg = run;
  cfg.flows = traffic::build_flows(layout, run.seed);
  return cfg;
}

scenarios::Sweep Scenario::sweep(scenarios::SweepName name) const {
  auto sw = scenarios::make_sweep(name, config());
  if (sweep_values && sweep_name == name) sw.axis = *sweep_values;
  return sw;
}

}  // namespace wimax
