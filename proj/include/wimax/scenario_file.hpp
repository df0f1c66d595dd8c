#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "wimax/engine.hpp"
#include "wimax/scenarios.hpp"
#include "wimax/traffic.hpp"

namespace wimax {

/// A parsed scenario file: run settings plus the flow layout the flows are
/// built from. Flows are rebuilt whenever the seed changes.
struct Scenario {
  RunConfig run;
  traffic::FlowLayout layout;
  std::optional<scenarios::SweepName> sweep_name;
  std::optional<std::vector<std::uint64_t>> sweep_values;

  /// `run` with flows built from `layout` and `run.seed`.
  RunConfig config() const;
  scenarios::Sweep sweep(scenarios::SweepName name) const;
};

/// Sections [link], [run], [flows], [sweep]; `key = value` lines; `#` or `;`
/// comments. Unknown sections or keys are errors. Throws ConfigError whose
/// field is `section.key`.
Scenario parse_scenario(std::istream& in);

/// Throws ConfigError("path", ...) when the file cannot be read.
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace wimax
