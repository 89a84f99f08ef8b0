#pragma once

#include <cstdint>
#include <string>

#include "dynsim/rng.hpp"

namespace dynsim {

enum class ScenarioCode : uint8_t { N, HN, F, HF, L, HL };

ScenarioCode parse_scenario_code(const std::string& text);  // throws InvalidInput
std::string to_string(ScenarioCode code);

/// One experiment family: obstacle tier (N/F/L = none/few/lots of flying
/// objects) and the horizontal-flight flag (H prefix).
struct ScenarioConfig {
  ScenarioCode code = ScenarioCode::N;
  int humans = 7;      // drawn uniformly in [7, 40]
  int flyers_a = 0;    // first rigid-object group (boxes)
  int flyers_b = 0;    // second group (ellipsoids)
  bool horizontal = false;

  /// Fills the counts for `code`, drawing the human count from `rng`.
  static ScenarioConfig sample(ScenarioCode code, Rng& rng);
  /// Counts for `code` with an explicit human count (replay path).
  static ScenarioConfig with_humans(ScenarioCode code, int humans);
};

}  // namespace dynsim
