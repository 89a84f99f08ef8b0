#include "dynsim/scenario.hpp"

#include <fmt/format.h>

#include "dynsim/error.hpp"

namespace dynsim {

ScenarioCode parse_scenario_code(const std::string& s) {
  if (s == "N") return ScenarioCode::N;
  if (s == "HN") return ScenarioCode::HN;
  if (s == "F") return ScenarioCode::F;
  if (s == "HF") return ScenarioCode::HF;
  if (s == "L") return ScenarioCode::L;
  if (s == "HL") return ScenarioCode::HL;
  throw InvalidInput(fmt::format("unknown scenario code '{}' (expected N|HN|F|HF|L|HL)", s));
}

std::string to_string(ScenarioCode code) {
  switch (code) {
    case ScenarioCode::N: return "N";
    case ScenarioCode::HN: return "HN";
    case ScenarioCode::F: return "F";
    case ScenarioCode::HF: return "HF";
    case ScenarioCode::L: return "L";
    case ScenarioCode::HL: return "HL";
  }
  return "?";
}

ScenarioConfig ScenarioConfig::with_humans(ScenarioCode code, int humans) {
  ScenarioConfig cfg;
  cfg.code = code;
  cfg.humans = humans;
  switch (code) {
    case ScenarioCode::N:
    case ScenarioCode::HN:
      cfg.flyers_a = 0;
      cfg.flyers_b = 0;
      break;
    case ScenarioCode::F:
    case ScenarioCode::HF:
      cfg.flyers_a = 5;
      cfg.flyers_b = 5;
      break;
    case ScenarioCode::L:
    case ScenarioCode::HL:
      cfg.flyers_a = 10;
      cfg.flyers_b = 10;
      break;
  }
  cfg.horizontal =
      code == ScenarioCode::HN || code == ScenarioCode::HF || code == ScenarioCode::HL;
  return cfg;
}

ScenarioConfig ScenarioConfig::sample(ScenarioCode code, Rng& rng) {
  return with_humans(code, static_cast<int>(rng.uniform_int(int64_t{7}, int64_t{40})));
}

}  // namespace dynsim
