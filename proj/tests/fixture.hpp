#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

// Frozen oracle values (see tests/oracles/).
inline const nlohmann::json& oracle() {
  static const nlohmann::json j = [] {
    std::ifstream in(std::string(SPLAB_FIXTURE_DIR) + "/oracle.json");
    nlohmann::json v;
    in >> v;
    return v;
  }();
  return j;
}
