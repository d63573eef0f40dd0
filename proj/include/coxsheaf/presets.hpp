#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "coxsheaf/coxeter.hpp"

namespace coxsheaf {

struct Preset {
  std::string name;
  coxeter::CoxeterSystem system;
  /// Length bound used when enumerating the whole group; nullopt for finite
  /// types (longest element length is used instead).
  std::optional<int> max_length;
  int longest_length = 0;  // 0 for infinite groups
};

/// Names accepted by make_preset: A1 A2 A3 B2 G2 U2 U3.
const std::vector<std::string>& preset_names();
Preset make_preset(const std::string& name);
bool preset_is_infinite(const std::string& name);

/// Loads {"rank", "coxeter", "cartan"?, "labels"?}; infinity may be written
/// as 0, "inf" or "infinity".
coxeter::CoxeterSystem load_system_json(const std::string& path);
coxeter::CoxeterSystem system_from_json(const nlohmann::json& j);
nlohmann::json system_to_json(const coxeter::CoxeterSystem& W);

}  // namespace coxsheaf
