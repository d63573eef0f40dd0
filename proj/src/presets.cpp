#include "coxsheaf/presets.hpp"

#include <fstream>
#include <json.hpp>

#include "coxsheaf/error.hpp"

namespace coxsheaf {

using coxeter::CoxeterSystem;
using coxeter::kInfinity;

namespace {

std::vector<std::vector<int>> dihedral(int m) { return {{1, m}, {m, 1}}; }

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names{"A1", "A2", "A3", "B2", "G2", "U2", "U3"};
  return names;
}

bool preset_is_infinite(const std::string& name) { return name == "U2" || name == "U3"; }

Preset make_preset(const std::string& name) {
  if (name == "A1") return {name, CoxeterSystem::make({{1}}), std::nullopt, 1};
  if (name == "A2") return {name, CoxeterSystem::make(dihedral(3)), std::nullopt, 3};
  if (name == "B2") return {name, CoxeterSystem::make(dihedral(4)), std::nullopt, 4};
  if (name == "G2") return {name, CoxeterSystem::make(dihedral(6)), std::nullopt, 6};
  if (name == "A3") return {name, CoxeterSystem::make({{1, 3, 2}, {3, 1, 3}, {2, 3, 1}}), std::nullopt, 6};
  if (name == "U2") return {name, CoxeterSystem::make(dihedral(kInfinity)), std::nullopt, 0};
  if (name == "U3")
    return {name,
            CoxeterSystem::make({{1, kInfinity, kInfinity}, {kInfinity, 1, kInfinity}, {kInfinity, kInfinity, 1}}),
            std::nullopt, 0};
  throw InputError("unknown preset '" + name + "'");
}

namespace {

int coxeter_entry(const nlohmann::json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "infinity" || s == "∞") return kInfinity;
    throw InputError("bad Coxeter entry '" + s + "'");
  }
  if (!j.is_number_integer()) throw InputError("Coxeter entries must be integers or \"inf\"");
  return j.get<int>();
}

}  // namespace

CoxeterSystem system_from_json(const nlohmann::json& j) {
  try {
    const int n = j.at("rank").get<int>();
    std::vector<std::vector<int>> m;
    for (const auto& row : j.at("coxeter")) {
      std::vector<int> r;
      for (const auto& e : row) r.push_back(coxeter_entry(e));
      m.push_back(std::move(r));
    }
    if (static_cast<int>(m.size()) != n) throw InputError("rank does not match Coxeter matrix size");
    std::optional<std::vector<std::vector<int>>> cartan;
    if (j.contains("cartan")) cartan = j["cartan"].get<std::vector<std::vector<int>>>();
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j["labels"].get<std::vector<std::string>>();
    return CoxeterSystem::make(m, cartan, labels);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("system description: ") + e.what());
  }
}

nlohmann::json system_to_json(const CoxeterSystem& W) {
  nlohmann::json cox = nlohmann::json::array();
  for (const auto& row : W.coxeter_matrix()) {
    nlohmann::json r = nlohmann::json::array();
    for (int e : row) r.push_back(e == coxeter::kInfinity ? nlohmann::json("inf") : nlohmann::json(e));
    cox.push_back(r);
  }
  return {{"rank", W.rank()}, {"coxeter", cox}, {"cartan", W.cartan_matrix()}, {"labels", W.labels()}};
}

CoxeterSystem load_system_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
  return system_from_json(j);
}

}  // namespace coxsheaf
