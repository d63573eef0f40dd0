#pragma once

// JSON and CSV serialization of Laurent polynomials, Hecke elements and BM
// results.  Words are 1-based generator strings, "e" for the identity.

#include <json.hpp>
#include <string>

#include "coxsheaf/bmsheaf.hpp"
#include "coxsheaf/hecke.hpp"

namespace coxsheaf::io {

using nlohmann::json;

std::string word_string(const coxeter::CoxeterSystem& W, const coxeter::Element& x);

/// {"exp": coeff}; coefficients are integers (strings when they exceed int64).
json laurent_to_json(const LaurentPoly& p);
LaurentPoly laurent_from_json(const json& j);

/// List of {"word", "basis", "poly"}.
json hecke_to_json(const coxeter::CoxeterSystem& W, const hecke::HeckeElt& h);
hecke::HeckeElt hecke_from_json(const coxeter::CoxeterSystem& W, const json& j);

struct BMResult {
  const bmsheaf::BMSheaf* bm = nullptr;
  hecke::HeckeElt character;
  hecke::HeckeElt kl;
  bool match = false;
  json checks = json::object();
};

json result_to_json(const BMResult& r);
/// Rows x,y,f_{y,x},h_{y,x} for every vertex, ShortLex order.
std::string result_to_csv(const BMResult& r);

struct Recheck {
  bool stored_match = false;
  bool recomputed_match = false;  // stored character vs freshly computed KL basis
  bool stored_kl_agrees = false;
};

/// Re-reads a result document and re-verifies its character against the KL
/// basis recomputed from the embedded system.
Recheck recheck(const json& doc);

}  // namespace coxsheaf::io
