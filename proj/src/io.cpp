#include "coxsheaf/io.hpp"

#include <sstream>

#include "coxsheaf/error.hpp"
#include "coxsheaf/presets.hpp"

namespace coxsheaf::io {

using coxeter::CoxeterSystem;
using coxeter::Element;
using hecke::HeckeElt;

std::string word_string(const CoxeterSystem& W, const Element& x) {
  return x.length() == 0 ? "e" : W.format(x);
}

json laurent_to_json(const LaurentPoly& p) {
  json out = json::object();
  for (const auto& [e, c] : p.terms()) {
    if (c.fits_slong_p()) out[std::to_string(e)] = c.get_si();
    else out[std::to_string(e)] = c.get_str();
  }
  return out;
}

LaurentPoly laurent_from_json(const json& j) {
  if (!j.is_object()) throw InputError("Laurent polynomial must be a JSON object");
  LaurentPoly p;
  for (const auto& [k, c] : j.items()) {
    int e = 0;
    try {
      e = std::stoi(k);
    } catch (const std::exception&) {
      throw InputError("bad exponent '" + k + "'");
    }
    mpz_class z;
    if (c.is_number_integer()) z = c.get<long>();
    else if (c.is_string() && z.set_str(c.get<std::string>(), 10) == 0) {
    } else {
      throw InputError("bad coefficient for exponent " + k);
    }
    p.add_term(e, z);
  }
  return p;
}

json hecke_to_json(const CoxeterSystem& W, const HeckeElt& h) {
  json out = json::array();
  const char* basis = h.basis == hecke::Basis::T ? "T" : "Ttilde";
  for (const auto& [x, c] : h.terms) out.push_back({{"word", word_string(W, x)}, {"basis", basis}, {"poly", laurent_to_json(c)}});
  return out;
}

HeckeElt hecke_from_json(const CoxeterSystem& W, const json& j) {
  if (!j.is_array()) throw InputError("Hecke element must be a JSON array");
  HeckeElt h;
  bool first = true;
  for (const auto& term : j) {
    const auto b = term.at("basis").get<std::string>();
    const auto basis = b == "T" ? hecke::Basis::T : b == "Ttilde" ? hecke::Basis::TTilde : throw InputError("bad basis " + b);
    if (first) h.basis = basis;
    else if (basis != h.basis) throw InputError("mixed bases in one Hecke element");
    first = false;
    h.add(W.normal_form(W.parse_word(term.at("word").get<std::string>())), laurent_from_json(term.at("poly")));
  }
  return h;
}

json result_to_json(const BMResult& r) {
  const auto& g = r.bm->sheaf.graph();
  const auto& W = g.system();
  json stalks = json::object(), costalks = json::object();
  for (int v = 0; v < g.size(); ++v) {
    stalks[g.name(v)] = r.bm->sheaf.stalk_degrees(v);
    costalks[g.name(v)] = r.bm->costalks[v];
  }
  return {{"system", system_to_json(W)},
          {"x", g.name(r.bm->top)},
          {"stalks", stalks},
          {"costalks", costalks},
          {"character", hecke_to_json(W, r.character)},
          {"kl", hecke_to_json(W, r.kl)},
          {"match", r.match},
          {"checks", r.checks}};
}

std::string result_to_csv(const BMResult& r) {
  const auto& g = r.bm->sheaf.graph();
  const auto& W = g.system();
  std::ostringstream out;
  out << "x,y,f,h\n";
  const std::string x = g.name(r.bm->top);
  for (const auto& y : W.bruhat_interval(g.vertex(r.bm->top).rep))
    out << x << ',' << word_string(W, y) << ",\"" << r.character.coeff(y).str() << "\",\"" << r.kl.coeff(y).str()
        << "\"\n";
  return out.str();
}

Recheck recheck(const json& doc) {
  try {
    const auto W = system_from_json(doc.at("system"));
    const auto x = W.normal_form(W.parse_word(doc.at("x").get<std::string>()));
    hecke::HeckeAlgebra H(W);
    const auto ch = hecke_from_json(W, doc.at("character"));
    const auto kl = hecke_from_json(W, doc.at("kl"));
    const auto& fresh = H.kl_basis(x);
    return Recheck{doc.at("match").get<bool>(), H.to_basis(ch, hecke::Basis::TTilde) == fresh,
                   H.to_basis(kl, hecke::Basis::TTilde) == fresh};
  } catch (const json::exception& e) {
    throw InputError(std::string("result file: ") + e.what());
  }
}

}  // namespace coxsheaf::io
