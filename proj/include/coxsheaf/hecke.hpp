#pragma once

// The Hecke algebra of a Coxeter system over Z[v, v^{-1}], stored in the
// normalized standard basis T~_x = v^{l(x)} T_x, together with the duality d
// and the Kazhdan-Lusztig basis C'_x.

#include <map>
#include <vector>

#include "coxsheaf/coxeter.hpp"
#include "coxsheaf/laurent.hpp"

namespace coxsheaf::hecke {

using coxeter::CoxeterSystem;
using coxeter::Element;

enum class Basis { T, TTilde };

struct HeckeElt {
  Basis basis = Basis::TTilde;
  std::map<Element, LaurentPoly> terms;

  LaurentPoly coeff(const Element& x) const;
  void add(const Element& x, const LaurentPoly& c);
  bool is_zero() const { return terms.empty(); }
  friend bool operator==(const HeckeElt&, const HeckeElt&) = default;
};

/// One step of the product recursion: C'_x = C'_{xs} C'_s - sum b_y(0) C'_y.
struct KLStep {
  Element x;
  int s = 0;
  Element xs;
  HeckeElt product;  // C'_{xs} C'_s, coefficients b_y
  std::vector<std::pair<Element, LaurentPoly>> subtracted;  // (y, b_y(0)) for y < x with b_y(0) != 0
};

/// Test hook: when set, bar() uses a wrong sign in d(T~_s).
void set_bar_fault(bool enabled);
bool bar_fault();

/// Algebra handle with per-instance memo tables.  Not thread-safe; use one
/// instance per task.
class HeckeAlgebra {
 public:
  explicit HeckeAlgebra(CoxeterSystem W) : W_(std::move(W)) {}

  const CoxeterSystem& system() const { return W_; }

  HeckeElt t(const Element& x) const;
  HeckeElt t_tilde(const Element& x) const;
  HeckeElt scalar(const LaurentPoly& c) const;
  HeckeElt to_basis(const HeckeElt& a, Basis b) const;

  HeckeElt add(const HeckeElt& a, const HeckeElt& b) const;
  HeckeElt sub(const HeckeElt& a, const HeckeElt& b) const;
  HeckeElt scale(const HeckeElt& a, const LaurentPoly& c) const;
  /// Product by T~_s on the right.
  HeckeElt mult_s(const HeckeElt& a, int s) const;
  HeckeElt mult(const HeckeElt& a, const HeckeElt& b) const;

  HeckeElt bar(const HeckeElt& a);
  bool is_self_dual(const HeckeElt& a);

  /// C'_x by the product recursion, memoized.
  const HeckeElt& kl_basis(const Element& x);
  /// The recursion step that produced C'_x (x != e).
  const KLStep& kl_step(const Element& x);
  /// C'_x by solving d(C) = C degree by degree; test oracle only.
  HeckeElt kl_oracle(const Element& x);

  LaurentPoly h(const Element& y, const Element& x) { return kl_basis(x).coeff(y); }
  /// P_{y,x} as a polynomial in q (exponent k of the result means q^k).
  LaurentPoly kl_polynomial(const Element& y, const Element& x);

  /// Coefficients c_x with a = sum c_x C'_x.
  std::map<Element, LaurentPoly> kl_coordinates(const HeckeElt& a);

 private:
  const HeckeElt& bar_t_tilde(const Element& x);

  CoxeterSystem W_;
  std::map<Element, HeckeElt> kl_memo_;
  std::map<Element, KLStep> steps_;
  std::map<Element, HeckeElt> bar_memo_;
};

/// "c0 T~[] + c1 T~[12] ..." for diagnostics.
std::string format(const CoxeterSystem& W, const HeckeElt& a);

}  // namespace coxsheaf::hecke
