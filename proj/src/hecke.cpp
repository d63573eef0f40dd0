#include "coxsheaf/hecke.hpp"

#include <atomic>

#include "coxsheaf/error.hpp"

namespace coxsheaf::hecke {

namespace {
std::atomic<bool> g_bar_fault{false};
}

void set_bar_fault(bool enabled) { g_bar_fault = enabled; }
bool bar_fault() { return g_bar_fault; }

LaurentPoly HeckeElt::coeff(const Element& x) const {
  auto it = terms.find(x);
  return it == terms.end() ? LaurentPoly{} : it->second;
}

void HeckeElt::add(const Element& x, const LaurentPoly& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms.try_emplace(x, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

HeckeElt HeckeAlgebra::t(const Element& x) const {
  W_.require_same(x);
  HeckeElt r;
  r.basis = Basis::T;
  r.add(x, 1);
  return r;
}

HeckeElt HeckeAlgebra::t_tilde(const Element& x) const {
  W_.require_same(x);
  HeckeElt r;
  r.add(x, 1);
  return r;
}

HeckeElt HeckeAlgebra::scalar(const LaurentPoly& c) const {
  HeckeElt r;
  r.add(W_.identity(), c);
  return r;
}

HeckeElt HeckeAlgebra::to_basis(const HeckeElt& a, Basis b) const {
  if (a.basis == b) return a;
  HeckeElt r;
  r.basis = b;
  // T~_x = v^{l(x)} T_x
  const int sign = b == Basis::T ? 1 : -1;
  for (const auto& [x, c] : a.terms) r.add(x, c.shift(sign * x.length()));
  return r;
}

HeckeElt HeckeAlgebra::add(const HeckeElt& a, const HeckeElt& b) const {
  HeckeElt r = to_basis(a, Basis::TTilde);
  for (const auto& [x, c] : to_basis(b, Basis::TTilde).terms) r.add(x, c);
  return r;
}

HeckeElt HeckeAlgebra::sub(const HeckeElt& a, const HeckeElt& b) const { return add(a, scale(b, -1)); }

HeckeElt HeckeAlgebra::scale(const HeckeElt& a, const LaurentPoly& c) const {
  HeckeElt r;
  r.basis = a.basis;
  for (const auto& [x, p] : a.terms) r.add(x, p * c);
  return r;
}

HeckeElt HeckeAlgebra::mult_s(const HeckeElt& a, int s) const {
  HeckeElt r;
  const LaurentPoly quad = LaurentPoly::monomial(-1) - LaurentPoly::monomial(1);
  for (const auto& [x, c] : to_basis(a, Basis::TTilde).terms) {
    Element xs = W_.multiply_right(x, s);
    r.add(xs, c);
    if (xs.length() < x.length()) r.add(x, c * quad);
  }
  return r;
}

HeckeElt HeckeAlgebra::mult(const HeckeElt& a, const HeckeElt& b) const {
  HeckeElt r;
  const HeckeElt at = to_basis(a, Basis::TTilde);
  for (const auto& [y, c] : to_basis(b, Basis::TTilde).terms) {
    HeckeElt part = at;
    for (int s : y.word()) part = mult_s(part, s);
    for (const auto& [z, p] : part.terms) r.add(z, p * c);
  }
  return r;
}

const HeckeElt& HeckeAlgebra::bar_t_tilde(const Element& x) {
  if (auto it = bar_memo_.find(x); it != bar_memo_.end()) return it->second;
  HeckeElt r;
  if (x.is_identity()) {
    r = t_tilde(x);
  } else {
    const int s = x.word().back();
    const Element xs = W_.multiply_right(x, s);
    const HeckeElt prev = bar_t_tilde(xs);
    // d(T~_s) = T~_s + (v - v^{-1})
    LaurentPoly shift = LaurentPoly::monomial(1) - LaurentPoly::monomial(-1);
    if (g_bar_fault) shift = -shift;
    r = add(mult_s(prev, s), scale(prev, shift));
  }
  return bar_memo_.emplace(x, std::move(r)).first->second;
}

HeckeElt HeckeAlgebra::bar(const HeckeElt& a) {
  HeckeElt r;
  for (const auto& [x, c] : to_basis(a, Basis::TTilde).terms) {
    const LaurentPoly cb = c.bar();
    for (const auto& [z, p] : bar_t_tilde(x).terms) r.add(z, p * cb);
  }
  return to_basis(r, a.basis);
}

bool HeckeAlgebra::is_self_dual(const HeckeElt& a) { return bar(a) == a; }

const HeckeElt& HeckeAlgebra::kl_basis(const Element& x) {
  W_.require_same(x);
  if (auto it = kl_memo_.find(x); it != kl_memo_.end()) return it->second;
  if (x.is_identity()) return kl_memo_.emplace(x, t_tilde(x)).first->second;

  const int s = x.word().back();
  const Element xs = W_.multiply_right(x, s);
  HeckeElt cs = t_tilde(W_.generator(s));
  cs.add(W_.identity(), LaurentPoly::monomial(1));
  KLStep step{x, s, xs, mult(kl_basis(xs), cs), {}};

  HeckeElt c = step.product;
  for (const auto& [y, b] : step.product.terms) {
    if (!b.in_z_v())
      throw InvariantError("KL recursion: b_y has negative powers of v at y = " + W_.format(y));
    if (y == x) continue;
    const mpz_class b0 = b.coeff(0);
    if (b0 == 0) continue;
    step.subtracted.emplace_back(y, LaurentPoly::monomial(0, b0));
  }
  for (const auto& [y, b0] : step.subtracted) {
    const HeckeElt cy = kl_basis(y);  // copy: recursion may rehash memo
    c = sub(c, scale(cy, b0));
  }
  for (const auto& [y, h] : c.terms) {
    if (y == x ? h != LaurentPoly(1) : !h.in_v_z_v())
      throw InvariantError("KL recursion produced h_{y,x} = " + h.str() + " outside vZ[v] at y = " + W_.format(y));
  }
  steps_.emplace(x, std::move(step));
  return kl_memo_.emplace(x, std::move(c)).first->second;
}

const KLStep& HeckeAlgebra::kl_step(const Element& x) {
  if (x.is_identity()) throw InputError("no recursion step for the identity");
  kl_basis(x);
  return steps_.at(x);
}

HeckeElt HeckeAlgebra::kl_oracle(const Element& x) {
  W_.require_same(x);
  const auto interval = W_.bruhat_interval(x);
  std::map<Element, LaurentPoly> h;
  h[x] = 1;
  for (auto it = interval.rbegin(); it != interval.rend(); ++it) {
    const Element& z = *it;
    if (z == x) continue;
    // h_z - bar(h_z) = sum_{y > z} bar(h_y) r_{z,y}
    LaurentPoly rhs;
    for (const auto& [y, hy] : h) rhs += hy.bar() * bar_t_tilde(y).coeff(z);
    if (rhs.bar() != -rhs)
      throw InvariantError("KL oracle: right-hand side at " + W_.format(z) + " is not anti-self-dual: " + rhs.str());
    if (rhs.coeff(0) != 0) throw InvariantError("KL oracle: nonzero constant term at " + W_.format(z));
    LaurentPoly hz = rhs.positive_part();
    if (!hz.is_zero()) h[z] = hz;
  }
  HeckeElt r;
  for (const auto& [y, p] : h) r.add(y, p);
  return r;
}

LaurentPoly HeckeAlgebra::kl_polynomial(const Element& y, const Element& x) {
  const LaurentPoly shifted = h(y, x).shift(y.length() - x.length());
  LaurentPoly p;
  for (const auto& [e, c] : shifted.terms()) {
    if (e > 0 || e % 2 != 0)
      throw InvariantError("KL polynomial substitution failed: v^" + std::to_string(e) + " in v^{l(y)-l(x)} h_{y,x}");
    p.add_term(-e / 2, c);
  }
  return p;
}

std::map<Element, LaurentPoly> HeckeAlgebra::kl_coordinates(const HeckeElt& a) {
  std::map<Element, LaurentPoly> out;
  HeckeElt rest = to_basis(a, Basis::TTilde);
  while (!rest.is_zero()) {
    auto top = std::prev(rest.terms.end());  // maximal length, hence Bruhat-maximal in the support
    const Element z = top->first;
    const LaurentPoly c = top->second;
    out[z] = c;
    rest = sub(rest, scale(kl_basis(z), c));
  }
  return out;
}

std::string format(const CoxeterSystem& W, const HeckeElt& a) {
  if (a.is_zero()) return "0";
  std::string out;
  const char* name = a.basis == Basis::T ? "T" : "T~";
  for (const auto& [x, c] : a.terms) {
    if (!out.empty()) out += " + ";
    out += "(" + c.str() + ")" + name + "[" + W.format(x) + "]";
  }
  return out;
}

}  // namespace coxsheaf::hecke
