#pragma once

// Sparse Laurent polynomials in v with arbitrary-precision integer
// coefficients.

#include <gmpxx.h>

#include <map>
#include <string>

namespace coxsheaf {

class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(long c) { add_term(0, mpz_class(c)); }  // NOLINT(google-explicit-constructor)
  static LaurentPoly monomial(int exp, const mpz_class& coeff = 1);
  /// v + v^{-1}
  static LaurentPoly v_plus_vinv();

  const std::map<int, mpz_class>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  mpz_class coeff(int exp) const;
  void add_term(int exp, const mpz_class& coeff);
  int min_exp() const;
  int max_exp() const;

  LaurentPoly operator-() const;
  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly&, const LaurentPoly&) = default;

  /// Multiplication by v^k.
  LaurentPoly shift(int k) const;
  /// v -> v^{-1}
  LaurentPoly bar() const;
  /// Terms with exponent > 0.
  LaurentPoly positive_part() const;
  bool in_z_v() const { return is_zero() || min_exp() >= 0; }
  bool in_v_z_v() const { return is_zero() || min_exp() >= 1; }
  bool nonnegative() const;

  /// e.g. "v^2 - 1 + 3v^-1"; "0" for the zero polynomial.
  std::string str(const std::string& var = "v") const;

 private:
  std::map<int, mpz_class> terms_;
};

}  // namespace coxsheaf
