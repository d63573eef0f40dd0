#pragma once

// Degreewise linear algebra over S = Q[a_1, ..., a_n], deg a_i = 2.
//
// Modules are direct sums of shifted copies of S and of S/(alpha); a module
// element is a vector of polynomials, one per generator.  Everything that the
// sheaf engine needs (kernels, images, covers, graded ranks) is computed one
// even degree at a time with exact rational elimination.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coxsheaf/coxeter.hpp"
#include "coxsheaf/laurent.hpp"

namespace coxsheaf::gradedlin {

using coxeter::RootVector;
using Exponents = std::vector<int>;

class Polynomial {
 public:
  Polynomial() = default;
  static Polynomial constant(const mpq_class& c, int n);
  static Polynomial variable(int i, int n);
  static Polynomial linear(const RootVector& alpha);
  static Polynomial monomial(const Exponents& e, const mpq_class& c = 1);

  const std::map<Exponents, mpq_class>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add_term(const Exponents& e, const mpq_class& c);
  mpq_class coeff(const Exponents& e) const;
  /// Degree in the doubled grading; requires a homogeneous non-zero polynomial.
  int degree() const;
  bool is_homogeneous() const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial scaled(const mpq_class& c) const;
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  /// Normal form modulo alpha: the pivot variable of alpha is eliminated.
  Polynomial reduce_mod(const RootVector& alpha) const;
  bool divisible_by(const RootVector& alpha) const { return reduce_mod(alpha).is_zero(); }
  /// Exact quotient by a linear form; nullopt if alpha does not divide.
  std::optional<Polynomial> divide(const RootVector& alpha) const;

  std::string str() const;

 private:
  std::map<Exponents, mpq_class> terms_;
};

/// Lowest index with a non-zero coefficient.
int pivot_variable(const RootVector& alpha);

/// dim S_d in n variables (0 for negative or odd d).
long dim_s(int n, int d);
/// Degree-d monomials, deglex (a_1 > a_2 > ...).
const std::vector<Exponents>& monomial_basis(int n, int d);
/// Monomials of (S/alpha)_d: those not involving the pivot variable.
std::vector<Exponents> quotient_basis(int n, const RootVector& alpha, int d);
long dim_quotient(int n, int d);

// ------------------------------------------------------------------ vectors

using SparseVec = std::vector<std::pair<int, mpq_class>>;

SparseVec sparse_sub_scaled(const SparseVec& a, const mpq_class& c, const SparseVec& b);
SparseVec sparse_scale(const SparseVec& a, const mpq_class& c);

/// Incrementally built row-echelon form; rows normalized to leading one.
class Echelon {
 public:
  explicit Echelon(int ambient = 0) : ambient_(ambient) {}
  int ambient() const { return ambient_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  SparseVec reduce(const SparseVec& v) const;
  bool contains(const SparseVec& v) const { return reduce(v).empty(); }
  /// Inserts v; returns false if v was already in the span.
  bool insert(const SparseVec& v);
  std::vector<SparseVec> basis() const;

 private:
  int ambient_;
  std::map<int, SparseVec> rows_;
};

/// Kernel of a linear map presented by the images of source basis vectors.
class KernelBuilder {
 public:
  explicit KernelBuilder(int source_dim) : source_dim_(source_dim) {}
  /// Adds the image of the next source basis vector.
  void add_column(const SparseVec& image);
  const std::vector<SparseVec>& kernel() const { return kernel_; }
  int rank() const { return static_cast<int>(rows_.size()); }

 private:
  struct Row {
    SparseVec image;
    SparseVec combo;
  };
  int source_dim_;
  int next_ = 0;
  std::map<int, Row> rows_;
  std::vector<SparseVec> kernel_;
};

// ------------------------------------------------------------------ modules

/// Generator of degree `degree`; a non-empty modulus makes it a copy of
/// S/(modulus) instead of S.
struct Generator {
  int degree = 0;
  RootVector modulus;

  friend bool operator==(const Generator&, const Generator&) = default;
};

using ModuleElt = std::vector<Polynomial>;

/// Finite direct sum of shifted copies of S and S/(alpha) with fixed
/// coordinates in every degree.
class Shape {
 public:
  Shape() = default;
  Shape(int n, std::vector<Generator> gens);
  static Shape free(int n, const std::vector<int>& degrees);
  static Shape quotient(int n, const std::vector<int>& degrees, const RootVector& alpha);
  /// Concatenation of generators.
  static Shape direct_sum(const std::vector<Shape>& parts);

  int nvars() const { return n_; }
  const std::vector<Generator>& gens() const { return gens_; }
  int size() const { return static_cast<int>(gens_.size()); }
  std::vector<int> degrees() const;

  int dim(int d) const;
  int offset(int d, int j) const;
  const std::vector<Exponents>& basis(int d, int j) const;

  ModuleElt zero() const { return ModuleElt(gens_.size()); }
  ModuleElt unit(int j) const;
  ModuleElt reduce(const ModuleElt& m) const;
  /// Coordinates of a homogeneous element of degree d (reduced first).
  SparseVec coords(const ModuleElt& m, int d) const;
  ModuleElt element(const SparseVec& v, int d) const;
  /// Image of the j-th basis vector in degree d (generator, monomial).
  std::pair<int, Exponents> basis_vector(int d, int index) const;

 private:
  int n_ = 0;
  std::vector<Generator> gens_;
  mutable std::map<std::pair<int, int>, std::vector<Exponents>> basis_cache_;
};

ModuleElt module_add(const ModuleElt& a, const ModuleElt& b);
ModuleElt module_scale(const ModuleElt& a, const Polynomial& p);
bool module_is_zero(const ModuleElt& m);

/// S-linear map from `source` to `target` given by images of the source
/// generators.  Images of quotient generators must be killed by the modulus.
class DegreewiseMap {
 public:
  DegreewiseMap(Shape source, Shape target, std::vector<ModuleElt> images);

  const Shape& source() const { return source_; }
  const Shape& target() const { return target_; }
  const std::vector<ModuleElt>& images() const { return images_; }

  ModuleElt apply(const ModuleElt& m) const;
  /// Columns of the degree-d matrix, one per source basis vector.
  std::vector<SparseVec> columns(int d) const;
  std::vector<SparseVec> kernel(int d) const;
  std::vector<SparseVec> image(int d) const;
  int rank(int d) const;

 private:
  Shape source_, target_;
  std::vector<ModuleElt> images_;
  mutable std::map<int, std::vector<SparseVec>> column_cache_;
};

/// A graded submodule known by a basis in every even degree 0..cap.
struct Degreewise {
  Shape ambient;
  int cap = 0;
  std::map<int, std::vector<SparseVec>> basis;  // degree -> basis vectors

  int dim(int d) const;
};

/// Submodule generated by homogeneous elements, truncated at cap.
Degreewise span_of(const Shape& ambient, const std::vector<ModuleElt>& gens, int cap);

struct MinimalGenerators {
  std::vector<int> degrees;
  std::vector<ModuleElt> lifts;
};

/// Graded Nakayama: in each degree, a complement of sum_i a_i N_{d-2} in N_d.
/// Throws CapError if generators appear in degree cap or cap - 2 and
/// check_cap is set.
MinimalGenerators minimal_generators(const Degreewise& sub, bool check_cap = true);

/// Generator degrees of a graded free module with the given Hilbert function
/// (dims indexed by even degree), by deconvolution with the Hilbert series of
/// S.  Throws NotFreeError on a negative coefficient.
std::vector<int> deconvolve(int n, const std::map<int, int>& dims, int cap);

/// Graded rank sum_i v^{k_i} of generator degrees k_i.
LaurentPoly graded_rank(const std::vector<int>& degrees);

/// Minimal generators of the submodule, after checking that it is graded free
/// up to the cap (minimal generator counts match the deconvolution).
MinimalGenerators free_generators(const Degreewise& sub, bool check_cap = true);
std::vector<int> free_generator_degrees(const Degreewise& sub, bool check_cap = true);

/// Some x with sum_i x_i columns[i] = rhs, or nullopt.
std::optional<SparseVec> solve(const std::vector<SparseVec>& columns, const SparseVec& rhs);

/// Kernel of the map in all degrees 0..cap.
Degreewise kernel_module(const DegreewiseMap& map, int cap);

}  // namespace coxsheaf::gradedlin
