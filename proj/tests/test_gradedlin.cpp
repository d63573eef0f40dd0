#include <gtest/gtest.h>

#include <random>

#include "coxsheaf/error.hpp"
#include "coxsheaf/gradedlin.hpp"

using namespace coxsheaf;
using namespace coxsheaf::gradedlin;

namespace {

Polynomial var(int i, int n) { return Polynomial::variable(i, n); }
Polynomial lin(const RootVector& a) { return Polynomial::linear(a); }

}  // namespace

TEST(GradedLin, MonomialBases) {
  EXPECT_EQ(monomial_basis(1, 4), (std::vector<Exponents>{{2}}));
  EXPECT_EQ(monomial_basis(2, 4), (std::vector<Exponents>{{2, 0}, {1, 1}, {0, 2}}));
  for (int n = 1; n <= 4; ++n) {
    EXPECT_EQ(monomial_basis(n, 0).size(), 1u);
    for (int d = 0; d <= 12; d += 2) EXPECT_EQ(static_cast<long>(monomial_basis(n, d).size()), dim_s(n, d));
  }
  EXPECT_THROW(monomial_basis(2, 3), InputError);
  EXPECT_EQ(dim_s(3, 4), 6);
}

TEST(GradedLin, QuotientBases) {
  EXPECT_TRUE(quotient_basis(1, {1}, 2).empty());
  EXPECT_EQ(quotient_basis(1, {1}, 0).size(), 1u);
  EXPECT_EQ(quotient_basis(2, {1, 1}, 2).size(), 1u);
  EXPECT_EQ(quotient_basis(2, {1, 0}, 4), (std::vector<Exponents>{{0, 2}}));
  EXPECT_THROW(quotient_basis(2, {0, 0}, 2), InputError);
}

TEST(GradedLin, ReductionAndDivision) {
  const int n = 3;
  const RootVector alpha{0, 2, -1};
  Polynomial f = var(1, n) * var(1, n) + var(0, n) * var(2, n);
  Polynomial r = f.reduce_mod(alpha);
  EXPECT_EQ(r.coeff({0, 0, 2}), mpq_class(1, 4));
  EXPECT_TRUE((f - r).divisible_by(alpha));
  Polynomial g = lin(alpha) * f;
  auto q = g.divide(alpha);
  ASSERT_TRUE(q.has_value());
  EXPECT_EQ(*q, f);
  EXPECT_FALSE(f.divide(alpha).has_value());
  EXPECT_TRUE(lin(alpha).reduce_mod(alpha).is_zero());
}

TEST(GradedLin, EchelonAndKernel) {
  Echelon e(3);
  EXPECT_TRUE(e.insert({{0, 1}, {1, 2}}));
  EXPECT_TRUE(e.insert({{1, 1}, {2, 1}}));
  EXPECT_FALSE(e.insert({{0, 1}, {1, 3}, {2, 1}}));
  EXPECT_EQ(e.rank(), 2);
  KernelBuilder kb(3);
  kb.add_column({{0, 1}});
  kb.add_column({{0, 2}});
  kb.add_column({{1, 1}});
  ASSERT_EQ(kb.kernel().size(), 1u);
  EXPECT_EQ(kb.kernel()[0], (SparseVec{{0, -2}, {1, 1}}));
}

TEST(GradedLin, KernelsOfSimpleMaps) {
  const int n = 2;
  const RootVector alpha{1, 1};
  Shape s = Shape::free(n, {0});
  // multiplication by alpha: S -> S
  DegreewiseMap mult(s, Shape::free(n, {-2}), {ModuleElt{lin(alpha)}});
  for (int d = 0; d <= 8; d += 2) EXPECT_TRUE(mult.kernel(d).empty());
  // quotient S -> S/alpha
  DegreewiseMap quo(s, Shape::quotient(n, {0}, alpha), {ModuleElt{Polynomial::constant(1, n)}});
  auto k2 = quo.kernel(2);
  ASSERT_EQ(k2.size(), 1u);
  EXPECT_EQ(s.element(k2[0], 2)[0].scaled(1 / k2[0][0].second), lin(alpha));
  EXPECT_EQ(free_generator_degrees(kernel_module(quo, 8)), std::vector<int>{2});
  // zero map
  DegreewiseMap zero(s, s, {ModuleElt{Polynomial{}}});
  for (int d = 0; d <= 6; d += 2) EXPECT_EQ(static_cast<long>(zero.kernel(d).size()), dim_s(n, d));
  EXPECT_EQ(free_generator_degrees(kernel_module(zero, 6)), std::vector<int>{0});
}

TEST(GradedLin, RankNullity) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> c(-2, 2);
  const int n = 3;
  Shape src = Shape::free(n, {0, 2, 2});
  Shape dst = Shape::direct_sum({Shape::free(n, {0}), Shape::quotient(n, {0, 2}, {1, -1, 0})});
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<ModuleElt> images;
    for (int j = 0; j < src.size(); ++j) {
      ModuleElt m = dst.zero();
      for (int k = 0; k < dst.size(); ++k) {
        const int deg = src.gens()[j].degree - dst.gens()[k].degree;
        if (deg < 0) continue;
        for (const auto& e : monomial_basis(n, deg)) m[k].add_term(e, c(rng));
      }
      images.push_back(m);
    }
    DegreewiseMap f(src, dst, images);
    for (int d = 0; d <= 8; d += 2)
      EXPECT_EQ(static_cast<int>(f.kernel(d).size()) + f.rank(d), src.dim(d));
  }
}

TEST(GradedLin, MinimalGenerators) {
  const int n = 2;
  const RootVector alpha{1, 0};
  Shape s = Shape::free(n, {0});
  auto unit = minimal_generators(span_of(s, {ModuleElt{Polynomial::constant(1, n)}}, 6));
  EXPECT_EQ(unit.degrees, std::vector<int>{0});
  auto ideal = minimal_generators(span_of(s, {ModuleElt{lin(alpha)}}, 6));
  EXPECT_EQ(ideal.degrees, std::vector<int>{2});
  Shape ss = Shape::free(n, {0, 0});
  auto sub = span_of(ss, {ModuleElt{lin(alpha), Polynomial{}}, ModuleElt{Polynomial::constant(1, n), Polynomial::constant(1, n)}}, 8);
  auto mg = minimal_generators(sub);
  EXPECT_EQ(mg.degrees, (std::vector<int>{0, 2}));
  EXPECT_EQ(free_generator_degrees(sub), (std::vector<int>{0, 2}));
  // idempotence
  EXPECT_EQ(minimal_generators(span_of(ss, mg.lifts, 8)).degrees, mg.degrees);
}

TEST(GradedLin, CapInstability) {
  const int n = 2;
  Shape s = Shape::free(n, {0});
  Polynomial q = var(0, n) * var(0, n) * var(1, n);
  EXPECT_THROW(minimal_generators(span_of(s, {ModuleElt{q}}, 6)), CapError);
  EXPECT_NO_THROW(minimal_generators(span_of(s, {ModuleElt{q}}, 6), false));
  EXPECT_NO_THROW(minimal_generators(span_of(s, {ModuleElt{q}}, 10)));
}

TEST(GradedLin, NotFree) {
  const int n = 2;
  Shape s = Shape::free(n, {0});
  // the maximal ideal (a1, a2) is not free
  auto m = span_of(s, {ModuleElt{var(0, n)}, ModuleElt{var(1, n)}}, 8);
  EXPECT_THROW(free_generator_degrees(m), NotFreeError);
  std::map<int, int> bad{{0, 1}, {2, 1}};
  EXPECT_THROW(deconvolve(2, bad, 2), NotFreeError);
}

TEST(GradedLin, DeconvolutionMatchesHilbertSeries) {
  const int n = 3;
  std::vector<int> gens{0, 2, 2, 6};
  Shape s = Shape::free(n, gens);
  std::map<int, int> dims;
  for (int d = 0; d <= 12; d += 2) dims[d] = s.dim(d);
  EXPECT_EQ(deconvolve(n, dims, 12), gens);
  LaurentPoly r = graded_rank(gens);
  EXPECT_EQ(r, LaurentPoly(1) + LaurentPoly::monomial(2, 2) + LaurentPoly::monomial(6));
}

TEST(GradedLin, ReduceModNonPrimitiveForm) {
  // alpha = 2a_1 + 4a_2: a_1 = -2a_2 modulo alpha, coefficients kept canonical.
  const RootVector alpha{2, 4};
  const auto r = Polynomial::variable(0, 2).reduce_mod(alpha);
  EXPECT_EQ(r, Polynomial::variable(1, 2).scaled(-2));
  EXPECT_TRUE((Polynomial::variable(0, 2) * Polynomial::linear(alpha)).divisible_by(alpha));
}
