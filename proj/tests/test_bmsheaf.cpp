#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "coxsheaf/bmsheaf.hpp"
#include "coxsheaf/error.hpp"
#include "coxsheaf/presets.hpp"

using namespace coxsheaf;
using namespace coxsheaf::bmsheaf;
using gradedlin::Polynomial;
using hecke::HeckeAlgebra;
using momentgraph::SummandKind;
using coxeter::CoxeterSystem;
using coxeter::RootVector;

namespace {

Element word(const CoxeterSystem& W, const char* w) { return W.normal_form(W.parse_word(w)); }

std::shared_ptr<const MomentGraph> graph_of(const CoxeterSystem& W, const Element& x) {
  return std::make_shared<const MomentGraph>(momentgraph::build_graph(W, x));
}

LaurentPoly v(int k) { return LaurentPoly::monomial(k); }

std::vector<int> sorted(std::vector<int> a) {
  std::sort(a.begin(), a.end());
  return a;
}

}  // namespace

TEST(BMSheaf, Identity) {
  auto W = make_preset("A2").system;
  auto bm = bm_construct(graph_of(W, W.identity()));
  EXPECT_EQ(bm.sheaf.stalk_degrees(0), std::vector<int>{0});
  HeckeAlgebra H(W);
  EXPECT_EQ(character(bm), H.t_tilde(W.identity()));
}

TEST(BMSheaf, SimpleReflection) {
  auto W = make_preset("A1").system;
  const auto s = W.generator(0);
  auto g = graph_of(W, s);
  auto bm = bm_construct(g);
  const int e = g->find(W.identity()), top = g->find(s);
  EXPECT_EQ(bm.sheaf.stalk_degrees(e), std::vector<int>{0});
  EXPECT_EQ(bm.sheaf.stalk_degrees(top), std::vector<int>{0});
  EXPECT_EQ(bm.costalks[e], std::vector<int>{2});
  HeckeElt expect;
  expect.add(s, v(0));
  expect.add(W.identity(), v(1));
  EXPECT_EQ(character(bm), expect);

  // Global sections: S (constants) plus S * (alpha, 0) -> graded rank 1 + v^2.
  auto gamma = sections(bm.sheaf, g->processing_order(), 10);
  EXPECT_EQ(gradedlin::graded_rank(gradedlin::free_generator_degrees(gamma)), v(0) + v(2));
  EXPECT_EQ(section_dims(bm.sheaf, g->processing_order(), {0, 2, 4}), (std::map<int, int>{{0, 1}, {2, 2}, {4, 2}}));
}

TEST(BMSheaf, LongestA2) {
  auto W = make_preset("A2").system;
  const auto w0 = word(W, "121");
  auto bm = bm_construct(graph_of(W, w0));
  for (int y = 0; y < bm.sheaf.graph().size(); ++y) EXPECT_EQ(bm.sheaf.stalk_degrees(y), std::vector<int>{0});
  HeckeAlgebra H(W);
  EXPECT_EQ(character(bm), H.kl_oracle(w0));
}

TEST(BMSheaf, SectionsOverSmallSets) {
  auto W = make_preset("A1").system;
  auto g = graph_of(W, W.generator(0));
  auto bm = bm_construct(g);
  const int e = g->find(W.identity());
  // One vertex: no equations, the whole stalk.
  EXPECT_EQ(gradedlin::free_generator_degrees(sections(bm.sheaf, {e}, 8)), std::vector<int>{0});
  EXPECT_EQ(section_dims(bm.sheaf, {}, {0, 2}), (std::map<int, int>{{0, 0}, {2, 0}}));
}

// The character of the BM sheaf equals the KL basis element, computed
// independently by the Hecke algebra recursion.
TEST(BMSheaf, CharacterIsKLBasis) {
  const std::vector<std::pair<std::string, int>> cases = {{"A2", 3}, {"B2", 4}, {"G2", 6}, {"A3", 4}, {"U2", 5}, {"U3", 3}};
  for (const auto& [name, maxlen] : cases) {
    auto W = make_preset(name).system;
    HeckeAlgebra H(W);
    for (const auto& x : W.elements_up_to_length(maxlen)) {
      auto bm = bm_construct(graph_of(W, x));
      EXPECT_EQ(character(bm), H.kl_basis(x)) << name << " " << W.format(x);
    }
  }
}

TEST(BMSheaf, SupportedSectionsAndPositivity) {
  for (const char* name : {"B2", "A3"}) {
    auto W = make_preset(name).system;
    auto x = W.elements_up_to_length(4).back();
    auto bm = bm_construct(graph_of(W, x));
    for (int y = 0; y < bm.sheaf.graph().size(); ++y) {
      auto r = check_supported_sections(bm, y);
      EXPECT_TRUE(r.ok) << (r.failures.empty() ? "" : r.failures.front());
    }
    EXPECT_TRUE(check_positive_degrees(bm).ok);
  }
}

TEST(BMSheaf, SectionsFlabby) {
  auto W = make_preset("B2").system;
  auto bm = bm_construct(graph_of(W, word(W, "2121")));
  auto r = check_sections(bm);
  EXPECT_TRUE(r.ok) << (r.failures.empty() ? "" : r.failures.front());
}

TEST(BMSheaf, FixedCapTooSmall) {
  auto W = make_preset("A2").system;
  EXPECT_THROW(bm_construct(graph_of(W, word(W, "121")), BMOptions{2}), CapError);
}

TEST(BMSheaf, CostalkInterval) {
  auto W = make_preset("A1").system;
  const auto s = W.generator(0);
  auto bm = bm_construct(graph_of(W, s));
  EXPECT_EQ(sorted(costalk_interval(bm, s, 0)), (std::vector<int>{0, 2}));
  auto summands = momentgraph::decompose_ze_module(costalk_interval_module(bm, s, 0));
  // Sections of B(s) are generated over Z(E) by (1, 1).
  EXPECT_EQ(summands, (std::vector<momentgraph::Summand>{{SummandKind::Pair, 0}}));
}

TEST(BMSheaf, ThetaCharacter) {
  auto W = make_preset("A1").system;
  HeckeAlgebra H(W);
  const auto s = W.generator(0);
  auto be = bm_construct(graph_of(W, W.identity()));
  EXPECT_EQ(theta_character(be, 0), H.kl_basis(s));
  auto bs = bm_construct(graph_of(W, s));
  EXPECT_EQ(theta_character(bs, 0), H.scale(H.kl_basis(s), LaurentPoly::v_plus_vinv()));
}

TEST(BMSheaf, ThetaMatchesHeckeProduct) {
  for (const char* name : {"A2", "B2", "A3"}) {
    auto W = make_preset(name).system;
    HeckeAlgebra H(W);
    for (const auto& x : W.elements_up_to_length(3))
      for (int s = 0; s < W.rank(); ++s) {
        auto bm = bm_construct(graph_of(W, x));
        EXPECT_EQ(theta_character(bm, s), H.mult(H.kl_basis(x), H.kl_basis(W.generator(s))))
            << name << " " << W.format(x) << " s=" << s;
        EXPECT_TRUE(check_no_upper_summand(bm, s).ok);
        EXPECT_TRUE(check_interval_additivity(bm, s).ok);
      }
  }
}

TEST(BMSheaf, TranslateOutA1) {
  auto W = make_preset("A1").system;
  HeckeAlgebra H(W);
  const auto s = W.generator(0);
  auto q = std::make_shared<const MomentGraph>(momentgraph::build_quotient_graph(W, W.identity(), 0));
  ASSERT_EQ(q->size(), 1);
  auto bq = bm_construct(q);
  auto lifted = translate_out(bq.sheaf, graph_of(W, s));
  EXPECT_EQ(lifted.stalk_degrees(0), std::vector<int>{0});
  auto ch = lift_character(lifted, 0);
  EXPECT_EQ(ch, H.kl_basis(s));
  EXPECT_THROW(translate_out(bq.sheaf, graph_of(W, W.identity())), InputError);
}

TEST(BMSheaf, TranslateOutSelfDual) {
  for (const char* name : {"A2", "B2", "A3"}) {
    auto W = make_preset(name).system;
    HeckeAlgebra H(W);
    for (const auto& x : W.elements_up_to_length(3))
      for (int s = 0; s < W.rank(); ++s) {
        const auto xs = W.multiply_right(x, s);
        const auto xmin = xs.length() < x.length() ? xs : x;
        const auto xmax = xs.length() < x.length() ? x : xs;
        auto q = std::make_shared<const MomentGraph>(momentgraph::build_quotient_graph(W, xmin, s));
        auto bq = bm_construct(q);
        auto ch = lift_character(translate_out(bq.sheaf, graph_of(W, xmax)), xmin.length());
        EXPECT_TRUE(H.is_self_dual(ch)) << name << " " << W.format(xmax);
        for (const auto& [y, c] : H.kl_coordinates(ch)) EXPECT_TRUE(c.nonnegative());
      }
  }
}

namespace {

// Random graded automorphism of a free module: unipotent with respect to the
// generator order sorted by degree.
std::vector<gradedlin::ModuleElt> random_automorphism(const Shape& m, std::mt19937& rng) {
  const int n = m.nvars();
  std::vector<int> idx(m.size());
  for (int j = 0; j < m.size(); ++j) idx[j] = j;
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return m.gens()[a].degree < m.gens()[b].degree; });
  std::uniform_int_distribution<int> coef(-2, 2);
  std::vector<gradedlin::ModuleElt> out(m.size());
  for (int a = 0; a < m.size(); ++a) {
    const int j = idx[a];
    out[j] = m.unit(j);
    for (int b = 0; b < a; ++b) {
      const int i = idx[b];
      Polynomial p;
      for (const auto& mono : gradedlin::monomial_basis(n, m.gens()[j].degree - m.gens()[i].degree))
        p.add_term(mono, coef(rng));
      out[j][i] += p;
    }
  }
  return out;
}

gradedlin::ModuleElt apply_aut(const std::vector<gradedlin::ModuleElt>& aut, const gradedlin::ModuleElt& m) {
  gradedlin::ModuleElt out(aut.empty() ? 0 : aut[0].size());
  for (std::size_t j = 0; j < aut.size(); ++j) out = gradedlin::module_add(out, gradedlin::module_scale(aut[j], m[j]));
  return out;
}

}  // namespace

// Building a module from known summands and scrambling it by automorphisms of
// lo and hi does not change the decomposition.
TEST(BMSheaf, DecompositionRoundTrip) {
  std::mt19937 rng(17);
  const int n = 2;
  const RootVector alpha{1, 2};
  std::uniform_int_distribution<int> kind(0, 2), deg(0, 2), count(1, 4);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<momentgraph::Summand> want;
    const int k = count(rng);
    for (int i = 0; i < k; ++i) want.push_back({static_cast<SummandKind>(kind(rng)), 2 * deg(rng)});
    std::sort(want.begin(), want.end());
    std::vector<int> lo_deg, hi_deg;
    for (const auto& w : want) {
      if (w.kind != SummandKind::Upper) lo_deg.push_back(w.degree);
      if (w.kind != SummandKind::Lower) hi_deg.push_back(w.degree);
    }
    const Shape lo = Shape::free(n, lo_deg), hi = Shape::free(n, hi_deg);
    const auto alo = random_automorphism(lo, rng), ahi = random_automorphism(hi, rng);
    std::vector<gradedlin::ModuleElt> gens;
    int il = 0, ih = 0;
    for (const auto& w : want) {
      gradedlin::ModuleElt a(lo.size()), b(hi.size());
      if (w.kind != SummandKind::Upper) a = lo.unit(il++);
      if (w.kind != SummandKind::Lower) b = hi.unit(ih++);
      a = apply_aut(alo, a);
      b = apply_aut(ahi, b);
      a.insert(a.end(), b.begin(), b.end());
      gens.push_back(a);
    }
    auto m = momentgraph::pair_module_span(lo, hi, alpha, gens, 12);
    auto got = momentgraph::decompose_ze_module(m);
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, want) << "trial " << trial;
  }
}
