#include <gtest/gtest.h>

#include <fstream>
#include <functional>
#include <map>
#include <set>

#include "coxsheaf/coxeter.hpp"
#include "coxsheaf/error.hpp"
#include "coxsheaf/presets.hpp"

using namespace coxsheaf;
using namespace coxsheaf::coxeter;

namespace {

// Length as the number of positive roots sent negative by w^{-1}.  Positive
// roots are enumerated as u(alpha_s) with l(u) <= bound.
int inversion_count(const CoxeterSystem& W, const Element& w, int bound) {
  std::set<RootVector> roots;
  for (const auto& u : W.elements_up_to_length(bound))
    for (int s = 0; s < W.rank(); ++s) {
      Root r = W.classify(u.matrix().column(s));
      if (r.positive) roots.insert(r.coords);
    }
  int count = 0;
  for (const auto& r : roots)
    if (!W.classify(w.inverse_matrix().apply(r)).positive) ++count;
  return count;
}

// Bruhat order as the transitive closure of covers y -> ty, l(ty) = l(y) + 1.
std::set<std::pair<std::vector<int>, std::vector<int>>> cover_closure(const CoxeterSystem& W,
                                                                      const std::vector<Element>& elems) {
  std::set<Element> in(elems.begin(), elems.end());
  std::set<Element> reflections;
  for (const auto& a : elems)
    for (const auto& b : elems) {
      Element t = W.multiply(b, W.inverse(a));
      if (W.is_reflection(t)) reflections.insert(t);
    }
  std::map<Element, std::set<Element>> up;
  for (const auto& y : elems) {
    up[y].insert(y);
    for (const auto& t : reflections) {
      Element z = W.multiply(t, y);
      if (z.length() == y.length() + 1 && in.count(z)) up[y].insert(z);
    }
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& [y, ups] : up) {
      std::set<Element> add;
      for (const auto& z : ups)
        for (const auto& w : up[z])
          if (!ups.count(w)) add.insert(w);
      if (!add.empty()) {
        ups.insert(add.begin(), add.end());
        changed = true;
      }
    }
  }
  std::set<std::pair<std::vector<int>, std::vector<int>>> rel;
  for (const auto& [y, ups] : up)
    for (const auto& z : ups) rel.insert({y.word(), z.word()});
  return rel;
}

Element word(const CoxeterSystem& W, const char* w) { return W.normal_form(W.parse_word(w)); }

}  // namespace

TEST(Coxeter, DefaultCartanEntries) {
  auto a1 = make_preset("A1").system;
  EXPECT_EQ(a1.cartan_matrix(), (std::vector<std::vector<int>>{{2}}));
  auto a2 = make_preset("A2").system;
  EXPECT_EQ(a2.cartan_entry(0, 1), -1);
  EXPECT_EQ(a2.cartan_entry(1, 0), -1);
  auto u2 = make_preset("U2").system;
  EXPECT_EQ(u2.cartan_entry(0, 1), -2);
  EXPECT_TRUE(u2.is_universal());
  auto b2 = make_preset("B2").system;
  EXPECT_EQ(b2.cartan_entry(0, 1) * b2.cartan_entry(1, 0), 2);
}

TEST(Coxeter, RejectsBadInput) {
  EXPECT_THROW(CoxeterSystem::make({{1, 5}, {5, 1}}), InputError);
  EXPECT_THROW(CoxeterSystem::make({{1, 3}, {2, 1}}), InputError);
  EXPECT_THROW(CoxeterSystem::make({{1, 3}, {3, 1}}, std::vector<std::vector<int>>{{2, -1}, {-2, 2}}), InputError);
  EXPECT_THROW(CoxeterSystem::make({{1, kInfinity}, {kInfinity, 1}}, std::vector<std::vector<int>>{{2, -1}, {-1, 2}}),
               InputError);
  auto a2 = make_preset("A2").system;
  EXPECT_THROW(a2.parse_word("13"), InputError);
  EXPECT_THROW(a2.parse_word("1x"), InputError);
}

TEST(Coxeter, NormalForms) {
  auto W = make_preset("A2").system;
  EXPECT_TRUE(word(W, "11").is_identity());
  EXPECT_EQ(word(W, "121"), word(W, "212"));
  EXPECT_EQ(W.format(word(W, "212")), "121");
  auto U = make_preset("U2").system;
  auto x = word(U, "1212");
  EXPECT_EQ(x.length(), 4);
  EXPECT_EQ(U.format(x), "1212");
  EXPECT_EQ(W.multiply(word(W, "1"), word(W, "21")), word(W, "121"));
  EXPECT_EQ(W.multiply(word(W, "1"), word(W, "21")).length(), 3);
}

TEST(Coxeter, MultiplyMatchesBruteForceA2) {
  auto W = make_preset("A2").system;
  auto all = W.elements_up_to_length(10);
  ASSERT_EQ(all.size(), 6u);
  for (const auto& a : all)
    for (const auto& b : all) {
      Element p = W.multiply(a, b);
      EXPECT_EQ(p.matrix(), a.matrix() * b.matrix());
      int found = 0;
      for (const auto& c : all)
        if (c.matrix() == a.matrix() * b.matrix()) ++found;
      EXPECT_EQ(found, 1);
    }
}

TEST(Coxeter, GroupOrders) {
  EXPECT_EQ(make_preset("A3").system.elements_up_to_length(20).size(), 24u);
  EXPECT_EQ(make_preset("B2").system.elements_up_to_length(20).size(), 8u);
  EXPECT_EQ(make_preset("G2").system.elements_up_to_length(20).size(), 12u);
  // Universal rank 3: 1 + 3 + 3*2 + 3*4 elements up to length 3.
  EXPECT_EQ(make_preset("U3").system.elements_up_to_length(3).size(), 22u);
}

TEST(Coxeter, Descents) {
  auto W = make_preset("A2").system;
  EXPECT_TRUE(W.right_descents(W.identity()).empty());
  EXPECT_EQ(W.right_descents(W.generator(1)), std::vector<int>{1});
  auto U = make_preset("U3").system;
  for (const auto& w : U.elements_up_to_length(4))
    if (!w.is_identity()) {
      auto d = U.right_descents(w);
      ASSERT_EQ(d.size(), 1u);
      EXPECT_EQ(d[0], w.word().back());
    }
}

TEST(Coxeter, Reflections) {
  auto W = make_preset("A2").system;
  for (int s = 0; s < 2; ++s) {
    EXPECT_TRUE(W.is_reflection(W.generator(s)));
    RootVector expect(2, 0);
    expect[s] = 1;
    EXPECT_EQ(W.reflection_root(W.generator(s)).coords, expect);
  }
  EXPECT_FALSE(W.is_reflection(word(W, "12")));
  auto t = word(W, "121");
  ASSERT_TRUE(W.is_reflection(t));
  EXPECT_EQ(W.reflection_root(t).coords, (RootVector{1, 1}));
  EXPECT_THROW(W.reflection_root(word(W, "12")), InputError);
}

TEST(Coxeter, AffineTranslationIsNotReflection) {
  auto U = make_preset("U2").system;
  // In the 2-dimensional realization s1 s2 is unipotent: M - I has rank one.
  auto x = word(U, "12");
  EXPECT_EQ(x.matrix().rank_minus_identity(), 1);
  EXPECT_FALSE(U.is_reflection(x));
  EXPECT_TRUE(U.is_reflection(word(U, "121")));
  EXPECT_TRUE(U.is_reflection(word(U, "12121")));
  EXPECT_FALSE(U.is_reflection(word(U, "1212")));
}

TEST(Coxeter, ReflectionRootIsConjugatedSimpleRoot) {
  for (const char* name : {"A3", "B2", "G2", "U2", "U3"}) {
    auto W = make_preset(name).system;
    for (const auto& u : W.elements_up_to_length(4))
      for (int s = 0; s < W.rank(); ++s) {
        Element t = W.multiply(W.multiply(u, W.generator(s)), W.inverse(u));
        ASSERT_TRUE(W.is_reflection(t)) << name << " " << W.format(u);
        Root r = W.classify(u.matrix().column(s));
        if (!r.positive)
          for (auto& c : r.coords) c = -c;
        EXPECT_EQ(W.reflection_root(t).coords, r.coords) << name;
      }
  }
}

TEST(Coxeter, LengthEqualsInversions) {
  for (const auto& name : preset_names()) {
    auto W = make_preset(name).system;
    for (const auto& w : W.elements_up_to_length(6)) EXPECT_EQ(w.length(), inversion_count(W, w, 6)) << name;
  }
}

TEST(Coxeter, NormalFormIdempotent) {
  for (const auto& name : preset_names()) {
    auto W = make_preset(name).system;
    for (const auto& w : W.elements_up_to_length(5)) {
      EXPECT_EQ(W.normal_form(w.word()), w);
      EXPECT_EQ(W.parse_word(W.format(w)), w.word());
    }
  }
}

TEST(Coxeter, ShortLexIsLeast) {
  auto W = make_preset("A3").system;
  // Every reduced word of every element maps to the same element, and the
  // canonical one is lexicographically least among same-length words.
  for (const auto& w : W.elements_up_to_length(6)) {
    std::vector<int> cand(w.length(), 0);
    std::function<void(int)> rec = [&](int i) {
      if (i == w.length()) {
        Element e = W.normal_form(cand);
        if (e == w) EXPECT_LE(w.word(), cand);
        return;
      }
      for (int s = 0; s < 3; ++s) {
        cand[i] = s;
        rec(i + 1);
      }
    };
    rec(0);
  }
}

TEST(Coxeter, BruhatIntervals) {
  auto W = make_preset("A2").system;
  auto x = word(W, "121");
  EXPECT_EQ(W.bruhat_interval(x).size(), 6u);
  for (const auto& y : W.bruhat_interval(x)) {
    EXPECT_TRUE(W.bruhat_leq(W.identity(), y));
    EXPECT_TRUE(W.bruhat_leq(y, y));
  }
  EXPECT_FALSE(W.bruhat_leq(word(W, "12"), word(W, "21")));
}

TEST(Coxeter, BruhatMatchesCoverClosure) {
  for (const auto& name : preset_names()) {
    auto W = make_preset(name).system;
    const int bound = preset_is_infinite(name) ? (name == "U2" ? 6 : 4) : 20;
    auto elems = W.elements_up_to_length(bound);
    std::vector<Element> tops;
    for (const auto& e : elems)
      if (e.length() == elems.back().length()) tops.push_back(e);
    for (const auto& x : tops) {
      auto interval = W.bruhat_interval(x);
      if (interval.size() > 200) continue;
      auto rel = cover_closure(W, interval);
      for (const auto& a : interval)
        for (const auto& b : interval)
          EXPECT_EQ(W.bruhat_leq(a, b), rel.count({a.word(), b.word()}) > 0)
              << name << " " << W.format(a) << " <= " << W.format(b);
    }
  }
}

TEST(Coxeter, DistinctMatricesAndRootsInIntervals) {
  for (const auto& name : preset_names()) {
    auto W = make_preset(name).system;
    const int bound = preset_is_infinite(name) ? 4 : 20;
    auto elems = W.elements_up_to_length(bound);
    std::set<std::vector<std::int64_t>> seen;
    for (const auto& e : elems) {
      std::vector<std::int64_t> flat;
      for (int i = 0; i < W.rank(); ++i)
        for (int j = 0; j < W.rank(); ++j) flat.push_back(e.matrix()(i, j));
      EXPECT_TRUE(seen.insert(flat).second) << name;
    }
  }
}

TEST(Coxeter, LoadJson) {
  const std::string path = testing::TempDir() + "/b2.json";
  {
    std::ofstream out(path);
    out << R"({"rank": 2, "coxeter": [[1, 4], [4, 1]], "cartan": [[2, -2], [-1, 2]], "labels": ["a", "b"]})";
  }
  auto W = load_system_json(path);
  EXPECT_EQ(W.cartan_entry(0, 1), -2);
  EXPECT_EQ(W.labels()[1], "b");
  EXPECT_EQ(W.elements_up_to_length(10).size(), 8u);
  {
    std::ofstream out(path);
    out << R"({"rank": 2, "coxeter": [[1, "inf"], ["inf", 1]]})";
  }
  EXPECT_TRUE(load_system_json(path).is_universal());
}
