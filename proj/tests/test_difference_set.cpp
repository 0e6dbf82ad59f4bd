#include <symcube/design.hpp>
#include <symcube/difference_set.hpp>
#include <symcube/io.hpp>

#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace symcube;

namespace {

// Direct check of the definition: every non-identity element is a quotient
// x^-1 y of elements of s exactly lambda times.
bool brute_is_ds(const FiniteGroup& g, const std::vector<std::uint32_t>& s, std::size_t lambda) {
  std::vector<std::size_t> cnt(g.order(), 0);
  for (auto x : s)
    for (auto y : s)
      if (x != y) ++cnt[g.mul(g.inv(x), y)];
  for (Element e = 1; e < g.order(); ++e)
    if (cnt[e] != lambda) return false;
  return true;
}

std::vector<ElementSet> brute_enumerate(const FiniteGroup& g, std::size_t k, std::size_t lambda) {
  std::vector<ElementSet> r;
  testutil::for_each_subset(g.order(), k, [&](const std::vector<std::uint32_t>& s) {
    if (brute_is_ds(g, s, lambda)) r.emplace_back(s.begin(), s.end());
  });
  return r;
}

FiniteGroup z2_4() {
  auto k = make_klein();
  return make_direct_product(k, k);
}

}  // namespace

TEST(DifferenceSet, Predicate) {
  auto z7 = make_cyclic(7);
  EXPECT_TRUE(is_difference_set(z7, {1, 2, 4}, 1));
  EXPECT_FALSE(is_difference_set(z7, {0, 1, 2}, 1));
  EXPECT_TRUE(is_difference_set(make_cyclic(13), {0, 1, 3, 9}, 1));
  EXPECT_TRUE(is_difference_set(make_cyclic(11), {1, 3, 4, 5, 9}, 2));
}

TEST(DifferenceSet, ConstructorRejects) {
  auto z7 = make_cyclic(7);
  EXPECT_THROW(DifferenceSet(z7, {0, 1, 2}, 1), Error);
  EXPECT_THROW(DifferenceSet(z7, {0, 1}, 1), Error);  // inadmissible
}

TEST(Enumerate, AgreesWithBruteForce) {
  struct Case {
    FiniteGroup g;
    std::size_t k, lambda;
  };
  std::vector<Case> cases = {{make_cyclic(7), 3, 1},     {make_cyclic(11), 5, 2},  {make_cyclic(13), 4, 1},
                             {make_cyclic(16), 6, 2},    {z2_4(), 6, 2},           {make_metacyclic(3, 7, 2), 5, 1},
                             {make_cyclic(21), 5, 1},    {make_cyclic(15), 7, 3}};
  for (const auto& c : cases) {
    auto got = enumerate_difference_sets(c.g, c.k, c.lambda);
    auto want = brute_enumerate(c.g, c.k, c.lambda);
    ASSERT_EQ(got.size(), want.size()) << c.g.name();
    for (std::size_t i = 0; i < got.size(); ++i) EXPECT_EQ(got[i].elements(), want[i]);
  }
}

TEST(Enumerate, KnownCounts) {
  EXPECT_EQ(enumerate_difference_sets(make_cyclic(16), 6, 2).size(), 0u);
  EXPECT_EQ(enumerate_difference_sets(z2_4(), 6, 2).size(), 448u);
  EXPECT_EQ(enumerate_difference_sets(make_cyclic(7), 3, 1).size(), 14u);
  EXPECT_EQ(enumerate_difference_sets(make_cyclic(7), 3, 2).size(), 0u);  // inadmissible
}

TEST(Classes, OrbitsPartitionAllSets) {
  for (const auto& bg : io::bundled_groups(16)) {
    const auto& g = bg.group;
    std::vector<std::size_t> sizes;
    auto reps = difference_sets_up_to_equivalence(g, 6, 2, &sizes);
    auto all = enumerate_difference_sets(g, 6, 2);
    std::size_t total = 0;
    for (auto s : sizes) total += s;
    EXPECT_EQ(total, all.size()) << bg.id;
    // representatives are lexicographic minima of their orbits
    auto aut = automorphism_group(g);
    for (const auto& r : reps)
      for (const auto& phi : aut)
        for (Element a = 0; a < g.order(); ++a) EXPECT_LE(r.elements(), translate_image(g, r.elements(), phi, a));
  }
}

TEST(Classes, PinnedCountsForOrder16) {
  // (Nds, Tds) per bundled id
  const std::map<std::string, std::pair<std::size_t, std::size_t>> want = {
      {"16_01", {0, 0}},   {"16_02", {3, 192}}, {"16_03", {4, 192}}, {"16_04", {3, 192}}, {"16_05", {2, 192}},
      {"16_06", {2, 64}},  {"16_07", {0, 0}},   {"16_08", {2, 128}}, {"16_09", {2, 256}}, {"16_10", {2, 448}},
      {"16_11", {2, 192}}, {"16_12", {2, 704}}, {"16_13", {2, 320}}, {"16_14", {1, 448}}};
  for (const auto& bg : io::bundled_groups(16)) {
    std::vector<std::size_t> sizes;
    auto reps = difference_sets_up_to_equivalence(bg.group, 6, 2, &sizes);
    std::size_t total = 0;
    for (auto s : sizes) total += s;
    EXPECT_EQ(reps.size(), want.at(bg.id).first) << bg.id;
    EXPECT_EQ(total, want.at(bg.id).second) << bg.id;
  }
}

TEST(Translates, PreserveTheProperty) {
  std::mt19937_64 rng(5);
  auto g = make_metacyclic(3, 7, 2);
  auto all = enumerate_difference_sets(g, 5, 1);
  auto aut = automorphism_group(g);
  for (int t = 0; t < 50; ++t) {
    const auto& d = all[rng() % all.size()];
    Element a = rng() % g.order(), b = rng() % g.order();
    ElementSet s;
    for (auto x : d.elements()) s.push_back(g.mul(g.mul(a, x), b));
    EXPECT_TRUE(is_difference_set(g, s, 1));
    EXPECT_TRUE(is_difference_set(g, translate_image(g, d.elements(), aut[rng() % aut.size()], a), 1));
  }
}

TEST(Multipliers, MatchBruteForce) {
  auto z7 = make_cyclic(7);
  DifferenceSet d(z7, {1, 2, 4}, 1);
  auto ms = multipliers(z7, d);
  // x -> 2x and x -> 4x fix the quadratic residues
  EXPECT_EQ(ms.size(), 3u);
  for (const auto& m : ms) EXPECT_EQ(translate_image(z7, d.elements(), m.map, 0), left_translate(z7, m.translate, d.elements()));
  auto g = z2_4();
  auto all = enumerate_difference_sets(g, 6, 2);
  auto aut = automorphism_group(g);
  const auto& e = all.front();
  std::size_t brute = 0;
  for (const auto& phi : aut) {
    auto img = translate_image(g, e.elements(), phi, 0);
    bool hit = false;
    for (Element a = 0; a < g.order(); ++a) hit = hit || left_translate(g, a, e.elements()) == img;
    brute += hit;
  }
  EXPECT_EQ(multipliers(g, e, &aut).size(), brute);
}

TEST(Development, IsASymmetricDesign) {
  auto g = make_metacyclic(3, 7, 2);
  for (const auto& d : enumerate_difference_sets(g, 5, 1)) {
    auto m = development(g, d);
    EXPECT_TRUE(verify_design(m, {21, 5, 1}));
    for (Element j = 0; j < g.order(); ++j) EXPECT_EQ(block_points(m, j), left_translate(g, j, d.elements()));
  }
}

TEST(DifferenceSet, RightDifferencesAgree) {
  for (const auto& bg : io::bundled_groups(16))
    for (const auto& d : enumerate_difference_sets(bg.group, 6, 2)) {
      auto r = right_difference_counts(bg.group, d.elements());
      for (Element e = 1; e < 16; ++e) ASSERT_EQ(r[e], 2u);
    }
}
