#include <symcube/reproduce.hpp>
#include <symcube/search.hpp>

#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace symcube;

namespace {

std::size_t meet(const ElementSet& a, const ElementSet& b) {
  std::size_t r = 0;
  for (auto x : a) r += std::binary_search(b.begin(), b.end(), x);
  return r;
}

// v difference sets meeting pairwise in lambda points, by plain backtracking on the
// first point covered by fewer than k chosen blocks.
std::set<BlockList> naive_designs(const FiniteGroup& g, std::size_t k, std::size_t lambda) {
  std::vector<ElementSet> c;
  for (const auto& d : enumerate_difference_sets(g, k, lambda)) c.push_back(d.elements());
  std::set<BlockList> out;
  BlockList cur;
  std::vector<std::size_t> cover(g.order(), 0);
  std::vector<bool> used(c.size(), false);
  auto rec = [&](auto&& self) -> void {
    if (cur.size() == g.order()) {
      auto b = cur;
      std::sort(b.begin(), b.end());
      out.insert(b);
      return;
    }
    auto x = static_cast<Element>(std::find_if(cover.begin(), cover.end(), [&](auto n) { return n < k; }) - cover.begin());
    if (x == g.order()) return;
    // siblings already tried are excluded below this level so each design appears once
    std::vector<std::size_t> tried;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (used[i] || !std::binary_search(c[i].begin(), c[i].end(), x)) continue;
      bool ok = true;
      for (const auto& b : cur) ok = ok && meet(b, c[i]) == lambda;
      for (auto y : c[i]) ok = ok && cover[y] < k;
      if (!ok) continue;
      used[i] = true;
      cur.push_back(c[i]);
      for (auto y : c[i]) ++cover[y];
      self(self);
      for (auto y : c[i]) --cover[y];
      cur.pop_back();
      tried.push_back(i);
    }
    for (auto i : tried) used[i] = false;
  };
  rec(rec);
  return out;
}

std::vector<Certificate> group_cube_certs(const FiniteGroup& g, const DesignParams& p) {
  std::set<Certificate> s;
  for (const auto& d : find_ds_block_designs(g, p))
    s.insert(canonical_certificate(group_cube_of(g, d, p.lambda), CertificateMode::uncolored));
  return {s.begin(), s.end()};
}

}  // namespace

TEST(DesignSearch, CyclicSixteenHasNothing) {
  EXPECT_TRUE(find_ds_block_designs(make_cyclic(16), {16, 6, 2}).empty());
  EXPECT_THROW(find_ds_block_designs(make_cyclic(15), {16, 6, 2}), Error);
}

TEST(DesignSearch, AgreesWithNaiveBacktracking) {
  struct Case {
    FiniteGroup g;
    DesignParams p;
    std::size_t count;
  };
  std::vector<Case> cases = {{make_cyclic(7), {7, 3, 1}, 2},
                             {make_cyclic(11), {11, 5, 2}, 2},
                             {make_cyclic(13), {13, 4, 1}, 4},
                             {make_metacyclic(3, 7, 2), {21, 5, 1}, 70}};
  for (const auto& c : cases) {
    auto got = find_ds_block_designs(c.g, c.p);
    EXPECT_EQ(got.size(), c.count) << c.g.name();
    EXPECT_EQ(std::set<BlockList>(got.begin(), got.end()), naive_designs(c.g, c.p.k, c.p.lambda)) << c.g.name();
    EXPECT_TRUE(std::is_sorted(got.begin(), got.end()));
  }
}

TEST(DesignSearch, F21ContainsTheNonDevelopment) {
  auto g = repro::f21_labeled();
  auto designs = find_ds_block_designs(g, {21, 5, 1});
  auto nd = repro::f21_nondev_blocks(g);
  std::sort(nd.begin(), nd.end());
  EXPECT_TRUE(std::binary_search(designs.begin(), designs.end(), nd));
  EXPECT_FALSE(is_development(g, nd));
  std::size_t devs = 0;
  for (const auto& d : designs) devs += is_development(g, d);
  EXPECT_EQ(devs, 14u);
}

TEST(DesignSearch, ParallelJobsAgree) {
  auto g = make_metacyclic(3, 7, 2);
  SearchOptions opt;
  opt.jobs = 3;
  EXPECT_EQ(find_ds_block_designs(g, {21, 5, 1}, opt), find_ds_block_designs(g, {21, 5, 1}));
}

TEST(DesignSearch, NodeBudgetIsReported) {
  SearchOptions opt;
  opt.node_budget = 5;
  try {
    find_ds_block_designs(make_metacyclic(3, 7, 2), {21, 5, 1}, opt);
    FAIL() << "budget ignored";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::resource_limit);
  }
}

TEST(DesignOrbits, RepresentativesCoverAndGiveIsotopicCubes) {
  auto g = make_metacyclic(3, 7, 2);
  auto designs = find_ds_block_designs(g, {21, 5, 1});
  auto reps = design_orbit_representatives(g, designs, automorphism_generators(g, automorphism_group(g)));
  ASSERT_FALSE(reps.empty());
  std::set<Certificate> from_reps, from_all;
  for (auto i : reps) from_reps.insert(canonical_certificate(group_cube_of(g, designs[i], 1), CertificateMode::colored));
  for (const auto& d : designs) from_all.insert(canonical_certificate(group_cube_of(g, d, 1), CertificateMode::colored));
  EXPECT_EQ(from_reps, from_all);
}

TEST(AutomorphismGenerators, GenerateTheWholeGroup) {
  for (const auto& g : {make_metacyclic(3, 7, 2), io::bundled_group("16_14").group}) {
    auto aut = automorphism_group(g);
    auto gens = automorphism_generators(g, aut);
    std::set<GroupMap> closure{GroupMap::identity(g.order())};
    std::vector<GroupMap> frontier(closure.begin(), closure.end());
    while (!frontier.empty()) {
      std::vector<GroupMap> next;
      for (const auto& x : frontier)
        for (const auto& s : gens)
          if (closure.insert(s * x).second) next.push_back(s * x);
      frontier = std::move(next);
    }
    EXPECT_EQ(closure.size(), aut.size());
  }
}

TEST(Classification, ElementaryAbelianSixteen) {
  auto survey = repro::survey_order(16);
  auto refs = survey.certificates();
  ASSERT_EQ(refs.size(), 27u);
  auto g = io::bundled_group("16_14").group;
  auto r = classify_group_cubes(g, {16, 6, 2}, refs);
  EXPECT_EQ(r.nds, 1u);
  EXPECT_EQ(r.tds, 448u);
  EXPECT_EQ(r.ngc, 9u);
  EXPECT_EQ(r.non_difference_cubes.size(), 9u);
  for (const auto& c : r.non_difference_cubes) EXPECT_TRUE(verify_cube(c));
  // the same group with scrambled element names
  std::mt19937_64 rng(77);
  auto h = testutil::relabel(g, rng);
  auto s = classify_group_cubes(h, {16, 6, 2}, refs);
  EXPECT_EQ(s.group_cubes, r.group_cubes);
  EXPECT_EQ(s.non_difference, r.non_difference);
}

TEST(OrbitCube, TrivialGroupReproducesTheBlocks) {
  auto g = make_cyclic(7);
  auto c = difference_cube(g, DifferenceSet(g, {1, 2, 4}, 1), 3);
  auto t = to_transversal(c);
  OrbitCubeInput in{7, 3, {}, {}};
  for (std::size_t b = 0; b < t.block_count(); ++b)
    in.base_blocks.emplace_back(t.blocks.begin() + b * 3, t.blocks.begin() + b * 3 + 3);
  auto r = orbit_cube(in);
  EXPECT_EQ(r.cube, c);
  EXPECT_EQ(r.group_order, BigInt(1));
  EXPECT_EQ(r.blocks, 147u);
}

TEST(OrbitCube, IndependentOfTheGeneratingSet) {
  auto g = make_cyclic(7);
  DifferenceSet d(g, {1, 2, 4}, 1);
  auto c = difference_cube(g, d, 3);
  auto autos = theoretical_autotopies(g, d, 3);
  OrbitCubeInput in{7, 3, {}, {}};
  for (const auto& e : autos) in.generators.push_back(e.point_map());
  // one block per orbit: the group is transitive on blocks here
  auto t = to_transversal(c);
  in.base_blocks.emplace_back(t.blocks.begin(), t.blocks.begin() + 3);
  auto r1 = orbit_cube(in);
  EXPECT_EQ(r1.cube, c);
  EXPECT_EQ(r1.group_order, BigInt(147));
  // redundant and reordered generators give the same result
  auto in2 = in;
  std::reverse(in2.generators.begin(), in2.generators.end());
  in2.generators.push_back(in.generators[0] * in.generators[1]);
  auto r2 = orbit_cube(in2);
  EXPECT_EQ(r2.cube, r1.cube);
  EXPECT_EQ(r2.group_order, r1.group_order);
}

TEST(OrbitCube, RejectsBadInput) {
  OrbitCubeInput in{7, 3, {}, {{0, 7, 14}}};
  std::vector<std::uint32_t> img(21);
  std::iota(img.begin(), img.end(), 0u);
  std::swap(img[0], img[7]);
  in.generators.push_back(Perm(img));
  EXPECT_THROW(orbit_cube(in), Error);
  OrbitCubeInput bad{7, 3, {}, {{0, 1, 14}}};
  try {
    orbit_cube(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::not_a_cube);
  }
  // a single block is no cube
  EXPECT_THROW(orbit_cube(OrbitCubeInput{7, 3, {}, {{0, 7, 14}}}), Error);
}

TEST(OrbitCube, BundledExample) {
  auto r = repro::orbit384();
  EXPECT_EQ(r.group_order, BigInt(384));
  EXPECT_EQ(r.blocks, 1536u);
  EXPECT_TRUE(verify_cube(r.cube));
  EXPECT_EQ(r.cube.params(), (DesignParams{16, 6, 2}));
}

TEST(GroupCubeTest, SlicesRejectWithoutSearch) {
  auto r = is_group_cube(repro::orbit384().cube, {}, true);
  EXPECT_FALSE(r.is_group_cube);
  EXPECT_TRUE(r.decided_by_slices);
}

TEST(GroupCubeTest, ReferenceDecides) {
  std::mt19937_64 rng(5);
  auto g = make_cyclic(7);
  auto refs = group_cube_certs(g, {7, 3, 1});
  auto c = apply_paratopy(difference_cube(g, DifferenceSet(g, {1, 2, 4}, 1), 3), random_paratopy(3, 7, rng));
  auto yes = is_group_cube(c, refs, true);
  EXPECT_TRUE(yes.is_group_cube);
  EXPECT_FALSE(yes.decided_by_slices);
  auto unknown = is_group_cube(c, {}, false);
  EXPECT_FALSE(unknown.is_group_cube);
  EXPECT_FALSE(unknown.warning.empty());
}
