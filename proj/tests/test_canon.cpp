#include <symcube/canon.hpp>

#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace symcube;
using canon::Structure;

namespace {

std::vector<std::vector<std::uint32_t>> sorted_blocks(const Structure& s, const std::vector<std::uint32_t>& map) {
  std::vector<std::vector<std::uint32_t>> r;
  for (std::size_t b = 0; b < s.block_count(); ++b) {
    std::vector<std::uint32_t> x;
    for (std::uint32_t i = 0; i < s.block_size; ++i) x.push_back(map[s.blocks[b * s.block_size + i]]);
    std::sort(x.begin(), x.end());
    r.push_back(std::move(x));
  }
  std::sort(r.begin(), r.end());
  return r;
}

std::vector<std::uint32_t> identity(std::size_t n) {
  std::vector<std::uint32_t> p(n);
  std::iota(p.begin(), p.end(), 0u);
  return p;
}

template <class F>
void for_each_color_preserving(const Structure& s, F&& f) {
  auto p = identity(s.points);
  do {
    bool ok = true;
    for (std::uint32_t i = 0; i < s.points && ok; ++i) ok = s.colors[p[i]] == s.colors[i];
    if (ok) f(p);
  } while (std::next_permutation(p.begin(), p.end()));
}

std::size_t brute_aut(const Structure& s) {
  auto base = sorted_blocks(s, identity(s.points));
  std::size_t n = 0;
  for_each_color_preserving(s, [&](const std::vector<std::uint32_t>& p) { n += sorted_blocks(s, p) == base; });
  return n;
}

bool brute_iso(const Structure& a, const Structure& b) {
  if (a.colors != b.colors || a.block_count() != b.block_count()) return false;
  auto target = sorted_blocks(b, identity(b.points));
  bool found = false;
  for_each_color_preserving(a, [&](const std::vector<std::uint32_t>& p) { found = found || sorted_blocks(a, p) == target; });
  return found;
}

Structure random_structure(std::mt19937_64& rng, std::uint32_t points, std::uint32_t block_size, std::size_t blocks,
                           std::uint32_t colors) {
  Structure s;
  s.points = points;
  s.block_size = block_size;
  s.colors.resize(points);
  for (auto& c : s.colors) c = static_cast<std::uint32_t>(rng() % colors);
  std::sort(s.colors.begin(), s.colors.end());
  std::size_t possible = 1;
  for (std::uint32_t i = 0; i < block_size; ++i) possible = possible * (points - i) / (i + 1);
  blocks = std::min(blocks, possible);
  std::set<std::vector<std::uint32_t>> seen;
  while (seen.size() < blocks) {
    auto p = testutil::random_perm(points, rng);
    std::vector<std::uint32_t> b(p.begin(), p.begin() + block_size);
    std::sort(b.begin(), b.end());
    if (seen.insert(b).second) s.blocks.insert(s.blocks.end(), b.begin(), b.end());
  }
  return s;
}

Structure relabeled(const Structure& s, const std::vector<std::uint32_t>& p) {
  Structure r = s;
  for (auto& x : r.blocks) x = p[x];
  for (std::uint32_t i = 0; i < s.points; ++i) r.colors[p[i]] = s.colors[i];
  return r;
}

// random permutation preserving the color of every point
std::vector<std::uint32_t> color_preserving_perm(const Structure& s, std::mt19937_64& rng) {
  std::map<std::uint32_t, std::vector<std::uint32_t>> cls;
  for (std::uint32_t i = 0; i < s.points; ++i) cls[s.colors[i]].push_back(i);
  std::vector<std::uint32_t> p(s.points);
  for (auto& [c, pts] : cls) {
    auto img = pts;
    std::shuffle(img.begin(), img.end(), rng);
    for (std::size_t i = 0; i < pts.size(); ++i) p[pts[i]] = img[i];
  }
  return p;
}

}  // namespace

TEST(Canon, AutomorphismOrderMatchesBruteForce) {
  std::mt19937_64 rng(101);
  for (int t = 0; t < 60; ++t) {
    std::uint32_t n = 4 + rng() % 4, bs = 2 + rng() % 2;
    auto s = random_structure(rng, n, bs, 2 + rng() % 8, 1 + rng() % 2);
    auto r = canon::canonicalize(s);
    EXPECT_TRUE(r.complete);
    EXPECT_EQ(r.order, BigInt(brute_aut(s))) << "trial " << t;
    for (const auto& g : r.generators) EXPECT_TRUE(canon::is_automorphism(s, g));
  }
}

TEST(Canon, IsomorphismDecisionMatchesBruteForce) {
  std::mt19937_64 rng(202);
  for (int t = 0; t < 80; ++t) {
    std::uint32_t n = 5 + rng() % 2;
    auto a = random_structure(rng, n, 2, 5, 2);
    // half the time an isomorphic copy, otherwise an independent structure
    Structure b = (t % 2) ? relabeled(a, color_preserving_perm(a, rng)) : random_structure(rng, n, 2, 5, 2);
    if (b.colors != a.colors) continue;
    bool same = canon::canonicalize(a).form == canon::canonicalize(b).form;
    EXPECT_EQ(same, brute_iso(a, b)) << "trial " << t;
  }
}

TEST(Canon, FormInvariantUnderRelabeling) {
  std::mt19937_64 rng(303);
  for (int t = 0; t < 20; ++t) {
    auto s = random_structure(rng, 30, 3, 60, 3);
    auto f = canon::canonicalize(s).form;
    for (int u = 0; u < 3; ++u) EXPECT_EQ(canon::canonicalize(relabeled(s, color_preserving_perm(s, rng))).form, f);
  }
}

TEST(Canon, LabelingProducesTheForm) {
  std::mt19937_64 rng(404);
  auto s = random_structure(rng, 20, 3, 30, 2);
  auto r = canon::canonicalize(s);
  EXPECT_EQ(canon::relabeled_form(s, r.labeling), r.form);
}

TEST(Canon, ColorsAreRespected) {
  // a path a-b-c: swapping the ends is an automorphism unless their colors differ
  Structure s{3, 2, {0, 0, 0}, {0, 1, 1, 2}};
  EXPECT_EQ(canon::canonicalize(s).order, BigInt(2));
  s.colors = {0, 1, 2};
  EXPECT_EQ(canon::canonicalize(s).order, BigInt(1));
}

TEST(Canon, HighlySymmetric) {
  // complete graph K6 and the disjoint union of two triangles
  Structure k6{6, 2, std::vector<std::uint32_t>(6, 0), {}};
  for (std::uint32_t i = 0; i < 6; ++i)
    for (std::uint32_t j = i + 1; j < 6; ++j) k6.blocks.insert(k6.blocks.end(), {i, j});
  EXPECT_EQ(canon::canonicalize(k6).order, BigInt(720));
  Structure tri{6, 2, std::vector<std::uint32_t>(6, 0), {0, 1, 1, 2, 0, 2, 3, 4, 4, 5, 3, 5}};
  EXPECT_EQ(canon::canonicalize(tri).order, BigInt(72));
}

TEST(Canon, RejectsBadInput) {
  Structure s{3, 5, {0, 0, 0}, {}};
  EXPECT_THROW(canon::canonicalize(s), Error);
  Structure t{3, 2, {0, 0}, {0, 1}};
  EXPECT_THROW(canon::canonicalize(t), Error);
}

TEST(Canon, ExpiredDeadlineReportsIncomplete) {
  // a structure with a large automorphism group forces a search tree
  Structure s{40, 2, std::vector<std::uint32_t>(40, 0), {}};
  for (std::uint32_t i = 0; i < 40; i += 2) s.blocks.insert(s.blocks.end(), {i, i + 1});
  canon::Options o;
  o.deadline = std::chrono::steady_clock::now() - std::chrono::seconds(1);
  auto r = canon::canonicalize(s, o);
  EXPECT_FALSE(r.complete);
  auto full = canon::canonicalize(s);
  EXPECT_TRUE(full.complete);
  // 20 disjoint edges: 2^20 * 20!
  BigInt want = 1;
  for (int i = 1; i <= 20; ++i) want *= 2 * i;
  EXPECT_EQ(full.order, want);
}
