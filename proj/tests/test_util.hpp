#pragma once

#include <symcube/group.hpp>
#include <symcube/perm.hpp>

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

namespace testutil {

inline std::vector<std::uint32_t> random_perm(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::uint32_t> p(n);
  std::iota(p.begin(), p.end(), 0u);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

/// The same group with its elements renamed by a random permutation.
inline symcube::FiniteGroup relabel(const symcube::FiniteGroup& g, std::mt19937_64& rng) {
  const std::size_t v = g.order();
  auto p = random_perm(v, rng);  // old -> new
  std::vector<symcube::Element> t(v * v);
  for (std::size_t a = 0; a < v; ++a)
    for (std::size_t b = 0; b < v; ++b) t[p[a] * v + p[b]] = p[g.mul(a, b)];
  return symcube::FiniteGroup(v, std::move(t), {}, g.name());
}

/// Calls f(subset) for every k-subset of 0..n-1.
template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  std::vector<std::uint32_t> s(k);
  auto rec = [&](auto&& self, std::size_t pos, std::uint32_t from) -> void {
    if (pos == k) {
      f(s);
      return;
    }
    for (std::uint32_t x = from; x + (k - pos) <= n; ++x) {
      s[pos] = x;
      self(self, pos + 1, x + 1);
    }
  };
  rec(rec, 0, 0);
}

}  // namespace testutil
