#pragma once

#include <symcube/bitmatrix.hpp>
#include <symcube/error.hpp>
#include <symcube/group.hpp>

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <set>
#include <vector>

namespace symcube {

struct DesignParams {
  std::size_t v = 0, k = 0, lambda = 0;

  bool admissible() const { return k <= v && lambda * (v > 0 ? v - 1 : 0) == k * (k > 0 ? k - 1 : 0); }
  friend bool operator==(const DesignParams&, const DesignParams&) = default;
  friend auto operator<=>(const DesignParams&, const DesignParams&) = default;
};

inline std::string to_string(const DesignParams& p) {
  return "(" + std::to_string(p.v) + "," + std::to_string(p.k) + "," + std::to_string(p.lambda) + ")";
}

using ElementSet = std::vector<Element>;  // sorted, no repeats

/// How many times each element occurs as a left difference a^-1 b, a, b in s.
inline std::vector<std::size_t> left_difference_counts(const FiniteGroup& g, const ElementSet& s) {
  std::vector<std::size_t> cnt(g.order(), 0);
  for (auto a : s)
    for (auto b : s) ++cnt[g.mul(g.inv(a), b)];
  return cnt;
}

/// Same for right differences a b^-1.
inline std::vector<std::size_t> right_difference_counts(const FiniteGroup& g, const ElementSet& s) {
  std::vector<std::size_t> cnt(g.order(), 0);
  for (auto a : s)
    for (auto b : s) ++cnt[g.mul(a, g.inv(b))];
  return cnt;
}

namespace detail {
inline bool uniform_off_identity(const std::vector<std::size_t>& cnt, std::size_t lambda) {
  for (std::size_t x = 1; x < cnt.size(); ++x)
    if (cnt[x] != lambda) return false;
  return true;
}
}  // namespace detail

/// True iff every non-identity element is a left difference exactly lambda times.
inline bool is_difference_set(const FiniteGroup& g, const ElementSet& s, std::size_t lambda) {
  for (auto x : s)
    if (x >= g.order()) throw Error(ErrorKind::invalid_input, "element index out of range");
  bool left = detail::uniform_off_identity(left_difference_counts(g, s), lambda);
#ifndef NDEBUG
  bool right = detail::uniform_off_identity(right_difference_counts(g, s), lambda);
  assert(left == right && "left and right difference properties disagree");
#endif
  return left;
}

class DifferenceSet {
 public:
  DifferenceSet(const FiniteGroup& g, ElementSet elements, std::size_t lambda)
      : elements_(std::move(elements)), params_{g.order(), 0, lambda} {
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
    params_.k = elements_.size();
    if (!params_.admissible())
      throw Error(ErrorKind::invalid_params, "inadmissible parameters " + to_string(params_));
    if (!is_difference_set(g, elements_, lambda))
      throw Error(ErrorKind::invalid_input, "not a difference set for " + to_string(params_));
  }

  const ElementSet& elements() const noexcept { return elements_; }
  const DesignParams& params() const noexcept { return params_; }
  std::size_t k() const noexcept { return params_.k; }

  friend bool operator==(const DifferenceSet& a, const DifferenceSet& b) { return a.elements_ == b.elements_; }
  friend auto operator<=>(const DifferenceSet& a, const DifferenceSet& b) { return a.elements_ <=> b.elements_; }

 private:
  ElementSet elements_;
  DesignParams params_;
};

/// Image a * phi(s), sorted.
inline ElementSet translate_image(const FiniteGroup& g, const ElementSet& s, const GroupMap& phi, Element a) {
  ElementSet r;
  r.reserve(s.size());
  for (auto x : s) r.push_back(g.mul(a, phi(x)));
  std::sort(r.begin(), r.end());
  return r;
}

inline ElementSet left_translate(const FiniteGroup& g, Element a, const ElementSet& s) {
  ElementSet r;
  r.reserve(s.size());
  for (auto x : s) r.push_back(g.mul(a, x));
  std::sort(r.begin(), r.end());
  return r;
}

struct EnumerationOptions {
  std::uint64_t node_budget = 200'000'000;
};

/// All k-subsets that are (v,k,lambda) difference sets, in lexicographic order.
/// Lexicographic backtracking; partial left-difference counts may never exceed lambda.
inline std::vector<DifferenceSet> enumerate_difference_sets(const FiniteGroup& g, std::size_t k, std::size_t lambda,
                                                            EnumerationOptions opt = {}) {
  const std::size_t v = g.order();
  std::vector<DifferenceSet> out;
  DesignParams p{v, k, lambda};
  if (!p.admissible()) return out;
  std::vector<std::size_t> cnt(v, 0);
  std::vector<Element> cur;
  std::uint64_t nodes = 0;
  // for the identity the count is |cur|; only non-identity counts are bounded
  auto rec = [&](auto&& self, Element next) -> void {
    if (++nodes > opt.node_budget)
      throw Error(ErrorKind::resource_limit, "difference-set enumeration exceeded its node budget");
    if (cur.size() == k) {
      if (detail::uniform_off_identity(cnt, lambda)) {
        assert(detail::uniform_off_identity(right_difference_counts(g, cur), lambda));
        out.emplace_back(g, cur, lambda);
      }
      return;
    }
    for (Element x = next; x + (k - cur.size()) <= v; ++x) {
      bool ok = true;
      std::size_t touched = 0;
      for (; touched < cur.size(); ++touched) {
        Element y = cur[touched];
        Element d1 = g.mul(g.inv(y), x), d2 = g.mul(g.inv(x), y);
        ++cnt[d1];
        ++cnt[d2];
        if (cnt[d1] > lambda || cnt[d2] > lambda) {
          ok = false;
          ++touched;
          break;
        }
      }
      if (ok) {
        cur.push_back(x);
        self(self, x + 1);
        cur.pop_back();
      }
      for (std::size_t t = 0; t < touched; ++t) {
        Element y = cur[t];
        --cnt[g.mul(g.inv(y), x)];
        --cnt[g.mul(g.inv(x), y)];
      }
    }
  };
  if (k == 0) {
    if (lambda == 0 || v == 1) out.emplace_back(g, ElementSet{}, lambda);
    return out;
  }
  rec(rec, 0);
  return out;
}

/// Orbit representatives under D -> a phi(D), phi in Aut(G), a in G. Each
/// representative is the lexicographic minimum of its orbit. `orbit_sizes`
/// (optional) receives the orbit size of each representative.
inline std::vector<DifferenceSet> difference_sets_up_to_equivalence(const FiniteGroup& g, std::size_t k,
                                                                    std::size_t lambda,
                                                                    std::vector<std::size_t>* orbit_sizes = nullptr,
                                                                    const std::vector<GroupMap>* aut = nullptr) {
  auto all = enumerate_difference_sets(g, k, lambda);
  std::vector<GroupMap> local;
  if (!aut) {
    local = automorphism_group(g);
    aut = &local;
  }
  std::set<ElementSet> seen;
  std::vector<DifferenceSet> reps;
  if (orbit_sizes) orbit_sizes->clear();
  for (const auto& d : all) {
    if (seen.count(d.elements())) continue;
    reps.push_back(d);
    std::size_t before = seen.size();
    for (const auto& phi : *aut)
      for (Element a = 0; a < g.order(); ++a) seen.insert(translate_image(g, d.elements(), phi, a));
    if (orbit_sizes) orbit_sizes->push_back(seen.size() - before);
  }
  return reps;
}

struct Multiplier {
  GroupMap map;
  Element translate;  // phi(D) = translate * D
};

/// Mult(D): automorphisms mapping D onto a left translate of itself.
inline std::vector<Multiplier> multipliers(const FiniteGroup& g, const DifferenceSet& d,
                                           const std::vector<GroupMap>* aut = nullptr) {
  std::vector<GroupMap> local;
  if (!aut) {
    local = automorphism_group(g);
    aut = &local;
  }
  std::vector<Multiplier> out;
  for (const auto& phi : *aut) {
    auto img = translate_image(g, d.elements(), phi, 0);
    for (Element a = 0; a < g.order(); ++a)
      if (left_translate(g, a, d.elements()) == img) {
        out.push_back({phi, a});
        break;
      }
  }
  return out;
}

/// Incidence matrix of the development: entry (i, j) = [g_i in g_j D].
inline BitMatrix development(const FiniteGroup& g, const DifferenceSet& d) {
  const std::size_t v = g.order();
  BitMatrix m(v);
  for (Element j = 0; j < v; ++j)
    for (auto x : d.elements()) m.set(g.mul(j, x), j, true);
  return m;
}

}  // namespace symcube
