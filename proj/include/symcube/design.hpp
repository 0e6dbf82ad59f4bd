#pragma once

// Symmetric designs as incidence matrices: rows are points, columns blocks.

#include <symcube/bitmatrix.hpp>
#include <symcube/canon.hpp>
#include <symcube/certificate.hpp>
#include <symcube/difference_set.hpp>
#include <symcube/error.hpp>
#include <symcube/group.hpp>

#include <algorithm>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace symcube {

using IncidenceMatrix = BitMatrix;

/// A * A^t = (k - lambda) I + lambda J, checked with popcounts of packed rows,
/// plus constant column sums k.
inline bool verify_design(const IncidenceMatrix& a, const DesignParams& p) {
  if (a.size() != p.v) throw Error(ErrorKind::dimension_mismatch, "matrix order differs from v");
  for (std::size_t i = 0; i < p.v; ++i) {
    if (a.row_sum(i) != p.k) return false;
    for (std::size_t j = i + 1; j < p.v; ++j)
      if (a.row_dot(i, j) != p.lambda) return false;
  }
  for (std::size_t j = 0; j < p.v; ++j)
    if (a.col_sum(j) != p.k) return false;
  return true;
}

inline IncidenceMatrix dual(const IncidenceMatrix& a) { return a.transpose(); }

inline DesignParams complement_params(const DesignParams& p) {
  return {p.v, p.v - p.k, p.v - 2 * p.k + p.lambda};
}

inline IncidenceMatrix complement(const IncidenceMatrix& a) {
  IncidenceMatrix c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) c.set(i, j, !a.get(i, j));
  return c;
}

/// Replaces the point set of each listed block (column) by its symmetric
/// difference with `points`.
inline IncidenceMatrix switch_blocks(const IncidenceMatrix& a, const std::vector<std::size_t>& blocks,
                                     const std::vector<std::size_t>& points) {
  IncidenceMatrix r = a;
  for (auto b : blocks)
    for (auto p : points) r.flip(p, b);
  return r;
}

/// Block (column) j as a sorted point list.
inline ElementSet block_points(const IncidenceMatrix& a, std::size_t j) {
  ElementSet s;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.get(i, j)) s.push_back(static_cast<Element>(i));
  return s;
}

/// Matrix whose column j is blocks[j].
inline IncidenceMatrix from_blocks(std::size_t v, const std::vector<ElementSet>& blocks) {
  if (blocks.size() != v) throw Error(ErrorKind::dimension_mismatch, "need exactly v blocks");
  IncidenceMatrix m(v);
  for (std::size_t j = 0; j < v; ++j)
    for (auto x : blocks[j]) {
      if (x >= v) throw Error(ErrorKind::invalid_input, "block point out of range");
      m.set(x, j, true);
    }
  return m;
}

// ---------------------------------------------------------------------------
// Menon family constructions

/// (4^m, 2^(m-1)(2^m - 1), 2^(m-1)(2^(m-1) - 1))
inline DesignParams menon_params(std::size_t m) {
  if (m == 0) throw Error(ErrorKind::invalid_params, "m must be positive");
  std::size_t p = std::size_t{1} << (m - 1);
  return {std::size_t{1} << (2 * m), p * (2 * p - 1), p * (p - 1)};
}

/// m such that p = menon_params(m), if any.
inline std::optional<std::size_t> menon_index(const DesignParams& p) {
  for (std::size_t m = 1; m < 16; ++m) {
    auto q = menon_params(m);
    if (q == p) return m;
    if (q.v > p.v) break;
  }
  return std::nullopt;
}

struct GroupDifferenceSet {
  FiniteGroup group;
  DifferenceSet set;
};

/// Klein four-group Z2 x Z2 with elements numbered 00, 01, 10, 11.
inline FiniteGroup make_klein() { return make_direct_product(make_cyclic(2), make_cyclic(2)); }

/// (prev^c x base) u (prev x base^c) in prev_group x klein, where base is a
/// singleton of the Klein four-group.
inline GroupDifferenceSet mann_product(const FiniteGroup& prev_group, const DifferenceSet& prev,
                                       const FiniteGroup& klein, const DifferenceSet& base) {
  if (klein.order() != 4 || base.k() != 1)
    throw Error(ErrorKind::invalid_input, "base must be a singleton in a group of order 4");
  auto m = menon_index(prev.params());
  if (!m) throw Error(ErrorKind::invalid_params, "previous set is not of Menon type");
  FiniteGroup g = make_direct_product(prev_group, klein);
  const std::size_t v = prev_group.order();
  std::vector<bool> in_prev(v, false);
  for (auto x : prev.elements()) in_prev[x] = true;
  Element b = base.elements().front();
  ElementSet d;
  for (Element i = 0; i < v; ++i)
    for (Element j = 0; j < 4; ++j)
      if (in_prev[i] != (j == b)) d.push_back(i * 4 + j);
  auto want = menon_params(*m + 1);
  if (!is_difference_set(g, d, want.lambda) || d.size() != want.k)
    throw Error(ErrorKind::construction_bug, "product construction did not give a difference set");
  DifferenceSet ds(g, d, want.lambda);
  return {std::move(g), std::move(ds)};
}

/// [[J-A, A, A, A], [A, J-A, A, A], [A, A, J-A, A], [A, A, A, J-A]]
inline IncidenceMatrix block_quadruple(const IncidenceMatrix& a, const DesignParams& p) {
  auto m = menon_index(p);
  if (!m || a.size() != p.v) throw Error(ErrorKind::invalid_params, "input is not a Menon-type design");
  const std::size_t v = p.v;
  IncidenceMatrix r(4 * v);
  for (std::size_t bi = 0; bi < 4; ++bi)
    for (std::size_t bj = 0; bj < 4; ++bj)
      for (std::size_t i = 0; i < v; ++i)
        for (std::size_t j = 0; j < v; ++j) r.set(bi * v + i, bj * v + j, a.get(i, j) != (bi == bj));
  if (!verify_design(r, menon_params(*m + 1)))
    throw Error(ErrorKind::construction_bug, "block quadrupling did not give a design");
  return r;
}

/// Symmetric difference property: the symmetric difference of any three
/// blocks is a block or the complement of a block.
inline bool has_symmetric_difference_property(const IncidenceMatrix& a) {
  const std::size_t v = a.size();
  std::set<std::vector<bool>> allowed;
  std::vector<std::vector<bool>> cols(v, std::vector<bool>(v));
  for (std::size_t j = 0; j < v; ++j)
    for (std::size_t i = 0; i < v; ++i) cols[j][i] = a.get(i, j);
  for (const auto& c : cols) {
    allowed.insert(c);
    auto n = c;
    n.flip();
    allowed.insert(n);
  }
  for (std::size_t x = 0; x < v; ++x)
    for (std::size_t y = x + 1; y < v; ++y)
      for (std::size_t z = y + 1; z < v; ++z) {
        std::vector<bool> s(v);
        for (std::size_t i = 0; i < v; ++i) s[i] = cols[x][i] ^ cols[y][i] ^ cols[z][i];
        if (!allowed.count(s)) return false;
      }
  return true;
}

// ---------------------------------------------------------------------------
// Isomorphism classes

/// Points 0..v-1 (rows, color 0) and v..2v-1 (blocks, color 1); one edge per incidence.
inline canon::Structure incidence_structure(const IncidenceMatrix& a) {
  canon::Structure s;
  const auto v = static_cast<std::uint32_t>(a.size());
  s.points = 2 * v;
  s.block_size = 2;
  s.colors.assign(2 * v, 0);
  std::fill(s.colors.begin() + v, s.colors.end(), 1u);
  for (std::uint32_t i = 0; i < v; ++i)
    for (std::uint32_t j = 0; j < v; ++j)
      if (a.get(i, j)) {
        s.blocks.push_back(i);
        s.blocks.push_back(v + j);
      }
  return s;
}

struct DesignClass {
  Certificate certificate;  // minimum over the matrix and its transpose
  std::optional<std::string> name;
  BigInt aut_order;

  std::string display() const { return name ? *name : "#" + certificate.short_hex(); }
};

struct CanonicalDesign {
  Certificate certificate;
  std::vector<std::uint32_t> labeling;
  BigInt aut_order;
  std::vector<Perm> generators;
};

/// Canonical form of the design (points and blocks kept apart).
inline CanonicalDesign canonical_design(const IncidenceMatrix& a) {
  auto s = incidence_structure(a);
  auto r = canon::canonicalize(s);
  std::uint64_t header[] = {2, a.size(), 0, 0};
  return {encode_certificate(CertificateMode::colored, header, r.form, 2), std::move(r.labeling), r.order,
          std::move(r.generators)};
}

class DesignCatalog;

namespace detail {
struct ClassCache {
  std::mutex mu;
  std::map<BitMatrix, DesignClass> entries;
};
inline ClassCache& class_cache() {
  static ClassCache c;
  return c;
}
}  // namespace detail

/// Isomorphism-or-duality class of a verified design. Results are memoized.
inline DesignClass design_class_uncached(const IncidenceMatrix& a) {
  auto c1 = canonical_design(a);
  auto c2 = canonical_design(a.transpose());
  DesignClass dc;
  dc.certificate = std::min(c1.certificate, c2.certificate);
  dc.aut_order = c1.aut_order;
  return dc;
}

inline DesignClass design_class_cached(const IncidenceMatrix& a) {
  auto& cache = detail::class_cache();
  {
    std::lock_guard lock(cache.mu);
    auto it = cache.entries.find(a);
    if (it != cache.entries.end()) return it->second;
  }
  auto dc = design_class_uncached(a);
  std::lock_guard lock(cache.mu);
  cache.entries.emplace(a, dc);
  return dc;
}

inline void clear_design_class_cache() {
  auto& cache = detail::class_cache();
  std::lock_guard lock(cache.mu);
  cache.entries.clear();
}

}  // namespace symcube
