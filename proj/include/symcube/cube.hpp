#pragma once

// n-dimensional incidence cubes of order v. Coordinates are 0-based; the flat
// offset of (i_0, ..., i_{n-1}) is sum_t i_t v^(n-1-t), so axis 0 varies slowest.

#include <symcube/bitmatrix.hpp>
#include <symcube/design.hpp>
#include <symcube/difference_set.hpp>
#include <symcube/error.hpp>
#include <symcube/group.hpp>
#include <symcube/perm.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <span>
#include <vector>

namespace symcube {

using Index = std::vector<std::uint32_t>;

inline std::uint64_t checked_power(std::size_t v, std::size_t n) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (v != 0 && r > (std::uint64_t{1} << 40) / v) throw Error(ErrorKind::resource_limit, "v^n is too large");
    r *= v;
  }
  return r;
}

class Cube {
 public:
  Cube() = default;
  Cube(std::size_t n, std::size_t v, DesignParams params)
      : n_(n), v_(v), params_(params), size_(checked_power(v, n)), bits_((size_ + 63) / 64, 0) {
    if (n < 2) throw Error(ErrorKind::invalid_params, "cube dimension must be at least 2");
    if (params.v != v) throw Error(ErrorKind::invalid_params, "params.v differs from cube order");
    if (size_ > (std::uint64_t{1} << 34)) throw Error(ErrorKind::resource_limit, "cube too large to materialize");
  }

  std::size_t dimension() const noexcept { return n_; }
  std::size_t order() const noexcept { return v_; }
  const DesignParams& params() const noexcept { return params_; }
  std::uint64_t size() const noexcept { return size_; }

  std::uint64_t offset(std::span<const std::uint32_t> idx) const {
    std::uint64_t o = 0;
    for (std::size_t t = 0; t < n_; ++t) o = o * v_ + idx[t];
    return o;
  }

  Index unflatten(std::uint64_t o) const {
    Index idx(n_);
    for (std::size_t t = n_; t-- > 0;) {
      idx[t] = static_cast<std::uint32_t>(o % v_);
      o /= v_;
    }
    return idx;
  }

  bool get_flat(std::uint64_t o) const { return (bits_[o / 64] >> (o % 64)) & 1u; }
  void set_flat(std::uint64_t o, bool b) {
    const std::uint64_t bit = std::uint64_t{1} << (o % 64);
    bits_[o / 64] = b ? (bits_[o / 64] | bit) : (bits_[o / 64] & ~bit);
  }
  bool at(std::span<const std::uint32_t> idx) const { return get_flat(offset(idx)); }
  void set(std::span<const std::uint32_t> idx, bool b) { set_flat(offset(idx), b); }

  std::uint64_t count_ones() const {
    std::uint64_t s = 0;
    for (auto w : bits_) s += std::popcount(w);
    return s;
  }

  /// Calls f(flat offset) for every 1-entry in increasing order.
  template <class F>
  void for_each_one(F&& f) const {
    for (std::size_t w = 0; w < bits_.size(); ++w)
      for (std::uint64_t x = bits_[w]; x; x &= x - 1) f(w * 64 + static_cast<std::uint64_t>(std::countr_zero(x)));
  }

  const std::vector<std::uint64_t>& words() const noexcept { return bits_; }

  friend bool operator==(const Cube& a, const Cube& b) {
    return a.n_ == b.n_ && a.v_ == b.v_ && a.params_ == b.params_ && a.bits_ == b.bits_;
  }

 private:
  std::size_t n_ = 0, v_ = 0;
  DesignParams params_;
  std::uint64_t size_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// A cube evaluated pointwise from its defining formula, never materialized.
struct LazyCube {
  std::size_t n = 0, v = 0;
  DesignParams params;
  std::function<bool(std::span<const std::uint32_t>)> entry;

  std::size_t dimension() const noexcept { return n; }
  std::size_t order() const noexcept { return v; }
  bool at(std::span<const std::uint32_t> idx) const { return entry(idx); }
};

/// Axes x, y vary (0-based, distinct); `fixed` lists the other n-2 coordinates
/// in increasing axis order.
struct SliceSpec {
  std::size_t x = 0, y = 1;
  std::vector<std::uint32_t> fixed;
};

template <class C>
void check_slice_spec(const C& c, const SliceSpec& s) {
  const std::size_t n = c.dimension();
  if (s.x >= n || s.y >= n || s.x == s.y || s.fixed.size() != n - 2)
    throw Error(ErrorKind::invalid_input, "slice axes out of range");
  for (auto f : s.fixed)
    if (f >= c.order()) throw Error(ErrorKind::invalid_input, "slice coordinate out of range");
}

/// M[i][j] = C(..., i at axis x, ..., j at axis y, ...).
template <class C>
IncidenceMatrix slice(const C& c, const SliceSpec& s) {
  check_slice_spec(c, s);
  const std::size_t n = c.dimension(), v = c.order();
  Index idx(n);
  for (std::size_t t = 0, f = 0; t < n; ++t)
    if (t != s.x && t != s.y) idx[t] = s.fixed[f++];
  IncidenceMatrix m(v);
  for (std::uint32_t i = 0; i < v; ++i) {
    idx[s.x] = i;
    for (std::uint32_t j = 0; j < v; ++j) {
      idx[s.y] = j;
      if (c.at(idx)) m.set(i, j, true);
    }
  }
  return m;
}

/// Materialized-cube fast path: uses strides instead of per-entry index math.
inline IncidenceMatrix slice(const Cube& c, const SliceSpec& s) {
  check_slice_spec(c, s);
  const std::size_t n = c.dimension(), v = c.order();
  std::vector<std::uint64_t> stride(n);
  stride[n - 1] = 1;
  for (std::size_t t = n - 1; t-- > 0;) stride[t] = stride[t + 1] * v;
  std::uint64_t base = 0;
  for (std::size_t t = 0, f = 0; t < n; ++t)
    if (t != s.x && t != s.y) base += s.fixed[f++] * stride[t];
  IncidenceMatrix m(v);
  for (std::uint32_t i = 0; i < v; ++i)
    for (std::uint32_t j = 0; j < v; ++j)
      if (c.get_flat(base + i * stride[s.x] + j * stride[s.y])) m.set(i, j, true);
  return m;
}

/// Calls f(fixed) for every assignment of the n-2 fixed coordinates, in
/// lexicographic order.
template <class F>
void for_each_fixed(std::size_t n, std::size_t v, F&& f) {
  std::vector<std::uint32_t> fixed(n - 2, 0);
  while (true) {
    f(fixed);
    std::size_t t = fixed.size();
    while (t > 0) {
      --t;
      if (++fixed[t] < v) break;
      fixed[t] = 0;
      if (t == 0) return;
    }
    if (fixed.empty()) return;
  }
}

/// Every 2-dimensional slice (one orientation per unordered axis pair) is a
/// (v,k,lambda) incidence matrix.
template <class C>
bool verify_cube(const C& c, const DesignParams& p) {
  const std::size_t n = c.dimension();
  if (c.order() != p.v) return false;
  bool ok = true;
  for (std::size_t x = 0; x < n && ok; ++x)
    for (std::size_t y = x + 1; y < n && ok; ++y)
      for_each_fixed(n, p.v, [&](const std::vector<std::uint32_t>& fixed) {
        if (ok && !verify_design(slice(c, SliceSpec{x, y, fixed}), p)) ok = false;
      });
  return ok;
}

inline bool verify_cube(const Cube& c) { return verify_cube(c, c.params()); }

// ---------------------------------------------------------------------------
// Constructions

namespace detail {
template <class F>
void for_each_index(std::size_t n, std::size_t v, F&& f) {
  Index idx(n, 0);
  std::uint64_t o = 0;
  while (true) {
    f(idx, o++);
    std::size_t t = n;
    while (t > 0) {
      --t;
      if (++idx[t] < v) break;
      idx[t] = 0;
      if (t == 0) return;
    }
  }
}

inline std::vector<bool> membership(std::size_t v, const ElementSet& s) {
  std::vector<bool> in(v, false);
  for (auto x : s) in[x] = true;
  return in;
}
}  // namespace detail

/// C(i_1..i_n) = [g_{i_1} ... g_{i_n} in D].
inline LazyCube difference_cube_view(const FiniteGroup& g, const DifferenceSet& d, std::size_t n) {
  if (n < 2) throw Error(ErrorKind::invalid_params, "dimension must be at least 2");
  auto in = detail::membership(g.order(), d.elements());
  return LazyCube{n, g.order(), d.params(), [g, in](std::span<const std::uint32_t> idx) {
                    Element x = 0;
                    for (auto i : idx) x = g.mul(x, i);
                    return static_cast<bool>(in[x]);
                  }};
}

inline Cube difference_cube(const FiniteGroup& g, const DifferenceSet& d, std::size_t n) {
  Cube c(n, g.order(), d.params());
  auto in = detail::membership(g.order(), d.elements());
  std::vector<Element> prefix(n + 1, 0);
  detail::for_each_index(n, g.order(), [&](const Index& idx, std::uint64_t o) {
    for (std::size_t t = 0; t < n; ++t) prefix[t + 1] = g.mul(prefix[t], idx[t]);
    if (in[prefix[n]]) c.set_flat(o, true);
  });
  return c;
}

namespace detail {
inline void check_group_cube_input(const FiniteGroup& g, const std::vector<DifferenceSet>& blocks) {
  const std::size_t v = g.order();
  if (blocks.size() != v) throw Error(ErrorKind::invalid_input, "need exactly v blocks");
  for (std::size_t i = 0; i < v; ++i)
    if (blocks[i].params() != blocks[0].params())
      throw Error(ErrorKind::invalid_input, "block " + std::to_string(i) + " has different parameters");
  std::vector<ElementSet> sets;
  for (const auto& b : blocks) sets.push_back(b.elements());
  if (!verify_design(from_blocks(v, sets), blocks[0].params()))
    throw Error(ErrorKind::invalid_input, "blocks do not form a symmetric design");
}
}  // namespace detail

/// Blocks given as raw sets; each must be a difference set in g.
inline std::vector<DifferenceSet> as_difference_sets(const FiniteGroup& g, const std::vector<ElementSet>& sets,
                                                     std::size_t lambda) {
  std::vector<DifferenceSet> out;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (!is_difference_set(g, sets[i], lambda))
      throw Error(ErrorKind::invalid_input, "block " + std::to_string(i) + " is not a difference set");
    out.emplace_back(g, sets[i], lambda);
  }
  return out;
}

/// C(i_1..i_n) = [g_{i_2} ... g_{i_n} in B_{i_1}].
inline Cube group_cube(const FiniteGroup& g, const std::vector<DifferenceSet>& blocks, std::size_t n) {
  detail::check_group_cube_input(g, blocks);
  Cube c(n, g.order(), blocks[0].params());
  std::vector<std::vector<bool>> in;
  for (const auto& b : blocks) in.push_back(detail::membership(g.order(), b.elements()));
  detail::for_each_index(n, g.order(), [&](const Index& idx, std::uint64_t o) {
    Element x = 0;
    for (std::size_t t = 1; t < n; ++t) x = g.mul(x, idx[t]);
    if (in[idx[0]][x]) c.set_flat(o, true);
  });
  return c;
}

inline LazyCube group_cube_view(const FiniteGroup& g, const std::vector<DifferenceSet>& blocks, std::size_t n) {
  detail::check_group_cube_input(g, blocks);
  std::vector<std::vector<bool>> in;
  for (const auto& b : blocks) in.push_back(detail::membership(g.order(), b.elements()));
  return LazyCube{n, g.order(), blocks[0].params(), [g, in](std::span<const std::uint32_t> idx) {
                    Element x = 0;
                    for (std::size_t t = 1; t < idx.size(); ++t) x = g.mul(x, idx[t]);
                    return static_cast<bool>(in[idx[0]][x]);
                  }};
}

/// Stack of v x v matrices: C(i, j, l) = layers[l][i][j].
inline Cube stack_layers(const std::vector<IncidenceMatrix>& layers, const DesignParams& p) {
  const std::size_t v = p.v;
  if (layers.size() != v) throw Error(ErrorKind::dimension_mismatch, "need v layers");
  Cube c(3, v, p);
  for (std::uint32_t l = 0; l < v; ++l)
    for (std::uint32_t i = 0; i < v; ++i)
      for (std::uint32_t j = 0; j < v; ++j)
        if (layers[l].get(i, j)) c.set(Index{i, j, l}, true);
  return c;
}

/// C(i_1, i_2, i_3) = [l(i_1, i_2) = i_3] for a Latin square with symbols 0..v-1.
inline Cube latin_square_to_cube(const std::vector<std::vector<std::uint32_t>>& l) {
  const std::size_t v = l.size();
  if (v == 0) throw Error(ErrorKind::not_latin_square, "empty square");
  for (std::size_t i = 0; i < v; ++i) {
    if (l[i].size() != v) throw Error(ErrorKind::not_latin_square, "square is not v x v");
    std::vector<bool> row(v, false);
    for (std::size_t j = 0; j < v; ++j) {
      if (l[i][j] >= v || row[l[i][j]]) throw Error(ErrorKind::not_latin_square, "row " + std::to_string(i));
      row[l[i][j]] = true;
    }
  }
  for (std::size_t j = 0; j < v; ++j) {
    std::vector<bool> col(v, false);
    for (std::size_t i = 0; i < v; ++i) {
      if (col[l[i][j]]) throw Error(ErrorKind::not_latin_square, "column " + std::to_string(j));
      col[l[i][j]] = true;
    }
  }
  Cube c(3, v, DesignParams{v, 1, 0});
  for (std::uint32_t i = 0; i < v; ++i)
    for (std::uint32_t j = 0; j < v; ++j) c.set(Index{i, j, l[i][j]}, true);
  return c;
}

// ---------------------------------------------------------------------------
// Paratopy

/// Isotopy part `perms` (one permutation of 0..v-1 per axis) and conjugation
/// part `axis_perm`. Acting on a cube, axis t moves to axis_perm(t) first,
/// then the value i on (new) axis s becomes perms[s](i).
struct ParatopyElement {
  std::vector<Perm> perms;
  Perm axis_perm;

  static ParatopyElement identity(std::size_t n, std::size_t v) {
    return {std::vector<Perm>(n, Perm(v)), Perm(n)};
  }

  std::size_t dimension() const { return axis_perm.degree(); }
  std::size_t order_v() const { return perms.empty() ? 0 : perms.front().degree(); }

  bool is_isotopy() const { return axis_perm.is_identity(); }

  /// The induced permutation of the n*v transversal points (axis t, value i) -> t*v + i.
  Perm point_map() const {
    const std::size_t n = dimension(), v = order_v();
    std::vector<std::uint32_t> img(n * v);
    for (std::uint32_t t = 0; t < n; ++t) {
      std::uint32_t s = axis_perm(t);
      for (std::uint32_t i = 0; i < v; ++i) img[t * v + i] = static_cast<std::uint32_t>(s * v + perms[s](i));
    }
    return Perm(std::move(img));
  }

  /// Inverse of point_map(); throws if `m` does not permute the axis classes.
  static ParatopyElement from_point_map(const Perm& m, std::size_t n, std::size_t v) {
    if (m.degree() != n * v) throw Error(ErrorKind::dimension_mismatch, "point map degree is not n*v");
    ParatopyElement e{std::vector<Perm>(n, Perm(v)), Perm(n)};
    std::vector<bool> used(n, false);
    for (std::uint32_t t = 0; t < n; ++t) {
      std::uint32_t s = m(static_cast<std::uint32_t>(t * v)) / static_cast<std::uint32_t>(v);
      if (used[s]) throw Error(ErrorKind::invalid_input, "point map does not permute classes");
      used[s] = true;
      e.axis_perm[t] = s;
      for (std::uint32_t i = 0; i < v; ++i) {
        std::uint32_t img = m(static_cast<std::uint32_t>(t * v + i));
        if (img / v != s) throw Error(ErrorKind::invalid_input, "point map does not permute classes");
        e.perms[s][i] = static_cast<std::uint32_t>(img % v);
      }
    }
    return e;
  }

  friend bool operator==(const ParatopyElement&, const ParatopyElement&) = default;
};

/// Apply `first`, then `second`.
inline ParatopyElement then(const ParatopyElement& first, const ParatopyElement& second) {
  return ParatopyElement::from_point_map(second.point_map() * first.point_map(), first.dimension(),
                                         first.order_v());
}

inline ParatopyElement inverse(const ParatopyElement& p) {
  return ParatopyElement::from_point_map(p.point_map().inverse(), p.dimension(), p.order_v());
}

template <class Rng>
ParatopyElement random_paratopy(std::size_t n, std::size_t v, Rng& rng, bool isotopy_only = false) {
  auto e = ParatopyElement::identity(n, v);
  for (auto& p : e.perms) {
    std::vector<std::uint32_t> img(p.images());
    std::shuffle(img.begin(), img.end(), rng);
    p = Perm(std::move(img));
  }
  if (!isotopy_only) {
    std::vector<std::uint32_t> img(e.axis_perm.images());
    std::shuffle(img.begin(), img.end(), rng);
    e.axis_perm = Perm(std::move(img));
  }
  return e;
}

inline Cube apply_paratopy(const Cube& c, const ParatopyElement& p) {
  const std::size_t n = c.dimension(), v = c.order();
  if (p.dimension() != n || p.order_v() != v) throw Error(ErrorKind::dimension_mismatch, "paratopy shape mismatch");
  Cube r(n, v, c.params());
  Index dst(n);
  c.for_each_one([&](std::uint64_t o) {
    Index src = c.unflatten(o);
    for (std::size_t t = 0; t < n; ++t) {
      std::uint32_t s = p.axis_perm(static_cast<std::uint32_t>(t));
      dst[s] = p.perms[s](src[t]);
    }
    r.set(dst, true);
  });
  return r;
}

/// Invariant under every conjugation; adjacent transpositions generate S_n.
inline bool is_totally_symmetric(const Cube& c) {
  const std::size_t n = c.dimension();
  for (std::size_t t = 0; t + 1 < n; ++t) {
    auto e = ParatopyElement::identity(n, c.order());
    e.axis_perm[t] = static_cast<std::uint32_t>(t + 1);
    e.axis_perm[t + 1] = static_cast<std::uint32_t>(t);
    if (!(apply_paratopy(c, e) == c)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Hadamard conversion

/// +-1 array with the same shape and indexing as a Cube.
struct HadamardArray {
  std::size_t n = 0, v = 0;
  std::vector<std::int8_t> entries;

  int at(std::span<const std::uint32_t> idx) const {
    std::uint64_t o = 0;
    for (auto i : idx) o = o * v + i;
    return entries[o];
  }

  /// v x v slice with axes x, y varying.
  std::vector<std::vector<int>> slice(const SliceSpec& s) const {
    Index idx(n);
    for (std::size_t t = 0, f = 0; t < n; ++t)
      if (t != s.x && t != s.y) idx[t] = s.fixed[f++];
    std::vector<std::vector<int>> m(v, std::vector<int>(v));
    for (std::uint32_t i = 0; i < v; ++i)
      for (std::uint32_t j = 0; j < v; ++j) {
        idx[s.x] = i;
        idx[s.y] = j;
        m[i][j] = at(idx);
      }
    return m;
  }
};

/// u with (v,k,lambda) = (4u^2, 2u^2 - u, u^2 - u), if any.
inline std::optional<std::size_t> menon_u(const DesignParams& p) {
  for (std::size_t u = 1; 4 * u * u <= p.v; ++u)
    if (p.v == 4 * u * u && p.k == 2 * u * u - u && p.lambda == u * u - u) return u;
  return std::nullopt;
}

/// 1 -> +1, 0 -> -1.
inline HadamardArray to_hadamard(const Cube& c) {
  if (!menon_u(c.params())) throw Error(ErrorKind::invalid_params, "parameters are not of Menon type");
  HadamardArray h{c.dimension(), c.order(), std::vector<std::int8_t>(c.size())};
  for (std::uint64_t o = 0; o < c.size(); ++o) h.entries[o] = c.get_flat(o) ? 1 : -1;
  return h;
}

/// H H^t = v I.
inline bool is_hadamard(const std::vector<std::vector<int>>& h) {
  const std::size_t v = h.size();
  for (std::size_t i = 0; i < v; ++i)
    for (std::size_t j = i; j < v; ++j) {
      long s = 0;
      for (std::size_t t = 0; t < v; ++t) s += h[i][t] * h[j][t];
      if (s != (i == j ? static_cast<long>(v) : 0)) return false;
    }
  return true;
}

struct HadamardCheck {
  bool proper = true;          // every slice is Hadamard
  bool totally_regular = true;  // every slice has constant row and column sums
  long row_sum = 0;             // common row sum of the first slice
};

inline HadamardCheck check_hadamard(const HadamardArray& h) {
  HadamardCheck r;
  bool first = true;
  for (std::size_t x = 0; x < h.n; ++x)
    for (std::size_t y = x + 1; y < h.n; ++y)
      for_each_fixed(h.n, h.v, [&](const std::vector<std::uint32_t>& fixed) {
        auto m = h.slice(SliceSpec{x, y, fixed});
        if (!is_hadamard(m)) r.proper = false;
        std::vector<long> rows(h.v, 0), cols(h.v, 0);
        for (std::size_t i = 0; i < h.v; ++i)
          for (std::size_t j = 0; j < h.v; ++j) {
            rows[i] += m[i][j];
            cols[j] += m[i][j];
          }
        if (first) {
          r.row_sum = rows[0];
          first = false;
        }
        for (std::size_t i = 0; i < h.v; ++i)
          if (rows[i] != r.row_sum || cols[i] != r.row_sum) r.totally_regular = false;
      });
  return r;
}

}  // namespace symcube
