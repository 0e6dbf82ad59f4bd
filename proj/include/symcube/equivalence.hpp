#pragma once

// Cubes as transversal designs: point t*v + i stands for value i on axis t,
// and every 1-entry of the cube is a block meeting each axis class once.
// Colored canonical forms fix the classes (isotopy); uncolored forms let them
// move (paratopy). For n >= 3 and k >= 1 the classes are recoverable from the
// blocks, so uncolored isomorphisms are paratopies.

#include <symcube/canon.hpp>
#include <symcube/certificate.hpp>
#include <symcube/cube.hpp>
#include <symcube/perm.hpp>

#include <chrono>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace symcube {

struct TransversalRep {
  std::size_t n = 0, v = 0;
  DesignParams params;
  std::vector<std::uint32_t> blocks;  // n points per block, in axis order

  std::size_t block_count() const { return n == 0 ? 0 : blocks.size() / n; }
  std::size_t points() const { return n * v; }
};

inline TransversalRep to_transversal(const Cube& c) {
  TransversalRep t{c.dimension(), c.order(), c.params(), {}};
  t.blocks.reserve(c.count_ones() * t.n);
  c.for_each_one([&](std::uint64_t o) {
    Index idx = c.unflatten(o);
    for (std::size_t a = 0; a < t.n; ++a) t.blocks.push_back(static_cast<std::uint32_t>(a * t.v + idx[a]));
  });
  return t;
}

/// Rejects blocks that are not transversals of the class partition.
inline Cube from_transversal(const TransversalRep& t) {
  Cube c(t.n, t.v, t.params);
  Index idx(t.n);
  for (std::size_t b = 0; b < t.block_count(); ++b) {
    for (std::size_t a = 0; a < t.n; ++a) {
      std::uint32_t p = t.blocks[b * t.n + a];
      if (p / t.v != a) throw Error(ErrorKind::not_a_cube, "block " + std::to_string(b) + " is not a transversal");
      idx[a] = static_cast<std::uint32_t>(p % t.v);
    }
    c.set(idx, true);
  }
  return c;
}

/// First violated transversal-design condition, or nothing if the
/// representation encodes a cube of its parameters.
inline std::optional<std::string> transversal_violation(const TransversalRep& t) {
  const std::size_t n = t.n, v = t.v, k = t.params.k;
  if (t.params.v != v) return "params.v differs from v";
  std::vector<std::uint64_t> flats;
  for (std::size_t b = 0; b < t.block_count(); ++b) {
    std::uint64_t o = 0;
    for (std::size_t a = 0; a < n; ++a) {
      std::uint32_t p = t.blocks[b * n + a];
      if (p / v != a) return "block " + std::to_string(b) + " is not a transversal";
      o = o * v + p % v;
    }
    flats.push_back(o);
  }
  std::sort(flats.begin(), flats.end());
  if (std::adjacent_find(flats.begin(), flats.end()) != flats.end()) return "repeated block";
  if (flats.size() != k * checked_power(v, n - 1))
    return "block count " + std::to_string(flats.size()) + " differs from k*v^(n-1)";
  // strength n-1: every tuple on n-1 classes lies in exactly k blocks
  for (std::size_t drop = 0; drop < n; ++drop) {
    std::map<std::uint64_t, std::size_t> cnt;
    for (std::size_t b = 0; b < t.block_count(); ++b) {
      std::uint64_t o = 0;
      for (std::size_t a = 0; a < n; ++a)
        if (a != drop) o = o * v + t.blocks[b * n + a] % v;
      ++cnt[o];
    }
    if (cnt.size() != checked_power(v, n - 1)) return "strength fails omitting class " + std::to_string(drop + 1);
    for (const auto& [key, c] : cnt)
      if (c != k) return "strength fails omitting class " + std::to_string(drop + 1);
  }
  Cube c = from_transversal(t);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) {
      std::optional<std::string> bad;
      for_each_fixed(n, v, [&](const std::vector<std::uint32_t>& fixed) {
        if (bad) return;
        auto m = slice(c, SliceSpec{x, y, fixed});
        for (std::size_t i = 0; i < v && !bad; ++i)
          for (std::size_t j = i + 1; j < v && !bad; ++j)
            if (m.row_dot(i, j) != t.params.lambda)
              bad = "lambda condition fails on axes " + std::to_string(x + 1) + "," + std::to_string(y + 1) +
                    " for values " + std::to_string(i + 1) + "," + std::to_string(j + 1);
      });
      if (bad) return bad;
    }
  return std::nullopt;
}

/// Points in the same class share no block; for n >= 3, k >= 1 points in
/// different classes always share one.
inline bool classes_recoverable(const TransversalRep& t) {
  const std::size_t np = t.points();
  std::vector<std::uint8_t> meet(np * np, 0);
  for (std::size_t b = 0; b < t.block_count(); ++b)
    for (std::size_t a = 0; a < t.n; ++a)
      for (std::size_t c = 0; c < t.n; ++c)
        if (a != c) meet[t.blocks[b * t.n + a] * np + t.blocks[b * t.n + c]] = 1;
  for (std::size_t p = 0; p < np; ++p)
    for (std::size_t q = 0; q < np; ++q)
      if (p != q && (meet[p * np + q] != 0) == (p / t.v == q / t.v)) return false;
  return true;
}

inline canon::Structure transversal_structure(const TransversalRep& t, CertificateMode mode) {
  canon::Structure s;
  s.points = static_cast<std::uint32_t>(t.points());
  s.block_size = static_cast<std::uint32_t>(t.n);
  s.colors.resize(s.points);
  for (std::uint32_t p = 0; p < s.points; ++p)
    s.colors[p] = mode == CertificateMode::colored ? static_cast<std::uint32_t>(p / t.v) : 0u;
  s.blocks = t.blocks;
  return s;
}

struct CanonicalCube {
  Certificate certificate;
  std::vector<std::uint32_t> labeling;  // point -> canonical index
  std::vector<Perm> generators;         // point maps
  BigInt order;
  bool complete = true;
  bool transposed = false;              // n = 2, uncolored: labeling refers to the transpose
};

struct EquivalenceOptions {
  std::optional<std::chrono::steady_clock::duration> time_budget;
};

namespace detail {
inline Cube transpose2(const Cube& c) {
  auto e = ParatopyElement::identity(2, c.order());
  e.axis_perm = Perm(std::vector<std::uint32_t>{1, 0});
  return apply_paratopy(c, e);
}

inline CanonicalCube canonical_cube_raw(const TransversalRep& t, CertificateMode struct_mode, CertificateMode tag,
                                        const EquivalenceOptions& opt) {
  auto s = transversal_structure(t, struct_mode);
  canon::Options co;
  if (opt.time_budget) co.deadline = std::chrono::steady_clock::now() + *opt.time_budget;
  auto r = canon::canonicalize(s, co);
  std::uint64_t header[] = {t.v, t.n, t.params.k, t.params.lambda};
  return {encode_certificate(tag, header, r.form, s.block_size), std::move(r.labeling), std::move(r.generators),
          r.order, r.complete, false};
}
}  // namespace detail

/// Canonical form of the cube. In uncolored mode at n = 2 the classes are not
/// recoverable from the blocks, so the form is the smaller colored form of C
/// and its transpose.
inline CanonicalCube canonical_cube(const Cube& c, CertificateMode mode, const EquivalenceOptions& opt = {}) {
  if (c.dimension() > 4) throw Error(ErrorKind::invalid_input, "canonical forms support n <= 4");
  if (mode == CertificateMode::uncolored && c.dimension() == 2) {
    auto a = detail::canonical_cube_raw(to_transversal(c), CertificateMode::colored, mode, opt);
    auto b = detail::canonical_cube_raw(to_transversal(detail::transpose2(c)), CertificateMode::colored, mode, opt);
    if (b.certificate < a.certificate) {
      b.transposed = true;
      return b;
    }
    return a;
  }
  return detail::canonical_cube_raw(to_transversal(c), mode, mode, opt);
}

inline Certificate canonical_certificate(const Cube& c, CertificateMode mode) {
  return canonical_cube(c, mode).certificate;
}

inline Certificate canonical_certificate(const TransversalRep& t, CertificateMode mode) {
  return canonical_certificate(from_transversal(t), mode);
}

namespace detail {
inline void check_same_shape(const Cube& a, const Cube& b) {
  if (a.dimension() != b.dimension() || a.order() != b.order() || a.params() != b.params())
    throw Error(ErrorKind::dimension_mismatch, "cubes differ in shape or parameters");
}

/// Point map sending the structure of x onto that of y, given equal forms.
inline Perm map_between(const CanonicalCube& x, const CanonicalCube& y) {
  std::vector<std::uint32_t> inv(y.labeling.size());
  for (std::uint32_t p = 0; p < y.labeling.size(); ++p) inv[y.labeling[p]] = p;
  std::vector<std::uint32_t> img(x.labeling.size());
  for (std::uint32_t p = 0; p < x.labeling.size(); ++p) img[p] = inv[x.labeling[p]];
  return Perm(std::move(img));
}

inline ParatopyElement transpose_element(std::size_t v) {
  auto e = ParatopyElement::identity(2, v);
  e.axis_perm = Perm(std::vector<std::uint32_t>{1, 0});
  return e;
}

inline std::optional<ParatopyElement> equivalence(const Cube& c1, const Cube& c2, CertificateMode mode) {
  check_same_shape(c1, c2);
  auto a = canonical_cube(c1, mode);
  auto b = canonical_cube(c2, mode);
  if (!(a.certificate == b.certificate)) return std::nullopt;
  const std::size_t n = c1.dimension(), v = c1.order();
  ParatopyElement w = ParatopyElement::from_point_map(map_between(a, b), n, v);
  // at n = 2 the labelings may refer to transposes
  if (a.transposed) w = then(transpose_element(v), w);
  if (b.transposed) w = then(w, transpose_element(v));
  if (!(apply_paratopy(c1, w) == c2)) throw Error(ErrorKind::construction_bug, "equivalence witness fails");
  return w;
}
}  // namespace detail

/// Witness w with apply_paratopy(c1, w) == c2, if the cubes are paratopic.
inline std::optional<ParatopyElement> paratopy_witness(const Cube& c1, const Cube& c2) {
  return detail::equivalence(c1, c2, CertificateMode::uncolored);
}

inline std::optional<ParatopyElement> isotopy_witness(const Cube& c1, const Cube& c2) {
  return detail::equivalence(c1, c2, CertificateMode::colored);
}

inline bool are_paratopic(const Cube& c1, const Cube& c2) {
  detail::check_same_shape(c1, c2);
  return canonical_certificate(c1, CertificateMode::uncolored) == canonical_certificate(c2, CertificateMode::uncolored);
}

inline bool are_isotopic(const Cube& c1, const Cube& c2) {
  detail::check_same_shape(c1, c2);
  return canonical_certificate(c1, CertificateMode::colored) == canonical_certificate(c2, CertificateMode::colored);
}

// ---------------------------------------------------------------------------
// Automorphism groups

struct AutomorphismReport {
  std::vector<ParatopyElement> generators;
  BigInt order;
  bool complete = true;
};

inline BigInt paratopy_group_order(const std::vector<ParatopyElement>& gens, std::size_t n, std::size_t v) {
  std::vector<Perm> maps;
  for (const auto& g : gens) maps.push_back(g.point_map());
  return PermGroup(n * v, std::move(maps)).order();
}

namespace detail {
inline AutomorphismReport report_from(const Cube& c, const CanonicalCube& cc) {
  AutomorphismReport r;
  r.complete = cc.complete;
  for (const auto& g : cc.generators) {
    auto e = ParatopyElement::from_point_map(g, c.dimension(), c.order());
    if (!(apply_paratopy(c, e) == c)) throw Error(ErrorKind::construction_bug, "generator does not fix the cube");
    r.generators.push_back(std::move(e));
  }
  r.order = cc.order;
  return r;
}
}  // namespace detail

/// Atop(C): stabilizer under isotopy.
inline AutomorphismReport autotopy_report(const Cube& c, const EquivalenceOptions& opt = {}) {
  auto cc = canonical_cube(c, CertificateMode::colored, opt);
  return detail::report_from(c, cc);
}

/// Apar(C): stabilizer under paratopy.
inline AutomorphismReport autoparatopy_report(const Cube& c, const EquivalenceOptions& opt = {}) {
  if (c.dimension() != 2) {
    auto cc = canonical_cube(c, CertificateMode::uncolored, opt);
    return detail::report_from(c, cc);
  }
  auto r = autotopy_report(c, opt);
  if (auto w = detail::equivalence(c, detail::transpose2(c), CertificateMode::colored)) {
    r.generators.push_back(then(*w, detail::transpose_element(c.order())));
    r.order *= 2;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Autotopies predicted by the group structure of a difference cube

/// For (a_1..a_{n-1}) in G^{n-1}, axis t maps x -> a_{t-1} x a_t^{-1} with
/// a_0 = a_n = 1; each multiplier phi with phi(D) = aD gives the autotopy
/// x -> a^{-1} phi(x) on the first axis and phi elsewhere. Every element is
/// checked against difference_cube(g, d, n).
inline std::vector<ParatopyElement> theoretical_autotopies(const FiniteGroup& g, const DifferenceSet& d, std::size_t n,
                                                           const std::vector<GroupMap>* aut = nullptr) {
  const std::size_t v = g.order();
  std::vector<ParatopyElement> out;
  for (std::size_t t = 0; t + 1 < n; ++t)
    for (Element a : g.generating_sequence()) {
      auto e = ParatopyElement::identity(n, v);
      const Element ai = g.inv(a);
      for (Element x = 0; x < v; ++x) {
        e.perms[t][x] = g.mul(x, ai);
        e.perms[t + 1][x] = g.mul(a, x);
      }
      out.push_back(std::move(e));
    }
  for (const auto& m : multipliers(g, d, aut)) {
    if (m.map == GroupMap::identity(v)) continue;
    auto e = ParatopyElement::identity(n, v);
    const Element ai = g.inv(m.translate);
    for (Element x = 0; x < v; ++x) {
      e.perms[0][x] = g.mul(ai, m.map(x));
      for (std::size_t t = 1; t < n; ++t) e.perms[t][x] = m.map(x);
    }
    out.push_back(std::move(e));
  }
  auto view = difference_cube_view(g, d, n);
  Index idx(n), img(n);
  for (const auto& e : out) {
    bool ok = true;
    detail::for_each_index(n, v, [&](const Index& i, std::uint64_t) {
      if (!ok) return;
      for (std::size_t t = 0; t < n; ++t) img[t] = e.perms[t](i[t]);
      if (view.at(i) != view.at(img)) ok = false;
    });
    if (!ok) throw Error(ErrorKind::construction_bug, "predicted autotopy does not fix the difference cube");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Hadamard matrix equivalence (signed row and column permutations)

/// Graph on 4v vertices: row vertices r_i^+, r_i^- (color 0), column vertices
/// c_j^+, c_j^- (color 1); r_i^s ~ c_j^t iff s t H_ij = +1, plus the pairs
/// r_i^+ ~ r_i^- and c_j^+ ~ c_j^-.
inline Certificate hadamard_certificate(const std::vector<std::vector<int>>& h) {
  const auto v = static_cast<std::uint32_t>(h.size());
  canon::Structure s;
  s.points = 4 * v;
  s.block_size = 2;
  s.colors.assign(4 * v, 0);
  for (std::uint32_t p = 2 * v; p < 4 * v; ++p) s.colors[p] = 1;
  auto row = [&](std::uint32_t i, int sign) { return 2 * i + (sign > 0 ? 0u : 1u); };
  auto col = [&](std::uint32_t j, int sign) { return 2 * v + 2 * j + (sign > 0 ? 0u : 1u); };
  for (std::uint32_t i = 0; i < v; ++i)
    for (std::uint32_t j = 0; j < v; ++j)
      for (int a : {1, -1})
        for (int b : {1, -1})
          if (a * b * h[i][j] == 1) {
            s.blocks.push_back(row(i, a));
            s.blocks.push_back(col(j, b));
          }
  for (std::uint32_t i = 0; i < v; ++i) {
    s.blocks.push_back(row(i, 1));
    s.blocks.push_back(row(i, -1));
    s.blocks.push_back(col(i, 1));
    s.blocks.push_back(col(i, -1));
  }
  auto r = canon::canonicalize(s);
  std::uint64_t header[] = {4, v};
  return encode_certificate(CertificateMode::colored, header, r.form, 2);
}

/// H = 2A - J.
inline std::vector<std::vector<int>> hadamard_of_design(const IncidenceMatrix& a) {
  std::vector<std::vector<int>> h(a.size(), std::vector<int>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) h[i][j] = a.get(i, j) ? 1 : -1;
  return h;
}

}  // namespace symcube
