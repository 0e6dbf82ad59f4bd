#pragma once

// Finite groups as explicit Cayley tables. Element 0 is always the identity.

#include <symcube/error.hpp>
#include <symcube/perm.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace symcube {

using Element = std::uint32_t;

class FiniteGroup {
 public:
  FiniteGroup() : FiniteGroup(1, {0}) {}

  /// Takes a row-major table (table[i*v+j] = g_i g_j). Throws invalid-group if
  /// any group axiom fails. The identity is moved to index 0 if necessary.
  FiniteGroup(std::size_t order, std::vector<Element> table, std::vector<std::string> labels = {},
              std::string name = {})
      : v_(order), table_(std::move(table)), labels_(std::move(labels)), name_(std::move(name)) {
    if (v_ == 0) throw Error(ErrorKind::invalid_order, "group order must be positive");
    if (table_.size() != v_ * v_) throw Error(ErrorKind::invalid_group, "table size is not order^2");
    if (!labels_.empty() && labels_.size() != v_) throw Error(ErrorKind::invalid_group, "label count mismatch");
    validate();
    normalize_identity();
    compute_inverses();
  }

  std::size_t order() const noexcept { return v_; }
  Element mul(Element a, Element b) const { return table_[a * v_ + b]; }
  Element inv(Element a) const { return inverse_[a]; }
  static constexpr Element identity() noexcept { return 0; }
  const std::vector<Element>& table() const noexcept { return table_; }
  const std::string& name() const noexcept { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  std::string label(Element e) const { return labels_.empty() ? std::to_string(e) : labels_[e]; }

  std::optional<Element> find_label(const std::string& s) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] == s) return static_cast<Element>(i);
    return std::nullopt;
  }

  std::size_t element_order(Element a) const {
    std::size_t n = 1;
    for (Element x = a; x != 0; x = mul(x, a)) ++n;
    return n;
  }

  bool is_abelian() const {
    for (Element a = 0; a < v_; ++a)
      for (Element b = a + 1; b < v_; ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  /// Left-multiplication permutation x -> a x.
  Perm left_mult(Element a) const {
    std::vector<std::uint32_t> img(v_);
    for (Element x = 0; x < v_; ++x) img[x] = mul(a, x);
    return Perm(std::move(img));
  }

  /// Subgroup generated by `gens`, as a sorted element list.
  std::vector<Element> closure(const std::vector<Element>& gens) const {
    std::vector<bool> in(v_, false);
    std::vector<Element> out{0};
    in[0] = true;
    for (std::size_t i = 0; i < out.size(); ++i)
      for (auto g : gens) {
        Element x = mul(out[i], g);
        if (!in[x]) {
          in[x] = true;
          out.push_back(x);
        }
      }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// Greedy generating sequence: repeatedly add the lowest-index element
  /// outside the closure of those chosen so far.
  std::vector<Element> generating_sequence() const {
    std::vector<Element> gens;
    std::vector<bool> in(v_, false);
    in[0] = true;
    std::size_t covered = 1;
    while (covered < v_) {
      Element pick = 0;
      while (in[pick]) ++pick;
      gens.push_back(pick);
      auto c = closure(gens);
      std::fill(in.begin(), in.end(), false);
      for (auto x : c) in[x] = true;
      covered = c.size();
    }
    return gens;
  }

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.v_ == b.v_ && a.table_ == b.table_;
  }

 private:
  void validate() const {
    for (std::size_t i = 0; i < v_; ++i) {
      std::vector<bool> row(v_, false), col(v_, false);
      for (std::size_t j = 0; j < v_; ++j) {
        Element r = table_[i * v_ + j], c = table_[j * v_ + i];
        if (r >= v_ || c >= v_ || row[r] || col[c])
          throw Error(ErrorKind::invalid_group, "row or column " + std::to_string(i) + " is not a permutation");
        row[r] = col[c] = true;
      }
    }
    std::optional<Element> e;
    for (Element i = 0; i < v_ && !e; ++i) {
      bool ok = true;
      for (Element j = 0; j < v_ && ok; ++j) ok = table_[i * v_ + j] == j && table_[j * v_ + i] == j;
      if (ok) e = i;
    }
    if (!e) throw Error(ErrorKind::invalid_group, "no two-sided identity");
    for (std::size_t i = 0; i < v_; ++i)
      for (std::size_t j = 0; j < v_; ++j)
        for (std::size_t k = 0; k < v_; ++k)
          if (table_[table_[i * v_ + j] * v_ + k] != table_[i * v_ + table_[j * v_ + k]])
            throw Error(ErrorKind::invalid_group, "associativity fails at (" + std::to_string(i) + "," +
                                                      std::to_string(j) + "," + std::to_string(k) + ")");
  }

  void normalize_identity() {
    Element e = 0;
    while (true) {
      bool ok = true;
      for (Element j = 0; j < v_ && ok; ++j) ok = table_[e * v_ + j] == j;
      if (ok) break;
      ++e;
    }
    if (e == 0) return;
    // swap labels 0 and e
    auto sw = [e](Element x) -> Element { return x == 0 ? e : (x == e ? 0 : x); };
    std::vector<Element> t(v_ * v_);
    for (Element i = 0; i < v_; ++i)
      for (Element j = 0; j < v_; ++j) t[sw(i) * v_ + sw(j)] = sw(table_[i * v_ + j]);
    table_ = std::move(t);
    if (!labels_.empty()) std::swap(labels_[0], labels_[e]);
  }

  void compute_inverses() {
    inverse_.assign(v_, 0);
    for (Element a = 0; a < v_; ++a)
      for (Element b = 0; b < v_; ++b)
        if (mul(a, b) == 0) {
          if (mul(b, a) != 0) throw Error(ErrorKind::invalid_group, "inverse is not two-sided");
          inverse_[a] = b;
          break;
        }
  }

  std::size_t v_;
  std::vector<Element> table_;
  std::vector<Element> inverse_;
  std::vector<std::string> labels_;
  std::string name_;
};

/// A map between two groups of equal order, given by element images.
struct GroupMap {
  std::vector<Element> images;

  Element operator()(Element x) const { return images[x]; }
  friend bool operator==(const GroupMap&, const GroupMap&) = default;
  friend auto operator<=>(const GroupMap& a, const GroupMap& b) { return a.images <=> b.images; }

  static GroupMap identity(std::size_t v) {
    GroupMap m;
    m.images.resize(v);
    std::iota(m.images.begin(), m.images.end(), 0u);
    return m;
  }

  GroupMap inverse() const {
    GroupMap m;
    m.images.resize(images.size());
    for (std::size_t i = 0; i < images.size(); ++i) m.images[images[i]] = static_cast<Element>(i);
    return m;
  }
};

/// (a * b)(x) = a(b(x))
inline GroupMap operator*(const GroupMap& a, const GroupMap& b) {
  GroupMap m;
  m.images.resize(b.images.size());
  for (std::size_t i = 0; i < b.images.size(); ++i) m.images[i] = a.images[b.images[i]];
  return m;
}

inline bool is_homomorphism(const FiniteGroup& s, const FiniteGroup& t, const GroupMap& m) {
  if (m.images.size() != s.order()) return false;
  for (Element i = 0; i < s.order(); ++i)
    for (Element j = 0; j < s.order(); ++j)
      if (m(s.mul(i, j)) != t.mul(m(i), m(j))) return false;
  return true;
}

inline bool is_isomorphism(const FiniteGroup& s, const FiniteGroup& t, const GroupMap& m) {
  if (s.order() != t.order() || !is_homomorphism(s, t, m)) return false;
  std::vector<bool> hit(t.order(), false);
  for (auto x : m.images) {
    if (hit[x]) return false;
    hit[x] = true;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Constructors

inline FiniteGroup make_cyclic(std::size_t v) {
  if (v == 0) throw Error(ErrorKind::invalid_order, "cyclic group of order 0");
  std::vector<Element> t(v * v);
  for (std::size_t i = 0; i < v; ++i)
    for (std::size_t j = 0; j < v; ++j) t[i * v + j] = static_cast<Element>((i + j) % v);
  return FiniteGroup(v, std::move(t), {}, "Z" + std::to_string(v));
}

/// Direct product; element (i, j) has index i * h.order() + j.
inline FiniteGroup make_direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  std::size_t a = g.order(), b = h.order(), v = a * b;
  std::vector<Element> t(v * v);
  for (std::size_t x = 0; x < v; ++x)
    for (std::size_t y = 0; y < v; ++y)
      t[x * v + y] = static_cast<Element>(g.mul(x / b, y / b) * b + h.mul(x % b, y % b));
  std::vector<std::string> labels;
  if (!g.labels().empty() || !h.labels().empty()) {
    for (std::size_t x = 0; x < v; ++x) labels.push_back("(" + g.label(x / b) + "," + h.label(x % b) + ")");
  }
  std::string nm = (g.name().empty() || h.name().empty()) ? std::string{} : g.name() + "x" + h.name();
  return FiniteGroup(v, std::move(t), std::move(labels), nm);
}

namespace detail {
inline std::string word_label(std::size_t i, std::size_t j) {
  if (i == 0 && j == 0) return "1";
  std::string s;
  if (i > 0) s += i == 1 ? "a" : "a^" + std::to_string(i);
  if (j > 0) s += j == 1 ? "b" : "b^" + std::to_string(j);
  return s;
}
}  // namespace detail

/// Z_c x| Z_m = <a, b | a^m = b^c = 1, b a = a b^r>. Element a^i b^j has index
/// i * c + j and label like "a^2b^3".
inline FiniteGroup make_metacyclic(std::size_t m, std::size_t c, std::size_t r) {
  if (m == 0 || c == 0) throw Error(ErrorKind::invalid_order, "metacyclic factors must be positive");
  if (std::gcd(r, c) != 1 && c > 1) throw Error(ErrorKind::invalid_action, "gcd(r, c) != 1");
  std::size_t rm = 1 % c;
  for (std::size_t i = 0; i < m; ++i) rm = rm * r % c;
  if (rm != 1 % c) throw Error(ErrorKind::invalid_action, "r^m is not 1 mod c");
  std::size_t v = m * c;
  std::vector<std::size_t> rpow(m, 1 % c);
  for (std::size_t i = 1; i < m; ++i) rpow[i] = rpow[i - 1] * r % c;
  // (a^i b^j)(a^k b^l) = a^(i+k) b^(j r^k + l)
  std::vector<Element> t(v * v);
  for (std::size_t x = 0; x < v; ++x)
    for (std::size_t y = 0; y < v; ++y) {
      std::size_t i = x / c, j = x % c, k = y / c, l = y % c;
      t[x * v + y] = static_cast<Element>(((i + k) % m) * c + (j * rpow[k] + l) % c);
    }
  std::vector<std::string> labels;
  for (std::size_t x = 0; x < v; ++x) labels.push_back(detail::word_label(x / c, x % c));
  std::string nm = "Z" + std::to_string(c) + ":Z" + std::to_string(m);
  if (m == 3 && c == 7 && r == 2) nm = "F21";
  return FiniteGroup(v, std::move(t), std::move(labels), nm);
}

/// Closure of a set of permutations; returns the left regular representation
/// of the generated group. Elements are numbered in breadth-first discovery
/// order from the identity. Products follow the left-to-right convention:
/// g_i g_j is "apply g_i, then g_j".
inline FiniteGroup make_from_permutation_generators(const std::vector<Perm>& gens, std::size_t bound = 10000,
                                                    std::string name = {}) {
  if (gens.empty()) return FiniteGroup(1, {0}, {}, name);
  std::size_t deg = gens.front().degree();
  for (const auto& g : gens)
    if (g.degree() != deg || !g.is_bijection())
      throw Error(ErrorKind::invalid_input, "generators must be bijections on a common set");
  std::map<std::vector<std::uint32_t>, Element> index;
  std::vector<Perm> elems{Perm(deg)};
  index.emplace(elems[0].images(), 0);
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const auto& g : gens) {
      Perm x = g * elems[i];  // elems[i] then g
      if (index.emplace(x.images(), static_cast<Element>(elems.size())).second) {
        elems.push_back(std::move(x));
        if (elems.size() > bound)
          throw Error(ErrorKind::closure_too_large, "closure exceeds " + std::to_string(bound) + " elements");
      }
    }
  std::size_t v = elems.size();
  std::vector<Element> t(v * v);
  for (std::size_t i = 0; i < v; ++i)
    for (std::size_t j = 0; j < v; ++j) t[i * v + j] = index.at((elems[j] * elems[i]).images());
  return FiniteGroup(v, std::move(t), {}, std::move(name));
}

// ---------------------------------------------------------------------------
// Homomorphism backtracking

namespace detail {

/// Enumerates isomorphisms s -> t by choosing images for a generating
/// sequence of s. Calls `visit` for each; stops when it returns false.
template <class Visit>
void for_each_isomorphism(const FiniteGroup& s, const FiniteGroup& t, Visit&& visit) {
  if (s.order() != t.order()) return;
  const std::size_t v = s.order();
  auto gens = s.generating_sequence();
  std::vector<std::size_t> s_ord(v), t_ord(v);
  for (Element x = 0; x < v; ++x) {
    s_ord[x] = s.element_order(x);
    t_ord[x] = t.element_order(x);
  }
  {
    auto a = s_ord, b = t_ord;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return;
  }
  constexpr Element unset = ~Element{0};
  std::vector<Element> img(v, unset);
  std::vector<Element> pre(v, unset);
  img[0] = 0;
  pre[0] = 0;
  std::vector<Element> known{0};  // elements of s with assigned image

  bool stop = false;
  // Extend the partial map by closing under right multiplication with the
  // generators chosen so far; returns false on conflict.
  auto extend = [&](std::size_t depth, std::vector<Element>& added) -> bool {
    for (std::size_t i = 0; i < known.size(); ++i) {
      Element x = known[i];
      for (std::size_t d = 0; d <= depth; ++d) {
        Element g = gens[d];
        Element y = s.mul(x, g);
        Element iy = t.mul(img[x], img[g]);
        if (img[y] == unset) {
          if (pre[iy] != unset) return false;
          img[y] = iy;
          pre[iy] = y;
          known.push_back(y);
          added.push_back(y);
        } else if (img[y] != iy) {
          return false;
        }
      }
    }
    return true;
  };

  auto rec = [&](auto&& self, std::size_t depth) -> void {
    if (stop) return;
    if (depth == gens.size()) {
      GroupMap m{img};
      if (is_isomorphism(s, t, m) && !visit(m)) stop = true;
      return;
    }
    Element g = gens[depth];
    for (Element cand = 0; cand < v && !stop; ++cand) {
      if (t_ord[cand] != s_ord[g] || pre[cand] != unset) continue;
      img[g] = cand;
      pre[cand] = g;
      std::vector<Element> added{g};
      known.push_back(g);
      bool ok = extend(depth, added);
      if (ok) self(self, depth + 1);
      for (auto x : added) {
        pre[img[x]] = unset;
        img[x] = unset;
      }
      known.resize(known.size() - added.size());
    }
  };
  rec(rec, 0);
}

}  // namespace detail

/// All automorphisms, sorted by image table (identity first).
inline std::vector<GroupMap> automorphism_group(const FiniteGroup& g) {
  std::vector<GroupMap> out;
  detail::for_each_isomorphism(g, g, [&](const GroupMap& m) {
    out.push_back(m);
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

inline std::optional<GroupMap> find_isomorphism(const FiniteGroup& a, const FiniteGroup& b) {
  std::optional<GroupMap> r;
  detail::for_each_isomorphism(a, b, [&](const GroupMap& m) {
    r = m;
    return false;
  });
  return r;
}

}  // namespace symcube
