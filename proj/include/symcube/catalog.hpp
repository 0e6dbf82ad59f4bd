#pragma once

// Named reference designs. Every entry is generated from a difference set or
// from a switching of one, then certified; names are for display only.

#include <symcube/design.hpp>
#include <symcube/difference_set.hpp>
#include <symcube/group.hpp>

#include <bit>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace symcube {

struct CatalogEntry {
  std::string name;
  DesignParams params;
  IncidenceMatrix matrix;
  Certificate certificate;
  BigInt aut_order;
};

class DesignCatalog {
 public:
  /// Adds a verified design. A design whose class is already present is ignored.
  void add(std::string name, const DesignParams& p, const IncidenceMatrix& a) {
    if (!verify_design(a, p)) throw Error(ErrorKind::construction_bug, "catalog design " + name + " is invalid");
    auto dc = design_class_cached(a);
    if (by_cert_.count(dc.certificate)) return;
    by_cert_.emplace(dc.certificate, entries_.size());
    entries_.push_back({std::move(name), p, a, dc.certificate, dc.aut_order});
  }

  const CatalogEntry* find(const Certificate& c) const {
    auto it = by_cert_.find(c);
    return it == by_cert_.end() ? nullptr : &entries_[it->second];
  }

  const CatalogEntry* find_name(const std::string& name) const {
    for (const auto& e : entries_)
      if (e.name == name) return &e;
    return nullptr;
  }

  const std::vector<CatalogEntry>& entries() const noexcept { return entries_; }

  /// The built-in reference designs, built once on first use.
  static const DesignCatalog& standard();

 private:
  std::vector<CatalogEntry> entries_;
  std::map<Certificate, std::size_t> by_cert_;
};

/// Z2^4 with g_i numbered by the 4-bit string of i, and the (16,6,2)
/// difference set {g1, g2, g3, g4, g8, g12} from the product construction.
inline GroupDifferenceSet menon_16() {
  FiniteGroup k = make_klein();
  DifferenceSet seed(k, {0}, 0);
  return mann_product(k, seed, k, seed);
}

/// The three (16,6,2) designs: the development, and two successive switchings.
inline std::vector<IncidenceMatrix> biplane16_designs() {
  auto [g, d] = menon_16();
  IncidenceMatrix d1 = development(g, d);
  IncidenceMatrix d2 = switch_blocks(d1, {0, 1, 12, 13}, {2, 3, 14, 15});
  IncidenceMatrix d3 = switch_blocks(d2, {0, 1, 4, 5}, {6, 7, 14, 15});
  return {d1, d2, d3};
}

namespace detail {
inline IncidenceMatrix cyclic_development(std::size_t v, ElementSet d, std::size_t lambda) {
  FiniteGroup g = make_cyclic(v);
  return development(g, DifferenceSet(g, std::move(d), lambda));
}

/// Further (15,7,3) classes by chained switchings: from the newest design,
/// take the first 4-point set S and four blocks each meeting S in two points
/// whose switching gives a design of a new class.
inline void add_switched_15(DesignCatalog& cat, const IncidenceMatrix& pg, int extra) {
  const DesignParams p{15, 7, 3};
  IncidenceMatrix cur = pg;
  for (int step = 0; step < extra; ++step) {
    bool found = false;
    for (unsigned s = 0; s < (1u << 15) && !found; ++s) {
      if (std::popcount(s) != 4) continue;
      std::vector<std::size_t> pts, meet;
      for (std::size_t x = 0; x < 15; ++x)
        if ((s >> x) & 1u) pts.push_back(x);
      for (std::size_t b = 0; b < 15; ++b) {
        std::size_t c = 0;
        for (auto x : pts) c += cur.get(x, b);
        if (c == 2) meet.push_back(b);
      }
      for (unsigned t = 0; t < (1u << meet.size()) && !found; ++t) {
        if (std::popcount(t) != 4) continue;
        std::vector<std::size_t> blocks;
        for (std::size_t i = 0; i < meet.size(); ++i)
          if ((t >> i) & 1u) blocks.push_back(meet[i]);
        auto r = switch_blocks(cur, blocks, pts);
        if (!verify_design(r, p)) continue;
        std::size_t before = cat.entries().size();
        cat.add("PG3_2_" + std::to_string(step + 2), p, r);
        if (cat.entries().size() > before) {
          cur = r;
          found = true;
        }
      }
    }
    if (!found) throw Error(ErrorKind::construction_bug, "switching found no new (15,7,3) class");
  }
}
}  // namespace detail

inline const DesignCatalog& DesignCatalog::standard() {
  static const DesignCatalog cat = [] {
    DesignCatalog c;
    c.add("PG2_2", {7, 3, 1}, detail::cyclic_development(7, {1, 2, 4}, 1));
    c.add("B11", {11, 5, 2}, detail::cyclic_development(11, {1, 3, 4, 5, 9}, 2));
    c.add("PG2_3", {13, 4, 1}, detail::cyclic_development(13, {0, 1, 3, 9}, 1));
    auto pg32 = detail::cyclic_development(15, {0, 1, 2, 4, 5, 8, 10}, 3);
    c.add("PG3_2", {15, 7, 3}, pg32);
    detail::add_switched_15(c, pg32, 3);
    auto b16 = biplane16_designs();
    for (std::size_t i = 0; i < b16.size(); ++i) c.add("D" + std::to_string(i + 1), {16, 6, 2}, b16[i]);
    c.add("D0", {21, 5, 1}, detail::cyclic_development(21, {3, 6, 7, 12, 14}, 1));
    return c;
  }();
  return cat;
}

/// Isomorphism-or-duality class, named from `catalog` when it is listed there.
inline DesignClass design_class(const IncidenceMatrix& a, const DesignCatalog* catalog = nullptr) {
  DesignClass dc = design_class_cached(a);
  if (catalog)
    if (const auto* e = catalog->find(dc.certificate)) dc.name = e->name;
  return dc;
}

}  // namespace symcube
