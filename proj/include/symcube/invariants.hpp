#pragma once

// Slice invariants: for each unordered pair of varying axes, each third axis
// and each assignment of the remaining coordinates, the v parallel slices
// form one class; its design classes make an inner multiset.

#include <symcube/catalog.hpp>
#include <symcube/cube.hpp>

#include <algorithm>
#include <map>
#include <string>
#include <vector>

namespace symcube {

/// Calls f(x, y, slices) for each parallel class: x < y vary inside a slice,
/// and the slices run through the values of one further axis.
template <class C, class F>
void for_each_parallel_class(const C& c, F&& f) {
  const std::size_t n = c.dimension(), v = c.order();
  if (n < 3) throw Error(ErrorKind::invalid_params, "slice invariants need n >= 3");
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        if (z == x || z == y) continue;
        // the n-3 axes other than x, y, z are fixed
        for_each_fixed(n - 1, v, [&](const std::vector<std::uint32_t>& rest) {
          std::vector<IncidenceMatrix> slices;
          slices.reserve(v);
          for (std::uint32_t val = 0; val < v; ++val) {
            SliceSpec s{x, y, {}};
            for (std::size_t t = 0, r = 0; t < n; ++t) {
              if (t == x || t == y) continue;
              s.fixed.push_back(t == z ? val : rest[r++]);
            }
            slices.push_back(slice(c, s));
          }
          f(x, y, slices);
        });
      }
}

struct SliceInvariant {
  // each inner multiset sorted; outer sorted
  std::vector<std::vector<Certificate>> classes;
  std::map<Certificate, std::string> names;  // display names, where known

  friend bool operator==(const SliceInvariant& a, const SliceInvariant& b) { return a.classes == b.classes; }

  std::string display_name(const Certificate& c) const {
    auto it = names.find(c);
    return it != names.end() ? it->second : "#" + c.short_hex();
  }

  /// Like {{D1^4,D2^12}^3}: inner multisets as name^count, outer as {...}^count.
  std::string render() const {
    std::vector<std::string> inner;
    for (const auto& cls : classes) {
      std::map<std::string, std::size_t> cnt;
      for (const auto& c : cls) ++cnt[display_name(c)];
      std::string s = "{";
      bool first = true;
      for (const auto& [name, k] : cnt) {
        if (!first) s += ",";
        first = false;
        s += name + "^" + std::to_string(k);
      }
      inner.push_back(s + "}");
    }
    std::map<std::string, std::size_t> outer;
    for (const auto& s : inner) ++outer[s];
    std::string r = "{";
    bool first = true;
    for (const auto& [s, k] : outer) {
      if (!first) r += ",";
      first = false;
      r += s + "^" + std::to_string(k);
    }
    return r + "}";
  }
};

template <class C>
SliceInvariant slice_invariant(const C& c, const DesignCatalog* catalog = &DesignCatalog::standard()) {
  SliceInvariant inv;
  for_each_parallel_class(c, [&](std::size_t, std::size_t, const std::vector<IncidenceMatrix>& slices) {
    std::vector<Certificate> cls;
    for (const auto& m : slices) {
      auto dc = design_class(m, catalog);
      if (dc.name) inv.names.emplace(dc.certificate, *dc.name);
      cls.push_back(dc.certificate);
    }
    std::sort(cls.begin(), cls.end());
    inv.classes.push_back(std::move(cls));
  });
  std::sort(inv.classes.begin(), inv.classes.end());
  return inv;
}

/// Same shape, with automorphism group orders in place of classes.
template <class C>
std::vector<std::vector<BigInt>> weak_slice_invariant(const C& c) {
  std::vector<std::vector<BigInt>> out;
  for_each_parallel_class(c, [&](std::size_t, std::size_t, const std::vector<IncidenceMatrix>& slices) {
    std::vector<BigInt> cls;
    for (const auto& m : slices) cls.push_back(design_class_cached(m).aut_order);
    std::sort(cls.begin(), cls.end());
    out.push_back(std::move(cls));
  });
  std::sort(out.begin(), out.end());
  return out;
}

inline std::string render_weak(const std::vector<std::vector<BigInt>>& w) {
  std::map<std::string, std::size_t> outer;
  for (const auto& cls : w) {
    std::map<BigInt, std::size_t> cnt;
    for (const auto& o : cls) ++cnt[o];
    std::string s = "{";
    bool first = true;
    for (const auto& [o, k] : cnt) {
      if (!first) s += ",";
      first = false;
      s += o.str() + "^" + std::to_string(k);
    }
    ++outer[s + "}"];
  }
  std::string r = "{";
  bool first = true;
  for (const auto& [s, k] : outer) {
    if (!first) r += ",";
    first = false;
    r += s + "^" + std::to_string(k);
  }
  return r + "}";
}

}  // namespace symcube
