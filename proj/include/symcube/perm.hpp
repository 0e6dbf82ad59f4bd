#pragma once

// Permutations on {0..n-1}, cycle notation, and a deterministic
// Schreier-Sims stabilizer chain for exact group orders.

#include <symcube/error.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace symcube {

using BigInt = boost::multiprecision::cpp_int;

/// A permutation stored as its image table: p(i) = images()[i].
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::size_t degree) : img_(degree) { std::iota(img_.begin(), img_.end(), 0u); }
  explicit Perm(std::vector<std::uint32_t> images) : img_(std::move(images)) {}

  static Perm identity(std::size_t degree) { return Perm(degree); }

  std::size_t degree() const noexcept { return img_.size(); }
  std::uint32_t operator()(std::uint32_t i) const { return img_[i]; }
  std::uint32_t& operator[](std::size_t i) { return img_[i]; }
  std::uint32_t operator[](std::size_t i) const { return img_[i]; }
  const std::vector<std::uint32_t>& images() const noexcept { return img_; }

  bool is_identity() const {
    for (std::size_t i = 0; i < img_.size(); ++i)
      if (img_[i] != i) return false;
    return true;
  }

  bool is_bijection() const {
    std::vector<bool> seen(img_.size(), false);
    for (auto x : img_) {
      if (x >= img_.size() || seen[x]) return false;
      seen[x] = true;
    }
    return true;
  }

  Perm inverse() const {
    std::vector<std::uint32_t> inv(img_.size());
    for (std::size_t i = 0; i < img_.size(); ++i) inv[img_[i]] = static_cast<std::uint32_t>(i);
    return Perm(std::move(inv));
  }

  friend bool operator==(const Perm&, const Perm&) = default;
  friend auto operator<=>(const Perm& a, const Perm& b) { return a.img_ <=> b.img_; }

 private:
  std::vector<std::uint32_t> img_;
};

/// Functional composition: (after * before)(x) = after(before(x)).
inline Perm operator*(const Perm& after, const Perm& before) {
  std::vector<std::uint32_t> r(before.degree());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = after(before(static_cast<std::uint32_t>(i)));
  return Perm(std::move(r));
}

/// Parses disjoint-cycle notation such as "(1,16)(4,5)". Points are 1-based
/// in the text unless `one_based` is false; "()" is the identity.
inline Perm parse_cycles(std::string_view text, std::size_t degree, bool one_based = true) {
  Perm p(degree);
  std::vector<bool> touched(degree, false);
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw Error(ErrorKind::parse_error, "expected '(' in cycle notation: " + std::string(text));
    ++i;
    std::vector<std::uint32_t> cyc;
    while (true) {
      skip_ws();
      if (i >= text.size()) throw Error(ErrorKind::parse_error, "unterminated cycle: " + std::string(text));
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (text[i] == ',') {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      if (j == i) throw Error(ErrorKind::parse_error, "bad character in cycle: " + std::string(text));
      long val = std::stol(std::string(text.substr(i, j - i)));
      if (one_based) --val;
      if (val < 0 || static_cast<std::size_t>(val) >= degree)
        throw Error(ErrorKind::parse_error, "cycle point out of range: " + std::string(text));
      cyc.push_back(static_cast<std::uint32_t>(val));
      i = j;
    }
    for (auto x : cyc) {
      if (touched[x]) throw Error(ErrorKind::parse_error, "cycles are not disjoint: " + std::string(text));
      touched[x] = true;
    }
    for (std::size_t c = 0; c < cyc.size(); ++c) p[cyc[c]] = cyc[(c + 1) % cyc.size()];
    skip_ws();
  }
  return p;
}

inline std::string format_cycles(const Perm& p, bool one_based = true) {
  std::ostringstream os;
  std::vector<bool> seen(p.degree(), false);
  for (std::uint32_t s = 0; s < p.degree(); ++s) {
    if (seen[s] || p(s) == s) continue;
    os << '(';
    std::uint32_t x = s;
    bool first = true;
    do {
      if (!first) os << ',';
      os << (x + (one_based ? 1 : 0));
      seen[x] = true;
      first = false;
      x = p(x);
    } while (x != s);
    os << ')';
  }
  std::string r = os.str();
  return r.empty() ? "()" : r;
}

/// Stabilizer chain built by the deterministic Schreier-Sims algorithm.
class PermGroup {
 public:
  PermGroup(std::size_t degree, std::vector<Perm> generators) : degree_(degree) {
    for (auto& g : generators) {
      if (g.degree() != degree) throw Error(ErrorKind::dimension_mismatch, "generator degree mismatch");
      if (!g.is_identity()) gens_.push_back(std::move(g));
    }
    build();
  }

  std::size_t degree() const noexcept { return degree_; }
  const std::vector<Perm>& generators() const noexcept { return gens_; }
  const std::vector<std::uint32_t>& base() const noexcept { return base_; }

  BigInt order() const {
    BigInt r = 1;
    for (const auto& lv : levels_) r *= lv.orbit.size();
    return r;
  }

  bool contains(const Perm& g) const {
    if (g.degree() != degree_) return false;
    auto [h, lvl] = sift(g);
    return lvl == levels_.size() && h.is_identity();
  }

  /// Orbits of the whole group on points, as a representative per point (minimum of orbit).
  std::vector<std::uint32_t> orbit_representatives() const {
    std::vector<std::uint32_t> rep(degree_);
    std::iota(rep.begin(), rep.end(), 0u);
    auto find = [&](std::uint32_t x) {
      while (rep[x] != x) x = rep[x] = rep[rep[x]];
      return x;
    };
    for (const auto& g : gens_)
      for (std::uint32_t x = 0; x < degree_; ++x) {
        auto a = find(x), b = find(g(x));
        if (a != b) rep[std::max(a, b)] = std::min(a, b);
      }
    for (std::uint32_t x = 0; x < degree_; ++x) rep[x] = find(x);
    return rep;
  }

 private:
  struct Level {
    std::uint32_t point;
    std::vector<std::uint32_t> orbit;
    std::vector<std::optional<Perm>> transversal;  // indexed by point
    std::vector<std::size_t> strong;               // indices into sgs_ fixing base_[0..i)
  };

  void build() {
    sgs_ = gens_;
    base_.clear();
    for (const auto& g : sgs_) extend_base_for(g);
    rebuild_levels(0);
    // Bottom-up completion: every Schreier generator of level lv must sift
    // through the levels below it.
    std::size_t lv = levels_.size();
    while (lv > 0) {
      std::size_t cur = lv - 1;
      bool added = false;
      Level& level = levels_[cur];
      for (std::size_t oi = 0; !added && oi < level.orbit.size(); ++oi) {
        std::uint32_t delta = level.orbit[oi];
        for (std::size_t si = 0; !added && si < level.strong.size(); ++si) {
          const Perm& s = sgs_[level.strong[si]];
          Perm sch = level.transversal[s(delta)]->inverse() * s * *level.transversal[delta];
          if (sch.is_identity()) continue;
          auto [h, stop] = sift_from(std::move(sch), cur + 1);
          if (stop == levels_.size() && h.is_identity()) continue;
          if (stop == levels_.size()) extend_base_for(h);
          sgs_.push_back(std::move(h));
          rebuild_levels(cur + 1);
          lv = stop + 1;
          added = true;
        }
      }
      if (!added) --lv;
    }
  }

  void extend_base_for(const Perm& g) {
    // ensure g moves some base point
    for (auto b : base_)
      if (g(b) != b) return;
    for (std::uint32_t x = 0; x < degree_; ++x)
      if (g(x) != x) {
        base_.push_back(x);
        return;
      }
  }

  void rebuild_levels(std::size_t from) {
    levels_.resize(base_.size());
    for (std::size_t i = from; i < base_.size(); ++i) {
      Level& lv = levels_[i];
      lv.point = base_[i];
      lv.strong.clear();
      for (std::size_t s = 0; s < sgs_.size(); ++s) {
        bool fixes = true;
        for (std::size_t j = 0; j < i && fixes; ++j) fixes = sgs_[s](base_[j]) == base_[j];
        if (fixes) lv.strong.push_back(s);
      }
      lv.orbit.assign(1, lv.point);
      lv.transversal.assign(degree_, std::nullopt);
      lv.transversal[lv.point] = Perm(degree_);
      for (std::size_t k = 0; k < lv.orbit.size(); ++k) {
        std::uint32_t d = lv.orbit[k];
        for (auto s : lv.strong) {
          std::uint32_t e = sgs_[s](d);
          if (!lv.transversal[e]) {
            lv.transversal[e] = sgs_[s] * *lv.transversal[d];
            lv.orbit.push_back(e);
          }
        }
      }
    }
  }

  std::pair<Perm, std::size_t> sift(const Perm& g) const { return sift_from(g, 0); }

  std::pair<Perm, std::size_t> sift_from(Perm h, std::size_t from) const {
    for (std::size_t i = from; i < levels_.size(); ++i) {
      std::uint32_t b = h(levels_[i].point);
      if (!levels_[i].transversal[b]) return {std::move(h), i};
      h = levels_[i].transversal[b]->inverse() * h;
    }
    return {std::move(h), levels_.size()};
  }

  std::size_t degree_;
  std::vector<Perm> gens_;
  std::vector<Perm> sgs_;
  std::vector<std::uint32_t> base_;
  std::vector<Level> levels_;
};

/// Orbit of a point set (given as a sorted vector) under the group generated by `gens`.
inline std::vector<std::vector<std::uint32_t>> set_orbit(const std::vector<std::uint32_t>& seed,
                                                        std::span<const Perm> gens) {
  std::set<std::vector<std::uint32_t>> seen;
  std::vector<std::vector<std::uint32_t>> out;
  auto s0 = seed;
  std::sort(s0.begin(), s0.end());
  seen.insert(s0);
  out.push_back(s0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const auto& g : gens) {
      std::vector<std::uint32_t> img;
      img.reserve(out[i].size());
      for (auto x : out[i]) img.push_back(g(x));
      std::sort(img.begin(), img.end());
      if (seen.insert(img).second) out.push_back(std::move(img));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace symcube
