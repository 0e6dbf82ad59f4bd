#pragma once

// Canonical labeling and automorphism groups of point-colored uniform
// hypergraphs by individualization-refinement.
//
// Points carry an initial color; blocks are sets of `block_size` points.
// Only points are labeled: distinct blocks are determined by their point sets,
// so a canonical point labeling fixes the whole structure. A point's refinement
// signature is the multiset, over its blocks, of the sorted colors of the other
// points in the block.
//
// The search keeps the first leaf and the best leaf. A leaf equal to either
// yields an automorphism; automorphisms fixing the current prefix pointwise
// prune children lying in an already explored orbit. Every node records a
// labeling-invariant trace hash; a node whose trace is lexicographically worse
// than the best path's is cut unless it still matches the first path.

#include <symcube/error.hpp>
#include <symcube/perm.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

namespace symcube::canon {

struct Structure {
  std::uint32_t points = 0;
  std::uint32_t block_size = 0;
  std::vector<std::uint32_t> colors;  // initial color per point
  std::vector<std::uint32_t> blocks;  // flattened, block_size entries per block

  std::size_t block_count() const { return block_size == 0 ? 0 : blocks.size() / block_size; }
};

struct Options {
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct Result {
  std::vector<std::uint32_t> labeling;  // labeling[p] = canonical index of point p
  std::vector<std::uint64_t> form;      // sorted relabeled blocks, packed
  std::vector<Perm> generators;
  BigInt order = 1;           // from the stabilizer chain of `generators`
  BigInt orbit_product = 1;   // product of first-path orbit lengths
  bool complete = true;
  std::uint64_t nodes = 0;
};

/// Applies a point permutation to a structure's block list and packs each
/// block (sorted) into a 64-bit word, 16 bits per point; returns the sorted list.
inline std::vector<std::uint64_t> relabeled_form(const Structure& s, std::span<const std::uint32_t> map) {
  std::vector<std::uint64_t> out;
  out.reserve(s.block_count());
  std::uint32_t tmp[4];
  for (std::size_t b = 0; b < s.block_count(); ++b) {
    for (std::uint32_t i = 0; i < s.block_size; ++i) tmp[i] = map[s.blocks[b * s.block_size + i]];
    std::sort(tmp, tmp + s.block_size);
    std::uint64_t key = 0;
    for (std::uint32_t i = 0; i < s.block_size; ++i) key = (key << 16) | tmp[i];
    out.push_back(key);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// True iff `g` maps the block set onto itself and preserves initial colors.
inline bool is_automorphism(const Structure& s, const Perm& g) {
  if (g.degree() != s.points) return false;
  for (std::uint32_t p = 0; p < s.points; ++p)
    if (s.colors[p] != s.colors[g(p)]) return false;
  std::vector<std::uint32_t> id(s.points);
  std::iota(id.begin(), id.end(), 0u);
  return relabeled_form(s, id) == relabeled_form(s, g.images());
}

namespace detail {

inline std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull + h;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

struct Partition {
  std::vector<std::uint32_t> lab;   // position -> point
  std::vector<std::uint32_t> pos;   // point -> position
  std::vector<std::uint32_t> cell;  // point -> start of its cell
  std::vector<std::uint32_t> end;   // cell start -> one past its end
  std::uint32_t cells = 0;

  bool discrete() const { return cells == lab.size(); }
};

class Engine {
 public:
  Engine(const Structure& s, const Options& opt) : s_(s), opt_(opt) {
    if (s.block_size > 4) throw Error(ErrorKind::invalid_input, "canonicalizer supports blocks of size <= 4");
    if (s.points >= 65536) throw Error(ErrorKind::invalid_input, "too many points");
    if (s.colors.size() != s.points) throw Error(ErrorKind::invalid_input, "color vector size mismatch");
    const std::size_t nb = s.block_count();
    inc_start_.assign(s.points + 1, 0);
    for (std::size_t i = 0; i < nb * s.block_size; ++i) ++inc_start_[s.blocks[i] + 1];
    for (std::uint32_t p = 0; p < s.points; ++p) inc_start_[p + 1] += inc_start_[p];
    inc_.resize(nb * s.block_size);
    auto fill = inc_start_;
    for (std::size_t b = 0; b < nb; ++b)
      for (std::uint32_t i = 0; i < s.block_size; ++i) inc_[fill[s.blocks[b * s.block_size + i]]++] = b;
  }

  Result run() {
    Partition root = initial_partition();
    std::uint64_t h = 0;
    refine(root, h);
    cur_trace_.assign(1, h);
    cur_path_.clear();
    int r = search(root, 0);
    Result res;
    res.complete = r != kAbort;
    res.nodes = nodes_;
    res.labeling.assign(s_.points, 0);
    for (std::uint32_t i = 0; i < s_.points; ++i) res.labeling[best_lab_[i]] = i;
    res.form = best_form_;
    res.generators = gens_;
    res.order = PermGroup(s_.points, gens_).order();
    res.orbit_product = orbit_product_;
    return res;
  }

 private:
  static constexpr int kAbort = -2;

  Partition initial_partition() const {
    Partition p;
    const std::uint32_t n = s_.points;
    p.lab.resize(n);
    std::iota(p.lab.begin(), p.lab.end(), 0u);
    std::stable_sort(p.lab.begin(), p.lab.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return s_.colors[a] < s_.colors[b]; });
    p.pos.resize(n);
    p.cell.resize(n);
    p.end.assign(n, 0);
    for (std::uint32_t i = 0; i < n; ++i) p.pos[p.lab[i]] = i;
    std::uint32_t start = 0;
    for (std::uint32_t i = 0; i < n; ++i) {
      if (i > 0 && s_.colors[p.lab[i]] != s_.colors[p.lab[i - 1]]) {
        p.end[start] = i;
        start = i;
        ++p.cells;
      }
      p.cell[p.lab[i]] = start;
    }
    if (n > 0) {
      p.end[start] = n;
      ++p.cells;
    }
    return p;
  }

  // Signature key of block b seen from point p: sorted colors of the others.
  std::uint64_t block_key(const Partition& part, std::size_t b, std::uint32_t p) const {
    std::uint32_t tmp[4];
    std::uint32_t m = 0;
    const std::uint32_t* blk = s_.blocks.data() + b * s_.block_size;
    bool skipped = false;
    for (std::uint32_t i = 0; i < s_.block_size; ++i) {
      if (!skipped && blk[i] == p) {
        skipped = true;
        continue;
      }
      tmp[m++] = part.cell[blk[i]];
    }
    std::sort(tmp, tmp + m);
    std::uint64_t key = 0;
    for (std::uint32_t i = 0; i < m; ++i) key = (key << 16) | tmp[i];
    return key;
  }

  void refine(Partition& part, std::uint64_t& trace) {
    const std::uint32_t n = s_.points;
    std::vector<std::uint64_t> sig;
    std::vector<std::uint32_t> off, order;
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::uint32_t start = 0; start < n;) {
        const std::uint32_t stop = part.end[start];
        const std::uint32_t size = stop - start;
        if (size == 1) {
          start = stop;
          continue;
        }
        sig.clear();
        off.assign(size + 1, 0);
        for (std::uint32_t i = 0; i < size; ++i) {
          std::uint32_t p = part.lab[start + i];
          std::size_t b0 = sig.size();
          for (std::uint32_t k = inc_start_[p]; k < inc_start_[p + 1]; ++k) sig.push_back(block_key(part, inc_[k], p));
          std::sort(sig.begin() + static_cast<std::ptrdiff_t>(b0), sig.end());
          off[i + 1] = static_cast<std::uint32_t>(sig.size());
        }
        auto view = [&](std::uint32_t i) {
          return std::span<const std::uint64_t>(sig.data() + off[i], off[i + 1] - off[i]);
        };
        auto less = [&](std::uint32_t a, std::uint32_t b) {
          auto x = view(a), y = view(b);
          return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
        };
        auto equal = [&](std::uint32_t a, std::uint32_t b) {
          auto x = view(a), y = view(b);
          return std::equal(x.begin(), x.end(), y.begin(), y.end());
        };
        order.resize(size);
        std::iota(order.begin(), order.end(), 0u);
        std::stable_sort(order.begin(), order.end(), less);
        if (equal(order.front(), order.back())) {
          start = stop;
          continue;
        }
        changed = true;
        std::vector<std::uint32_t> pts(size);
        for (std::uint32_t i = 0; i < size; ++i) pts[i] = part.lab[start + order[i]];
        trace = mix(trace, start);
        std::uint32_t frag = start;
        for (std::uint32_t i = 0; i < size; ++i) {
          if (i > 0 && !equal(order[i - 1], order[i])) {
            part.end[frag] = start + i;
            trace = mix(trace, start + i - frag);
            frag = start + i;
            ++part.cells;
          }
          if (i == 0 || !equal(order[i - 1], order[i])) {
            std::uint64_t hs = 0;
            for (auto x : view(order[i])) hs = mix(hs, x);
            trace = mix(trace, hs);
          }
          part.lab[start + i] = pts[i];
          part.pos[pts[i]] = start + i;
          part.cell[pts[i]] = frag;
        }
        part.end[frag] = stop;
        trace = mix(trace, stop - frag);
        start = stop;
      }
    }
    trace = mix(trace, part.cells);
  }

  void individualize(Partition& part, std::uint32_t w, std::uint64_t& trace) const {
    std::uint32_t start = part.cell[w], stop = part.end[start];
    std::uint32_t pw = part.pos[w], other = part.lab[start];
    part.lab[start] = w;
    part.lab[pw] = other;
    part.pos[w] = start;
    part.pos[other] = pw;
    part.end[start] = start + 1;
    part.end[start + 1] = stop;
    for (std::uint32_t i = start + 1; i < stop; ++i) part.cell[part.lab[i]] = start + 1;
    ++part.cells;
    trace = mix(trace, 0xabcdefull ^ start);
    trace = mix(trace, stop - start);
  }

  // Cell whose points see the most distinct kinds of incident block (a proxy
  // for being non-trivially joined to other cells); then smallest, then lowest.
  std::uint32_t target_cell(const Partition& part) const {
    std::uint32_t best = 0, best_size = ~0u;
    std::size_t best_kinds = 0;
    std::vector<std::uint64_t> keys;
    for (std::uint32_t start = 0; start < s_.points; start = part.end[start]) {
      std::uint32_t size = part.end[start] - start;
      if (size == 1) continue;
      const std::uint32_t p = part.lab[start];
      keys.clear();
      for (std::uint32_t k = inc_start_[p]; k < inc_start_[p + 1]; ++k) keys.push_back(block_key(part, inc_[k], p));
      std::sort(keys.begin(), keys.end());
      std::size_t kinds = static_cast<std::size_t>(std::unique(keys.begin(), keys.end()) - keys.begin());
      if (kinds > best_kinds || (kinds == best_kinds && size < best_size)) {
        best = start;
        best_size = size;
        best_kinds = kinds;
      }
    }
    return best;
  }

  static int compare_prefix(const std::vector<std::uint64_t>& cur, const std::vector<std::uint64_t>& best) {
    std::size_t m = std::min(cur.size(), best.size());
    for (std::size_t i = 0; i < m; ++i)
      if (cur[i] != best[i]) return cur[i] < best[i] ? -1 : 1;
    return cur.size() > best.size() ? 1 : 0;
  }

  bool matches_first_prefix() const {
    if (cur_trace_.size() > first_trace_.size()) return false;
    return std::equal(cur_trace_.begin(), cur_trace_.end(), first_trace_.begin());
  }

  static std::size_t common_prefix(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
    std::size_t i = 0;
    while (i < a.size() && i < b.size() && a[i] == b[i]) ++i;
    return i;
  }

  Perm map_between(const std::vector<std::uint32_t>& from_lab, const std::vector<std::uint32_t>& to_lab) const {
    std::vector<std::uint32_t> img(s_.points);
    for (std::uint32_t i = 0; i < s_.points; ++i) img[from_lab[i]] = to_lab[i];
    return Perm(std::move(img));
  }

  // Union-find over points under the generators fixing cur_path_[0..level).
  std::vector<std::uint32_t> stabilizer_orbits(std::size_t level) const {
    std::vector<std::uint32_t> rep(s_.points);
    std::iota(rep.begin(), rep.end(), 0u);
    auto find = [&](std::uint32_t x) {
      while (rep[x] != x) x = rep[x] = rep[rep[x]];
      return x;
    };
    for (const auto& g : gens_) {
      bool fixes = true;
      for (std::size_t i = 0; i < level && fixes; ++i) fixes = g(cur_path_[i]) == cur_path_[i];
      if (!fixes) continue;
      for (std::uint32_t x = 0; x < s_.points; ++x) {
        auto a = find(x), b = find(g(x));
        if (a != b) rep[std::max(a, b)] = std::min(a, b);
      }
    }
    for (std::uint32_t x = 0; x < s_.points; ++x) rep[x] = find(x);
    return rep;
  }

  bool out_of_time() {
    if (!opt_.deadline) return false;
    if ((nodes_ & 63) != 0) return false;
    return std::chrono::steady_clock::now() > *opt_.deadline;
  }

  int leaf(const Partition& part) {
    auto form = relabeled_form(s_, part.pos);
    if (!have_first_) {
      have_first_ = true;
      first_lab_ = best_lab_ = part.lab;
      first_trace_ = best_trace_ = cur_trace_;
      first_form_ = best_form_ = form;
      first_path_ = best_path_ = cur_path_;
      return -1;
    }
    if (cur_trace_ == first_trace_ && form == first_form_) {
      gens_.push_back(map_between(first_lab_, part.lab));
      return static_cast<int>(common_prefix(cur_path_, first_path_));
    }
    int c = cur_trace_ < best_trace_ ? -1 : (cur_trace_ == best_trace_ ? 0 : 1);
    if (c == 0) c = form < best_form_ ? -1 : (form == best_form_ ? 0 : 1);
    if (c == 0) {
      gens_.push_back(map_between(best_lab_, part.lab));
      return static_cast<int>(common_prefix(cur_path_, best_path_));
    }
    if (c < 0) {
      best_lab_ = part.lab;
      best_trace_ = cur_trace_;
      best_form_ = std::move(form);
      best_path_ = cur_path_;
    }
    return -1;
  }

  int search(const Partition& part, std::size_t level) {
    ++nodes_;
    if (out_of_time()) return kAbort;
    if (part.discrete()) return leaf(part);
    const bool on_first = !have_first_ || (cur_path_.size() == level && level <= first_path_.size() &&
                                           std::equal(cur_path_.begin(), cur_path_.end(), first_path_.begin()));
    const std::uint32_t cstart = target_cell(part);
    std::vector<std::uint32_t> cands(part.lab.begin() + cstart, part.lab.begin() + part.end[cstart]);
    std::sort(cands.begin(), cands.end());

    std::vector<std::uint32_t> explored;
    std::vector<std::uint32_t> orbits;
    std::size_t orbit_gens = ~std::size_t{0};
    const std::vector<std::uint32_t> prefix(cur_path_.begin(), cur_path_.begin() + static_cast<std::ptrdiff_t>(level));

    for (auto w : cands) {
      if (!explored.empty()) {
        if (orbit_gens != gens_.size()) {
          cur_path_ = prefix;
          orbits = stabilizer_orbits(level);
          orbit_gens = gens_.size();
        }
        bool redundant = false;
        for (auto e : explored)
          if (orbits[e] == orbits[w]) {
            redundant = true;
            break;
          }
        if (redundant) continue;
      }
      Partition child = part;
      std::uint64_t h = 0;
      individualize(child, w, h);
      refine(child, h);
      cur_path_ = prefix;
      cur_path_.push_back(w);
      cur_trace_.resize(level + 1);
      cur_trace_.push_back(h);
      explored.push_back(w);
      if (have_first_) {
        bool eq_first = matches_first_prefix();
        if (!eq_first && compare_prefix(cur_trace_, best_trace_) > 0) continue;
      }
      int r = search(child, level + 1);
      if (r == kAbort) return kAbort;
      if (r >= 0 && static_cast<std::size_t>(r) < level) return r;
    }
    if (on_first && level < first_path_.size()) {
      cur_path_ = prefix;
      auto orb = stabilizer_orbits(level);
      std::uint32_t target = orb[first_path_[level]];
      std::size_t len = static_cast<std::size_t>(std::count(orb.begin(), orb.end(), target));
      orbit_product_ *= len;
    }
    return -1;
  }

  const Structure& s_;
  Options opt_;
  std::vector<std::uint32_t> inc_start_;
  std::vector<std::uint32_t> inc_;

  bool have_first_ = false;
  std::vector<std::uint32_t> first_lab_, best_lab_;
  std::vector<std::uint64_t> first_trace_, best_trace_;
  std::vector<std::uint64_t> first_form_, best_form_;
  std::vector<std::uint32_t> first_path_, best_path_;
  std::vector<std::uint64_t> cur_trace_;
  std::vector<std::uint32_t> cur_path_;
  std::vector<Perm> gens_;
  BigInt orbit_product_ = 1;
  std::uint64_t nodes_ = 0;
};

}  // namespace detail

inline Result canonicalize(const Structure& s, const Options& opt = {}) {
  if (s.points == 0) {
    Result r;
    return r;
  }
  return detail::Engine(s, opt).run();
}

}  // namespace symcube::canon
