#pragma once

// Designs all of whose blocks are difference sets, the group cubes they give,
// and cubes assembled from orbits of a prescribed permutation group.

#include <symcube/cube.hpp>
#include <symcube/design.hpp>
#include <symcube/difference_set.hpp>
#include <symcube/equivalence.hpp>
#include <symcube/group.hpp>
#include <symcube/invariants.hpp>
#include <symcube/perm.hpp>

#include <algorithm>
#include <bit>
#include <chrono>
#include <future>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace symcube {

using BlockList = std::vector<ElementSet>;  // sorted lexicographically

struct SearchOptions {
  std::size_t jobs = 1;
  std::optional<std::chrono::steady_clock::duration> time_budget;
  std::uint64_t node_budget = 0;  // 0 = unlimited
};

namespace detail {

/// Packed set of candidate indices.
struct CandSet {
  std::vector<std::uint64_t> w;
  explicit CandSet(std::size_t n = 0) : w((n + 63) / 64, 0) {}
  void set(std::size_t i) { w[i / 64] |= std::uint64_t{1} << (i % 64); }
  void reset(std::size_t i) { w[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
  bool test(std::size_t i) const { return (w[i / 64] >> (i % 64)) & 1u; }
  void and_with(const CandSet& o) {
    for (std::size_t i = 0; i < w.size(); ++i) w[i] &= o.w[i];
  }
};

class BlockSearch {
 public:
  BlockSearch(std::size_t v, const DesignParams& p, std::vector<std::uint64_t> cands, const SearchOptions& opt)
      : v_(v), p_(p), cands_(std::move(cands)), opt_(opt), compat_(cands_.size(), CandSet(cands_.size())),
        with_pair_(v * v, CandSet(cands_.size())), with_point_(v, CandSet(cands_.size())) {
    const std::size_t m = cands_.size();
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (i != j && static_cast<std::size_t>(std::popcount(cands_[i] & cands_[j])) == p.lambda) compat_[i].set(j);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t x = 0; x < v; ++x) {
        if (!((cands_[i] >> x) & 1u)) continue;
        with_point_[x].set(i);
        for (std::size_t y = x + 1; y < v; ++y)
          if ((cands_[i] >> y) & 1u) with_pair_[x * v + y].set(i);
      }
    if (opt.time_budget) deadline_ = std::chrono::steady_clock::now() + *opt.time_budget;
  }

  /// Solutions as sorted candidate-index lists. Splits the first branching
  /// level across `jobs` workers; the merged result is sorted.
  std::vector<std::vector<std::size_t>> run() {
    State root(v_, cands_.size());
    for (std::size_t i = 0; i < cands_.size(); ++i) root.allowed.set(i);
    auto branch = next_branch(root);
    std::vector<std::vector<std::size_t>> out;
    if (!branch) {
      finish(root, out);
      return out;
    }
    auto options = branch_options(root, *branch);
    // child i: include options[i], forbid options[0..i)
    auto child = [&](std::size_t i) {
      State s = root;
      for (std::size_t j = 0; j < i; ++j) s.allowed.reset(options[j]);
      std::vector<std::vector<std::size_t>> local;
      std::uint64_t nodes = 0;
      if (add(s, options[i])) dfs(s, local, nodes);
      return local;
    };
    if (opt_.jobs <= 1) {
      for (std::size_t i = 0; i < options.size(); ++i) {
        auto r = child(i);
        out.insert(out.end(), r.begin(), r.end());
      }
    } else {
      // waves of `jobs` threads
      for (std::size_t i = 0; i < options.size(); i += opt_.jobs) {
        std::vector<std::future<std::vector<std::vector<std::size_t>>>> wave;
        for (std::size_t j = i; j < std::min(options.size(), i + opt_.jobs); ++j)
          wave.push_back(std::async(std::launch::async, child, j));
        for (auto& f : wave) {
          auto r = f.get();
          out.insert(out.end(), r.begin(), r.end());
        }
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  struct State {
    std::vector<std::uint8_t> pair_cov;
    std::vector<std::uint8_t> deg;
    std::vector<std::size_t> chosen;
    CandSet allowed;
    State(std::size_t v, std::size_t m) : pair_cov(v * v, 0), deg(v, 0), allowed(m) {}
  };

  struct Branch {
    bool on_pair;
    std::size_t x, y;
  };

  std::optional<Branch> next_branch(const State& s) const {
    for (std::size_t x = 0; x < v_; ++x)
      for (std::size_t y = x + 1; y < v_; ++y)
        if (s.pair_cov[x * v_ + y] < p_.lambda) return Branch{true, x, y};
    for (std::size_t x = 0; x < v_; ++x)
      if (s.deg[x] < p_.k) return Branch{false, x, 0};
    return std::nullopt;
  }

  std::vector<std::size_t> branch_options(const State& s, const Branch& b) const {
    CandSet c = s.allowed;
    c.and_with(b.on_pair ? with_pair_[b.x * v_ + b.y] : with_point_[b.x]);
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < cands_.size(); ++i)
      if (c.test(i)) out.push_back(i);
    return out;
  }

  bool add(State& s, std::size_t i) const {
    const std::uint64_t b = cands_[i];
    for (std::size_t x = 0; x < v_; ++x) {
      if (!((b >> x) & 1u)) continue;
      if (++s.deg[x] > p_.k) return false;
      for (std::size_t y = x + 1; y < v_; ++y)
        if (((b >> y) & 1u) && ++s.pair_cov[x * v_ + y] > p_.lambda) return false;
    }
    s.chosen.push_back(i);
    s.allowed.and_with(compat_[i]);
    return s.chosen.size() <= v_;
  }

  void finish(const State& s, std::vector<std::vector<std::size_t>>& out) const {
    if (s.chosen.size() != v_) return;
    auto sol = s.chosen;
    std::sort(sol.begin(), sol.end());
    out.push_back(std::move(sol));
  }

  void check_budget(std::uint64_t nodes) const {
    if (opt_.node_budget && nodes > opt_.node_budget)
      throw Error(ErrorKind::resource_limit, "design search exceeded its node budget");
    if (deadline_ && (nodes & 1023) == 0 && std::chrono::steady_clock::now() > *deadline_)
      throw Error(ErrorKind::resource_limit, "design search exceeded its time budget");
  }

  void dfs(const State& s, std::vector<std::vector<std::size_t>>& out, std::uint64_t& nodes) const {
    check_budget(++nodes);
    auto branch = next_branch(s);
    if (!branch) {
      finish(s, out);
      return;
    }
    if (s.chosen.size() == v_) return;
    auto options = branch_options(s, *branch);
    std::size_t need = branch->on_pair ? p_.lambda - s.pair_cov[branch->x * v_ + branch->y] : p_.k - s.deg[branch->x];
    if (options.size() < need) return;
    for (std::size_t i = 0; i < options.size(); ++i) {
      State t = s;
      for (std::size_t j = 0; j < i; ++j) t.allowed.reset(options[j]);
      if (add(t, options[i])) dfs(t, out, nodes);
    }
  }

  std::size_t v_;
  DesignParams p_;
  std::vector<std::uint64_t> cands_;
  SearchOptions opt_;
  std::vector<CandSet> compat_;
  std::vector<CandSet> with_pair_;
  std::vector<CandSet> with_point_;
  std::optional<std::chrono::steady_clock::time_point> deadline_;
};

inline std::uint64_t mask_of(const ElementSet& s) {
  std::uint64_t m = 0;
  for (auto x : s) m |= std::uint64_t{1} << x;
  return m;
}

}  // namespace detail

/// Every set of v difference sets of g forming a (v,k,lambda) design. Designs
/// are returned as lexicographically sorted block lists, in sorted order.
inline std::vector<BlockList> find_ds_block_designs(const FiniteGroup& g, const DesignParams& p,
                                                    const SearchOptions& opt = {},
                                                    const std::vector<DifferenceSet>* candidates = nullptr) {
  if (g.order() != p.v) throw Error(ErrorKind::invalid_params, "group order differs from v");
  if (p.v > 64) throw Error(ErrorKind::resource_limit, "design search supports v <= 64");
  std::vector<DifferenceSet> local;
  if (!candidates) {
    local = enumerate_difference_sets(g, p.k, p.lambda);
    candidates = &local;
  }
  std::vector<std::uint64_t> masks;
  for (const auto& d : *candidates) masks.push_back(detail::mask_of(d.elements()));
  std::vector<BlockList> out;
  if (masks.empty()) return out;
  for (const auto& sol : detail::BlockSearch(p.v, p, masks, opt).run()) {
    BlockList bl;
    for (auto i : sol) bl.push_back((*candidates)[i].elements());
    std::sort(bl.begin(), bl.end());
    if (!verify_design(from_blocks(p.v, bl), p))
      throw Error(ErrorKind::construction_bug, "search produced an invalid design");
    out.push_back(std::move(bl));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool is_development(const FiniteGroup& g, const BlockList& blocks) {
  BlockList dev;
  for (Element a = 0; a < g.order(); ++a) dev.push_back(left_translate(g, a, blocks.front()));
  std::sort(dev.begin(), dev.end());
  return dev == blocks;
}

/// The 3-cube (or n-cube) of a block list, in the given (sorted) order.
inline Cube group_cube_of(const FiniteGroup& g, const BlockList& blocks, std::size_t lambda, std::size_t n = 3) {
  std::vector<DifferenceSet> ds;
  for (const auto& b : blocks) ds.emplace_back(g, b, lambda);
  return group_cube(g, ds, n);
}

/// Orbit representatives of block lists under B -> a phi(B) b (phi in Aut(G),
/// a, b in G), all of which give isotopic group cubes. Representatives are the
/// first listed member of each orbit.
inline std::vector<std::size_t> design_orbit_representatives(const FiniteGroup& g, const std::vector<BlockList>& designs,
                                                             const std::vector<GroupMap>& aut_gens) {
  std::map<BlockList, std::size_t> index;
  for (std::size_t i = 0; i < designs.size(); ++i) index.emplace(designs[i], i);
  std::vector<std::size_t> parent(designs.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto image = [&](const BlockList& bl, auto&& f) {
    BlockList r;
    for (const auto& b : bl) {
      ElementSet s;
      for (auto x : b) s.push_back(f(x));
      std::sort(s.begin(), s.end());
      r.push_back(std::move(s));
    }
    std::sort(r.begin(), r.end());
    return r;
  };
  const auto gens = g.generating_sequence();
  for (std::size_t i = 0; i < designs.size(); ++i) {
    std::vector<BlockList> imgs;
    for (const auto& phi : aut_gens) imgs.push_back(image(designs[i], [&](Element x) { return phi(x); }));
    for (auto a : gens) {
      imgs.push_back(image(designs[i], [&](Element x) { return g.mul(a, x); }));
      imgs.push_back(image(designs[i], [&](Element x) { return g.mul(x, a); }));
    }
    for (const auto& im : imgs) {
      auto it = index.find(im);
      if (it == index.end()) throw Error(ErrorKind::construction_bug, "design set not closed under the group action");
      auto a = find(i), b = find(it->second);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < designs.size(); ++i)
    if (find(i) == i) reps.push_back(i);
  return reps;
}

/// A small generating set of Aut(G) taken from the full list.
inline std::vector<GroupMap> automorphism_generators(const FiniteGroup& g, const std::vector<GroupMap>& aut) {
  std::vector<GroupMap> gens;
  std::set<GroupMap> closure{GroupMap::identity(g.order())};
  for (const auto& a : aut) {
    if (closure.count(a)) continue;
    gens.push_back(a);
    std::vector<GroupMap> frontier(closure.begin(), closure.end());
    while (!frontier.empty()) {
      std::vector<GroupMap> next;
      for (const auto& x : frontier)
        for (const auto& s : gens) {
          auto y = s * x;
          if (closure.insert(y).second) next.push_back(y);
        }
      frontier = std::move(next);
    }
  }
  return gens;
}

struct GroupClassification {
  std::string id, structure;
  std::size_t nds = 0;                        // difference sets up to equivalence
  std::size_t ndc = 0;                        // inequivalent difference cubes from this group
  std::vector<std::string> dev_classes;       // design classes of the developments, sorted
  std::size_t tds = 0;                        // all difference sets
  std::vector<std::size_t> orbit_sizes;       // per equivalence class of difference sets
  std::size_t designs = 0;                    // designs with difference-set blocks
  std::size_t ngc = 0;                        // inequivalent non-difference group cubes
  std::vector<Certificate> difference_cubes;  // uncolored certificates, sorted
  std::vector<Certificate> group_cubes;       // all group-cube certificates, sorted
  std::vector<Certificate> non_difference;    // group cubes not paratopic to a difference cube
  std::vector<Cube> non_difference_cubes;     // one representative per entry of non_difference

  /// One-line JSON record.
  std::string json(const std::string& cert_path = {}) const {
    std::string s = "{\"id\":\"" + id + "\",\"structure\":\"" + structure + "\",\"nds\":" + std::to_string(nds) +
                    ",\"ndc\":" + std::to_string(ndc) + ",\"dev_classes\":[";
    for (std::size_t i = 0; i < dev_classes.size(); ++i) s += (i ? ",\"" : "\"") + dev_classes[i] + "\"";
    s += "],\"tds\":" + std::to_string(tds) + ",\"orbit_sizes\":[";
    for (std::size_t i = 0; i < orbit_sizes.size(); ++i) s += (i ? "," : "") + std::to_string(orbit_sizes[i]);
    s += "],\"ngc\":" + std::to_string(ngc);
    if (!cert_path.empty()) s += ",\"certificates\":\"" + cert_path + "\"";
    return s + "}";
  }
};

/// Difference-cube data of one group: class representatives and the
/// certificates of their 3-cubes.
struct DifferenceCubeData {
  std::vector<DifferenceSet> reps;
  std::vector<std::size_t> orbit_sizes;
  std::size_t total = 0;
  std::vector<Certificate> certificates;  // sorted, distinct
  std::vector<std::string> dev_classes;
};

inline DifferenceCubeData difference_cube_data(const FiniteGroup& g, const DesignParams& p,
                                               const std::vector<DifferenceSet>& all,
                                               const std::vector<GroupMap>& aut, std::size_t n = 3) {
  DifferenceCubeData d;
  d.total = all.size();
  std::set<ElementSet> seen;
  for (const auto& ds : all) {
    if (seen.count(ds.elements())) continue;
    d.reps.push_back(ds);
    std::size_t before = seen.size();
    for (const auto& phi : aut)
      for (Element a = 0; a < g.order(); ++a) seen.insert(translate_image(g, ds.elements(), phi, a));
    d.orbit_sizes.push_back(seen.size() - before);
  }
  std::set<Certificate> certs;
  std::set<std::string> classes;
  for (const auto& r : d.reps) {
    certs.insert(canonical_certificate(difference_cube(g, r, n), CertificateMode::uncolored));
    classes.insert(design_class(development(g, r), &DesignCatalog::standard()).display());
  }
  d.certificates.assign(certs.begin(), certs.end());
  d.dev_classes.assign(classes.begin(), classes.end());
  (void)p;
  return d;
}

/// Counts for one group in the schema (Nds, Ndc, dev classes, Tds, Ngc).
/// `all_difference_cubes` must hold the difference-cube certificates of every
/// group of order v; cubes paratopic to one of them count as difference cubes.
inline GroupClassification classify_group_cubes(const FiniteGroup& g, const DesignParams& p,
                                                const std::vector<Certificate>& all_difference_cubes,
                                                const SearchOptions& opt = {}, std::size_t n = 3) {
  GroupClassification r;
  r.structure = g.name();
  auto all = enumerate_difference_sets(g, p.k, p.lambda);
  auto aut = automorphism_group(g);
  auto dcd = difference_cube_data(g, p, all, aut, n);
  r.nds = dcd.reps.size();
  r.tds = dcd.total;
  r.orbit_sizes = dcd.orbit_sizes;
  r.ndc = dcd.certificates.size();
  r.dev_classes = dcd.dev_classes;
  r.difference_cubes = dcd.certificates;
  if (all.empty()) return r;
  auto designs = find_ds_block_designs(g, p, opt, &all);
  r.designs = designs.size();
  auto reps = design_orbit_representatives(g, designs, automorphism_generators(g, aut));
  std::map<Certificate, Cube> certs;
  for (auto i : reps) {
    auto c = group_cube_of(g, designs[i], p.lambda, n);
    certs.emplace(canonical_certificate(c, CertificateMode::uncolored), std::move(c));
  }
  std::set<Certificate> diff(all_difference_cubes.begin(), all_difference_cubes.end());
  for (auto& [cert, c] : certs) {
    r.group_cubes.push_back(cert);
    if (diff.count(cert)) continue;
    r.non_difference.push_back(cert);
    r.non_difference_cubes.push_back(std::move(c));
  }
  r.ngc = r.non_difference.size();
  return r;
}

// ---------------------------------------------------------------------------
// Cubes from orbits of a permutation group

/// Generators act on n*v symbols 0..n*v-1 (class t is t*v..t*v+v-1) and must
/// fix every class setwise; base blocks pick one symbol per class.
struct OrbitCubeInput {
  std::size_t v = 0;
  std::size_t n = 3;
  std::vector<Perm> generators;
  std::vector<std::vector<std::uint32_t>> base_blocks;
};

struct OrbitCubeResult {
  Cube cube;
  BigInt group_order;
  std::size_t blocks = 0;
};

inline OrbitCubeResult orbit_cube(const OrbitCubeInput& in) {
  const std::size_t v = in.v, n = in.n, deg = n * v;
  if (v < 2 || n < 2) throw Error(ErrorKind::invalid_input, "orbit cube needs v >= 2 and n >= 2");
  for (std::size_t gi = 0; gi < in.generators.size(); ++gi) {
    const auto& g = in.generators[gi];
    if (g.degree() != deg || !g.is_bijection())
      throw Error(ErrorKind::invalid_input, "generator " + std::to_string(gi + 1) + " is not a permutation of n*v symbols");
    for (std::uint32_t x = 0; x < deg; ++x)
      if (g(x) / v != x / v)
        throw Error(ErrorKind::invalid_input, "generator " + std::to_string(gi + 1) + " moves a point out of its class");
  }
  std::set<std::vector<std::uint32_t>> blocks;
  for (std::size_t bi = 0; bi < in.base_blocks.size(); ++bi) {
    auto b = in.base_blocks[bi];
    std::sort(b.begin(), b.end());
    if (b.size() != n) throw Error(ErrorKind::invalid_input, "base block " + std::to_string(bi + 1) + " has wrong size");
    for (std::size_t t = 0; t < n; ++t)
      if (b[t] / v != t)
        throw Error(ErrorKind::not_a_cube, "base block " + std::to_string(bi + 1) + " is not a transversal");
    if (!blocks.insert(b).second) continue;
    std::vector<std::vector<std::uint32_t>> frontier{b};
    while (!frontier.empty()) {
      std::vector<std::vector<std::uint32_t>> next;
      for (const auto& x : frontier)
        for (const auto& g : in.generators) {
          std::vector<std::uint32_t> y;
          for (auto p : x) y.push_back(g(p));
          std::sort(y.begin(), y.end());
          if (blocks.insert(y).second) next.push_back(std::move(y));
        }
      frontier = std::move(next);
    }
  }
  const std::size_t per_value = static_cast<std::size_t>(checked_power(v, n - 1));
  if (blocks.size() % per_value != 0)
    throw Error(ErrorKind::not_a_cube, "block count " + std::to_string(blocks.size()) + " is not a multiple of v^(n-1)");
  const std::size_t k = blocks.size() / per_value;
  if (v < 2 || (k * (k > 0 ? k - 1 : 0)) % (v - 1) != 0)
    throw Error(ErrorKind::not_a_cube, "block count gives no integral lambda");
  TransversalRep t{n, v, DesignParams{v, k, k * (k > 0 ? k - 1 : 0) / (v - 1)}, {}};
  for (const auto& b : blocks) t.blocks.insert(t.blocks.end(), b.begin(), b.end());
  if (auto bad = transversal_violation(t)) throw Error(ErrorKind::not_a_cube, *bad);
  return {from_transversal(t), PermGroup(deg, in.generators).order(), blocks.size()};
}

// ---------------------------------------------------------------------------
// Group-cube membership

struct GroupCubeVerdict {
  bool is_group_cube = false;
  bool decided_by_slices = false;  // rejected because no two directions are uniform in one class
  bool reference_complete = true;
  std::string warning;
};

/// A 3-dimensional group cube has two directions whose parallel slices all
/// lie in one design class. Failing that, the cube is not a group cube;
/// otherwise membership in `reference` (uncolored certificates) decides.
inline GroupCubeVerdict is_group_cube(const Cube& c, const std::vector<Certificate>& reference,
                                      bool reference_complete) {
  GroupCubeVerdict r;
  r.reference_complete = reference_complete;
  if (c.dimension() == 3) {
    auto inv = slice_invariant(c, nullptr);
    std::map<Certificate, std::size_t> uniform;
    for (const auto& cls : inv.classes)
      if (cls.front() == cls.back()) ++uniform[cls.front()];
    bool two = false;
    for (const auto& [cert, cnt] : uniform) two = two || cnt >= 2;
    if (!two) {
      r.decided_by_slices = true;
      return r;
    }
  }
  auto cert = canonical_certificate(c, CertificateMode::uncolored);
  r.is_group_cube = std::find(reference.begin(), reference.end(), cert) != reference.end();
  if (!r.is_group_cube && !reference_complete)
    r.warning = "reference list is not certified complete; a negative answer is not conclusive";
  return r;
}

}  // namespace symcube
