#pragma once

// Reproduction targets. Each returns a deterministic text report: sorted,
// no timings, no host information.

#include <symcube/catalog.hpp>
#include <symcube/cube.hpp>
#include <symcube/data.hpp>
#include <symcube/design.hpp>
#include <symcube/equivalence.hpp>
#include <symcube/invariants.hpp>
#include <symcube/io.hpp>
#include <symcube/search.hpp>

#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace symcube::repro {

struct Options {
  std::size_t jobs = 1;
  std::optional<std::chrono::steady_clock::duration> time_budget;
  std::vector<std::string> group_ids;  // table1: rows to run; empty = default rows
  std::filesystem::path cert_dir;      // table1/prop51: certificate lists, if set
};

inline const char* yes(bool b) { return b ? "yes" : "no"; }

/// Parameters used for the bundled groups of each order.
inline DesignParams standard_params(std::size_t order) {
  switch (order) {
    case 16: return {16, 6, 2};
    case 21: return {21, 5, 1};
    case 27: return {27, 13, 6};
    default: throw Error(ErrorKind::invalid_params, "no standard parameters for order " + std::to_string(order));
  }
}

// ---------------------------------------------------------------------------
// Bundled objects

inline IncidenceMatrix shift_rows_up(const IncidenceMatrix& a) {
  const std::size_t v = a.size();
  IncidenceMatrix r(v);
  for (std::size_t i = 0; i < v; ++i)
    for (std::size_t j = 0; j < v; ++j) r.set(i, j, a.get((i + 1) % v, j));
  return r;
}

/// Layers A_1..A_v, each the upward row shift of the previous one.
inline std::vector<IncidenceMatrix> fano_layers() {
  auto a = io::load_design(data_path("fano_A1.design"));
  std::vector<IncidenceMatrix> layers{a.matrix};
  while (layers.size() < a.params.v) layers.push_back(shift_rows_up(layers.back()));
  return layers;
}

inline Cube fano_cube() { return stack_layers(fano_layers(), DesignParams{7, 3, 1}); }

/// F21 with elements labeled a^i b^j.
inline FiniteGroup f21_labeled() { return make_metacyclic(3, 7, 2); }

/// The bundled 21-block design over F21 whose blocks are difference sets.
inline BlockList f21_nondev_blocks(const FiniteGroup& g) {
  auto in = io::open_in(data_path("f21_nondev.blocks"));
  auto b = io::read_labeled_blocks(in, g, "f21_nondev.blocks");
  std::sort(b.begin(), b.end());
  return b;
}

inline OrbitCubeResult orbit384() { return orbit_cube(io::load_orbit_input(data_path("orbit384.orbit"))); }

// ---------------------------------------------------------------------------
// Difference cubes over all bundled groups of one order

struct GroupSurvey {
  io::BundledGroup bundled;
  DifferenceCubeData data;
};

struct OrderSurvey {
  DesignParams params;
  std::vector<GroupSurvey> groups;
  std::map<Certificate, Cube> difference_cubes;            // distinct, with a representative
  std::map<Certificate, std::vector<std::string>> origin;  // group ids giving each cube

  std::vector<Certificate> certificates() const {
    std::vector<Certificate> r;
    for (const auto& [c, cube] : difference_cubes) r.push_back(c);
    return r;
  }
};

inline OrderSurvey survey_order(std::size_t order) {
  OrderSurvey s;
  s.params = standard_params(order);
  for (auto& bg : io::bundled_groups(order)) {
    const auto& g = bg.group;
    auto all = enumerate_difference_sets(g, s.params.k, s.params.lambda);
    auto data = difference_cube_data(g, s.params, all, automorphism_group(g));
    for (const auto& r : data.reps) {
      auto c = difference_cube(g, r, 3);
      auto cert = canonical_certificate(c, CertificateMode::uncolored);
      s.difference_cubes.emplace(cert, std::move(c));
      auto& o = s.origin[cert];
      if (o.empty() || o.back() != bg.id) o.push_back(bg.id);
    }
    s.groups.push_back({std::move(bg), std::move(data)});
  }
  return s;
}

inline std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string r;
  for (std::size_t i = 0; i < v.size(); ++i) r += (i ? sep : "") + v[i];
  return r;
}

// ---------------------------------------------------------------------------
// Targets

inline std::string fano(const Options& = {}) {
  std::ostringstream o;
  auto layers = fano_layers();
  auto c = stack_layers(layers, DesignParams{7, 3, 1});
  bool rows = true, cols = true;
  for (std::uint32_t j = 0; j < 7; ++j) {
    // fixing a row (or column) index j gives A_j with rows indexed by layer
    auto r = slice(c, SliceSpec{1, 2, {j}}).transpose();
    auto s = slice(c, SliceSpec{0, 2, {j}}).transpose();
    rows = rows && r == layers[j];
    cols = cols && s == layers[j];
  }
  o << "target fano\n";
  o << "design (7,3,1) from fano_A1.design\n";
  o << "layers " << layers.size() << " by upward cyclic row shifts\n";
  for (std::size_t l = 0; l < layers.size(); ++l) o << "layer " << l + 1 << " valid " << yes(verify_design(layers[l], {7, 3, 1})) << "\n";
  o << "verify_cube " << yes(verify_cube(c)) << "\n";
  o << "totally_symmetric " << yes(is_totally_symmetric(c)) << "\n";
  o << "fixed row j gives A_j " << yes(rows) << "\n";
  o << "fixed column j gives A_j " << yes(cols) << "\n";
  o << "autotopy order " << autotopy_report(c).order << "\n";
  o << "autoparatopy order " << autoparatopy_report(c).order << "\n";
  o << "invariant " << slice_invariant(c).render() << "\n";
  io::write_cube(o, c);
  return o.str();
}

inline std::string small_unique(const Options& opt = {}) {
  std::ostringstream o;
  o << "target small-unique\n";
  const std::vector<std::pair<DesignParams, ElementSet>> cases = {
      {{7, 3, 1}, {1, 2, 4}}, {{11, 5, 2}, {1, 3, 4, 5, 9}}, {{13, 4, 1}, {0, 1, 3, 9}}, {{15, 7, 3}, {0, 1, 2, 4, 5, 8, 10}}};
  SearchOptions so{opt.jobs, opt.time_budget, 0};
  for (const auto& [p, base] : cases) {
    auto g = make_cyclic(p.v);
    auto all = enumerate_difference_sets(g, p.k, p.lambda);
    auto designs = find_ds_block_designs(g, p, so, &all);
    std::size_t dev = 0;
    std::set<Certificate> cubes;
    for (const auto& d : designs) {
      dev += is_development(g, d);
      cubes.insert(canonical_certificate(group_cube_of(g, d, p.lambda), CertificateMode::uncolored));
    }
    auto dc = difference_cube(g, DifferenceSet(g, base, p.lambda), 3);
    auto dcert = canonical_certificate(dc, CertificateMode::uncolored);
    o << to_string(p) << " group Z" << p.v << " difference sets " << all.size() << " designs " << designs.size()
      << " developments " << dev << " group cube classes " << cubes.size() << " paratopic to difference cube "
      << yes(cubes.size() == 1 && *cubes.begin() == dcert) << " autotopy order " << autotopy_report(dc).order << "\n";
  }
  return o.str();
}

inline std::string pg21(const Options& opt = {}) {
  std::ostringstream o;
  o << "target pg21\n";
  const DesignParams p{21, 5, 1};
  auto survey = survey_order(21);
  SearchOptions so{opt.jobs, opt.time_budget, 0};
  struct ClassInfo {
    Cube cube;
    std::set<std::string> groups;
  };
  std::map<Certificate, ClassInfo> classes;
  for (const auto& gs : survey.groups) {
    const auto& g = gs.bundled.group;
    auto all = enumerate_difference_sets(g, p.k, p.lambda);
    auto designs = find_ds_block_designs(g, p, so, &all);
    std::size_t dev = 0;
    for (const auto& d : designs) dev += is_development(g, d);
    o << "group " << gs.bundled.id << " " << g.name() << " nds " << gs.data.reps.size() << " tds " << gs.data.total
      << " designs " << designs.size() << " developments " << dev << "\n";
    for (auto i : design_orbit_representatives(g, designs, automorphism_generators(g, automorphism_group(g)))) {
      auto c = group_cube_of(g, designs[i], p.lambda);
      auto cert = canonical_certificate(c, CertificateMode::uncolored);
      auto it = classes.emplace(cert, ClassInfo{std::move(c), {}}).first;
      it->second.groups.insert(g.name());
    }
  }
  o << "group cube classes " << classes.size() << "\n";
  o << "difference cube classes " << survey.difference_cubes.size() << "\n";
  struct Row {
    BigInt atop, apar;
    std::string line;
  };
  std::vector<Row> rows;
  for (const auto& [cert, info] : classes) {
    Row r{autotopy_report(info.cube).order, autoparatopy_report(info.cube).order, {}};
    std::vector<std::string> gr(info.groups.begin(), info.groups.end());
    std::vector<std::string> dgr;
    if (auto it = survey.origin.find(cert); it != survey.origin.end())
      for (const auto& id : it->second)
        for (const auto& gs : survey.groups)
          if (gs.bundled.id == id) dgr.push_back(gs.bundled.group.name());
    r.line = "class autotopy " + r.atop.str() + " autoparatopy " + r.apar.str() + " difference cube " +
             (dgr.empty() ? std::string("no") : "over " + join(dgr, ",")) + " group cube over " + join(gr, ",") +
             " invariant " + slice_invariant(info.cube).render();
    rows.push_back(std::move(r));
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.atop > b.atop; });
  for (const auto& r : rows) o << r.line << "\n";
  auto g = f21_labeled();
  auto blocks = f21_nondev_blocks(g);
  auto c3 = group_cube_of(g, blocks, p.lambda);
  std::vector<Certificate> ref;
  for (const auto& [cert, info] : classes) ref.push_back(cert);
  auto verdict = is_group_cube(c3, ref, true);
  o << "bundled design f21_nondev: valid " << yes(verify_design(from_blocks(21, blocks), p)) << " development "
    << yes(is_development(g, blocks)) << "\n";
  o << "its cube: autotopy " << autotopy_report(c3).order << " difference cube "
    << yes(survey.difference_cubes.count(canonical_certificate(c3, CertificateMode::uncolored)) > 0)
    << " group cube " << yes(verdict.is_group_cube) << "\n";
  return o.str();
}

namespace detail {
inline void write_certs(const std::filesystem::path& dir, const std::string& id, const std::vector<Certificate>& certs) {
  std::filesystem::create_directories(dir);
  auto f = io::open_out(dir / (id + ".certs"));
  for (const auto& c : certs) f << c.hex() << "\n";
}

inline std::vector<GroupClassification> classify_rows(const OrderSurvey& s, const std::vector<std::string>& ids,
                                                      const Options& opt) {
  std::vector<GroupClassification> out;
  auto ref = s.certificates();
  SearchOptions so{opt.jobs, opt.time_budget, 0};
  for (const auto& id : ids) {
    const GroupSurvey* gs = nullptr;
    for (const auto& x : s.groups)
      if (x.bundled.id == id) gs = &x;
    if (!gs) throw Error(ErrorKind::invalid_input, "no bundled group " + id);
    auto r = classify_group_cubes(gs->bundled.group, s.params, ref, so);
    r.id = id;
    out.push_back(std::move(r));
  }
  return out;
}

inline std::string table_row(const GroupClassification& r, const std::string& cert_path) {
  std::ostringstream o;
  o << r.json(cert_path);
  return o.str();
}
}  // namespace detail

inline std::string table1(const Options& opt = {}) {
  std::ostringstream o;
  o << "target table1\n";
  auto s = survey_order(16);
  std::vector<std::string> ids = opt.group_ids;
  if (ids.empty()) ids = {"16_01", "16_07", "16_14", "16_05", "16_06"};
  o << "difference cube reference " << s.difference_cubes.size() << "\n";
  for (const auto& r : detail::classify_rows(s, ids, opt)) {
    std::string path;
    if (!opt.cert_dir.empty()) {
      detail::write_certs(opt.cert_dir, r.id, r.non_difference);
      path = (opt.cert_dir / (r.id + ".certs")).string();
    }
    o << detail::table_row(r, path) << "\n";
  }
  return o.str();
}

inline std::string prop51(const Options& opt = {}) {
  std::ostringstream o;
  o << "target prop51\n";
  auto s = survey_order(16);
  std::vector<std::string> ids;
  for (const auto& g : s.groups) ids.push_back(g.bundled.id);
  std::map<Certificate, std::vector<std::string>> where;
  std::size_t sum = 0;
  for (const auto& r : detail::classify_rows(s, ids, opt)) {
    std::string path;
    if (!opt.cert_dir.empty()) {
      detail::write_certs(opt.cert_dir, r.id, r.non_difference);
      path = (opt.cert_dir / (r.id + ".certs")).string();
    }
    o << detail::table_row(r, path) << "\n";
    sum += r.ngc;
    for (const auto& c : r.non_difference) where[c].push_back(r.id);
  }
  std::size_t shared = 0;
  for (const auto& [c, ids2] : where) shared += ids2.size() > 1;
  o << "difference cubes " << s.difference_cubes.size() << "\n";
  o << "non-difference group cubes " << where.size() << "\n";
  o << "sum of per-group counts " << sum << "\n";
  o << "cubes arising in more than one group " << shared << "\n";
  return o.str();
}

inline std::string diffcubes27(const Options& = {}) {
  std::ostringstream o;
  o << "target diffcubes27\n";
  auto s = survey_order(16);
  for (const auto& gs : s.groups) {
    std::set<Certificate> mine;
    for (const auto& [c, ids] : s.origin)
      if (std::find(ids.begin(), ids.end(), gs.bundled.id) != ids.end()) mine.insert(c);
    o << gs.bundled.id << " " << gs.bundled.group.name() << " nds " << gs.data.reps.size() << " ndc " << mine.size()
      << "\n";
  }
  o << "distinct difference cubes " << s.difference_cubes.size() << "\n";
  for (const auto& [c, ids] : s.origin) o << c.short_hex() << " " << join(ids, ",") << "\n";
  return o.str();
}

inline std::string menon_family(const Options& = {}) {
  std::ostringstream o;
  o << "target menon-family\n";
  auto klein = make_klein();
  DifferenceSet base(klein, {0}, 0);
  auto m2 = mann_product(klein, base, klein, base);
  auto m3 = mann_product(m2.group, m2.set, klein, base);
  auto& cat = DesignCatalog::standard();
  for (const auto* gd : {&m2, &m3}) {
    const auto& p = gd->set.params();
    auto dev = development(gd->group, gd->set);
    auto dc = design_class(dev, &cat);
    o << "mann product " << to_string(p) << " difference set " << yes(is_difference_set(gd->group, gd->set.elements(), p.lambda))
      << " development valid " << yes(verify_design(dev, p)) << " class " << dc.display() << " automorphisms "
      << dc.aut_order << "\n";
  }
  const DesignParams p16{16, 6, 2}, p64{64, 28, 12};
  auto d = biplane16_designs();
  std::vector<Certificate> quad;
  for (std::size_t i = 0; i < d.size(); ++i) {
    auto q = block_quadruple(d[i], p16);
    auto dc = design_class_uncached(q);
    quad.push_back(dc.certificate);
    o << "quadruple of D" << i + 1 << " valid " << yes(verify_design(q, p64)) << " automorphisms " << dc.aut_order << "\n";
  }
  auto dev64 = design_class_uncached(development(m3.group, m3.set)).certificate;
  o << "quadruple of D1 isomorphic to the m=3 development " << yes(quad[0] == dev64) << "\n";
  o << "quadruples of D2, D3 differ from that of D1 " << yes(quad[1] != quad[0] && quad[2] != quad[0]) << "\n";
  o << "quadruples of D2, D3 differ from each other " << yes(quad[1] != quad[2]) << "\n";
  return o.str();
}

inline std::string hadamard16(const Options& opt = {}) {
  std::ostringstream o;
  o << "target hadamard16\n";
  auto s = survey_order(16);
  std::vector<std::pair<std::string, Cube>> cubes;
  for (const auto& [c, cube] : s.difference_cubes) cubes.emplace_back("difference", cube);
  for (const auto& r : detail::classify_rows(s, {"16_14", "16_06"}, opt))
    for (const auto& c : r.non_difference_cubes) cubes.emplace_back("group " + r.id, c);
  cubes.emplace_back("orbit384", orbit384().cube);
  std::map<std::string, std::array<std::size_t, 3>> tally;  // cubes, proper, totally regular
  std::set<long> sums;
  for (const auto& [src, c] : cubes) {
    auto h = check_hadamard(to_hadamard(c));
    auto& t = tally[src];
    ++t[0];
    t[1] += h.proper;
    t[2] += h.totally_regular;
    sums.insert(h.row_sum);
  }
  for (const auto& [src, t] : tally)
    o << src << " cubes " << t[0] << " proper " << t[1] << " totally regular " << t[2] << "\n";
  o << "row sums";
  for (auto x : sums) o << " " << x;
  o << "\n";
  auto d = biplane16_designs();
  std::vector<Certificate> h;
  for (const auto& a : d) {
    auto m = hadamard_of_design(a);
    o << "H from D" << h.size() + 1 << " hadamard " << yes(is_hadamard(m)) << "\n";
    h.push_back(hadamard_certificate(m));
  }
  std::set<Certificate> distinct(h.begin(), h.end());
  o << "hadamard equivalence classes among H1, H2, H3: " << distinct.size() << "\n";
  return o.str();
}

inline std::string example52(const Options& = {}) {
  std::ostringstream o;
  o << "target example52\n";
  auto r = orbit384();
  o << "group order " << r.group_order << "\n";
  o << "blocks " << r.blocks << "\n";
  o << "params " << to_string(r.cube.params()) << "\n";
  o << "verify_cube " << yes(verify_cube(r.cube)) << "\n";
  o << "invariant " << slice_invariant(r.cube).render() << "\n";
  auto v = is_group_cube(r.cube, {}, false);
  o << "group cube " << yes(v.is_group_cube) << " decided by slices " << yes(v.decided_by_slices) << "\n";
  o << "autotopy order " << autotopy_report(r.cube).order << "\n";
  o << "autoparatopy order " << autoparatopy_report(r.cube).order << "\n";
  return o.str();
}

inline const std::map<std::string, std::function<std::string(const Options&)>>& targets() {
  static const std::map<std::string, std::function<std::string(const Options&)>> t = {
      {"fano", fano},           {"small-unique", small_unique}, {"pg21", pg21},
      {"table1", table1},       {"prop51", prop51},             {"menon-family", menon_family},
      {"hadamard16", hadamard16}, {"example52", example52},     {"diffcubes27", diffcubes27}};
  return t;
}

}  // namespace symcube::repro
