// symcube command-line driver. Exit status: 0 success or true, 1 false or
// negative, 2 error.

#include <symcube/catalog.hpp>
#include <symcube/cube.hpp>
#include <symcube/data.hpp>
#include <symcube/design.hpp>
#include <symcube/difference_set.hpp>
#include <symcube/equivalence.hpp>
#include <symcube/group.hpp>
#include <symcube/invariants.hpp>
#include <symcube/io.hpp>
#include <symcube/reproduce.hpp>
#include <symcube/search.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using namespace symcube;

namespace {

struct Globals {
  std::string out;
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
  double time_budget = 0;  // seconds, 0 = none

  std::optional<std::chrono::steady_clock::duration> budget() const {
    if (time_budget <= 0) return std::nullopt;
    return std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(time_budget));
  }
  SearchOptions search() const { return {jobs, budget(), 0}; }
  EquivalenceOptions equiv() const { return {budget()}; }
};

Globals G;

/// Writes to --out when given, otherwise to stdout.
void emit(const std::string& text) {
  if (G.out.empty()) {
    std::cout << text;
    return;
  }
  auto f = io::open_out(G.out);
  f << text;
}

template <class F>
std::string render(F&& f) {
  std::ostringstream o;
  f(o);
  return o.str();
}

std::vector<std::size_t> parse_indices(const std::string& s) {
  std::vector<std::size_t> r;
  std::string cur;
  for (char ch : s + ",") {
    if (ch == ',' || ch == ' ') {
      if (!cur.empty()) r.push_back(std::stoul(cur));
      cur.clear();
    } else if (std::isdigit(static_cast<unsigned char>(ch))) {
      cur.push_back(ch);
    } else {
      throw Error(ErrorKind::invalid_input, "bad index list '" + s + "'");
    }
  }
  return r;
}

std::string format_set(const ElementSet& s) {
  std::string r;
  for (std::size_t i = 0; i < s.size(); ++i) r += (i ? " " : "") + std::to_string(s[i]);
  return r;
}

std::string format_element(const ParatopyElement& e) {
  std::string r = "axes " + format_cycles(e.axis_perm);
  for (std::size_t t = 0; t < e.perms.size(); ++t) r += " | " + format_cycles(e.perms[t]);
  return r;
}

FiniteGroup load_group_arg(const std::string& s) {
  // a bundled id such as 16_05 is accepted in place of a path
  if (!std::filesystem::exists(s) && std::filesystem::exists(data_dir() / "groups" / (s + ".group")))
    return io::bundled_group(s).group;
  return io::load_group(s);
}

// ---------------------------------------------------------------------------
// group

int group_make(const std::string& kind, const std::vector<std::string>& args) {
  auto num = [&](std::size_t i) -> std::size_t {
    if (i >= args.size()) throw Error(ErrorKind::invalid_input, "group make " + kind + ": missing argument");
    return std::stoul(args[i]);
  };
  FiniteGroup g;
  if (kind == "cyclic") {
    g = make_cyclic(num(0));
  } else if (kind == "metacyclic") {
    g = make_metacyclic(num(0), num(1), num(2));
  } else if (kind == "product") {
    if (args.size() != 2) throw Error(ErrorKind::invalid_input, "group make product needs two group files");
    g = make_direct_product(load_group_arg(args[0]), load_group_arg(args[1]));
  } else if (kind == "perm") {
    // perm <degree> <cycles>...
    std::size_t deg = num(0);
    std::vector<Perm> gens;
    for (std::size_t i = 1; i < args.size(); ++i) gens.push_back(parse_cycles(args[i], deg));
    g = make_from_permutation_generators(gens);
  } else {
    throw Error(ErrorKind::invalid_input, "unknown group kind '" + kind + "' (cyclic, metacyclic, product, perm)");
  }
  emit(render([&](std::ostream& o) { io::write_group(o, g); }));
  return 0;
}

int group_validate(const std::string& file) {
  FiniteGroup g;
  try {
    g = load_group_arg(file);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::invalid_group && e.kind() != ErrorKind::invalid_order) throw;
    emit(std::string("invalid ") + e.what() + "\n");
    return 1;
  }
  emit(render([&](std::ostream& o) {
    o << "valid group " << g.name() << " order " << g.order() << " abelian " << repro::yes(g.is_abelian())
      << " automorphisms " << automorphism_group(g).size() << "\n";
  }));
  return 0;
}

// ---------------------------------------------------------------------------
// ds

int ds_enumerate(const std::string& gfile, std::size_t k, std::size_t lambda) {
  auto g = load_group_arg(gfile);
  auto all = enumerate_difference_sets(g, k, lambda);
  emit(render([&](std::ostream& o) {
    o << "difference sets " << to_string(DesignParams{g.order(), k, lambda}) << " count " << all.size() << "\n";
    for (const auto& d : all) o << format_set(d.elements()) << "\n";
  }));
  return all.empty() ? 1 : 0;
}

int ds_classes(const std::string& gfile, std::size_t k, std::size_t lambda) {
  auto g = load_group_arg(gfile);
  std::vector<std::size_t> sizes;
  auto reps = difference_sets_up_to_equivalence(g, k, lambda, &sizes);
  std::size_t total = 0;
  for (auto s : sizes) total += s;
  emit(render([&](std::ostream& o) {
    o << "classes " << reps.size() << " total " << total << "\n";
    for (std::size_t i = 0; i < reps.size(); ++i) o << format_set(reps[i].elements()) << " orbit " << sizes[i] << "\n";
  }));
  return reps.empty() ? 1 : 0;
}

int ds_multipliers(const std::string& gfile, const std::string& dsfile) {
  auto g = load_group_arg(gfile);
  auto d = io::load_difference_set(dsfile, g);
  auto ms = multipliers(g, d);
  emit(render([&](std::ostream& o) {
    o << "multipliers " << ms.size() << "\n";
    for (const auto& m : ms) {
      ElementSet img(m.map.images.begin(), m.map.images.end());
      o << "images " << format_set(img) << " translate " << m.translate << "\n";
    }
  }));
  return 0;
}

// ---------------------------------------------------------------------------
// design

int design_verify(const std::string& file) {
  auto d = io::load_design(file);
  bool ok = verify_design(d.matrix, d.params);
  emit(std::string(ok ? "valid" : "invalid") + " " + to_string(d.params) + "\n");
  return ok ? 0 : 1;
}

int design_class_cmd(const std::string& file) {
  auto d = io::load_design(file);
  if (!verify_design(d.matrix, d.params)) throw Error(ErrorKind::invalid_input, "not a " + to_string(d.params) + " design");
  auto dc = design_class(d.matrix, &DesignCatalog::standard());
  emit(render([&](std::ostream& o) {
    o << "class " << dc.display() << "\n";
    o << "automorphisms " << dc.aut_order << "\n";
    o << "sdp " << repro::yes(has_symmetric_difference_property(d.matrix)) << "\n";
    o << "certificate " << dc.certificate.hex() << "\n";
  }));
  return 0;
}

int design_switch(const std::string& file, const std::string& blocks, const std::string& points) {
  auto d = io::load_design(file);
  auto r = switch_blocks(d.matrix, parse_indices(blocks), parse_indices(points));
  if (!verify_design(r, d.params)) throw Error(ErrorKind::invalid_input, "switching does not give a design");
  emit(render([&](std::ostream& o) { io::write_design(o, r, d.params); }));
  return 0;
}

int design_quadruple(const std::string& file) {
  auto d = io::load_design(file);
  auto r = block_quadruple(d.matrix, d.params);
  emit(render([&](std::ostream& o) { io::write_design(o, r, menon_params(*menon_index(d.params) + 1)); }));
  return 0;
}

int design_catalog() {
  if (G.out.empty()) throw Error(ErrorKind::invalid_input, "design catalog needs --out <directory>");
  io::write_catalog(G.out, DesignCatalog::standard());
  for (const auto& e : DesignCatalog::standard().entries())
    std::cout << e.name << " " << to_string(e.params) << " automorphisms " << e.aut_order << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// cube

int cube_build_diff(const std::string& gfile, const std::string& dsfile, std::size_t n) {
  auto g = load_group_arg(gfile);
  auto d = io::load_difference_set(dsfile, g);
  auto c = difference_cube(g, d, n);
  emit(render([&](std::ostream& o) { io::write_cube(o, c); }));
  return 0;
}

/// Blocks as a `blocks` label file or as the columns of a design file.
std::vector<ElementSet> load_block_sets(const std::string& file, const FiniteGroup& g, std::size_t& lambda) {
  auto in = io::open_in(file);
  std::string first;
  std::getline(in, first);
  in.seekg(0);
  if (first.rfind("design", 0) == 0) {
    auto d = io::read_design(in, file);
    lambda = d.params.lambda;
    std::vector<ElementSet> r;
    for (std::size_t j = 0; j < d.params.v; ++j) r.push_back(block_points(d.matrix, j));
    return r;
  }
  auto r = io::read_labeled_blocks(in, g, file);
  const std::size_t v = g.order(), k = r.empty() ? 0 : r.front().size();
  if (v < 2 || (k * (k - 1)) % (v - 1) != 0) throw Error(ErrorKind::invalid_params, "block size gives no integral lambda");
  lambda = k * (k - 1) / (v - 1);
  return r;
}

int cube_build_group(const std::string& gfile, const std::string& bfile, std::size_t n) {
  auto g = load_group_arg(gfile);
  std::size_t lambda = 0;
  auto sets = load_block_sets(bfile, g, lambda);
  auto c = group_cube(g, as_difference_sets(g, sets, lambda), n);
  emit(render([&](std::ostream& o) { io::write_cube(o, c); }));
  return 0;
}

int cube_verify(const std::string& file) {
  auto c = io::load_cube(file);
  auto bad = transversal_violation(to_transversal(c));
  bool ok = verify_cube(c);
  if (ok != !bad.has_value()) throw Error(ErrorKind::construction_bug, "cube checks disagree");
  emit(ok ? "valid " + to_string(c.params()) + " n=" + std::to_string(c.dimension()) + "\n" : "invalid " + *bad + "\n");
  return ok ? 0 : 1;
}

int cube_invariant(const std::string& file, bool weak) {
  auto c = io::load_cube(file);
  if (!verify_cube(c)) throw Error(ErrorKind::not_a_cube, "input is not a cube of symmetric designs");
  emit((weak ? render_weak(weak_slice_invariant(c)) : slice_invariant(c).render()) + "\n");
  return 0;
}

int cube_hadamard(const std::string& file) {
  auto c = io::load_cube(file);
  auto h = check_hadamard(to_hadamard(c));
  emit(render([&](std::ostream& o) {
    o << "proper " << repro::yes(h.proper) << "\n";
    o << "totally_regular " << repro::yes(h.totally_regular) << "\n";
    o << "row_sum " << h.row_sum << "\n";
  }));
  return h.proper && h.totally_regular ? 0 : 1;
}

int cube_transversal(const std::string& file) {
  auto c = io::load_cube(file);
  emit(render([&](std::ostream& o) { io::write_transversal(o, to_transversal(c)); }));
  return 0;
}

int cube_certificate(const std::string& file, const std::string& mode) {
  auto c = io::load_cube(file);
  CertificateMode m;
  if (mode == "colored") m = CertificateMode::colored;
  else if (mode == "uncolored") m = CertificateMode::uncolored;
  else throw Error(ErrorKind::invalid_input, "mode must be colored or uncolored");
  auto cc = canonical_cube(c, m, G.equiv());
  emit(render([&](std::ostream& o) { io::write_certificate(o, cc.certificate); }));
  return 0;
}

int cube_scramble(const std::string& file, bool isotopy_only) {
  auto c = io::load_cube(file);
  std::mt19937_64 rng(G.seed);
  auto e = random_paratopy(c.dimension(), c.order(), rng, isotopy_only);
  emit(render([&](std::ostream& o) { io::write_cube(o, apply_paratopy(c, e)); }));
  return 0;
}

// ---------------------------------------------------------------------------
// equiv

int equiv_pair(const std::string& a, const std::string& b, bool para) {
  auto c1 = io::load_cube(a), c2 = io::load_cube(b);
  auto w = para ? paratopy_witness(c1, c2) : isotopy_witness(c1, c2);
  emit(render([&](std::ostream& o) {
    o << (para ? "paratopic " : "isotopic ") << repro::yes(w.has_value()) << "\n";
    if (w) o << "witness " << format_element(*w) << "\n";
  }));
  return w ? 0 : 1;
}

int equiv_group(const std::string& file, bool para) {
  auto c = io::load_cube(file);
  auto r = para ? autoparatopy_report(c, G.equiv()) : autotopy_report(c, G.equiv());
  emit(render([&](std::ostream& o) {
    o << "order " << r.order << "\n";
    o << "complete " << repro::yes(r.complete) << "\n";
    for (const auto& g : r.generators) o << "generator " << format_element(g) << "\n";
  }));
  return 0;
}

// ---------------------------------------------------------------------------
// search

int search_ds_designs(const std::string& gfile, std::size_t k, std::size_t lambda, bool list) {
  auto g = load_group_arg(gfile);
  DesignParams p{g.order(), k, lambda};
  auto designs = find_ds_block_designs(g, p, G.search());
  std::size_t dev = 0;
  for (const auto& d : designs) dev += is_development(g, d);
  emit(render([&](std::ostream& o) {
    o << "designs " << designs.size() << " developments " << dev << "\n";
    if (list)
      for (const auto& d : designs) {
        for (std::size_t i = 0; i < d.size(); ++i) o << (i ? " | " : "") << format_set(d[i]);
        o << "\n";
      }
  }));
  return designs.empty() ? 1 : 0;
}

int search_classify(std::size_t order, std::vector<std::string> ids) {
  auto s = repro::survey_order(order);
  if (ids.empty())
    for (const auto& g : s.groups) ids.push_back(g.bundled.id);
  for (auto& id : ids)
    if (id.find('_') == std::string::npos) id = std::to_string(order) + "_" + (id.size() < 2 ? "0" : "") + id;
  repro::Options opt{G.jobs, G.budget(), ids, {}};
  std::set<Certificate> global;
  for (const auto& r : repro::detail::classify_rows(s, ids, opt)) {
    std::string path;
    if (!G.out.empty()) {
      repro::detail::write_certs(G.out, r.id, r.non_difference);
      path = (std::filesystem::path(G.out) / (r.id + ".certs")).string();
    }
    std::cout << r.json(path) << "\n";
    global.insert(r.non_difference.begin(), r.non_difference.end());
  }
  std::cout << "{\"difference_cubes\":" << s.difference_cubes.size() << ",\"non_difference_group_cubes\":"
            << global.size() << "}\n";
  return 0;
}

int search_orbit_cube(const std::string& file) {
  auto r = orbit_cube(io::load_orbit_input(file));
  std::cout << "group order " << r.group_order << "\n";
  std::cout << "blocks " << r.blocks << "\n";
  std::cout << "params " << to_string(r.cube.params()) << " n=" << r.cube.dimension() << "\n";
  if (!G.out.empty()) {
    auto f = io::open_out(G.out);
    io::write_cube(f, r.cube);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// reproduce

int reproduce(const std::string& target, bool check, const std::vector<std::string>& ids) {
  const auto& t = repro::targets();
  auto it = t.find(target);
  if (it == t.end()) throw Error(ErrorKind::invalid_input, "unknown target '" + target + "'");
  repro::Options opt{G.jobs, G.budget(), ids, {}};
  std::string report = it->second(opt);
  emit(report);
  if (!check) return 0;
  auto in = io::open_in(data_path("expected/" + target + ".txt"));
  std::stringstream ss;
  ss << in.rdbuf();
  if (ss.str() == report) {
    std::cerr << "matches expected output\n";
    return 0;
  }
  std::istringstream a(report), b(ss.str());
  std::string la, lb;
  for (std::size_t line = 1;; ++line) {
    bool ga = static_cast<bool>(std::getline(a, la)), gb = static_cast<bool>(std::getline(b, lb));
    if (!ga && !gb) break;
    if (!ga || !gb || la != lb) {
      std::cerr << "differs from expected output at line " << line << "\n";
      break;
    }
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cubes of symmetric designs: construction, verification, classification"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--out", G.out, "write output to this file (or directory)");
  app.add_option("--seed", G.seed, "seed for randomized operations");
  app.add_option("--jobs", G.jobs, "worker threads for searches")->check(CLI::PositiveNumber);
  app.add_option("--time-budget", G.time_budget, "seconds allowed for heavy commands (0 = unlimited)");

  std::function<int()> run;
  std::string s1, s2, s3;
  std::vector<std::string> list;
  std::size_t k = 0, lambda = 0, n = 3, order = 16;
  bool flag = false;

  auto* group = app.add_subcommand("group", "finite groups")->require_subcommand(1);
  auto* gm = group->add_subcommand("make", "build a group: cyclic V | metacyclic M C R | product G H | perm DEG CYCLES...");
  gm->add_option("kind", s1)->required();
  gm->add_option("args", list);
  gm->callback([&] { run = [&] { return group_make(s1, list); }; });
  auto* gv = group->add_subcommand("validate", "check the group axioms of a group file");
  gv->add_option("group", s1)->required();
  gv->callback([&] { run = [&] { return group_validate(s1); }; });

  auto* ds = app.add_subcommand("ds", "difference sets")->require_subcommand(1);
  for (auto [name, help] : {std::pair{"enumerate", "all difference sets"}, std::pair{"classes", "classes under translation and automorphisms"}}) {
    auto* sc = ds->add_subcommand(name, help);
    sc->add_option("group", s1)->required();
    sc->add_option("k", k)->required();
    sc->add_option("lambda", lambda)->required();
    std::string nm = name;
    sc->callback([&, nm] { run = [&, nm] { return nm == "enumerate" ? ds_enumerate(s1, k, lambda) : ds_classes(s1, k, lambda); }; });
  }
  auto* dm = ds->add_subcommand("multipliers", "automorphisms mapping a difference set to a translate");
  dm->add_option("group", s1)->required();
  dm->add_option("ds", s2)->required();
  dm->callback([&] { run = [&] { return ds_multipliers(s1, s2); }; });

  auto* design = app.add_subcommand("design", "symmetric designs")->require_subcommand(1);
  auto* dv = design->add_subcommand("verify", "check A A^t = (k-lambda) I + lambda J");
  dv->add_option("design", s1)->required();
  dv->callback([&] { run = [&] { return design_verify(s1); }; });
  auto* dc = design->add_subcommand("class", "isomorphism class and automorphism group order");
  dc->add_option("design", s1)->required();
  dc->callback([&] { run = [&] { return design_class_cmd(s1); }; });
  auto* dsw = design->add_subcommand("switch", "complement a set of points inside a set of blocks");
  dsw->add_option("design", s1)->required();
  dsw->add_option("--blocks", s2, "0-based block indices")->required();
  dsw->add_option("--points", s3, "0-based point indices")->required();
  dsw->callback([&] { run = [&] { return design_switch(s1, s2, s3); }; });
  auto* dq = design->add_subcommand("quadruple", "4v-point design from a Menon-type design");
  dq->add_option("design", s1)->required();
  dq->callback([&] { run = [&] { return design_quadruple(s1); }; });
  auto* dcat = design->add_subcommand("catalog", "export the reference catalog to --out DIR");
  dcat->callback([&] { run = [&] { return design_catalog(); }; });

  auto* cube = app.add_subcommand("cube", "cubes of symmetric designs")->require_subcommand(1);
  auto* cbd = cube->add_subcommand("build-diff", "difference cube of a difference set");
  cbd->add_option("group", s1)->required();
  cbd->add_option("ds", s2)->required();
  cbd->add_option("-n,--dimension", n, "dimension")->check(CLI::Range(2, 8));
  cbd->callback([&] { run = [&] { return cube_build_diff(s1, s2, n); }; });
  auto* cbg = cube->add_subcommand("build-group", "group cube of a design whose blocks are difference sets");
  cbg->add_option("group", s1)->required();
  cbg->add_option("blocks", s2, "blocks file or design file")->required();
  cbg->add_option("-n,--dimension", n, "dimension")->check(CLI::Range(2, 8));
  cbg->callback([&] { run = [&] { return cube_build_group(s1, s2, n); }; });
  auto* cv = cube->add_subcommand("verify", "check every 2-dimensional slice");
  cv->add_option("cube", s1)->required();
  cv->callback([&] { run = [&] { return cube_verify(s1); }; });
  auto* ci = cube->add_subcommand("invariant", "slice invariant");
  ci->add_option("cube", s1)->required();
  ci->add_flag("--weak", flag, "automorphism orders in place of classes");
  ci->callback([&] { run = [&] { return cube_invariant(s1, flag); }; });
  auto* ch = cube->add_subcommand("hadamard", "check the +-1 array of a Menon-type cube");
  ch->add_option("cube", s1)->required();
  ch->callback([&] { run = [&] { return cube_hadamard(s1); }; });
  auto* ct = cube->add_subcommand("transversal", "export as a transversal design");
  ct->add_option("cube", s1)->required();
  ct->callback([&] { run = [&] { return cube_transversal(s1); }; });
  auto* cc = cube->add_subcommand("certificate", "canonical certificate");
  cc->add_option("cube", s1)->required();
  s2 = "uncolored";
  cc->add_option("--mode", s2, "colored (isotopy) or uncolored (paratopy)");
  cc->callback([&] { run = [&] { return cube_certificate(s1, s2); }; });
  auto* cs = cube->add_subcommand("scramble", "apply a random paratopy chosen by --seed");
  cs->add_option("cube", s1)->required();
  cs->add_flag("--isotopy", flag, "keep the axes in place");
  cs->callback([&] { run = [&] { return cube_scramble(s1, flag); }; });

  auto* eq = app.add_subcommand("equiv", "equivalence and automorphisms")->require_subcommand(1);
  for (auto [name, para] : {std::pair{"paratopic", true}, std::pair{"isotopic", false}}) {
    auto* sc = eq->add_subcommand(name, std::string("decide whether two cubes are ") + name);
    sc->add_option("a", s1)->required();
    sc->add_option("b", s2)->required();
    bool p = para;
    sc->callback([&, p] { run = [&, p] { return equiv_pair(s1, s2, p); }; });
  }
  for (auto [name, para] : {std::pair{"autotopy", false}, std::pair{"autoparatopy", true}}) {
    auto* sc = eq->add_subcommand(name, std::string(name) + " group of a cube");
    sc->add_option("cube", s1)->required();
    bool p = para;
    sc->callback([&, p] { run = [&, p] { return equiv_group(s1, p); }; });
  }

  auto* search = app.add_subcommand("search", "exhaustive searches")->require_subcommand(1);
  auto* sd = search->add_subcommand("ds-designs", "designs whose blocks are all difference sets");
  sd->add_option("group", s1)->required();
  sd->add_option("k", k)->required();
  sd->add_option("lambda", lambda)->required();
  sd->add_flag("--list", flag, "print every design");
  sd->callback([&] { run = [&] { return search_ds_designs(s1, k, lambda, flag); }; });
  auto* scl = search->add_subcommand("classify", "classify group cubes over bundled groups");
  scl->add_option("ids", list, "group ids (default: all of the order)");
  scl->add_option("--order", order, "group order: 16, 21 or 27");
  scl->callback([&] { run = [&] { return search_classify(order, list); }; });
  auto* so = search->add_subcommand("orbit-cube", "cube from orbits of a permutation group");
  so->add_option("input", s1)->required();
  so->callback([&] { run = [&] { return search_orbit_cube(s1); }; });

  auto* rep = app.add_subcommand("reproduce", "run a reproduction target");
  rep->add_option("target", s1, "fano small-unique pg21 table1 prop51 menon-family hadamard16 example52 diffcubes27")
      ->required();
  rep->add_flag("--check", flag, "compare with the bundled expected output");
  rep->add_option("--groups", list, "table1: group ids");
  rep->callback([&] { run = [&] { return reproduce(s1, flag, list); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  try {
    return run();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return 2;
}
