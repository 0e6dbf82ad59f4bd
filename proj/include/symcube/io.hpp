#pragma once

// Text formats for groups, difference sets, designs, cubes, transversal
// designs, certificates and orbit-cube inputs.

#include <symcube/catalog.hpp>
#include <symcube/certificate.hpp>
#include <symcube/cube.hpp>
#include <symcube/data.hpp>
#include <symcube/design.hpp>
#include <symcube/difference_set.hpp>
#include <symcube/equivalence.hpp>
#include <symcube/error.hpp>
#include <symcube/group.hpp>
#include <symcube/perm.hpp>
#include <symcube/search.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace symcube::io {

namespace detail {

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

/// Lines with their 1-based numbers; trailing whitespace removed.
struct Lines {
  std::vector<std::string> text;
  std::size_t pos = 0;
  std::string source;

  explicit Lines(std::istream& in, std::string src = "<input>") : source(std::move(src)) {
    std::string line;
    while (std::getline(in, line)) text.push_back(trim(line));
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(ErrorKind::parse_error, source + ":" + std::to_string(pos) + ": " + msg);
  }

  bool done() {
    return pos >= text.size();
  }

  /// Next line, skipping blanks unless `keep_blank`.
  std::string next(bool keep_blank = false) {
    while (pos < text.size()) {
      const std::string& s = text[pos++];
      if (keep_blank || !s.empty()) return s;
    }
    ++pos;
    fail("unexpected end of input");
  }

  bool at_end_ignoring_blanks() {
    while (pos < text.size() && text[pos].empty()) ++pos;
    return pos >= text.size();
  }
};

inline std::vector<std::string> words(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> w;
  std::string x;
  while (is >> x) w.push_back(x);
  return w;
}

inline std::size_t to_size(const Lines& l, const std::string& s) {
  std::size_t n = 0;
  if (s.empty()) l.fail("expected an integer");
  for (char c : s) {
    if (c < '0' || c > '9') l.fail("expected an integer, got '" + s + "'");
    n = n * 10 + static_cast<std::size_t>(c - '0');
  }
  return n;
}

/// Parses key=value words, e.g. "n=3".
inline std::map<std::string, std::size_t> keyed(const Lines& l, const std::vector<std::string>& w, std::size_t from) {
  std::map<std::string, std::size_t> m;
  for (std::size_t i = from; i < w.size(); ++i) {
    auto eq = w[i].find('=');
    if (eq == std::string::npos) l.fail("expected key=value, got '" + w[i] + "'");
    m[w[i].substr(0, eq)] = to_size(l, w[i].substr(eq + 1));
  }
  return m;
}

inline std::size_t need(const Lines& l, const std::map<std::string, std::size_t>& m, const std::string& key) {
  auto it = m.find(key);
  if (it == m.end()) l.fail("missing " + key + "=");
  return it->second;
}

inline BitMatrix read_rows(Lines& l, std::size_t v) {
  BitMatrix m(v);
  for (std::size_t i = 0; i < v; ++i) {
    std::string row = l.next();
    std::string bits;
    for (char c : row)
      if (c != ' ') bits.push_back(c);
    if (bits.size() != v) l.fail("expected " + std::to_string(v) + " entries");
    for (std::size_t j = 0; j < v; ++j) {
      if (bits[j] != '0' && bits[j] != '1') l.fail("entries must be 0 or 1");
      m.set(i, j, bits[j] == '1');
    }
  }
  return m;
}

}  // namespace detail

inline std::ifstream open_in(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw Error(ErrorKind::io_error, "cannot open " + p.string());
  return in;
}

inline std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream out(p);
  if (!out) throw Error(ErrorKind::io_error, "cannot write " + p.string());
  return out;
}

// ---------------------------------------------------------------------------
// Groups

inline FiniteGroup read_group(std::istream& in, const std::string& source = "<input>") {
  detail::Lines l(in, source);
  auto head = detail::words(l.next());
  if (head.size() != 4 || head[0] != "group" || head[2] != "order") l.fail("expected 'group <name> order <v>'");
  const std::string name = head[1];
  const std::size_t v = detail::to_size(l, head[3]);
  if (v == 0) throw Error(ErrorKind::invalid_order, "group of order 0");
  std::vector<std::string> labels;
  std::string line = l.next();
  if (line.rfind("labels", 0) == 0) {
    std::string rest = detail::trim(line.substr(6));
    std::stringstream ss(rest);
    std::string x;
    while (std::getline(ss, x, ',')) labels.push_back(detail::trim(x));
    if (labels.size() != v) l.fail("expected " + std::to_string(v) + " labels");
    line = l.next();
  }
  auto w = detail::words(line);
  if (w.size() == 1 && w[0] == "table") {
    std::vector<Element> t;
    for (std::size_t i = 0; i < v; ++i) {
      auto row = detail::words(l.next());
      if (row.size() != v) l.fail("table row must have " + std::to_string(v) + " entries");
      for (const auto& x : row) t.push_back(static_cast<Element>(detail::to_size(l, x)));
    }
    return FiniteGroup(v, std::move(t), std::move(labels), name);
  }
  if (w.size() == 2 && w[0] == "permgens") {
    const std::size_t deg = detail::to_size(l, w[1]);
    std::vector<Perm> gens;
    while (!l.at_end_ignoring_blanks()) {
      std::string g = l.next();
      try {
        gens.push_back(parse_cycles(g, deg));
      } catch (const Error& e) {
        l.fail(e.what());
      }
    }
    FiniteGroup g = make_from_permutation_generators(gens, 10000, name);
    if (g.order() != v)
      throw Error(ErrorKind::invalid_group, "generators give order " + std::to_string(g.order()) + ", header says " +
                                                std::to_string(v));
    if (!labels.empty()) g = FiniteGroup(v, g.table(), std::move(labels), name);
    return g;
  }
  l.fail("expected 'table' or 'permgens <degree>'");
}

inline FiniteGroup load_group(const std::filesystem::path& p) {
  auto in = open_in(p);
  return read_group(in, p.string());
}

inline void write_group(std::ostream& out, const FiniteGroup& g) {
  out << "group " << (g.name().empty() ? "G" : g.name()) << " order " << g.order() << "\n";
  if (!g.labels().empty()) {
    out << "labels ";
    for (std::size_t i = 0; i < g.order(); ++i) out << (i ? "," : "") << g.labels()[i];
    out << "\n";
  }
  out << "table\n";
  for (Element i = 0; i < g.order(); ++i) {
    for (Element j = 0; j < g.order(); ++j) out << (j ? " " : "") << g.mul(i, j);
    out << "\n";
  }
}

// ---------------------------------------------------------------------------
// Difference sets

struct DifferenceSetFile {
  DesignParams params;
  ElementSet elements;
};

inline DifferenceSetFile read_difference_set(std::istream& in, const std::string& source = "<input>") {
  detail::Lines l(in, source);
  auto head = detail::words(l.next());
  if (head.size() != 4 || head[0] != "ds") l.fail("expected 'ds <v> <k> <lambda>'");
  DifferenceSetFile f{{detail::to_size(l, head[1]), detail::to_size(l, head[2]), detail::to_size(l, head[3])}, {}};
  for (const auto& x : detail::words(l.next())) f.elements.push_back(static_cast<Element>(detail::to_size(l, x)));
  if (f.elements.size() != f.params.k) l.fail("expected " + std::to_string(f.params.k) + " elements");
  std::sort(f.elements.begin(), f.elements.end());
  return f;
}

inline DifferenceSet load_difference_set(const std::filesystem::path& p, const FiniteGroup& g) {
  auto in = open_in(p);
  auto f = read_difference_set(in, p.string());
  if (f.params.v != g.order()) throw Error(ErrorKind::dimension_mismatch, "difference set and group orders differ");
  return DifferenceSet(g, f.elements, f.params.lambda);
}

inline void write_difference_set(std::ostream& out, const DifferenceSet& d) {
  const auto& p = d.params();
  out << "ds " << p.v << " " << p.k << " " << p.lambda << "\n";
  for (std::size_t i = 0; i < d.elements().size(); ++i) out << (i ? " " : "") << d.elements()[i];
  out << "\n";
}

// ---------------------------------------------------------------------------
// Designs

struct DesignFile {
  DesignParams params;
  IncidenceMatrix matrix;
};

inline DesignFile read_design(std::istream& in, const std::string& source = "<input>") {
  detail::Lines l(in, source);
  auto head = detail::words(l.next());
  if (head.size() != 4 || head[0] != "design") l.fail("expected 'design <v> <k> <lambda>'");
  DesignParams p{detail::to_size(l, head[1]), detail::to_size(l, head[2]), detail::to_size(l, head[3])};
  return {p, detail::read_rows(l, p.v)};
}

inline DesignFile load_design(const std::filesystem::path& p) {
  auto in = open_in(p);
  return read_design(in, p.string());
}

inline void write_design(std::ostream& out, const IncidenceMatrix& a, const DesignParams& p) {
  out << "design " << p.v << " " << p.k << " " << p.lambda << "\n" << a.to_string();
}

// ---------------------------------------------------------------------------
// Cubes

inline Cube read_cube(std::istream& in, const std::string& source = "<input>") {
  detail::Lines l(in, source);
  auto head = detail::words(l.next());
  if (head.empty() || head[0] != "cube") l.fail("expected 'cube n=.. v=.. k=.. lambda=..'");
  auto kv = detail::keyed(l, head, 1);
  const std::size_t n = detail::need(l, kv, "n"), v = detail::need(l, kv, "v");
  Cube c(n, v, DesignParams{v, detail::need(l, kv, "k"), detail::need(l, kv, "lambda")});
  const std::uint64_t layers = checked_power(v, n - 2);
  std::uint64_t o = 0;
  for (std::uint64_t b = 0; b < layers; ++b) {
    auto m = detail::read_rows(l, v);
    for (std::size_t i = 0; i < v; ++i)
      for (std::size_t j = 0; j < v; ++j, ++o)
        if (m.get(i, j)) c.set_flat(o, true);
  }
  if (!l.at_end_ignoring_blanks()) l.fail("trailing content after the last layer");
  return c;
}

inline Cube load_cube(const std::filesystem::path& p) {
  auto in = open_in(p);
  return read_cube(in, p.string());
}

inline void write_cube(std::ostream& out, const Cube& c) {
  const auto& p = c.params();
  const std::size_t v = c.order();
  out << "cube n=" << c.dimension() << " v=" << v << " k=" << p.k << " lambda=" << p.lambda << "\n";
  const std::uint64_t layers = checked_power(v, c.dimension() - 2);
  std::uint64_t o = 0;
  for (std::uint64_t b = 0; b < layers; ++b) {
    if (b) out << "\n";
    for (std::size_t i = 0; i < v; ++i) {
      for (std::size_t j = 0; j < v; ++j, ++o) out << (c.get_flat(o) ? '1' : '0');
      out << "\n";
    }
  }
}

inline void write_transversal(std::ostream& out, const TransversalRep& t) {
  out << "td n=" << t.n << " v=" << t.v << " blocks=" << t.block_count() << "\n";
  for (std::size_t b = 0; b < t.block_count(); ++b) {
    for (std::size_t a = 0; a < t.n; ++a) out << (a ? " " : "") << t.blocks[b * t.n + a] + 1;
    out << "\n";
  }
}

inline void write_certificate(std::ostream& out, const Certificate& c) {
  out << "mode=" << to_string(c.mode) << "\n";
  const std::string h = c.hex();
  for (std::size_t i = 0; i < h.size(); i += 64) out << h.substr(i, 64) << "\n";
}

// ---------------------------------------------------------------------------
// Block lists given as element labels, one block per line

/// Header `blocks <v> <k>`, then v lines of k labels separated by spaces or commas.
inline std::vector<ElementSet> read_labeled_blocks(std::istream& in, const FiniteGroup& g,
                                                   const std::string& source = "<input>") {
  detail::Lines l(in, source);
  auto head = detail::words(l.next());
  if (head.size() != 3 || head[0] != "blocks") l.fail("expected 'blocks <v> <k>'");
  const std::size_t v = detail::to_size(l, head[1]), k = detail::to_size(l, head[2]);
  if (v != g.order()) throw Error(ErrorKind::dimension_mismatch, "block file and group orders differ");
  std::vector<ElementSet> blocks;
  for (std::size_t b = 0; b < v; ++b) {
    std::string line = l.next();
    for (auto& ch : line)
      if (ch == ',') ch = ' ';
    ElementSet s;
    for (const auto& w : detail::words(line)) {
      auto e = g.find_label(w);
      if (!e) l.fail("unknown element label '" + w + "'");
      s.push_back(*e);
    }
    if (s.size() != k) l.fail("expected " + std::to_string(k) + " elements");
    std::sort(s.begin(), s.end());
    blocks.push_back(std::move(s));
  }
  return blocks;
}

// ---------------------------------------------------------------------------
// Orbit-cube input: `orbitcube v=<v> [n=<n>]`, then `gen <cycles>` and
// `block <n symbols>` lines; symbols are 1-based.

inline OrbitCubeInput read_orbit_input(std::istream& in, const std::string& source = "<input>") {
  detail::Lines l(in, source);
  auto head = detail::words(l.next());
  if (head.empty() || head[0] != "orbitcube") l.fail("expected 'orbitcube v=<v>'");
  auto kv = detail::keyed(l, head, 1);
  OrbitCubeInput r;
  r.v = detail::need(l, kv, "v");
  r.n = kv.count("n") ? kv.at("n") : 3;
  std::string pending;  // a generator may continue over several lines
  auto flush = [&] {
    if (pending.empty()) return;
    try {
      r.generators.push_back(parse_cycles(pending, r.n * r.v));
    } catch (const Error& e) {
      l.fail(e.what());
    }
    pending.clear();
  };
  while (!l.at_end_ignoring_blanks()) {
    std::string line = l.next();
    if (line.rfind("gen", 0) == 0) {
      flush();
      pending = detail::trim(line.substr(3));
    } else if (line.rfind("block", 0) == 0) {
      flush();
      std::vector<std::uint32_t> b;
      for (const auto& w : detail::words(line.substr(5))) {
        auto x = detail::to_size(l, w);
        if (x == 0 || x > r.n * r.v) l.fail("symbol out of range");
        b.push_back(static_cast<std::uint32_t>(x - 1));
      }
      r.base_blocks.push_back(std::move(b));
    } else if (line.front() == '(') {
      if (pending.empty()) l.fail("cycles outside a gen entry");
      pending += line;
    } else {
      l.fail("expected 'gen' or 'block'");
    }
  }
  flush();
  return r;
}

inline OrbitCubeInput load_orbit_input(const std::filesystem::path& p) {
  auto in = open_in(p);
  return read_orbit_input(in, p.string());
}

// ---------------------------------------------------------------------------
// Catalog directory: one design file per class plus an `index` file with
// lines `<certificate hex> <name>`.

inline void write_catalog(const std::filesystem::path& dir, const DesignCatalog& cat) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::io_error, "cannot create " + dir.string());
  auto index = open_out(dir / "index");
  for (const auto& e : cat.entries()) {
    auto f = open_out(dir / (e.name + ".design"));
    write_design(f, e.matrix, e.params);
    index << e.certificate.hex() << " " << e.name << "\n";
  }
}

/// Reads an `index` file back as certificate hex -> name.
inline std::map<std::string, std::string> read_catalog_index(const std::filesystem::path& dir) {
  auto in = open_in(dir / "index");
  detail::Lines l(in, (dir / "index").string());
  std::map<std::string, std::string> r;
  while (!l.at_end_ignoring_blanks()) {
    auto w = detail::words(l.next());
    if (w.size() != 2) l.fail("expected '<hex> <name>'");
    r.emplace(w[0], w[1]);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Bundled groups: data/groups/<order>_<id>.group

struct BundledGroup {
  std::string id;  // e.g. "16_05"
  FiniteGroup group;
};

inline std::vector<BundledGroup> bundled_groups(std::size_t order) {
  const auto dir = data_dir() / "groups";
  if (!std::filesystem::is_directory(dir)) throw Error(ErrorKind::io_error, "missing data directory " + dir.string());
  const std::string prefix = std::to_string(order) + "_";
  std::vector<std::string> ids;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    auto name = e.path().filename().string();
    if (name.rfind(prefix, 0) == 0 && e.path().extension() == ".group") ids.push_back(e.path().stem().string());
  }
  std::sort(ids.begin(), ids.end());
  std::vector<BundledGroup> r;
  for (const auto& id : ids) r.push_back({id, load_group(dir / (id + ".group"))});
  return r;
}

inline BundledGroup bundled_group(const std::string& id) {
  return {id, load_group(data_path("groups/" + id + ".group"))};
}

}  // namespace symcube::io
