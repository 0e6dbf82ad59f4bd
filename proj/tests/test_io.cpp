#include <symcube/catalog.hpp>
#include <symcube/io.hpp>

#include <gtest/gtest.h>

#include <sstream>

using namespace symcube;

namespace {

std::string parse_error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::parse_error);
    return e.what();
  }
  ADD_FAILURE() << "no error";
  return {};
}

std::filesystem::path temp_dir(const std::string& name) {
  auto d = std::filesystem::temp_directory_path() / ("symcube_test_" + name);
  std::filesystem::remove_all(d);
  return d;
}

}  // namespace

TEST(GroupFile, RoundTripKeepsTableAndLabels) {
  auto g = make_metacyclic(3, 7, 2);
  std::stringstream ss;
  io::write_group(ss, g);
  auto h = io::read_group(ss);
  EXPECT_EQ(h, g);
  EXPECT_EQ(h.labels(), g.labels());
  EXPECT_EQ(h.name(), g.name());
}

TEST(GroupFile, PermutationGenerators) {
  std::istringstream in("group S3 order 6\npermgens 3\n(1,2)\n(1,2,3)\n");
  auto g = io::read_group(in);
  EXPECT_EQ(g.order(), 6u);
  EXPECT_FALSE(g.is_abelian());
  std::istringstream wrong("group S3 order 5\npermgens 3\n(1,2)\n(1,2,3)\n");
  EXPECT_THROW(io::read_group(wrong), Error);
}

TEST(GroupFile, ErrorsCarryLineNumbers) {
  auto msg = parse_error_of([] {
    std::istringstream in("group Z3 order 3\ntable\n0 1 2\n1 2 0\n2 0 x\n");
    io::read_group(in, "g.txt");
  });
  EXPECT_NE(msg.find("g.txt:5:"), std::string::npos) << msg;
  msg = parse_error_of([] {
    std::istringstream in("group Z3 order 3\ntable\n0 1 2\n1 2\n");
    io::read_group(in, "g.txt");
  });
  EXPECT_NE(msg.find("g.txt:4:"), std::string::npos) << msg;
  msg = parse_error_of([] {
    std::istringstream in("grp Z3 order 3\n");
    io::read_group(in, "g.txt");
  });
  EXPECT_NE(msg.find("g.txt:1:"), std::string::npos) << msg;
  // a table that parses but is no group
  std::istringstream bad("group X order 2\ntable\n0 1\n1 1\n");
  try {
    io::read_group(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_group);
  }
}

TEST(DifferenceSetFile, RoundTripAndValidation) {
  auto g = make_cyclic(7);
  DifferenceSet d(g, {1, 2, 4}, 1);
  std::stringstream ss;
  io::write_difference_set(ss, d);
  EXPECT_EQ(ss.str(), "ds 7 3 1\n1 2 4\n");
  auto f = io::read_difference_set(ss);
  EXPECT_EQ(f.elements, d.elements());
  EXPECT_EQ(f.params, (DesignParams{7, 3, 1}));
  auto msg = parse_error_of([] {
    std::istringstream in("ds 7 3 1\n1 2\n");
    io::read_difference_set(in);
  });
  EXPECT_NE(msg.find(":2:"), std::string::npos) << msg;
}

TEST(DesignFile, RoundTrip) {
  for (const auto& a : biplane16_designs()) {
    std::stringstream ss;
    io::write_design(ss, a, {16, 6, 2});
    auto f = io::read_design(ss);
    EXPECT_EQ(f.matrix, a);
    EXPECT_EQ(f.params, (DesignParams{16, 6, 2}));
  }
  auto msg = parse_error_of([] {
    std::istringstream in("design 3 2 1\n110\n102\n011\n");
    io::read_design(in);
  });
  EXPECT_NE(msg.find(":3:"), std::string::npos) << msg;
}

TEST(CubeFile, RoundTripAllDimensions) {
  auto g = make_cyclic(7);
  DifferenceSet d(g, {1, 2, 4}, 1);
  for (std::size_t n = 2; n <= 4; ++n) {
    auto c = difference_cube(g, d, n);
    std::stringstream ss;
    io::write_cube(ss, c);
    EXPECT_EQ(io::read_cube(ss), c);
  }
}

TEST(CubeFile, Errors) {
  auto msg = parse_error_of([] {
    std::istringstream in("cube n=3 v=2 k=1\n10\n01\n\n01\n10\n");
    io::read_cube(in);
  });
  EXPECT_NE(msg.find("lambda"), std::string::npos) << msg;
  msg = parse_error_of([] {
    std::istringstream in("cube n=3 v=2 k=1 lambda=0\n10\n01\n\n01\n");
    io::read_cube(in);
  });
  EXPECT_NE(msg.find("end of input"), std::string::npos) << msg;
  msg = parse_error_of([] {
    std::istringstream in("cube n=2 v=2 k=1 lambda=0\n10\n01\n11\n");
    io::read_cube(in);
  });
  EXPECT_NE(msg.find("trailing"), std::string::npos) << msg;
}

TEST(Files, MissingFileIsAnIoError) {
  try {
    io::load_cube("/nonexistent/cube.txt");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::io_error);
  }
}

TEST(TransversalFile, OneBasedSymbols) {
  Cube c(2, 2, DesignParams{2, 1, 0});
  c.set(Index{0, 1}, true);
  c.set(Index{1, 0}, true);
  std::stringstream ss;
  io::write_transversal(ss, to_transversal(c));
  EXPECT_EQ(ss.str(), "td n=2 v=2 blocks=2\n1 4\n2 3\n");
}

TEST(LabeledBlocks, ReadByLabel) {
  auto g = make_metacyclic(3, 7, 2);
  std::istringstream in("blocks 21 1\n" + [&] {
    std::string s;
    for (Element e = 0; e < 21; ++e) s += g.label(e) + "\n";
    return s;
  }());
  auto b = io::read_labeled_blocks(in, g);
  ASSERT_EQ(b.size(), 21u);
  for (Element e = 0; e < 21; ++e) EXPECT_EQ(b[e], ElementSet{e});
  std::istringstream bad("blocks 21 1\nzz\n");
  auto msg = parse_error_of([&] { io::read_labeled_blocks(bad, g); });
  EXPECT_NE(msg.find(":2:"), std::string::npos) << msg;
}

TEST(OrbitFile, ParsesGeneratorsAcrossLines) {
  std::istringstream in("orbitcube v=2 n=2\ngen (1,2)\n(3,4)\nblock 1 3\n");
  auto r = io::read_orbit_input(in);
  EXPECT_EQ(r.v, 2u);
  EXPECT_EQ(r.n, 2u);
  ASSERT_EQ(r.generators.size(), 1u);
  EXPECT_EQ(format_cycles(r.generators[0]), "(1,2)(3,4)");
  ASSERT_EQ(r.base_blocks.size(), 1u);
  EXPECT_EQ(r.base_blocks[0], (std::vector<std::uint32_t>{0, 2}));
  auto res = orbit_cube(r);
  EXPECT_EQ(res.blocks, 2u);
  EXPECT_TRUE(verify_cube(res.cube));
  std::istringstream bad("orbitcube v=2\nblock 1 9\n");
  auto msg = parse_error_of([&] { io::read_orbit_input(bad); });
  EXPECT_NE(msg.find(":2:"), std::string::npos) << msg;
}

TEST(Catalog, ExportAndIndex) {
  auto dir = temp_dir("catalog");
  const auto& cat = DesignCatalog::standard();
  io::write_catalog(dir, cat);
  auto index = io::read_catalog_index(dir);
  EXPECT_EQ(index.size(), cat.entries().size());
  for (const auto& e : cat.entries()) {
    EXPECT_EQ(index.at(e.certificate.hex()), e.name);
    auto f = io::load_design(dir / (e.name + ".design"));
    EXPECT_EQ(f.matrix, e.matrix);
    EXPECT_EQ(design_class_uncached(f.matrix).certificate, e.certificate);
  }
  std::filesystem::remove_all(dir);
}

TEST(Bundled, DataFilesParse) {
  EXPECT_EQ(io::bundled_groups(16).size(), 14u);
  EXPECT_EQ(io::bundled_groups(21).size(), 2u);
  EXPECT_THROW(io::bundled_group("99_99"), Error);
  auto orbit = io::load_orbit_input(data_path("orbit384.orbit"));
  EXPECT_EQ(orbit.v, 16u);
  EXPECT_EQ(orbit.n, 3u);
}
