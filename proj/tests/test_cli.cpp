#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

// Runs the CLI with `args`; stderr is merged into the captured output when `merge`.
Run cli(const std::string& args, bool merge = false) {
  std::string cmd = std::string(SYMCUBE_CLI) + " " + args + (merge ? " 2>&1" : " 2>/dev/null");
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), got);
  int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("symcube_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write(const std::string& name, const std::string& text) const { std::ofstream(dir_ / name) << text; }

  std::string read(const std::string& name) const {
    std::ifstream in(dir_ / name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, UsageAndMissingFiles) {
  EXPECT_EQ(cli("--help").status, 0);
  EXPECT_EQ(cli("").status, 2);
  EXPECT_EQ(cli("no-such-command").status, 2);
  auto r = cli("cube verify " + path("missing.cube"), true);
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.out.find("error: io-error"), std::string::npos) << r.out;
}

TEST_F(Cli, GroupMakeAndValidate) {
  EXPECT_EQ(cli("--out " + path("f21.group") + " group make metacyclic 3 7 2").status, 0);
  auto r = cli("group validate " + path("f21.group"));
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "valid group F21 order 21 abelian no automorphisms 42\n");
  write("bad.group", "group X order 2\ntable\n0 1\n1 1\n");
  r = cli("group validate " + path("bad.group"));
  EXPECT_EQ(r.status, 1);
  EXPECT_EQ(r.out.rfind("invalid", 0), 0u) << r.out;
  EXPECT_EQ(cli("group validate 16_09").status, 0);
  EXPECT_EQ(cli("group make perm 3 '(1,2)' '(1,2,3)'").out.rfind("group", 0), 0u);
}

TEST_F(Cli, DifferenceSets) {
  auto r = cli("ds enumerate 16_14 6 2");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "difference sets (16,6,2) count 448");
  r = cli("ds classes 16_14 6 2");
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "classes 1 total 448");
  write("z7.ds", "ds 7 3 1\n1 2 4\n");
  cli("--out " + path("z7.group") + " group make cyclic 7");
  r = cli("ds multipliers " + path("z7.group") + " " + path("z7.ds"));
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "multipliers 3");
}

TEST_F(Cli, BuildVerifyAndCompare) {
  write("z7.ds", "ds 7 3 1\n1 2 4\n");
  ASSERT_EQ(cli("--out " + path("z7.group") + " group make cyclic 7").status, 0);
  ASSERT_EQ(cli("--out " + path("c.cube") + " cube build-diff " + path("z7.group") + " " + path("z7.ds")).status, 0);
  auto r = cli("cube verify " + path("c.cube"));
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "valid (7,3,1) n=3\n");
  EXPECT_EQ(cli("cube invariant " + path("c.cube")).out, "{{PG2_2^7}^3}\n");
  EXPECT_EQ(cli("cube invariant --weak " + path("c.cube")).out, "{{168^7}^3}\n");
  ASSERT_EQ(cli("--seed 5 --out " + path("d.cube") + " cube scramble " + path("c.cube")).status, 0);
  r = cli("equiv paratopic " + path("c.cube") + " " + path("d.cube"));
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out.rfind("paratopic yes\nwitness axes ", 0), 0u) << r.out;
  // flipping one entry breaks the cube
  auto text = read("c.cube");
  auto pos = text.find('\n') + 1;
  text[pos] = text[pos] == '1' ? '0' : '1';
  write("bad.cube", text);
  r = cli("cube verify " + path("bad.cube"));
  EXPECT_EQ(r.status, 1);
  EXPECT_EQ(r.out.rfind("invalid ", 0), 0u) << r.out;
  EXPECT_EQ(cli("equiv paratopic " + path("c.cube") + " " + path("bad.cube")).status, 1);
}

TEST_F(Cli, ScrambleIsDeterministic) {
  write("z7.ds", "ds 7 3 1\n1 2 4\n");
  cli("--out " + path("z7.group") + " group make cyclic 7");
  cli("--out " + path("c.cube") + " cube build-diff " + path("z7.group") + " " + path("z7.ds"));
  auto a = cli("--seed 9 cube scramble --isotopy " + path("c.cube")).out;
  auto b = cli("--seed 9 cube scramble --isotopy " + path("c.cube")).out;
  EXPECT_EQ(a, b);
  write("s.cube", a);
  EXPECT_EQ(cli("equiv isotopic " + path("c.cube") + " " + path("s.cube")).status, 0);
  EXPECT_EQ(cli("cube certificate --mode colored " + path("c.cube")).out,
            cli("cube certificate --mode colored " + path("s.cube")).out);
}

TEST_F(Cli, CubeFileRoundTripThroughTransversal) {
  write("z7.ds", "ds 7 3 1\n1 2 4\n");
  cli("--out " + path("z7.group") + " group make cyclic 7");
  cli("--out " + path("c.cube") + " cube build-diff -n 4 " + path("z7.group") + " " + path("z7.ds"));
  auto r = cli("cube transversal " + path("c.cube"));
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "td n=4 v=7 blocks=1029");
  EXPECT_EQ(cli("cube verify " + path("c.cube")).out, "valid (7,3,1) n=4\n");
}

TEST_F(Cli, BadInputsExitWithTwo) {
  cli("--out " + path("g.group") + " group make cyclic 16");
  auto r = cli("cube hadamard " + path("none.cube"));
  EXPECT_EQ(r.status, 2);
  write("ds", "ds 16 6 2\n0 1 2 3 4 5\n");
  // not a difference set in Z16: rejected with an error
  EXPECT_EQ(cli("cube build-diff " + path("g.group") + " " + path("ds")).status, 2);
}

TEST_F(Cli, DesignCommands) {
  std::string fano = std::string(SYMCUBE_DATA_DIR) + "/fano_A1.design";
  EXPECT_EQ(cli("design verify " + fano).out, "valid (7,3,1)\n");
  auto r = cli("design class " + fano);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "class PG2_2");
  EXPECT_NE(r.out.find("automorphisms 168\n"), std::string::npos);
  r = cli("design catalog --out " + path("cat"));
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(fs::exists(dir_ / "cat" / "index"));
  EXPECT_TRUE(fs::exists(dir_ / "cat" / "D2.design"));
  r = cli("design quadruple " + path("cat/D2.design"));
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "design 64 28 12");
}

TEST_F(Cli, SearchCommands) {
  auto r = cli("search ds-designs 21_01 5 1");
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "designs 70 developments 14\n");
  r = cli("search orbit-cube --out " + path("o.cube") + " " + std::string(SYMCUBE_DATA_DIR) + "/orbit384.orbit");
  EXPECT_EQ(r.out, "group order 384\nblocks 1536\nparams (16,6,2) n=3\n");
  EXPECT_EQ(cli("cube invariant " + path("o.cube")).out, "{{D1^4,D2^12}^3}\n");
  EXPECT_EQ(cli("cube hadamard " + path("o.cube")).out, "proper yes\ntotally_regular yes\nrow_sum -4\n");
}

TEST_F(Cli, ReproduceQuickTargets) {
  for (const char* t : {"fano", "small-unique", "pg21", "menon-family", "example52"}) {
    auto r = cli(std::string("reproduce --check ") + t, true);
    EXPECT_EQ(r.status, 0) << t << "\n" << r.out;
  }
  EXPECT_EQ(cli("reproduce nonsense").status, 2);
}

TEST_F(Cli, ReproduceDeterministic) {
  auto a = cli("reproduce fano").out;
  EXPECT_EQ(a, cli("reproduce fano").out);
  EXPECT_EQ(a.rfind("target fano\n", 0), 0u);
}

// Long runs; selected separately by ctest.
TEST(ReproduceLong, DiffCubes27) { EXPECT_EQ(cli("reproduce --check diffcubes27", true).status, 0); }
TEST(ReproduceLong, Table1) { EXPECT_EQ(cli("reproduce --check table1", true).status, 0); }
TEST(ReproduceLong, Prop51) { EXPECT_EQ(cli("reproduce --check prop51", true).status, 0); }
TEST(ReproduceLong, Hadamard16) { EXPECT_EQ(cli("reproduce --check hadamard16", true).status, 0); }
