#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "treerank/generators.hpp"
#include "treerank/graph_io.hpp"
#include "treerank/sparsify.hpp"

namespace treerank {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string text(const Graph& g) { return write_graph(g); }

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("treerank_cli_" + std::to_string(counter_++) + "_" +
                                         std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

TEST(Cli, GenWritesCanonicalGraphs) {
  const auto r = run({"gen", "tree", "--depth", "1", "--branch", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "p 3 2\ne 0 1\ne 0 2\n");
  EXPECT_EQ(run({"gen", "complete", "--n", "4"}).out, text(gen_complete(4)));
  EXPECT_EQ(run({"--seed", "7", "gen", "random", "--n", "30", "--p", "0.2"}).out, text(gen_random(30, 0.2, 7)));
}

TEST(Cli, RankOnTree) {
  const auto r = run({"--quiet", "rank", "--r", "1", "--m", "2"}, text(gen_tree(2, 3)));
  EXPECT_EQ(r.code, 0);
  std::string expected = "0 3\n1 2\n2 2\n3 2\n";
  for (int v = 4; v <= 12; ++v) expected += std::to_string(v) + " 1\n";
  EXPECT_EQ(r.out, expected);
  EXPECT_EQ(r.err, "");
  const auto loud = run({"rank", "--r", "1", "--m", "2"}, text(gen_tree(2, 3)));
  EXPECT_EQ(loud.err, "# rounds 3 searches 18 max_expansions 3\n");
}

TEST(Cli, RankWitnesses) {
  const auto r = run({"--quiet", "rank", "--r", "1", "--m", "2", "--witness"}, text(gen_star(2)));
  EXPECT_EQ(r.out, "0 1\n1 1\n2 1\nw 0 1 2\nw 1 0\nw 2 0\n");
}

TEST(Cli, Bounds) {
  const auto r = run({"bounds", "--g", "3,2,3", "--h", "2,2", "--no-ladder", "2,3", "--m-prime", "1,3,4",
                      "--class-h", "2,2,3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "g 21\nh 16\nno-ladder 10\nm-prime 3\nclass-h " + std::to_string(class_h(2, 2, 3)) + "\n");
  EXPECT_EQ(run({"bounds", "--g", "3,2"}).code, cli::kExitUsage);
}

TEST(Cli, CertifyAndAbsence) {
  const auto found = run({"certify", "--d", "1", "--m", "2", "--r", "1"}, text(subdivide_uniform(gen_tree(1, 2), 1)));
  EXPECT_EQ(found.code, 0);
  EXPECT_EQ(found.out.substr(0, 9), "tree 1 2\n");
  const auto absent = run({"certify", "--d", "1", "--m", "3", "--r", "2"}, text(gen_cycle(6)));
  EXPECT_EQ(absent.code, cli::kExitFalse);
  EXPECT_EQ(absent.out, "absent\n");
}

TEST(Cli, CapAbortExitsThree) {
  const auto r = run({"--cap-nodes", "1", "certify", "--d", "1", "--m", "2", "--r", "1"}, text(gen_tree(1, 2)));
  EXPECT_EQ(r.code, cli::kExitCap);
  EXPECT_NE(r.err.find("scale exceeded"), std::string::npos);
  const auto sflip = run({"--cap-branch", "1", "sflip-search", "--s", "1", "--k", "0", "--h", "1", "--f", "const:0",
                          "--d", "const:2"},
                         text(gen_complete_bipartite(7, 7)));
  EXPECT_EQ(sflip.code, cli::kExitCap);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"bogus"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"rank", "--r", "0", "--m", "1"}, text(gen_path(3))).code, cli::kExitUsage);
  EXPECT_EQ(run({"rank", "--r", "1"}, text(gen_path(3))).code, cli::kExitUsage);
  const auto bad_input = run({"rank", "--r", "1", "--m", "1"}, "p 2 1\ne 0 5\n");
  EXPECT_EQ(bad_input.code, cli::kExitUsage);
  EXPECT_NE(bad_input.err.find("error"), std::string::npos);
  EXPECT_EQ(run({"labd-check", "--f", "nonsense", "--d", "const:1"}, text(gen_path(3))).code, cli::kExitUsage);
  EXPECT_EQ(run({"--help"}).code, cli::kExitOk);
}

TEST(Cli, NearCoveredAndLabd) {
  const auto nc = run({"near-covered", "--k", "1", "--m", "3", "--exact"}, text(gen_complete(4)));
  EXPECT_EQ(nc.code, cli::kExitFalse);
  EXPECT_EQ(nc.out, "fails\nwitness 0 1 2 3\n");
  const auto greedy = run({"near-covered", "--k", "2", "--m", "1"}, text(gen_complete(4)));
  EXPECT_EQ(greedy.code, 0);
  EXPECT_EQ(greedy.out, "holds heuristic\nwitness 0\n");
  const auto labd = run({"labd-check", "--f", "const:0", "--d", "const:2"}, text(gen_star(6)));
  EXPECT_EQ(labd.code, cli::kExitFalse);
  EXPECT_EQ(labd.out, "fails 0 0\noffending 0\n");
  EXPECT_EQ(run({"labd-check", "--f", "const:1", "--d", "const:2"}, text(gen_star(6))).out, "holds\n");
}

TEST(Cli, NearTwinAndHalfgraph) {
  const auto comps = run({"neartwin", "--k", "0", "--components"}, text(gen_star(3)));
  EXPECT_EQ(comps.out, "component 0 0\ncomponent 1 1 2 3\n");
  const auto hg = run({"halfgraph", "--t", "3"}, text(gen_halfgraph(3)));
  EXPECT_EQ(hg.code, 0);
  EXPECT_EQ(hg.out, "u 0 1 2\nw 3 4 5\n");
  const auto none = run({"halfgraph", "--t", "2"}, text(gen_complete(4)));
  EXPECT_EQ(none.code, cli::kExitFalse);
  EXPECT_EQ(none.out, "absent\n");
}

TEST(Cli, RoundTripAndRecover) {
  const auto ok = run({"verify-roundtrip", "--k", "0", "--h", "1", "--fo"}, text(gen_complete_bipartite(7, 7)));
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(ok.out, "ok\n");
  const auto sparsified = run({"sparsify", "--k", "2", "--h", "2"}, text(gen_complete(11)));
  EXPECT_EQ(sparsified.code, 0);
  EXPECT_NE(sparsified.out.find("# apex 0 11\n"), std::string::npos);
  // the provenance comments are ignored by the reader
  const auto back = run({"recover"}, sparsified.out);
  EXPECT_EQ(back.code, 0);
  EXPECT_EQ(back.out, text(gen_complete(11)));
}

TEST(Cli, SparsifyWritesSidecar) {
  TempDir dir;
  const auto out = dir.path() / "s.gr";
  const auto r = run({"sparsify", "--k", "0", "--h", "1", "--out", out.string()}, text(gen_complete_bipartite(7, 7)));
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(slurp(out), text(build_sparsifier(gen_complete_bipartite(7, 7), 0, 1).graph));
  EXPECT_EQ(slurp(out.string() + ".prov"), "apex 0 14\napex 1 15\nflip 0 1\n");
  EXPECT_EQ(run({"--input", out.string(), "recover"}).out, text(gen_complete_bipartite(7, 7)));
}

TEST(Cli, SflipSearch) {
  const auto none = run({"sflip-search", "--s", "0", "--k", "0", "--h", "1", "--f", "const:0", "--d", "const:2"},
                        text(gen_star(6)));
  EXPECT_EQ(none.code, cli::kExitFalse);
  EXPECT_EQ(none.out, "none\n");
  const auto found = run({"sflip-search", "--s", "0", "--k", "0", "--h", "1", "--f", "const:2", "--d", "const:5"},
                         text(gen_complete_bipartite(7, 7)));
  EXPECT_EQ(found.code, 0);
  EXPECT_EQ(found.out, "subset\nexamined 1\n");
}

TEST(Cli, CorpusIsDeterministic) {
  TempDir a, b;
  for (const auto& family : {"trees", "random", "halfgraph"}) {
    const auto ra = run({"--seed", "3", "corpus", "--family", family, "--dir", (a.path() / family).string()});
    const auto rb = run({"--seed", "3", "corpus", "--family", family, "--dir", (b.path() / family).string()});
    ASSERT_EQ(ra.code, 0);
    std::size_t files = 0;
    for (const auto& entry : fs::directory_iterator(a.path() / family)) {
      const auto twin = b.path() / family / entry.path().filename();
      EXPECT_EQ(slurp(entry.path()), slurp(twin)) << entry.path();
      if (entry.path().extension() == ".gr") ++files;
    }
    const std::size_t expected = std::string(family) == "trees" ? 27 : std::string(family) == "random" ? 10 : 6;
    EXPECT_EQ(files, expected) << family;
  }
  EXPECT_EQ(slurp(a.path() / "trees" / "tree_d2_m3_r1.gr"), text(subdivide_uniform(gen_tree(2, 3), 1)));
  EXPECT_EQ(slurp(a.path() / "random" / "random_0.gr"), text(gen_random(20, 0.2, 3)));
  const auto manifest = slurp(a.path() / "halfgraph" / "manifest.tsv");
  EXPECT_EQ(manifest.substr(0, manifest.find('\n')), "# family halfgraph files 6");
}

}  // namespace
}  // namespace treerank
