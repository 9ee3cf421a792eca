#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "treerank/errors.hpp"
#include "treerank/generators.hpp"
#include "treerank/graph_io.hpp"
#include "treerank/labd.hpp"
#include "treerank/logic.hpp"
#include "treerank/neartwin.hpp"
#include "treerank/ranking.hpp"
#include "treerank/shallow_minor.hpp"
#include "treerank/sparsify.hpp"

namespace treerank::cli {
namespace {

// CLI11's numeric validators work on doubles and print unhelpful bounds.
CLI::Validator integer_at_least(long long low, const std::string& name) {
  return CLI::Validator(
      [low](std::string& text) -> std::string {
        long long value = 0;
        if (!CLI::detail::lexical_cast(text, value) || value < low) {
          return "expected an integer >= " + std::to_string(low) + ", got '" + text + "'";
        }
        return {};
      },
      name);
}

const CLI::Validator kPositive = integer_at_least(1, "POSITIVE");
const CLI::Validator kNonNegative = integer_at_least(0, "NONNEGATIVE");

struct Globals {
  std::string input;
  std::string output;
  std::uint64_t seed = 1;
  std::uint64_t cap_nodes = 0;   // 0 keeps the library default
  std::uint64_t cap_branch = 0;  // 0 keeps the library default
  bool quiet = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void print_set(std::ostream& os, const std::string& tag, const VertexSet& set) {
  os << tag;
  for (Vertex v : set) os << ' ' << v;
  os << '\n';
}

int narrow(std::uint64_t value, const char* what) {
  if (value > static_cast<std::uint64_t>(std::numeric_limits<int>::max())) {
    throw UsageError(std::string(what) + " = " + std::to_string(value) + " is too large");
  }
  return static_cast<int>(value);
}

void print_embedding(std::ostream& os, const Embedding& e) {
  os << "tree " << e.depth << ' ' << e.branching << '\n';
  for (std::size_t i = 0; i < e.principal.size(); ++i) os << "principal " << i << ' ' << e.principal[i] << '\n';
  for (std::size_t c = 1; c < e.paths.size(); ++c) {
    os << "path " << c;
    for (Vertex v : e.paths[c]) os << ' ' << v;
    os << '\n';
  }
}

void print_provenance(std::ostream& os, const SparsifiedGraph& sg, const char* prefix) {
  for (const auto& [part, v] : sg.apex) os << prefix << "apex " << part << ' ' << v << '\n';
  for (const auto& [a, b] : sg.flipped_pairs) os << prefix << "flip " << a << ' ' << b << '\n';
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write " + path.string());
  return f;
}

// corpus ---------------------------------------------------------------

struct CorpusOptions {
  std::string family;
  std::string dir;
  int max_depth = 3;
  int max_branch = 3;
  int max_subdivide = 2;
  int count = 10;
  int n = 20;
  double p = 0.2;
  int max_order = 6;
};

int write_corpus(const CorpusOptions& o, std::uint64_t seed, std::ostream& os) {
  namespace fs = std::filesystem;
  fs::create_directories(o.dir);
  std::vector<std::pair<std::string, std::string>> manifest;
  auto emit = [&](const std::string& name, const Graph& g, const std::string& params) {
    auto f = open_out(fs::path(o.dir) / name);
    write_graph(g, f);
    manifest.emplace_back(name, params);
  };
  if (o.family == "trees") {
    for (int d = 1; d <= o.max_depth; ++d) {
      for (int m = 1; m <= o.max_branch; ++m) {
        for (int r = 0; r <= o.max_subdivide; ++r) {
          emit("tree_d" + std::to_string(d) + "_m" + std::to_string(m) + "_r" + std::to_string(r) + ".gr",
               subdivide_uniform(gen_tree(d, m), r),
               "depth=" + std::to_string(d) + " branch=" + std::to_string(m) + " subdivide=" + std::to_string(r));
        }
      }
    }
  } else if (o.family == "random") {
    for (int i = 0; i < o.count; ++i) {
      const std::uint64_t s = seed + static_cast<std::uint64_t>(i);
      std::ostringstream params;
      params << "n=" << o.n << " p=" << o.p << " seed=" << s;
      emit("random_" + std::to_string(i) + ".gr", gen_random(o.n, o.p, s), params.str());
    }
  } else {
    for (int t = 1; t <= o.max_order; ++t) {
      emit("halfgraph_t" + std::to_string(t) + ".gr", gen_halfgraph(t), "order=" + std::to_string(t));
    }
  }
  auto f = open_out(fs::path(o.dir) / "manifest.tsv");
  f << "# family " << o.family << " files " << manifest.size() << '\n';
  for (const auto& [name, params] : manifest) f << name << '\t' << o.family << '\t' << params << '\n';
  os << manifest.size() << " files written to " << o.dir << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Vertex rankings, shallow tree minors, near-twins and sparsification for graphs", "treerank"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.fallthrough();
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Help for every subcommand");

  Globals gl;
  app.add_option("--input", gl.input, "Graph file to read (default: stdin)");
  app.add_option("--output", gl.output, "File to write results to (default: stdout)");
  app.add_option("--seed", gl.seed, "Seed for random generation");
  app.add_option("--cap-nodes", gl.cap_nodes, "Search-node limit for exhaustive searches")->check(kPositive);
  app.add_option("--cap-branch", gl.cap_branch, "Candidate limit for sflip-search enumeration")
      ->check(kPositive);
  app.add_flag("--quiet", gl.quiet, "Suppress diagnostics on stderr");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a graph");
  std::string family;
  int depth = 0, branch = 0, order = 0, gen_n = 0, gen_subdivide = 0;
  double gen_p = 0.0;
  gen->add_option("family", family, "Graph family")
      ->required()
      ->check(CLI::IsMember({"tree", "halfgraph", "random", "path", "cycle", "complete", "bipartite", "star"}));
  gen->add_option("--depth", depth, "Tree depth")->check(kNonNegative);
  gen->add_option("--branch", branch, "Tree branching")->check(kNonNegative);
  gen->add_option("--order", order, "Half-graph order")->check(kNonNegative);
  gen->add_option("--n", gen_n, "Vertex count (side size for bipartite, leaves for star)")
      ->check(kNonNegative);
  gen->add_option("--p", gen_p, "Edge probability")->check(CLI::Range(0.0, 1.0));
  gen->add_option("--subdivide", gen_subdivide, "Subdivide every edge this many times")
      ->check(kNonNegative);

  // rank
  auto* rank = app.add_subcommand("rank", "Compute the (r, m)-ranking");
  int rank_r = 1, rank_m = 0;
  bool with_witness = false;
  rank->add_option("--r", rank_r, "Radius")->required()->check(kPositive);
  rank->add_option("--m", rank_m, "Separator budget")->required()->check(kNonNegative);
  rank->add_flag("--witness", with_witness, "Also print the separator behind every finite rank");

  // certify
  auto* certify = app.add_subcommand("certify", "Find an r-shallow topological T_{d,m} minor");
  int cert_d = 1, cert_m = 1, cert_r = 0;
  bool extract = false;
  std::optional<Vertex> cert_vertex;
  certify->add_option("--d", cert_d, "Tree depth")->required()->check(kPositive);
  certify->add_option("--m", cert_m, "Tree branching")->required()->check(kPositive);
  certify->add_option("--r", cert_r, "Subdivision limit")->required()->check(kNonNegative);
  certify->add_flag("--extract", extract, "Build the tree from a ranking instead of searching");
  certify->add_option("--vertex", cert_vertex, "Root vertex for --extract");

  // neartwin
  auto* neartwin = app.add_subcommand("neartwin", "Near-twin graph NT_k(G)");
  int nt_k = 0;
  bool components = false;
  neartwin->add_option("--k", nt_k, "Symmetric-difference threshold")->required()->check(kNonNegative);
  neartwin->add_flag("--components", components, "Print components instead of the graph");

  // halfgraph
  auto* halfgraph = app.add_subcommand("halfgraph", "Find a semi-induced half-graph");
  int hg_t = 1, hg_k = 0;
  std::vector<Vertex> hg_pair;
  halfgraph->add_option("--t", hg_t, "Order")->required()->check(kPositive);
  halfgraph->add_option("--pair", hg_pair, "Extract from a same-component pair of NT_k(G) instead of searching")
      ->expected(2);
  halfgraph->add_option("--k", hg_k, "Near-twin threshold for --pair")->check(kNonNegative);

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Evaluate bound functions");
  std::vector<std::uint64_t> b_g, b_h, b_ladder, b_mprime, b_class;
  bounds->add_option("--g", b_g, "c,k,t")->delimiter(',')->expected(3);
  bounds->add_option("--h", b_h, "k,t")->delimiter(',')->expected(2);
  bounds->add_option("--no-ladder", b_ladder, "k2,m2")->delimiter(',')->expected(2);
  bounds->add_option("--m-prime", b_mprime, "d,r,m")->delimiter(',')->expected(3);
  bounds->add_option("--class-h", b_class, "k3,k2,m2")->delimiter(',')->expected(3);

  // labd-check
  auto* labd = app.add_subcommand("labd-check", "Check locally almost bounded degree");
  std::string f_spec, d_spec;
  labd->add_option("--f", f_spec, "Exception count function")->required();
  labd->add_option("--d", d_spec, "Degree threshold function")->required();

  // near-covered
  auto* covered = app.add_subcommand("near-covered", "Check (k, m)-near-coveredness");
  std::uint64_t nc_k = 0, nc_m = 0;
  bool exact = false;
  covered->add_option("--k", nc_k, "Near-twin threshold")->required();
  covered->add_option("--m", nc_m, "Maximum set of pairwise non-near-twins")->required();
  covered->add_flag("--exact", exact, "Exact maximum search instead of the greedy heuristic");

  // sparsify / recover / verify-roundtrip
  auto* sparsify = app.add_subcommand("sparsify", "Build the sparsified graph S(G)");
  int sp_k = 0;
  std::uint64_t sp_h = 1;
  std::string sp_out;
  sparsify->add_option("--k", sp_k, "Near-twin threshold")->required()->check(kNonNegative);
  sparsify->add_option("--h", sp_h, "Heaviness threshold")->required()->check(kPositive);
  sparsify->add_option("--out", sp_out, "Write the graph here and the provenance to <file>.prov");

  auto* recover_cmd = app.add_subcommand("recover", "Recover G from S(G)");

  auto* roundtrip = app.add_subcommand("verify-roundtrip", "Check recover(S(G)) = G");
  bool with_fo = false;
  roundtrip->add_option("--k", sp_k, "Near-twin threshold")->required()->check(kNonNegative);
  roundtrip->add_option("--h", sp_h, "Heaviness threshold")->required()->check(kPositive);
  roundtrip->add_flag("--fo", with_fo, "Also compare against the first-order recovery interpretation");

  // sflip-search
  auto* sflip = app.add_subcommand("sflip-search", "Search S-flips whose sparsification passes a degree check");
  int sf_s = 0;
  sflip->add_option("--s", sf_s, "Maximum |S|")->required()->check(kNonNegative);
  sflip->add_option("--k", sp_k, "Near-twin threshold")->required()->check(kNonNegative);
  sflip->add_option("--h", sp_h, "Heaviness threshold")->required()->check(kPositive);
  sflip->add_option("--f", f_spec, "Exception count function of the verifier")->required();
  sflip->add_option("--d", d_spec, "Degree threshold function of the verifier")->required();

  // corpus
  auto* corpus = app.add_subcommand("corpus", "Write a deterministic graph corpus");
  CorpusOptions co;
  corpus->add_option("--family", co.family, "Family")
      ->required()
      ->check(CLI::IsMember({"trees", "random", "halfgraph"}));
  corpus->add_option("--dir", co.dir, "Output directory")->required();
  corpus->add_option("--max-depth", co.max_depth, "trees: depths 1..D")->check(kPositive);
  corpus->add_option("--max-branch", co.max_branch, "trees: branchings 1..M")->check(kPositive);
  corpus->add_option("--max-subdivide", co.max_subdivide, "trees: subdivisions 0..R")
      ->check(kNonNegative);
  corpus->add_option("--count", co.count, "random: number of graphs")->check(kNonNegative);
  corpus->add_option("--n", co.n, "random: vertex count")->check(kNonNegative);
  corpus->add_option("--p", co.p, "random: edge probability")->check(CLI::Range(0.0, 1.0));
  corpus->add_option("--max-order", co.max_order, "halfgraph: orders 1..T")->check(kNonNegative);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  auto log = [&](const std::string& line) {
    if (!gl.quiet) err << line << '\n';
  };

  try {
    std::ofstream file_out;
    if (!gl.output.empty()) file_out = open_out(gl.output);
    std::ostream& os = gl.output.empty() ? out : file_out;

    auto load = [&]() {
      if (gl.input.empty()) return parse_graph(in);
      std::ifstream f(gl.input);
      if (!f) throw UsageError("cannot read " + gl.input);
      return parse_graph(f);
    };

    if (*gen) {
      Graph g;
      if (family == "tree") {
        g = gen_tree(depth, branch);
      } else if (family == "halfgraph") {
        g = gen_halfgraph(order);
      } else if (family == "random") {
        g = gen_random(gen_n, gen_p, gl.seed);
      } else if (family == "path") {
        g = gen_path(gen_n);
      } else if (family == "cycle") {
        g = gen_cycle(gen_n);
      } else if (family == "complete") {
        g = gen_complete(gen_n);
      } else if (family == "bipartite") {
        g = gen_complete_bipartite(gen_n, gen_n);
      } else {
        g = gen_star(gen_n);
      }
      if (gen_subdivide > 0) g = subdivide_uniform(g, gen_subdivide);
      write_graph(g, os);
      return kExitOk;
    }

    if (*corpus) return write_corpus(co, gl.seed, os);

    if (*bounds) {
      if (b_g.empty() && b_h.empty() && b_ladder.empty() && b_mprime.empty() && b_class.empty()) {
        throw UsageError("bounds needs at least one of --g, --h, --no-ladder, --m-prime, --class-h");
      }
      if (!b_g.empty()) os << "g " << g_bound(b_g[0], b_g[1], narrow(b_g[2], "t")) << '\n';
      if (!b_h.empty()) os << "h " << h_bound(b_h[0], narrow(b_h[1], "t")) << '\n';
      if (!b_ladder.empty()) os << "no-ladder " << no_ladder_bound(b_ladder[0], b_ladder[1]) << '\n';
      if (!b_mprime.empty()) {
        os << "m-prime " << m_prime(narrow(b_mprime[0], "d"), narrow(b_mprime[1], "r"), b_mprime[2]) << '\n';
      }
      if (!b_class.empty()) os << "class-h " << class_h(b_class[0], b_class[1], b_class[2]) << '\n';
      return kExitOk;
    }

    const Graph g = load();

    if (*rank) {
      const auto ra = compute_ranking(g, rank_r, rank_m);
      for (std::size_t v = 0; v < ra.rank.size(); ++v) os << v << ' ' << ra.rank[v].to_string() << '\n';
      if (with_witness) {
        for (std::size_t v = 0; v < ra.witness.size(); ++v) {
          if (ra.witness[v]) print_set(os, "w " + std::to_string(v), *ra.witness[v]);
        }
      }
      log("# rounds " + std::to_string(ra.stats.rounds) + " searches " + std::to_string(ra.stats.searches) +
          " max_expansions " + std::to_string(ra.stats.max_expansions));
      return kExitOk;
    }

    if (*certify) {
      if (!extract) {
        SearchCaps caps;
        if (gl.cap_nodes) caps.max_nodes = gl.cap_nodes;
        const auto e = contains_shallow_tree(g, cert_d, cert_m, cert_r, caps);
        if (!e) {
          os << "absent\n";
          return kExitFalse;
        }
        print_embedding(os, *e);
        return kExitOk;
      }
      if (!cert_vertex) throw UsageError("--extract needs --vertex");
      if (!g.valid(*cert_vertex)) throw UsageError("--vertex out of range");
      const int mp = narrow(m_prime(cert_d, cert_r, static_cast<std::uint64_t>(cert_m)), "m'");
      const auto ra = compute_ranking(g, cert_r, mp);
      const Rank rv = ra.rank[static_cast<std::size_t>(*cert_vertex)];
      if (rv <= Rank(static_cast<std::uint32_t>(cert_d))) {
        os << "rank " << *cert_vertex << ' ' << rv.to_string() << " m-prime " << mp << '\n';
        return kExitFalse;
      }
      const auto e = extract_shallow_tree(g, ra, *cert_vertex, cert_d, cert_m, cert_r);
      if (auto problem = validate_embedding(g, e, cert_r)) throw InvariantViolation(*problem);
      print_embedding(os, e);
      return kExitOk;
    }

    if (*neartwin) {
      const auto view = neartwin_view(g, nt_k);
      if (components) {
        for (std::size_t i = 0; i < view.components.size(); ++i) {
          print_set(os, "component " + std::to_string(i), view.components[i]);
        }
      } else {
        write_graph(view.nt_graph, os);
      }
      return kExitOk;
    }

    if (*halfgraph) {
      if (hg_pair.empty()) {
        HalfgraphCaps caps;
        if (gl.cap_nodes) caps.max_nodes = gl.cap_nodes;
        const auto h = find_halfgraph(g, hg_t, caps);
        if (!h) {
          os << "absent\n";
          return kExitFalse;
        }
        print_set(os, "u", h->u);
        print_set(os, "w", h->w);
        return kExitOk;
      }
      if (!g.valid(hg_pair[0]) || !g.valid(hg_pair[1])) throw UsageError("--pair vertex out of range");
      const auto view = neartwin_view(g, hg_k);
      const auto ext = halfgraph_from_pair(g, view, hg_pair[0], hg_pair[1], hg_t);
      if (!ext.ok()) {
        os << "failure " << ext.failure->property << ' ' << ext.failure->message << '\n';
        return kExitFalse;
      }
      print_set(os, "u", ext.witness->u);
      print_set(os, "w", ext.witness->w);
      return kExitOk;
    }

    if (*labd) {
      const auto result = labd_check(g, LabdSpec{ParamFunction::parse(f_spec), ParamFunction::parse(d_spec)});
      if (result.holds) {
        os << "holds\n";
        return kExitOk;
      }
      os << "fails " << result.failure->r << ' ' << result.failure->v << '\n';
      print_set(os, "offending", result.failure->offending);
      return kExitFalse;
    }

    if (*covered) {
      CoverCaps caps;
      if (gl.cap_nodes) caps.max_nodes = gl.cap_nodes;
      const auto result = near_covered_check(g, nc_k, nc_m, exact ? CoverMode::kExact : CoverMode::kGreedy, caps);
      os << (result.holds ? "holds" : "fails") << (result.heuristic ? " heuristic" : "") << '\n';
      print_set(os, "witness", result.witness);
      return result.holds ? kExitOk : kExitFalse;
    }

    if (*sparsify) {
      const auto sg = build_sparsifier(g, sp_k, sp_h);
      if (auto problem = validate_sparsified(sg)) throw InvariantViolation(*problem);
      if (!sp_out.empty()) {
        auto graph_file = open_out(sp_out);
        write_graph(sg.graph, graph_file);
        auto prov_file = open_out(sp_out + ".prov");
        print_provenance(prov_file, sg, "");
      } else {
        write_graph(sg.graph, os);
        print_provenance(os, sg, "# ");
      }
      log("# parts " + std::to_string(sg.partition.parts.size()) + " apexes " + std::to_string(sg.apex.size()) +
          " flipped " + std::to_string(sg.flipped_pairs.size()));
      return kExitOk;
    }

    if (*recover_cmd) {
      write_graph(recover(g), os);
      return kExitOk;
    }

    if (*roundtrip) {
      const auto sg = build_sparsifier(g, sp_k, sp_h);
      if (auto problem = validate_sparsified(sg)) {
        os << "invalid " << *problem << '\n';
        return kExitFalse;
      }
      if (recover(sg) != g) {
        os << "mismatch recover\n";
        return kExitFalse;
      }
      if (with_fo && apply_interpretation(sg.graph, recovery_interpretation()).graph != g) {
        os << "mismatch interpretation\n";
        return kExitFalse;
      }
      os << "ok\n";
      return kExitOk;
    }

    if (*sflip) {
      SflipCaps caps;
      if (gl.cap_branch) caps.max_candidates = gl.cap_branch;
      const LabdSpec verifier{ParamFunction::parse(f_spec), ParamFunction::parse(d_spec)};
      const auto result = sflip_driver(g, sf_s, sp_k, sp_h, verifier, caps);
      if (!result) {
        os << "none\n";
        return kExitFalse;
      }
      print_set(os, "subset", result->s);
      for (const auto& [a, b] : result->flips) os << "flip " << a << ' ' << b << '\n';
      os << "examined " << result->examined << '\n';
      return kExitOk;
    }
  } catch (const ScaleExceeded& e) {
    err << e.what() << '\n';
    return kExitCap;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace treerank::cli
