#include "stallings/cli.hpp"

#include <chrono>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stallings/errors.hpp"
#include "stallings/finite_index.hpp"
#include "stallings/graph.hpp"
#include "stallings/io.hpp"
#include "stallings/malnormal.hpp"
#include "stallings/random_subgroup.hpp"
#include "stallings/word.hpp"

namespace stallings {

namespace {

struct Loaded {
  Basis basis;
  StallingsGraph graph;
};

Loaded graph_of(const std::string& path) {
  SubgroupFile f = load_subgroup(path);
  return {f.basis, build_graph(f.basis, f.generators)};
}

void maybe_dot(const StallingsGraph& g, const std::string& dot_path) {
  if (!dot_path.empty()) write_file(dot_path, dot_text(g));
}

const char* yes_no(bool b) { return b ? "true" : "false"; }

std::vector<std::int64_t> parse_sizes(const std::string& list) {
  std::vector<std::int64_t> sizes;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    const std::size_t comma = std::min(list.find(',', pos), list.size());
    const std::string item = list.substr(pos, comma - pos);
    try {
      std::size_t used = 0;
      const std::int64_t v = std::stoll(item, &used);
      if (used != item.size() || v < 1) throw ParseError("");
      sizes.push_back(v);
    } catch (const std::exception&) {
      throw ParseError("bad size list entry \"" + item + "\"");
    }
    pos = comma + 1;
  }
  return sizes;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stallings graphs: subgroups of free groups, finite-index extensions, malnormality"};
  app.require_subcommand(1);

  // build
  auto* build = app.add_subcommand("build", "Fold a subgroup file into its canonical graph");
  std::string build_file, build_dot;
  build->add_option("file", build_file, "subgroup file")->required();
  build->add_option("--dot", build_dot, "write a DOT rendering to this path");
  build->callback([&] {
    const Loaded l = graph_of(build_file);
    maybe_dot(l.graph, build_dot);
    out << graph_text(l.graph);
  });

  // member
  auto* member = app.add_subcommand("member", "Decide membership of a word in the subgroup");
  std::string member_file, member_word;
  member->add_option("file", member_file, "subgroup file")->required();
  member->add_option("word", member_word, "word to test")->required();
  member->callback([&] {
    const Loaded l = graph_of(member_file);
    const ReducedWord w = reduce(parse_word(member_word, l.basis));
    out << "member: " << yes_no(membership(l.graph, w)) << "\n";
  });

  // decompose
  auto* dec = app.add_subcommand("decompose", "Tail word and core of the subgroup graph");
  std::string dec_file;
  dec->add_option("file", dec_file, "subgroup file")->required();
  dec->callback([&] {
    const Loaded l = graph_of(dec_file);
    const CoreDecomposition d = decompose(l.graph);
    out << "tail: " << to_string(d.tail_word) << "\n";
    out << "entry: " << d.core_entry << "\n";
    out << "core-size: " << d.core_vertices.size() << "\n";
    out << "tail-size: " << d.tail_vertices.size() << "\n";
  });

  // index
  auto* index = app.add_subcommand("index", "Index of the first subgroup in the second");
  std::string index_h, index_g;
  index->add_option("sub", index_h, "subgroup file")->required();
  index->add_option("over", index_g, "overgroup file")->required();
  index->callback([&] {
    const Loaded h = graph_of(index_h), g = graph_of(index_g);
    if (h.basis.rank != g.basis.rank) throw SemanticError("the two files use different ranks");
    if (!homomorphism(h.graph, g.graph)) throw SemanticError("first subgroup is not contained in the second");
    if (const auto d = is_fi_extension(h.graph, g.graph))
      out << "index: " << *d << "\n";
    else
      out << "index: infinite\n";
  });

  // is-fi-ext
  auto* fiext = app.add_subcommand("is-fi-ext", "Test whether the second subgroup is a finite-index extension of the first");
  std::string fiext_h, fiext_g;
  fiext->add_option("sub", fiext_h, "subgroup file")->required();
  fiext->add_option("ext", fiext_g, "candidate extension file")->required();
  fiext->callback([&] {
    const Loaded h = graph_of(fiext_h), g = graph_of(fiext_g);
    if (h.basis.rank != g.basis.rank) throw SemanticError("the two files use different ranks");
    if (const auto d = is_fi_extension(h.graph, g.graph))
      out << "fi: true\nindex: " << *d << "\n";
    else
      out << "fi: false\n";
  });

  // commensurator
  auto* comm = app.add_subcommand("commensurator", "Largest extension containing the subgroup with finite index");
  std::string comm_file, comm_dot;
  comm->add_option("file", comm_file, "subgroup file")->required();
  comm->add_option("--dot", comm_dot, "write a DOT rendering to this path");
  comm->callback([&] {
    const Loaded l = graph_of(comm_file);
    const StallingsGraph c = commensurator(l.graph);
    maybe_dot(c, comm_dot);
    out << graph_text(c);
  });

  // fi-extensions
  auto* fiall = app.add_subcommand("fi-extensions", "Enumerate every finite-index extension of the subgroup");
  std::string fiall_file;
  std::size_t fiall_cap = 1'000'000;
  fiall->add_option("file", fiall_file, "subgroup file")->required();
  fiall->add_option("--cap", fiall_cap, "abort if the lattice exceeds this many members");
  fiall->callback([&] {
    const Loaded l = graph_of(fiall_file);
    const ExtensionLattice lat = enumerate_fi_extensions(l.graph, fiall_cap);
    out << "count: " << lat.members.size() << "\n";
    for (const LatticeMember& m : lat.members) {
      out << "index: " << m.index << "\n";
      out << m.canonical;
    }
    out << "bottom: " << lat.bottom << "\n";
    out << "top: " << lat.top << "\n";
    for (const auto& [i, j] : lat.hasse) out << "hasse: " << i << " " << j << "\n";
  });

  // fi-bound
  auto* fib = app.add_subcommand("fi-bound", "Upper bounds on the number of finite-index extensions");
  std::int64_t fib_n = 0;
  fib->add_option("n", fib_n, "core vertex count")->required();
  fib->callback([&] {
    const FiBound b = fi_extension_bound(fib_n);
    out << "power: " << b.power << "\n";
    out << "exact: " << b.exact.get_str() << "\n";
  });

  // subspace-count
  auto* ssc = app.add_subcommand("subspace-count", "Number of subspaces of a binary vector space");
  int ssc_k = 0;
  ssc->add_option("k", ssc_k, "dimension")->required();
  ssc->callback([&] { out << "count: " << subspace_count(ssc_k).get_str() << "\n"; });

  // fi-equal
  auto* fieq = app.add_subcommand("fi-equal", "Test whether two subgroups share a common finite-index subgroup");
  std::string fieq_h, fieq_k;
  fieq->add_option("first", fieq_h, "subgroup file")->required();
  fieq->add_option("second", fieq_k, "subgroup file")->required();
  fieq->callback([&] {
    const Loaded h = graph_of(fieq_h), k = graph_of(fieq_k);
    if (h.basis.rank != k.basis.rank) throw SemanticError("the two files use different ranks");
    out << "equal: " << yes_no(fi_equivalent(h.graph, k.graph)) << "\n";
  });

  // validate-language
  auto* val = app.add_subcommand("validate-language", "Check the language-level laws of the subgroup's core");
  std::string val_file;
  int val_depth = 6;
  val->add_option("file", val_file, "subgroup file")->required();
  val->add_option("--depth", val_depth, "word length bound for the bounded checks");
  val->callback([&] {
    const Loaded l = graph_of(val_file);
    const LanguageReport r = validate_extension_language(l.graph, val_depth);
    out << "involutive: " << yes_no(r.involutive) << "\n";
    out << "all-accepting: " << yes_no(r.all_accepting) << "\n";
    out << "out-degree-2: " << yes_no(r.out_degree2) << "\n";
    out << "tail-step: " << yes_no(r.tail_step) << "\n";
    out << "prefix-closed: " << yes_no(r.prefix_closed) << "\n";
    out << "inverse-padding: " << yes_no(r.inverse_padding) << "\n";
    out << "cancellation: " << yes_no(r.cancellation) << "\n";
    out << "extendable: " << yes_no(r.extendable) << "\n";
    out << "depth: " << r.depth << "\n";
    out << "pass: " << yes_no(r.pass()) << "\n";
  });

  // intersect
  auto* inter = app.add_subcommand("intersect", "Intersection of two subgroups");
  std::string inter_h, inter_k, inter_dot;
  inter->add_option("first", inter_h, "subgroup file")->required();
  inter->add_option("second", inter_k, "subgroup file")->required();
  inter->add_option("--dot", inter_dot, "write a DOT rendering to this path");
  inter->callback([&] {
    const Loaded h = graph_of(inter_h), k = graph_of(inter_k);
    if (h.basis.rank != k.basis.rank) throw SemanticError("the two files use different ranks");
    const StallingsGraph g = intersect(h.graph, k.graph);
    maybe_dot(g, inter_dot);
    out << graph_text(g);
  });

  // join
  auto* jn = app.add_subcommand("join", "Subgroup generated by two subgroups together");
  std::string jn_h, jn_k, jn_dot;
  jn->add_option("first", jn_h, "subgroup file")->required();
  jn->add_option("second", jn_k, "subgroup file")->required();
  jn->add_option("--dot", jn_dot, "write a DOT rendering to this path");
  jn->callback([&] {
    const Loaded h = graph_of(jn_h), k = graph_of(jn_k);
    if (h.basis.rank != k.basis.rank) throw SemanticError("the two files use different ranks");
    const StallingsGraph g = join(h.graph, k.graph);
    maybe_dot(g, jn_dot);
    out << graph_text(g);
  });

  // conjugate
  auto* conj = app.add_subcommand("conjugate", "Conjugate of the subgroup by a word");
  std::string conj_file, conj_word, conj_dot;
  conj->add_option("file", conj_file, "subgroup file")->required();
  conj->add_option("word", conj_word, "conjugating word")->required();
  conj->add_option("--dot", conj_dot, "write a DOT rendering to this path");
  conj->callback([&] {
    const Loaded l = graph_of(conj_file);
    const ReducedWord w = reduce(parse_word(conj_word, l.basis));
    const StallingsGraph g = conjugate(l.graph, w);
    maybe_dot(g, conj_dot);
    out << graph_text(g);
  });

  // index-r
  auto* idxr = app.add_subcommand("index-r", "An extension containing the subgroup with a prescribed finite index");
  std::string idxr_file, idxr_dot;
  int idxr_r = 0;
  idxr->add_option("file", idxr_file, "subgroup file")->required();
  idxr->add_option("r", idxr_r, "desired index")->required();
  idxr->add_option("--dot", idxr_dot, "write a DOT rendering to this path");
  idxr->callback([&] {
    const Loaded l = graph_of(idxr_file);
    const StallingsGraph g = index_r_subgroup(l.graph, idxr_r);
    maybe_dot(g, idxr_dot);
    out << graph_text(g);
  });

  // is-malnormal
  auto* mal = app.add_subcommand("is-malnormal", "Test malnormality of the subgroup");
  std::string mal_file;
  mal->add_option("file", mal_file, "subgroup file")->required();
  mal->callback([&] {
    const Loaded l = graph_of(mal_file);
    const auto pairs = infinite_intersection_pairs(l.graph);
    out << "malnormal: " << yes_no(pairs.empty()) << "\n";
    for (const auto& [p, q] : pairs) out << "pair: " << p << " " << q << "\n";
  });

  // malnormal-closure
  auto* mcl = app.add_subcommand("malnormal-closure", "Smallest malnormal extension of the subgroup");
  std::string mcl_file, mcl_dot;
  mcl->add_option("file", mcl_file, "subgroup file")->required();
  mcl->add_option("--dot", mcl_dot, "write a DOT rendering to this path");
  mcl->callback([&] {
    const Loaded l = graph_of(mcl_file);
    const MalnormalClosure c = malnormal_closure(l.graph);
    maybe_dot(c.graph, mcl_dot);
    out << "iterations: " << c.iterations << "\n";
    out << graph_text(c.graph);
  });

  // random
  auto* rnd = app.add_subcommand("random", "Emit a reproducible random subgroup file");
  RandomSpec spec;
  std::string rnd_out;
  rnd->add_option("--rank", spec.rank, "basis rank")->capture_default_str();
  rnd->add_option("--count", spec.count, "number of generators")->capture_default_str();
  rnd->add_option("--max-len", spec.max_len, "maximum generator length")->capture_default_str();
  rnd->add_option("--seed", spec.seed, "PRNG seed")->capture_default_str();
  rnd->add_option("-o,--output", rnd_out, "write the file here instead of stdout");
  rnd->callback([&] {
    const std::string text = subgroup_text(spec.rank, random_generators(spec));
    if (rnd_out.empty())
      out << text;
    else
      write_file(rnd_out, text);
  });

  // bench
  auto* bench = app.add_subcommand("bench", "Time the commensurator on random subgroups of growing size");
  std::string bench_sizes = "1000,10000,100000,1000000";
  bench->add_option("--sizes", bench_sizes, "comma-separated target vertex counts")->capture_default_str();
  bench->callback([&] {
    for (const std::int64_t size : parse_sizes(bench_sizes)) {
      RandomSpec s;
      s.rank = 2;
      s.count = 4;
      s.max_len = static_cast<int>(std::max<std::int64_t>(1, size / 4));
      s.seed = 7 + static_cast<std::uint64_t>(size);
      const StallingsGraph g = build_graph(Basis(s.rank), random_generators(s));
      const auto t0 = std::chrono::steady_clock::now();
      const StallingsGraph c = commensurator(g);
      const auto t1 = std::chrono::steady_clock::now();
      const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
      out << "size: " << size << " vertices: " << g.vertex_count() << " quotient: " << c.vertex_count()
          << " ms: " << ms << "\n";
    }
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const SemanticError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace stallings
