#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stallings/word.hpp"

namespace stallings {

using Vertex = std::int32_t;
inline constexpr Vertex kNoVertex = -1;

// One positive edge: src --a_gen--> dst. The inverse direction is implicit.
struct Edge {
  Vertex src;
  int gen;
  Vertex dst;
};

// A based, deterministic, involutive, connected labeled graph. The basepoint
// is always vertex 0. Only positive letters are stored; queries for inverse
// letters are answered by the reverse index, which every mutation keeps in
// sync, so involutivity holds by construction.
//
// Instances are immutable; all operations return new graphs. Vertex ids are
// dense. Graphs produced by fold()/build_graph()/... are canonically numbered
// (breadth-first from the basepoint, letters in sym() order).
class StallingsGraph {
 public:
  static constexpr Vertex kBase = 0;

  int rank() const { return rank_; }
  Vertex vertex_count() const { return n_; }

  Vertex next(Vertex v, Letter l) const { return next_[static_cast<std::size_t>(v) * 2 * rank_ + l.sym()]; }
  Vertex next_sym(Vertex v, int sym) const { return next_[static_cast<std::size_t>(v) * 2 * rank_ + sym]; }

  // Number of defined symmetrized slots at v (= in-degree + out-degree over
  // positive edges; a loop contributes 2).
  int degree(Vertex v) const;

  std::int64_t positive_edge_count() const;

  // Free rank of the represented subgroup: positive edges - vertices + 1.
  int cycle_rank() const;

  // Every vertex except possibly the basepoint has degree >= 2.
  bool is_admissible() const;

  // Positive edges in (src, gen) order.
  std::vector<Edge> positive_edges() const;

  static StallingsGraph trivial(int rank);

  // Builds from an explicit edge list with the given vertex count, keeping
  // vertex ids verbatim. Throws std::invalid_argument on determinism or
  // involutivity conflicts, on out-of-range ids, or if the result is not
  // connected. Admissibility is not required here.
  static StallingsGraph from_edges(int rank, Vertex n, const std::vector<Edge>& edges);

 private:
  friend class GraphBuilder;

  StallingsGraph(int rank, Vertex n)
      : rank_(rank), n_(n), next_(static_cast<std::size_t>(n) * 2 * rank, kNoVertex) {}

  void set_arc(Vertex p, int sym, Vertex q) { next_[static_cast<std::size_t>(p) * 2 * rank_ + sym] = q; }

  int rank_;
  Vertex n_;
  std::vector<Vertex> next_;
};

// Accumulates a possibly nondeterministic involutive edge set plus vertex
// identifications, then folds: union-find over vertices with a worklist of
// label clashes, near-linear in the edge count. fold() keeps the basepoint
// component and renumbers canonically; pruning (iterative removal of
// degree-<=1 non-basepoint vertices) never changes the represented subgroup
// and is requested by callers that need admissibility restored.
class GraphBuilder {
 public:
  GraphBuilder(int rank, Vertex n) : rank_(rank), n_(n) {}

  explicit GraphBuilder(const StallingsGraph& g);

  Vertex add_vertex() { return n_++; }
  void add_edge(Vertex p, int gen, Vertex q) { edges_.push_back({p, gen, q}); }

  // Adds a path reading w from `from` to `to` through fresh interior
  // vertices. An empty w identifies the endpoints instead.
  void add_path(Vertex from, const ReducedWord& w, Vertex to);

  void identify(Vertex a, Vertex b) { merges_.emplace_back(a, b); }

  Vertex vertex_count() const { return n_; }

  StallingsGraph fold(bool prune) const;

 private:
  int rank_;
  Vertex n_;
  std::vector<Edge> edges_;
  std::vector<std::pair<Vertex, Vertex>> merges_;
};

// Graph of the subgroup generated by the given words: a bouquet of loops at
// the basepoint, folded. Folding a bouquet of reduced loops never creates
// dead tails, so no pruning happens here.
StallingsGraph build_graph(const Basis& basis, const std::vector<ReducedWord>& generators);

// Endpoint of the unique path reading w from `from`, if every step is
// defined. w need not be reduced.
std::optional<Vertex> path_read(const StallingsGraph& g, Vertex from, const Word& w);

inline std::optional<Vertex> path_read(const StallingsGraph& g, Vertex from, const ReducedWord& w) {
  return path_read(g, from, w.letters());
}

// A reduced word lies in the subgroup iff it reads a loop at the basepoint.
bool membership(const StallingsGraph& g, const ReducedWord& w);

// Tail/core split: the tail is the maximal initial chain of degree-<=2
// vertices walked from a degree-1 basepoint; the core entry is where the
// walk stops. With a basepoint of degree != 1 the tail is empty and the
// basepoint is the core entry. For the trivial graph the core is just the
// basepoint and the tail is empty.
struct CoreDecomposition {
  ReducedWord tail_word;
  Vertex core_entry = StallingsGraph::kBase;
  std::vector<bool> in_core;          // indexed by vertex
  std::vector<Vertex> core_vertices;  // ascending
  std::vector<Vertex> tail_vertices;  // walk order, starting at the basepoint
};

CoreDecomposition decompose(const StallingsGraph& g);

// Based labeled-graph morphism h -> g, as the vertex map. At most one exists.
struct GraphMorphism {
  std::vector<Vertex> vertex_map;
};

std::optional<GraphMorphism> homomorphism(const StallingsGraph& h, const StallingsGraph& g);

// Decides whether the subgroup of h has finite index in the subgroup of g and
// returns the index: requires a morphism h -> g, equal tail words, and the
// core-restricted morphism to be a cover; the index is the common fiber size.
std::optional<std::int64_t> is_fi_extension(const StallingsGraph& h, const StallingsGraph& g);

// Free basis of the subgroup: one generator per positive edge outside a
// breadth-first spanning tree, spelled through tree paths.
std::vector<ReducedWord> subgroup_basis(const StallingsGraph& g);

// Graph of g^-1 H g, built by conjugating a basis of H and refolding.
StallingsGraph conjugate(const StallingsGraph& h, const ReducedWord& g);

// Graph of <H union K>: wedge at the basepoints, folded.
StallingsGraph join(const StallingsGraph& h, const StallingsGraph& k);

// Graph of H intersect K: basepoint component of the pairwise product with
// synchronized transitions, pruned to admissibility.
StallingsGraph intersect(const StallingsGraph& h, const StallingsGraph& k);

// A subgroup of index exactly r in h (h nontrivial, r >= 1): r layered copies
// of the graph where one chosen non-tree edge steps to the next layer and
// every other edge stays. Throws SemanticError for r < 1 or trivial h.
StallingsGraph index_r_subgroup(const StallingsGraph& h, int r);

// Quotient of h identifying the given vertex pairs, folded, pruned, and
// renumbered. Throws std::out_of_range on unknown vertex ids.
StallingsGraph identify_and_fold(const StallingsGraph& h, const std::vector<std::pair<Vertex, Vertex>>& pairs);

enum class StepType { NoOp, REStep, IStep };

// How adding one generator changed the graph: NoOp when the word was already
// a member; REStep when a fresh path was attached between two existing
// vertices (p, q, with `attached` the new path's label); IStep when two
// existing vertices p = q were identified and folding followed. Reported
// vertex ids refer to the input graph.
struct AddGeneratorResult {
  StallingsGraph graph;
  StepType step;
  Vertex p = kNoVertex;
  Vertex q = kNoVertex;
  ReducedWord attached;
};

AddGeneratorResult add_generator(const StallingsGraph& h, const ReducedWord& g);

// Breadth-first renumbering from the basepoint with letters in sym() order;
// unreachable vertices are dropped. Isomorphic based graphs canonicalize to
// identical instances.
StallingsGraph canonicalize(const StallingsGraph& g);

// Serialization of the graph with its current vertex numbering:
// "vertices: n" / "base: 0" / one line "p a q" per positive edge in
// (p, letter) order.
std::string graph_text(const StallingsGraph& g);

// graph_text of the canonicalized graph. Two graphs get the same canonical
// form iff they represent the same subgroup of the ambient free group.
std::string canonical_form(const StallingsGraph& g);

bool same_subgroup(const StallingsGraph& a, const StallingsGraph& b);

}  // namespace stallings
