#pragma once

// Malnormality analysis. A subgroup H is malnormal when every conjugate
// H^g with g outside H meets H trivially. On the core graph this reduces
// to a reachability question on the pair product of the core with itself:
// H fails to be malnormal exactly when some off-diagonal product component
// contains a cycle, and each such component's two projections name a vertex
// pair whose identification is forced in any malnormal extension.

#include <cstdint>
#include <utility>
#include <vector>

#include "stallings/finite_index.hpp"
#include "stallings/graph.hpp"

namespace stallings {

// Materialized pair product of a core automaton with itself, with connected
// components labeled and summarized. Quadratic in the core size, so this
// form is capped; infinite_intersection_pairs streams the same analysis.
struct ProductGraph {
  Vertex m = 0;                  // states per factor; pair (p, q) sits at p * m + q
  std::vector<int> component;    // component id per ordered pair
  int component_count = 0;
  std::vector<std::int64_t> comp_vertices;
  std::vector<std::int64_t> comp_edges;  // undirected: a letter and its inverse count once
  std::vector<bool> comp_off_diagonal;   // contains a pair (p, q) with p != q
  std::vector<bool> comp_cyclic;         // edges >= vertices, i.e. not a tree

  int component_of(Vertex p, Vertex q) const { return component[static_cast<std::size_t>(p) * m + q]; }
};

ProductGraph fiber_square(const CoreAutomaton& core);

// All unordered pairs {p, q} of distinct core vertices (graph vertex ids)
// whose product component contains a cycle — equivalently, the languages
// readable at p and at q share infinitely many words. Memory is one bit
// per ordered pair of core vertices.
std::vector<std::pair<Vertex, Vertex>> infinite_intersection_pairs(const StallingsGraph& h);

bool is_malnormal(const StallingsGraph& h);

struct MalnormalClosure {
  StallingsGraph graph;
  int iterations = 0;  // merge-and-fold rounds until no pair remained
};

// Least malnormal overgroup: repeatedly identify every infinite-intersection
// pair and fold until the result is malnormal.
MalnormalClosure malnormal_closure(const StallingsGraph& h);

}  // namespace stallings
