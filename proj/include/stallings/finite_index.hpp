#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "stallings/graph.hpp"

namespace stallings {

// The core restricted to itself: a deterministic partial automaton over the
// symmetrized alphabet in which every state is accepting. States are numbered
// 0..state_count-1 following ascending graph vertex ids.
struct CoreAutomaton {
  int rank = 0;
  Vertex state_count = 0;
  Vertex entry = 0;                 // state of the core entry
  std::vector<Vertex> next;         // state_count x 2*rank, kNoVertex if absent
  std::vector<Vertex> graph_vertex; // state -> graph vertex
  std::vector<Vertex> state_of;     // graph vertex -> state, kNoVertex off-core

  Vertex next_sym(Vertex state, int sym) const { return next[static_cast<std::size_t>(state) * 2 * rank + sym]; }
  int out_degree(Vertex state) const;
};

CoreAutomaton core_automaton(const StallingsGraph& g, const CoreDecomposition& d);
CoreAutomaton core_automaton(const StallingsGraph& g);

// A partition of the core states. Block ids are normalized by first
// occurrence in state order, so equal partitions have equal block_of vectors.
struct VertexPartition {
  std::vector<int> block_of;
  int block_count = 0;
};

// Coarsest partition separating states with distinct readable languages,
// by Hopcroft's "process the smaller half" refinement on the automaton
// completed with a single non-accepting sink (the sink starts in its own
// block and is discarded from the result). O(alphabet * n log n).
VertexPartition nerode_partition(const CoreAutomaton& core);

// Graph of the commensurator: the core quotiented by the Nerode partition
// with the tail reattached unchanged. The quotient is necessarily already
// deterministic; a fold conflict would be an internal error (std::logic_error).
StallingsGraph commensurator(const StallingsGraph& h);

// Whether identifying p and q (plus folding) yields a finite-index extension:
// true iff both are core vertices in the same Nerode block. Throws
// std::out_of_range on unknown ids.
bool is_identification_fi(const StallingsGraph& h, Vertex p, Vertex q);

// Same decision through the pair product: the component of (p, q) in the
// core-pair product must project onto the core as a cover on both sides,
// which here amounts to every reached pair having identical defined-letter
// sets. Cross-validates is_identification_fi.
bool sim_by_product_covers(const StallingsGraph& h, Vertex p, Vertex q);

struct LatticeMember {
  StallingsGraph graph;
  std::int64_t index = 1;        // index of h in this member
  std::string canonical;
  std::vector<int> block_of;     // inducing congruence on the core states
};

// The (finite) lattice of finite-index extensions of h, bottom h itself,
// top the commensurator.
struct ExtensionLattice {
  std::vector<LatticeMember> members;          // sorted by (index, canonical)
  std::vector<std::pair<int, int>> order;      // (i, j): members[i] subgroup of members[j], i != j
  std::vector<std::pair<int, int>> hasse;      // covering pairs of `order`
  int bottom = 0;                              // position of h
  int top = 0;                                 // position of the commensurator
};

// Breadth-first closure over transition-closed congruences refining the
// Nerode partition: every finite-index extension is the quotient by exactly
// one such congruence, and distinct congruences give distinct subgroups.
// Throws SemanticError when the member count exceeds `cap`.
ExtensionLattice enumerate_fi_extensions(const StallingsGraph& h, std::size_t cap = 1'000'000);

// Upper bounds for the number of finite-index extensions of a subgroup whose
// graph has n vertices: the closed form n^((1+log2 n)/2) and the exact
// integer recurrence f(1) = 1, f(n) = n * f(n/2).
struct FiBound {
  double power;
  mpz_class exact;
};

FiBound fi_extension_bound(std::int64_t n);

// Number of subspaces of the k-dimensional vector space over the two-element
// field, 0 <= k <= 16, exactly: sum over d of s(d,k) with
//   l(d,k) = l(d-1,k) * (2^k - 2^(d-1)),  l(0,k) = 1,
//   m(d,k) = l(d,k) / d!,  s(d,k) = m(d,k) / m(d,d).
// This counts the finite-index extensions of the kernel of the map onto
// (Z/2)^k sending each generator to a distinct unit vector.
mpz_class subspace_count(int k);

// Whether h and k have the same commensurator: equal tail words and equal
// readable languages at the core entries, decided by a synchronized product
// search for a defined/undefined mismatch.
bool fi_equivalent(const StallingsGraph& h, const StallingsGraph& k);

// Structural and bounded checks that the language readable at the core entry
// is an extension language. The first four are exact structural checks on the
// Nerode-minimized core; the last four corroborate the defining closure
// properties on all words up to `depth` letters.
struct LanguageReport {
  bool involutive = false;       // (p,a,q) present iff (q,a^-1,p) present
  bool all_accepting = false;    // every state accepts
  bool out_degree2 = false;      // >= 2 letters defined at every state
  bool tail_step = false;        // nonempty tail t = t'a: a^-1 not readable at entry
  bool prefix_closed = false;
  bool inverse_padding = false;  // u, v readable => u u^-1 v readable
  bool cancellation = false;     // u v v^-1 w readable => u w readable
  bool extendable = false;       // u a readable => u a b readable, some b != a^-1
  int depth = 0;

  bool pass() const {
    return involutive && all_accepting && out_degree2 && tail_step && prefix_closed && inverse_padding &&
           cancellation && extendable;
  }
};

LanguageReport validate_extension_language(const StallingsGraph& h, int depth = 6);

}  // namespace stallings
