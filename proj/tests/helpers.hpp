#pragma once

// Shared fixtures and independent reference implementations ("oracles") used
// by the test suites. Everything here is deliberately written with different
// algorithms than the library (Moore refinement instead of Hopcroft, explicit
// partition enumeration instead of congruence closure, word-set comparison
// instead of synchronized products) so agreement is evidence, not tautology.

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "stallings/finite_index.hpp"
#include "stallings/graph.hpp"
#include "stallings/random_subgroup.hpp"
#include "stallings/word.hpp"

namespace testutil {

using stallings::Basis;
using stallings::CoreAutomaton;
using stallings::Edge;
using stallings::kNoVertex;
using stallings::ReducedWord;
using stallings::StallingsGraph;
using stallings::Vertex;
using stallings::VertexPartition;

inline ReducedWord rw(const Basis& b, std::string_view text) { return stallings::reduce(stallings::parse_word(text, b)); }

inline std::vector<ReducedWord> rws(const Basis& b, std::initializer_list<const char*> words) {
  std::vector<ReducedWord> out;
  for (const char* w : words) out.push_back(rw(b, w));
  return out;
}

inline StallingsGraph graph_of(int rank, std::initializer_list<const char*> words) {
  const Basis b(rank);
  return stallings::build_graph(b, rws(b, words));
}

// Graph of the kernel of the map from the rank-k free group onto (Z/2)^k
// sending each generator to a distinct unit vector: vertices are the bit
// vectors, and every generator flips its bit FROM EVERY VERTEX — each image
// generator has order two, so both directions of each geometric edge carry
// their own positive arc, exactly as the a-cycle of a square does.
inline StallingsGraph hypercube(int k) {
  const Vertex n = Vertex{1} << k;
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v)
    for (int gen = 1; gen <= k; ++gen) edges.push_back({v, gen, static_cast<Vertex>(v ^ (Vertex{1} << (gen - 1)))});
  return stallings::canonicalize(StallingsGraph::from_edges(k, n, edges));
}

// Deterministic RNG for tests: bounded draws use multiply-shift on the raw
// 64-bit stream, so sequences are identical on every platform.
class TestRng {
 public:
  explicit TestRng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t draw(std::uint64_t n) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(eng_()) * n) >> 64);
  }

  bool coin() { return (eng_() & 1) != 0; }

 private:
  std::mt19937_64 eng_;
};

inline StallingsGraph random_graph(int rank, int count, int max_len, std::uint64_t seed) {
  stallings::RandomSpec spec;
  spec.rank = rank;
  spec.count = count;
  spec.max_len = max_len;
  spec.seed = seed;
  return stallings::build_graph(Basis(rank), stallings::random_generators(spec));
}

// Spins the seed until the core is small enough for an exponential oracle.
// Advances `seed` past the used value so successive calls differ.
inline StallingsGraph random_graph_core_at_most(int rank, int count, int max_len, int max_core, std::uint64_t& seed) {
  for (;; ++seed) {
    StallingsGraph g = random_graph(rank, count, max_len, seed);
    if (static_cast<int>(stallings::decompose(g).core_vertices.size()) <= max_core) {
      ++seed;
      return g;
    }
  }
}

// Reference for nerode_partition: plain Moore refinement by transition
// signatures until stable, then first-occurrence renumbering.
inline VertexPartition moore_partition(const CoreAutomaton& core) {
  const Vertex m = core.state_count;
  const int syms = 2 * core.rank;
  VertexPartition out;
  if (m == 0) return out;
  std::vector<int> cls(m, 0);
  int classes = 1;
  for (;;) {
    std::map<std::vector<int>, int> ids;
    std::vector<int> next(m);
    for (Vertex s = 0; s < m; ++s) {
      std::vector<int> sig{cls[s]};
      for (int c = 0; c < syms; ++c) {
        const Vertex t = core.next_sym(s, c);
        sig.push_back(t == kNoVertex ? -1 : cls[t]);
      }
      next[s] = ids.emplace(sig, static_cast<int>(ids.size())).first->second;
    }
    const int refined = static_cast<int>(ids.size());
    cls.swap(next);
    if (refined == classes) break;
    classes = refined;
  }
  std::vector<int> remap(classes, -1);
  out.block_of.assign(m, -1);
  for (Vertex s = 0; s < m; ++s) {
    int& r = remap[cls[s]];
    if (r < 0) r = out.block_count++;
    out.block_of[s] = r;
  }
  return out;
}

// Every set partition of {0..n-1} as a restricted-growth string (block of
// element i is a[i]; block ids appear in first-use order). Bell(n) calls.
inline void for_each_partition(int n, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> a(static_cast<std::size_t>(n), 0);
  if (n == 0) {
    fn(a);
    return;
  }
  std::function<void(int, int)> rec = [&](int i, int used) {
    if (i == n) {
      fn(a);
      return;
    }
    for (int b = 0; b <= used; ++b) {
      a[static_cast<std::size_t>(i)] = b;
      rec(i + 1, b == used ? used + 1 : used);
    }
  };
  rec(0, 0);
}

// Identification pairs that realize a partition of the given elements: each
// later element of a block is paired with the block's first element.
inline std::vector<std::pair<Vertex, Vertex>> partition_pairs(const std::vector<int>& block_of,
                                                              const std::vector<Vertex>& elements) {
  std::map<int, Vertex> first;
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const auto [it, fresh] = first.emplace(block_of[i], elements[i]);
    if (!fresh) pairs.emplace_back(it->second, elements[i]);
  }
  return pairs;
}

// Enumerates every reduced word of length 1..max_len readable from `from`,
// invoking fn(word-in-compact-notation, endpoint). Depth-first with the
// standard no-immediate-backtrack ban.
inline void reduced_words_from(const StallingsGraph& g, Vertex from, int max_len,
                               const std::function<void(const std::string&, Vertex)>& fn) {
  const int syms = 2 * g.rank();
  std::string word;
  std::function<void(Vertex, int, int)> rec = [&](Vertex at, int banned, int remaining) {
    if (remaining == 0) return;
    for (int s = 0; s < syms; ++s) {
      if (s == banned) continue;
      const Vertex t = g.next_sym(at, s);
      if (t == kNoVertex) continue;
      word.push_back(stallings::Letter::from_sym(s).to_char());
      fn(word, t);
      rec(t, s ^ 1, remaining - 1);
      word.pop_back();
    }
  };
  rec(from, -1, max_len);
}

// Reduced words of length 1..max_len reading a loop at v.
inline std::set<std::string> loop_words(const StallingsGraph& g, Vertex v, int max_len) {
  std::set<std::string> out;
  reduced_words_from(g, v, max_len, [&](const std::string& w, Vertex end) {
    if (end == v) out.insert(w);
  });
  return out;
}

// Reduced words of length 1..max_len readable from a core state.
inline std::set<std::string> state_language(const CoreAutomaton& core, Vertex state, int max_len) {
  const int syms = 2 * core.rank;
  std::set<std::string> out;
  std::string word;
  std::function<void(Vertex, int, int)> rec = [&](Vertex at, int banned, int remaining) {
    if (remaining == 0) return;
    for (int s = 0; s < syms; ++s) {
      if (s == banned) continue;
      const Vertex t = core.next_sym(at, s);
      if (t == kNoVertex) continue;
      word.push_back(stallings::Letter::from_sym(s).to_char());
      out.insert(word);
      rec(t, s ^ 1, remaining - 1);
      word.pop_back();
    }
  };
  rec(state, -1, max_len);
  return out;
}

// Exact equality of the languages readable at two states (possibly of
// different automata): breadth-first over reached state pairs, demanding
// identical defined-letter sets everywhere. Sound and complete because both
// automata are deterministic and every state accepts.
inline bool states_language_equal(const CoreAutomaton& a, Vertex sa, const CoreAutomaton& b, Vertex sb) {
  if (a.rank != b.rank) return false;
  const int syms = 2 * a.rank;
  std::set<std::pair<Vertex, Vertex>> seen{{sa, sb}};
  std::vector<std::pair<Vertex, Vertex>> queue{{sa, sb}};
  while (!queue.empty()) {
    const auto [p, q] = queue.back();
    queue.pop_back();
    for (int s = 0; s < syms; ++s) {
      const Vertex tp = a.next_sym(p, s);
      const Vertex tq = b.next_sym(q, s);
      if ((tp == kNoVertex) != (tq == kNoVertex)) return false;
      if (tp == kNoVertex) continue;
      if (seen.emplace(tp, tq).second) queue.emplace_back(tp, tq);
    }
  }
  return true;
}

// Length of a shortest word readable from exactly one of two states of the
// same automaton, or -1 if none exists with length <= bound.
inline int distinguishing_depth(const CoreAutomaton& core, Vertex p, Vertex q, int bound) {
  const int syms = 2 * core.rank;
  std::set<std::pair<Vertex, Vertex>> seen{{p, q}};
  std::vector<std::pair<Vertex, Vertex>> frontier{{p, q}};
  for (int depth = 1; depth <= bound && !frontier.empty(); ++depth) {
    std::vector<std::pair<Vertex, Vertex>> next_frontier;
    for (const auto& [x, y] : frontier) {
      for (int s = 0; s < syms; ++s) {
        const Vertex tx = core.next_sym(x, s);
        const Vertex ty = core.next_sym(y, s);
        if ((tx == kNoVertex) != (ty == kNoVertex)) return depth;
        if (tx == kNoVertex) continue;
        if (seen.emplace(tx, ty).second) next_frontier.emplace_back(tx, ty);
      }
    }
    frontier.swap(next_frontier);
  }
  return -1;
}

// Whether some nonempty cyclically reduced word reads a loop at v: for each
// starting letter, search reduced continuations over (vertex, last letter)
// states and accept a return to v whose last letter does not cancel the
// first. True exactly on core vertices.
inline bool has_cyclically_reduced_loop(const StallingsGraph& g, Vertex v) {
  const int syms = 2 * g.rank();
  for (int s0 = 0; s0 < syms; ++s0) {
    const Vertex first = g.next_sym(v, s0);
    if (first == kNoVertex) continue;
    std::vector<bool> seen(static_cast<std::size_t>(g.vertex_count()) * syms, false);
    std::vector<std::pair<Vertex, int>> stack{{first, s0}};
    seen[static_cast<std::size_t>(first) * syms + s0] = true;
    while (!stack.empty()) {
      const auto [at, last] = stack.back();
      stack.pop_back();
      if (at == v && last != (s0 ^ 1)) return true;
      for (int s = 0; s < syms; ++s) {
        if (s == (last ^ 1)) continue;
        const Vertex t = g.next_sym(at, s);
        if (t == kNoVertex || seen[static_cast<std::size_t>(t) * syms + s]) continue;
        seen[static_cast<std::size_t>(t) * syms + s] = true;
        stack.emplace_back(t, s);
      }
    }
  }
  return false;
}

// Whether infinitely many reduced words are readable from both p and q
// (states of the same core automaton), by length-indexed reachability over
// (state pair, last letter): the common language is prefix-closed, so it is
// infinite iff it contains a word of length exactly one more than the number
// of walk states (pigeonhole gives a pumpable repeat below that).
inline bool intersection_infinite_oracle(const CoreAutomaton& core, Vertex p, Vertex q) {
  const int syms = 2 * core.rank;
  const std::size_t walk_states = static_cast<std::size_t>(core.state_count) * core.state_count * syms;
  std::set<std::pair<std::pair<Vertex, Vertex>, int>> cur;
  for (int s = 0; s < syms; ++s) {
    const Vertex tp = core.next_sym(p, s);
    const Vertex tq = core.next_sym(q, s);
    if (tp != kNoVertex && tq != kNoVertex) cur.insert({{tp, tq}, s});
  }
  for (std::size_t len = 1; len <= walk_states; ++len) {
    if (cur.empty()) return false;
    std::set<std::pair<std::pair<Vertex, Vertex>, int>> next;
    for (const auto& [pair, last] : cur) {
      for (int s = 0; s < syms; ++s) {
        if (s == (last ^ 1)) continue;
        const Vertex tp = core.next_sym(pair.first, s);
        const Vertex tq = core.next_sym(pair.second, s);
        if (tp != kNoVertex && tq != kNoVertex) next.insert({{tp, tq}, s});
      }
    }
    cur.swap(next);
  }
  return !cur.empty();
}

inline std::string lcp(const std::string& a, const std::string& b) {
  std::size_t k = 0;
  while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
  return a.substr(0, k);
}

}  // namespace testutil
