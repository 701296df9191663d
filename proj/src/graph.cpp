#include "stallings/graph.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

#include "stallings/errors.hpp"

namespace stallings {

int StallingsGraph::degree(Vertex v) const {
  const std::size_t off = static_cast<std::size_t>(v) * 2 * rank_;
  int d = 0;
  for (int s = 0; s < 2 * rank_; ++s) d += next_[off + s] != kNoVertex;
  return d;
}

std::int64_t StallingsGraph::positive_edge_count() const {
  std::int64_t m = 0;
  for (Vertex v = 0; v < n_; ++v)
    for (int s = 0; s < 2 * rank_; s += 2) m += next_sym(v, s) != kNoVertex;
  return m;
}

int StallingsGraph::cycle_rank() const { return static_cast<int>(positive_edge_count() - n_ + 1); }

bool StallingsGraph::is_admissible() const {
  for (Vertex v = 1; v < n_; ++v)
    if (degree(v) < 2) return false;
  return true;
}

std::vector<Edge> StallingsGraph::positive_edges() const {
  std::vector<Edge> out;
  out.reserve(static_cast<std::size_t>(positive_edge_count()));
  for (Vertex v = 0; v < n_; ++v)
    for (int g = 1; g <= rank_; ++g) {
      Vertex t = next_sym(v, 2 * (g - 1));
      if (t != kNoVertex) out.push_back({v, g, t});
    }
  return out;
}

StallingsGraph StallingsGraph::trivial(int rank) { return StallingsGraph(rank, 1); }

StallingsGraph StallingsGraph::from_edges(int rank, Vertex n, const std::vector<Edge>& edges) {
  if (n < 1) throw std::invalid_argument("graph needs at least the basepoint");
  StallingsGraph g(rank, n);
  auto put = [&](Vertex p, int sym, Vertex q) {
    Vertex cur = g.next_sym(p, sym);
    if (cur != kNoVertex && cur != q) throw std::invalid_argument("determinism conflict in edge list");
    g.set_arc(p, sym, q);
  };
  for (const Edge& e : edges) {
    if (e.src < 0 || e.src >= n || e.dst < 0 || e.dst >= n) throw std::invalid_argument("edge endpoint out of range");
    if (e.gen < 1 || e.gen > rank) throw std::invalid_argument("edge label out of range");
    put(e.src, 2 * (e.gen - 1), e.dst);
    put(e.dst, 2 * (e.gen - 1) + 1, e.src);
  }
  // connectivity
  std::vector<bool> seen(n, false);
  std::vector<Vertex> stack{kBase};
  seen[kBase] = true;
  Vertex reached = 1;
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    for (int s = 0; s < 2 * rank; ++s) {
      Vertex t = g.next_sym(v, s);
      if (t != kNoVertex && !seen[t]) {
        seen[t] = true;
        ++reached;
        stack.push_back(t);
      }
    }
  }
  if (reached != n) throw std::invalid_argument("graph is not connected");
  return g;
}

GraphBuilder::GraphBuilder(const StallingsGraph& g)
    : rank_(g.rank()), n_(g.vertex_count()), edges_(g.positive_edges()) {}

void GraphBuilder::add_path(Vertex from, const ReducedWord& w, Vertex to) {
  if (w.empty()) {
    if (from != to) identify(from, to);
    return;
  }
  Vertex cur = from;
  for (std::size_t i = 0; i < w.length(); ++i) {
    Vertex nxt = (i + 1 == w.length()) ? to : add_vertex();
    Letter l = w.at(i);
    if (l.is_inverse())
      add_edge(nxt, l.generator(), cur);
    else
      add_edge(cur, l.generator(), nxt);
    cur = nxt;
  }
}

namespace {

struct UnionFind {
  std::vector<Vertex> parent;
  std::vector<std::uint8_t> rk;

  explicit UnionFind(Vertex n) : parent(n), rk(n, 0) { std::iota(parent.begin(), parent.end(), 0); }

  Vertex find(Vertex x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
};

// Iterative removal of degree-<=1 non-basepoint vertices. Reduced basepoint
// loops never visit such vertices, so the subgroup is unchanged.
StallingsGraph prune_tails(const StallingsGraph& g) {
  const Vertex n = g.vertex_count();
  const int width = 2 * g.rank();
  std::vector<int> deg(n);
  std::vector<bool> dead(n, false);
  std::vector<Vertex> stack;
  for (Vertex v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    if (v != StallingsGraph::kBase && deg[v] <= 1) stack.push_back(v);
  }
  while (!stack.empty()) {
    Vertex v = stack.back();
    stack.pop_back();
    if (dead[v]) continue;
    dead[v] = true;
    for (int s = 0; s < width; ++s) {
      Vertex t = g.next_sym(v, s);
      if (t == kNoVertex || t == v || dead[t]) continue;
      if (--deg[t] <= 1 && t != StallingsGraph::kBase) stack.push_back(t);
    }
  }
  GraphBuilder b(g.rank(), n);
  for (const Edge& e : g.positive_edges())
    if (!dead[e.src] && !dead[e.dst]) b.add_edge(e.src, e.gen, e.dst);
  return b.fold(false);
}

}  // namespace

StallingsGraph GraphBuilder::fold(bool prune) const {
  const int width = 2 * rank_;
  UnionFind uf(n_);
  std::vector<Vertex> slots(static_cast<std::size_t>(n_) * width, kNoVertex);
  std::vector<std::pair<Vertex, Vertex>> pending;
  pending.reserve(merges_.size() + 16);

  for (const auto& [a, b] : merges_) {
    if (a < 0 || a >= n_ || b < 0 || b >= n_) throw std::out_of_range("vertex id out of range");
    pending.emplace_back(a, b);
  }
  for (const Edge& e : edges_) {
    if (e.src < 0 || e.src >= n_ || e.dst < 0 || e.dst >= n_) throw std::out_of_range("vertex id out of range");
    if (e.gen < 1 || e.gen > rank_) throw std::out_of_range("edge label out of range");
    const int sym = 2 * (e.gen - 1);
    Vertex ps[2] = {e.src, e.dst};
    int ss[2] = {sym, sym + 1};
    Vertex qs[2] = {e.dst, e.src};
    for (int d = 0; d < 2; ++d) {
      Vertex p = uf.find(ps[d]), q = uf.find(qs[d]);
      Vertex& cell = slots[static_cast<std::size_t>(p) * width + ss[d]];
      if (cell == kNoVertex) {
        cell = q;
      } else {
        Vertex cur = uf.find(cell);
        cell = cur;
        if (cur != q) pending.emplace_back(cur, q);
      }
    }
  }

  while (!pending.empty()) {
    auto [a, b] = pending.back();
    pending.pop_back();
    a = uf.find(a);
    b = uf.find(b);
    if (a == b) continue;
    if (uf.rk[a] < uf.rk[b]) std::swap(a, b);
    if (uf.rk[a] == uf.rk[b]) ++uf.rk[a];
    uf.parent[b] = a;
    for (int s = 0; s < width; ++s) {
      Vertex t = slots[static_cast<std::size_t>(b) * width + s];
      if (t == kNoVertex) continue;
      Vertex& cell = slots[static_cast<std::size_t>(a) * width + s];
      if (cell == kNoVertex) {
        cell = t;
      } else {
        Vertex fc = uf.find(cell), ft = uf.find(t);
        cell = fc;
        if (fc != ft) pending.emplace_back(fc, ft);
      }
    }
  }

  // Compact the basepoint component, numbering breadth-first in sym order, so
  // the result is canonically numbered.
  const Vertex root = uf.find(StallingsGraph::kBase);
  std::vector<Vertex> newid(n_, kNoVertex);
  std::vector<Vertex> order;
  newid[root] = 0;
  order.push_back(root);
  for (std::size_t qi = 0; qi < order.size(); ++qi) {
    const Vertex c = order[qi];
    for (int s = 0; s < width; ++s) {
      Vertex& cell = slots[static_cast<std::size_t>(c) * width + s];
      if (cell == kNoVertex) continue;
      cell = uf.find(cell);
      if (newid[cell] == kNoVertex) {
        newid[cell] = static_cast<Vertex>(order.size());
        order.push_back(cell);
      }
    }
  }
  StallingsGraph g(rank_, static_cast<Vertex>(order.size()));
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Vertex c = order[i];
    for (int s = 0; s < width; ++s) {
      Vertex t = slots[static_cast<std::size_t>(c) * width + s];
      if (t != kNoVertex) g.set_arc(static_cast<Vertex>(i), s, newid[t]);
    }
  }
  return prune ? prune_tails(g) : g;
}

StallingsGraph build_graph(const Basis& basis, const std::vector<ReducedWord>& generators) {
  GraphBuilder b(basis.rank, 1);
  for (const ReducedWord& w : generators) {
    for (Letter l : w.letters())
      if (l.generator() > basis.rank) throw std::invalid_argument("generator letter outside basis");
    if (!w.empty()) b.add_path(StallingsGraph::kBase, w, StallingsGraph::kBase);
  }
  return b.fold(false);
}

std::optional<Vertex> path_read(const StallingsGraph& g, Vertex from, const Word& w) {
  if (from < 0 || from >= g.vertex_count()) throw std::out_of_range("vertex id out of range");
  Vertex cur = from;
  for (Letter l : w) {
    cur = g.next(cur, l);
    if (cur == kNoVertex) return std::nullopt;
  }
  return cur;
}

bool membership(const StallingsGraph& g, const ReducedWord& w) {
  auto end = path_read(g, StallingsGraph::kBase, w.letters());
  return end && *end == StallingsGraph::kBase;
}

CoreDecomposition decompose(const StallingsGraph& g) {
  const Vertex n = g.vertex_count();
  CoreDecomposition d;
  d.in_core.assign(n, true);
  if (n > 1 && g.degree(StallingsGraph::kBase) == 1) {
    std::vector<Letter> tail;
    Vertex cur = StallingsGraph::kBase;
    int back = -1;  // sym leading back along the walk; undefined at the start
    while (cur == StallingsGraph::kBase ? true : g.degree(cur) == 2) {
      int out = -1;
      for (int s = 0; s < 2 * g.rank(); ++s) {
        if (s == back) continue;
        if (g.next_sym(cur, s) != kNoVertex) {
          out = s;
          break;
        }
      }
      if (out < 0) break;  // dead end; only possible on non-admissible input
      d.in_core[cur] = false;
      d.tail_vertices.push_back(cur);
      tail.push_back(Letter::from_sym(out));
      cur = g.next_sym(cur, out);
      back = out ^ 1;
    }
    d.core_entry = cur;
    d.tail_word = reduce(Word(tail.begin(), tail.end()));
  }
  for (Vertex v = 0; v < n; ++v)
    if (d.in_core[v]) d.core_vertices.push_back(v);
  return d;
}

std::optional<GraphMorphism> homomorphism(const StallingsGraph& h, const StallingsGraph& g) {
  if (h.rank() != g.rank()) throw std::invalid_argument("basis mismatch");
  GraphMorphism m;
  m.vertex_map.assign(h.vertex_count(), kNoVertex);
  m.vertex_map[StallingsGraph::kBase] = StallingsGraph::kBase;
  std::vector<Vertex> queue{StallingsGraph::kBase};
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const Vertex v = queue[qi];
    for (int s = 0; s < 2 * h.rank(); ++s) {
      Vertex w = h.next_sym(v, s);
      if (w == kNoVertex) continue;
      Vertex t = g.next_sym(m.vertex_map[v], s);
      if (t == kNoVertex) return std::nullopt;
      if (m.vertex_map[w] == kNoVertex) {
        m.vertex_map[w] = t;
        queue.push_back(w);
      } else if (m.vertex_map[w] != t) {
        return std::nullopt;
      }
    }
  }
  return m;
}

std::optional<std::int64_t> is_fi_extension(const StallingsGraph& h, const StallingsGraph& g) {
  auto phi = homomorphism(h, g);
  if (!phi) return std::nullopt;
  const CoreDecomposition dh = decompose(h);
  const CoreDecomposition dg = decompose(g);
  if (dh.tail_word != dg.tail_word) return std::nullopt;
  const auto& map = phi->vertex_map;
  // The core-restricted morphism must be a cover: wherever the target core
  // moves by a letter, the source must move too.
  for (Vertex p : dh.core_vertices) {
    const Vertex P = map[p];
    if (!dg.in_core[P]) return std::nullopt;
    for (int s = 0; s < 2 * g.rank(); ++s) {
      Vertex Q = g.next_sym(P, s);
      if (Q == kNoVertex || !dg.in_core[Q]) continue;
      Vertex q = h.next_sym(p, s);
      if (q == kNoVertex || !dh.in_core[q]) return std::nullopt;
    }
  }
  // The index is the fiber cardinality, constant across the target core.
  std::vector<std::int64_t> fiber(g.vertex_count(), 0);
  for (Vertex p : dh.core_vertices) ++fiber[map[p]];
  const std::int64_t d = fiber[dg.core_entry];
  for (Vertex Q : dg.core_vertices)
    if (fiber[Q] != d) return std::nullopt;
  return d;
}

namespace {

// Breadth-first spanning tree: per vertex, the parent and the arriving sym.
struct SpanningTree {
  std::vector<Vertex> parent;
  std::vector<int> via_sym;
  std::vector<Vertex> order;
};

SpanningTree spanning_tree(const StallingsGraph& g) {
  SpanningTree t;
  t.parent.assign(g.vertex_count(), kNoVertex);
  t.via_sym.assign(g.vertex_count(), -1);
  t.order.push_back(StallingsGraph::kBase);
  std::vector<bool> seen(g.vertex_count(), false);
  seen[StallingsGraph::kBase] = true;
  for (std::size_t qi = 0; qi < t.order.size(); ++qi) {
    const Vertex v = t.order[qi];
    for (int s = 0; s < 2 * g.rank(); ++s) {
      Vertex w = g.next_sym(v, s);
      if (w == kNoVertex || seen[w]) continue;
      seen[w] = true;
      t.parent[w] = v;
      t.via_sym[w] = s;
      t.order.push_back(w);
    }
  }
  return t;
}

ReducedWord tree_word(const SpanningTree& t, Vertex v) {
  Word w;
  for (Vertex cur = v; t.parent[cur] != kNoVertex; cur = t.parent[cur]) w.push_back(Letter::from_sym(t.via_sym[cur]));
  std::reverse(w.begin(), w.end());
  return reduce(w);  // tree paths never backtrack, so this is a no-op rewrap
}

}  // namespace

std::vector<ReducedWord> subgroup_basis(const StallingsGraph& g) {
  const SpanningTree t = spanning_tree(g);
  std::vector<ReducedWord> basis;
  for (Vertex p = 0; p < g.vertex_count(); ++p) {
    for (int gen = 1; gen <= g.rank(); ++gen) {
      const int sym = 2 * (gen - 1);
      Vertex q = g.next_sym(p, sym);
      if (q == kNoVertex) continue;
      const bool tree_arc = (t.parent[q] == p && t.via_sym[q] == sym) || (t.parent[p] == q && t.via_sym[p] == sym + 1);
      if (tree_arc) continue;
      Word mid{Letter(gen, false)};
      basis.push_back(concat(concat(tree_word(t, p), reduce(mid)), invert(tree_word(t, q))));
    }
  }
  return basis;
}

StallingsGraph conjugate(const StallingsGraph& h, const ReducedWord& g) {
  for (Letter l : g.letters())
    if (l.generator() > h.rank()) throw std::invalid_argument("conjugator letter outside basis");
  if (g.empty()) return canonicalize(h);
  const ReducedWord gi = invert(g);
  std::vector<ReducedWord> conj;
  for (const ReducedWord& s : subgroup_basis(h)) conj.push_back(concat(concat(gi, s), g));
  return build_graph(Basis(h.rank()), conj);
}

StallingsGraph join(const StallingsGraph& h, const StallingsGraph& k) {
  if (h.rank() != k.rank()) throw std::invalid_argument("basis mismatch");
  GraphBuilder b(h.rank(), h.vertex_count() + k.vertex_count() - 1);
  for (const Edge& e : h.positive_edges()) b.add_edge(e.src, e.gen, e.dst);
  auto shift = [&](Vertex v) { return v == StallingsGraph::kBase ? StallingsGraph::kBase : v + h.vertex_count() - 1; };
  for (const Edge& e : k.positive_edges()) b.add_edge(shift(e.src), e.gen, shift(e.dst));
  return b.fold(true);
}

StallingsGraph intersect(const StallingsGraph& h, const StallingsGraph& k) {
  if (h.rank() != k.rank()) throw std::invalid_argument("basis mismatch");
  // Basepoint component of the product with synchronized transitions.
  std::unordered_map<std::int64_t, Vertex> id;
  std::vector<std::pair<Vertex, Vertex>> pairs;
  auto key = [&](Vertex a, Vertex b) { return static_cast<std::int64_t>(a) * k.vertex_count() + b; };
  id[key(0, 0)] = 0;
  pairs.emplace_back(0, 0);
  GraphBuilder b(h.rank(), 1);
  for (std::size_t qi = 0; qi < pairs.size(); ++qi) {
    const auto [u, v] = pairs[qi];
    for (int s = 0; s < 2 * h.rank(); ++s) {
      Vertex du = h.next_sym(u, s), dv = k.next_sym(v, s);
      if (du == kNoVertex || dv == kNoVertex) continue;
      auto [it, fresh] = id.try_emplace(key(du, dv), static_cast<Vertex>(pairs.size()));
      if (fresh) {
        pairs.emplace_back(du, dv);
        b.add_vertex();
      }
      if ((s & 1) == 0) b.add_edge(id[key(u, v)], s / 2 + 1, it->second);
    }
  }
  return b.fold(true);
}

StallingsGraph index_r_subgroup(const StallingsGraph& h, int r) {
  if (r < 1) throw SemanticError("index_r_subgroup needs r >= 1");
  if (h.cycle_rank() == 0) throw SemanticError("index_r_subgroup needs a nontrivial subgroup");
  if (r == 1) return canonicalize(h);
  const Vertex n = h.vertex_count();
  const SpanningTree t = spanning_tree(h);
  // One non-tree edge steps layers; everything else stays. Loops at the base
  // of r layers then read a generator count mod r, so the result has index
  // exactly r.
  bool special_found = false;
  Vertex sp = kNoVertex;
  int sgen = 0;
  Vertex sq = kNoVertex;
  GraphBuilder b(h.rank(), n * r);
  for (const Edge& e : h.positive_edges()) {
    const int sym = 2 * (e.gen - 1);
    const bool tree_arc =
        (t.parent[e.dst] == e.src && t.via_sym[e.dst] == sym) || (t.parent[e.src] == e.dst && t.via_sym[e.src] == sym + 1);
    if (!tree_arc && !special_found) {
      special_found = true;
      sp = e.src;
      sgen = e.gen;
      sq = e.dst;
    }
  }
  for (const Edge& e : h.positive_edges()) {
    const int shift = (e.src == sp && e.gen == sgen && e.dst == sq) ? 1 : 0;
    for (int i = 0; i < r; ++i) b.add_edge(e.src + n * i, e.gen, e.dst + n * ((i + shift) % r));
  }
  return b.fold(true);
}

StallingsGraph identify_and_fold(const StallingsGraph& h, const std::vector<std::pair<Vertex, Vertex>>& pairs) {
  GraphBuilder b(h);
  for (const auto& [p, q] : pairs) {
    if (p < 0 || p >= h.vertex_count() || q < 0 || q >= h.vertex_count())
      throw std::out_of_range("vertex id out of range");
    b.identify(p, q);
  }
  return b.fold(true);
}

AddGeneratorResult add_generator(const StallingsGraph& h, const ReducedWord& g) {
  for (Letter l : g.letters())
    if (l.generator() > h.rank()) throw std::invalid_argument("generator letter outside basis");
  const auto& L = g.letters();
  std::vector<Vertex> fwd{StallingsGraph::kBase};
  for (Letter l : L) {
    Vertex t = h.next(fwd.back(), l);
    if (t == kNoVertex) break;
    fwd.push_back(t);
  }
  const std::size_t k = fwd.size() - 1;
  if (k == L.size() && fwd.back() == StallingsGraph::kBase)
    return {canonicalize(h), StepType::NoOp, kNoVertex, kNoVertex, {}};

  std::vector<Vertex> bwd{StallingsGraph::kBase};
  for (std::size_t tpos = 0; tpos < L.size(); ++tpos) {
    Vertex t = h.next(bwd.back(), L[L.size() - 1 - tpos].inverse());
    if (t == kNoVertex) break;
    bwd.push_back(t);
  }
  const std::size_t j = bwd.size() - 1;

  if (k + j < L.size()) {
    const ReducedWord middle =
        reduce(Word(L.begin() + static_cast<std::ptrdiff_t>(k), L.end() - static_cast<std::ptrdiff_t>(j)));
    GraphBuilder b(h);
    b.add_path(fwd[k], middle, bwd[j]);
    return {b.fold(false), StepType::REStep, fwd[k], bwd[j], middle};
  }
  const Vertex x = fwd[k];
  const Vertex y = bwd[L.size() - k];
  return {identify_and_fold(h, {{x, y}}), StepType::IStep, x, y, {}};
}

StallingsGraph canonicalize(const StallingsGraph& g) {
  GraphBuilder b(g);
  return b.fold(false);
}

std::string graph_text(const StallingsGraph& g) {
  std::string s = "vertices: " + std::to_string(g.vertex_count()) + "\nbase: 0\n";
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    for (int gen = 1; gen <= g.rank(); ++gen) {
      Vertex t = g.next_sym(v, 2 * (gen - 1));
      if (t == kNoVertex) continue;
      s += std::to_string(v);
      s += ' ';
      s += Letter(gen, false).to_char();
      s += ' ';
      s += std::to_string(t);
      s += '\n';
    }
  return s;
}

std::string canonical_form(const StallingsGraph& g) { return graph_text(canonicalize(g)); }

bool same_subgroup(const StallingsGraph& a, const StallingsGraph& b) {
  return a.rank() == b.rank() && canonical_form(a) == canonical_form(b);
}

}  // namespace stallings
