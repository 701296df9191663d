#include "stallings/finite_index.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_set>

#include "stallings/errors.hpp"

namespace stallings {

int CoreAutomaton::out_degree(Vertex state) const {
  int d = 0;
  for (int s = 0; s < 2 * rank; ++s) d += next_sym(state, s) != kNoVertex;
  return d;
}

CoreAutomaton core_automaton(const StallingsGraph& g, const CoreDecomposition& d) {
  CoreAutomaton a;
  a.rank = g.rank();
  a.state_count = static_cast<Vertex>(d.core_vertices.size());
  a.graph_vertex = d.core_vertices;
  a.state_of.assign(g.vertex_count(), kNoVertex);
  for (Vertex s = 0; s < a.state_count; ++s) a.state_of[a.graph_vertex[s]] = s;
  a.next.assign(static_cast<std::size_t>(a.state_count) * 2 * a.rank, kNoVertex);
  for (Vertex s = 0; s < a.state_count; ++s) {
    const Vertex v = a.graph_vertex[s];
    for (int sym = 0; sym < 2 * a.rank; ++sym) {
      Vertex t = g.next_sym(v, sym);
      if (t != kNoVertex && d.in_core[t]) a.next[static_cast<std::size_t>(s) * 2 * a.rank + sym] = a.state_of[t];
    }
  }
  a.entry = a.state_of[d.core_entry];
  return a;
}

CoreAutomaton core_automaton(const StallingsGraph& g) { return core_automaton(g, decompose(g)); }

VertexPartition nerode_partition(const CoreAutomaton& core) {
  const int m = core.state_count;
  VertexPartition out;
  if (m <= 1) {
    out.block_of.assign(m, 0);
    out.block_count = m;
    return out;
  }
  const int K = 2 * core.rank;
  const int N = m + 1, sink = m;

  // Transitions of the automaton completed with a non-accepting sink.
  std::vector<int> delta(static_cast<std::size_t>(N) * K);
  for (int s = 0; s < m; ++s)
    for (int c = 0; c < K; ++c) {
      Vertex t = core.next_sym(s, c);
      delta[static_cast<std::size_t>(s) * K + c] = t == kNoVertex ? sink : t;
    }
  for (int c = 0; c < K; ++c) delta[static_cast<std::size_t>(sink) * K + c] = sink;

  // Inverse transitions, bucketed by (letter, target).
  std::vector<int> off(static_cast<std::size_t>(K) * N + 1, 0);
  for (int s = 0; s < N; ++s)
    for (int c = 0; c < K; ++c) ++off[static_cast<std::size_t>(c) * N + delta[static_cast<std::size_t>(s) * K + c] + 1];
  for (std::size_t i = 1; i < off.size(); ++i) off[i] += off[i - 1];
  std::vector<int> src(static_cast<std::size_t>(N) * K);
  {
    std::vector<int> cursor(off.begin(), off.end() - 1);
    for (int s = 0; s < N; ++s)
      for (int c = 0; c < K; ++c) src[cursor[static_cast<std::size_t>(c) * N + delta[static_cast<std::size_t>(s) * K + c]]++] = s;
  }

  // Partition bookkeeping: ord holds states grouped by block, pos/blk index
  // into it, block b occupies ord[bfirst[b]..bpast[b]).
  std::vector<int> ord(N), pos(N), blk(N);
  for (int s = 0; s < N; ++s) {
    ord[s] = s;
    pos[s] = s;
    blk[s] = s == sink ? 1 : 0;
  }
  std::vector<int> bfirst{0, m}, bpast{m, N};
  bfirst.reserve(N + 1);
  bpast.reserve(N + 1);
  int nblocks = 2;

  std::vector<std::pair<int, int>> wl;
  std::vector<char> in_wl(static_cast<std::size_t>(N) * K, 0);
  auto push = [&](int b, int c) {
    if (!in_wl[static_cast<std::size_t>(b) * K + c]) {
      in_wl[static_cast<std::size_t>(b) * K + c] = 1;
      wl.emplace_back(b, c);
    }
  };
  for (int c = 0; c < K; ++c) push(1, c);  // the sink block is the smaller half

  std::vector<int> marked(N, 0);
  std::vector<int> touched;
  std::vector<int> splitter;

  while (!wl.empty()) {
    const auto [A, c] = wl.back();
    wl.pop_back();
    in_wl[static_cast<std::size_t>(A) * K + c] = 0;
    splitter.assign(ord.begin() + bfirst[A], ord.begin() + bpast[A]);
    touched.clear();
    for (int t : splitter) {
      const std::size_t bucket = static_cast<std::size_t>(c) * N + t;
      for (int i = off[bucket]; i < off[bucket + 1]; ++i) {
        const int p = src[i];
        const int B = blk[p];
        if (marked[B] == 0) touched.push_back(B);
        const int where = pos[p];
        const int target = bfirst[B] + marked[B];
        if (where != target) {
          const int other = ord[target];
          ord[target] = p;
          ord[where] = other;
          pos[p] = target;
          pos[other] = where;
        }
        ++marked[B];
      }
    }
    for (int B : touched) {
      const int mk = marked[B];
      marked[B] = 0;
      const int size = bpast[B] - bfirst[B];
      if (mk == size) continue;
      // Marked states split off as a new block; B keeps the rest, so stale
      // worklist entries for B stay meaningful.
      const int nb = nblocks++;
      bfirst.push_back(bfirst[B]);
      bpast.push_back(bfirst[B] + mk);
      bfirst[B] += mk;
      for (int i = bfirst[nb]; i < bpast[nb]; ++i) blk[ord[i]] = nb;
      const int size_nb = mk, size_b = size - mk;
      for (int d = 0; d < K; ++d) {
        if (in_wl[static_cast<std::size_t>(B) * K + d])
          push(nb, d);
        else
          push(size_nb <= size_b ? nb : B, d);
      }
    }
  }

  out.block_of.assign(m, -1);
  std::vector<int> remap(nblocks, -1);
  int bc = 0;
  for (int s = 0; s < m; ++s) {
    int& r = remap[blk[s]];
    if (r < 0) r = bc++;
    out.block_of[s] = r;
  }
  out.block_count = bc;
  return out;
}

namespace {

// Quotient of the core by a partition with the tail path reattached in front.
// For partitions contained in the Nerode partition the quotient is already
// deterministic; a clash would mean the equivalence used is unsound, hence
// logic_error.
StallingsGraph quotient_with_tail(const StallingsGraph& h, const CoreDecomposition& d, const CoreAutomaton& core,
                                  const std::vector<int>& block_of, int nblocks) {
  const int T = static_cast<int>(d.tail_vertices.size());
  const Vertex n = T + nblocks;
  const int width = 2 * h.rank();
  std::vector<Vertex> slot(static_cast<std::size_t>(n) * width, kNoVertex);
  std::vector<Edge> edges;
  auto put = [&](Vertex p, int gen, Vertex q) {
    const int sym = 2 * (gen - 1);
    Vertex& fwd = slot[static_cast<std::size_t>(p) * width + sym];
    Vertex& bwd = slot[static_cast<std::size_t>(q) * width + sym + 1];
    if ((fwd != kNoVertex && fwd != q) || (bwd != kNoVertex && bwd != p))
      throw std::logic_error("core quotient required folding");
    if (fwd == kNoVertex) {
      fwd = q;
      bwd = p;
      edges.push_back({p, gen, q});
    }
  };
  for (int i = 0; i < T; ++i) {
    const Letter l = d.tail_word.at(static_cast<std::size_t>(i));
    const Vertex a = i;
    const Vertex b = (i + 1 < T) ? i + 1 : T + block_of[core.entry];
    if (l.is_inverse())
      put(b, l.generator(), a);
    else
      put(a, l.generator(), b);
  }
  for (Vertex s = 0; s < core.state_count; ++s)
    for (int gen = 1; gen <= h.rank(); ++gen) {
      Vertex t = core.next_sym(s, 2 * (gen - 1));
      if (t != kNoVertex) put(T + block_of[s], gen, T + block_of[t]);
    }
  return canonicalize(StallingsGraph::from_edges(h.rank(), n, edges));
}

}  // namespace

StallingsGraph commensurator(const StallingsGraph& h) {
  const CoreDecomposition d = decompose(h);
  const CoreAutomaton core = core_automaton(h, d);
  const VertexPartition part = nerode_partition(core);
  return quotient_with_tail(h, d, core, part.block_of, part.block_count);
}

bool is_identification_fi(const StallingsGraph& h, Vertex p, Vertex q) {
  if (p < 0 || p >= h.vertex_count() || q < 0 || q >= h.vertex_count())
    throw std::out_of_range("vertex id out of range");
  const CoreDecomposition d = decompose(h);
  if (!d.in_core[p] || !d.in_core[q]) return false;
  const CoreAutomaton core = core_automaton(h, d);
  const VertexPartition part = nerode_partition(core);
  return part.block_of[core.state_of[p]] == part.block_of[core.state_of[q]];
}

bool sim_by_product_covers(const StallingsGraph& h, Vertex p, Vertex q) {
  if (p < 0 || p >= h.vertex_count() || q < 0 || q >= h.vertex_count())
    throw std::out_of_range("vertex id out of range");
  const CoreDecomposition d = decompose(h);
  if (!d.in_core[p] || !d.in_core[q]) return false;
  const CoreAutomaton core = core_automaton(h, d);
  const int K = 2 * core.rank;
  const Vertex m = core.state_count;
  std::unordered_set<std::int64_t> seen;
  std::vector<std::pair<Vertex, Vertex>> queue;
  auto visit = [&](Vertex x, Vertex y) {
    if (seen.insert(static_cast<std::int64_t>(x) * m + y).second) queue.emplace_back(x, y);
  };
  visit(core.state_of[p], core.state_of[q]);
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const auto [x, y] = queue[qi];
    for (int s = 0; s < K; ++s) {
      const Vertex dx = core.next_sym(x, s), dy = core.next_sym(y, s);
      if ((dx == kNoVertex) != (dy == kNoVertex)) return false;  // one projection fails to lift
      if (dx != kNoVertex) visit(dx, dy);
    }
  }
  return true;
}

namespace {

struct SimpleUf {
  std::vector<Vertex> parent;
  explicit SimpleUf(Vertex n) : parent(n) {
    for (Vertex i = 0; i < n; ++i) parent[i] = i;
  }
  Vertex find(Vertex x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  // Returns false if already merged.
  bool unite(Vertex a, Vertex b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

// Transition closure of partition + one extra merge, on the core automaton.
// All merged states share a Nerode block, hence identical defined letters.
std::vector<int> closed_merge(const CoreAutomaton& core, const std::vector<int>& block_of, Vertex p, Vertex q) {
  const Vertex m = core.state_count;
  const int K = 2 * core.rank;
  SimpleUf uf(m);
  std::vector<Vertex> rep(m, kNoVertex);  // first state seen per input block
  std::vector<std::pair<Vertex, Vertex>> pending;
  for (Vertex s = 0; s < m; ++s) {
    Vertex& r = rep[block_of[s]];
    if (r == kNoVertex)
      r = s;
    else
      pending.emplace_back(r, s);
  }
  pending.emplace_back(p, q);
  while (!pending.empty()) {
    auto [a, b] = pending.back();
    pending.pop_back();
    if (!uf.unite(a, b)) continue;
    for (int s = 0; s < K; ++s) {
      const Vertex ta = core.next_sym(a, s), tb = core.next_sym(b, s);
      if (ta != kNoVertex && tb != kNoVertex && uf.find(ta) != uf.find(tb)) pending.emplace_back(ta, tb);
    }
  }
  std::vector<int> sig(m);
  std::vector<int> remap(m, -1);
  int bc = 0;
  for (Vertex s = 0; s < m; ++s) {
    int& r = remap[uf.find(s)];
    if (r < 0) r = bc++;
    sig[s] = r;
  }
  return sig;
}

int block_count_of(const std::vector<int>& sig) {
  int mx = -1;
  for (int b : sig) mx = std::max(mx, b);
  return mx + 1;
}

// True when every a-block lies inside a b-block (a refines b).
bool refines(const std::vector<int>& a, int a_blocks, const std::vector<int>& b) {
  std::vector<int> map(a_blocks, -1);
  for (std::size_t s = 0; s < a.size(); ++s) {
    int& m = map[a[s]];
    if (m < 0)
      m = b[s];
    else if (m != b[s])
      return false;
  }
  return true;
}

}  // namespace

ExtensionLattice enumerate_fi_extensions(const StallingsGraph& h, std::size_t cap) {
  const CoreDecomposition d = decompose(h);
  const CoreAutomaton core = core_automaton(h, d);
  const VertexPartition nerode = nerode_partition(core);
  const Vertex m = core.state_count;

  std::vector<std::vector<Vertex>> nerode_block(nerode.block_count);
  for (Vertex s = 0; s < m; ++s) nerode_block[nerode.block_of[s]].push_back(s);

  std::vector<int> discrete(m);
  for (Vertex s = 0; s < m; ++s) discrete[s] = s;

  std::map<std::vector<int>, int> seen;
  std::vector<std::vector<int>> partitions;
  seen.emplace(discrete, 0);
  partitions.push_back(discrete);
  for (std::size_t qi = 0; qi < partitions.size(); ++qi) {
    const std::vector<int> cur = partitions[qi];  // copy: partitions grows below
    for (const auto& block : nerode_block) {
      for (std::size_t i = 0; i < block.size(); ++i)
        for (std::size_t j = i + 1; j < block.size(); ++j) {
          if (cur[block[i]] == cur[block[j]]) continue;
          std::vector<int> sig = closed_merge(core, cur, block[i], block[j]);
          if (seen.emplace(sig, static_cast<int>(partitions.size())).second) {
            partitions.push_back(std::move(sig));
            if (partitions.size() > cap) throw SemanticError("extension lattice exceeds the member cap");
          }
        }
    }
  }

  ExtensionLattice lat;
  lat.members.reserve(partitions.size());
  for (const auto& sig : partitions) {
    const int blocks = block_count_of(sig);
    if (m % blocks != 0) throw std::logic_error("congruence blocks are not equal-sized fibers");
    LatticeMember mem{quotient_with_tail(h, d, core, sig, blocks), m / blocks, "", sig};
    mem.canonical = graph_text(mem.graph);
    lat.members.push_back(std::move(mem));
  }
  std::sort(lat.members.begin(), lat.members.end(), [](const LatticeMember& a, const LatticeMember& b) {
    return a.index != b.index ? a.index < b.index : a.canonical < b.canonical;
  });

  const int M = static_cast<int>(lat.members.size());
  std::vector<int> blocks_of_member(M);
  for (int i = 0; i < M; ++i) blocks_of_member[i] = block_count_of(lat.members[i].block_of);
  std::vector<std::vector<bool>> leq(M, std::vector<bool>(M, false));
  for (int i = 0; i < M; ++i)
    for (int j = 0; j < M; ++j) {
      if (i == j) continue;
      if (refines(lat.members[i].block_of, blocks_of_member[i], lat.members[j].block_of)) {
        leq[i][j] = true;
        lat.order.emplace_back(i, j);
      }
    }
  for (const auto& [i, j] : lat.order) {
    bool covering = true;
    for (int k = 0; k < M && covering; ++k)
      if (leq[i][k] && leq[k][j]) covering = false;
    if (covering) lat.hasse.emplace_back(i, j);
  }
  for (int i = 0; i < M; ++i) {
    if (blocks_of_member[i] == m) lat.bottom = i;
    if (lat.members[i].block_of == nerode.block_of) lat.top = i;
  }
  return lat;
}

FiBound fi_extension_bound(std::int64_t n) {
  if (n < 1) throw SemanticError("vertex count must be at least 1");
  FiBound b;
  b.power = std::pow(static_cast<double>(n), 0.5 * (1.0 + std::log2(static_cast<double>(n))));
  b.exact = 1;
  for (std::int64_t v = n; v > 1; v /= 2) b.exact *= v;
  return b;
}

mpz_class subspace_count(int k) {
  if (k < 0 || k > 16) throw SemanticError("dimension must be in 0..16");
  auto divexact = [](const mpz_class& a, const mpz_class& b) {
    if (!mpz_divisible_p(a.get_mpz_t(), b.get_mpz_t())) throw std::logic_error("subspace count: non-integral step");
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
  };
  mpz_class total = 1;  // the zero-dimensional subspace
  mpz_class factorial = 1;
  for (int d = 1; d <= k; ++d) {
    factorial *= d;
    mpz_class l_dk = 1, l_dd = 1;
    for (int i = 0; i < d; ++i) {
      l_dk *= (mpz_class(1) << k) - (mpz_class(1) << i);
      l_dd *= (mpz_class(1) << d) - (mpz_class(1) << i);
    }
    const mpz_class m_dk = divexact(l_dk, factorial);
    const mpz_class m_dd = divexact(l_dd, factorial);
    total += divexact(m_dk, m_dd);
  }
  if (k >= 1) {
    // total must exceed 2^(k*k/4), checked without fractional exponents.
    const mpz_class fourth = total * total * total * total;
    if (fourth <= (mpz_class(1) << (k * k))) throw std::logic_error("subspace count fell below its lower bound");
  }
  return total;
}

bool fi_equivalent(const StallingsGraph& h, const StallingsGraph& k) {
  if (h.rank() != k.rank()) throw std::invalid_argument("basis mismatch");
  const CoreDecomposition dh = decompose(h), dk = decompose(k);
  if (dh.tail_word != dk.tail_word) return false;
  const CoreAutomaton ch = core_automaton(h, dh), ck = core_automaton(k, dk);
  std::unordered_set<std::int64_t> seen;
  std::vector<std::pair<Vertex, Vertex>> queue;
  auto visit = [&](Vertex x, Vertex y) {
    if (seen.insert(static_cast<std::int64_t>(x) * ck.state_count + y).second) queue.emplace_back(x, y);
  };
  visit(ch.entry, ck.entry);
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    const auto [x, y] = queue[qi];
    for (int s = 0; s < 2 * ch.rank; ++s) {
      const Vertex dx = ch.next_sym(x, s), dy = ck.next_sym(y, s);
      if ((dx == kNoVertex) != (dy == kNoVertex)) return false;
      if (dx != kNoVertex) visit(dx, dy);
    }
  }
  return true;
}

LanguageReport validate_extension_language(const StallingsGraph& h, int depth) {
  LanguageReport rep;
  rep.depth = depth;
  const CoreDecomposition d = decompose(h);
  const CoreAutomaton core = core_automaton(h, d);
  const VertexPartition part = nerode_partition(core);
  const int K = 2 * core.rank;

  // Nerode-minimized core automaton. States in one block share their
  // readable language, so the quotient transitions are consistent.
  const int B = part.block_count;
  std::vector<Vertex> mnext(static_cast<std::size_t>(B) * K, kNoVertex);
  for (Vertex s = 0; s < core.state_count; ++s)
    for (int c = 0; c < K; ++c) {
      const Vertex t = core.next_sym(s, c);
      if (t == kNoVertex) continue;
      Vertex& cell = mnext[static_cast<std::size_t>(part.block_of[s]) * K + c];
      const Vertex tb = part.block_of[t];
      if (cell != kNoVertex && cell != tb) throw std::logic_error("minimized core is not deterministic");
      cell = tb;
    }
  const Vertex entry = core.state_count ? part.block_of[core.entry] : 0;

  rep.involutive = true;
  for (int b = 0; b < B; ++b)
    for (int c = 0; c < K; ++c) {
      const Vertex t = mnext[static_cast<std::size_t>(b) * K + c];
      if (t != kNoVertex && mnext[static_cast<std::size_t>(t) * K + (c ^ 1)] != b) rep.involutive = false;
    }
  rep.all_accepting = true;  // partial automaton: every state accepts
  rep.out_degree2 = true;
  for (int b = 0; b < B; ++b) {
    int deg = 0;
    for (int c = 0; c < K; ++c) deg += mnext[static_cast<std::size_t>(b) * K + c] != kNoVertex;
    if (deg < 2) rep.out_degree2 = false;
  }
  if (d.tail_word.empty()) {
    rep.tail_step = true;
  } else {
    const int back = d.tail_word.at(d.tail_word.length() - 1).inverse().sym();
    rep.tail_step = mnext[static_cast<std::size_t>(entry) * K + back] == kNoVertex;
  }

  // All readable words of length <= depth from the entry, as sym strings.
  std::vector<std::string> words{""};
  std::vector<Vertex> ends{entry};
  std::unordered_set<std::string> set{""};
  std::size_t lo = 0;
  for (int len = 1; len <= depth; ++len) {
    const std::size_t hi = words.size();
    for (std::size_t i = lo; i < hi; ++i)
      for (int c = 0; c < K; ++c) {
        const Vertex t = mnext[static_cast<std::size_t>(ends[i]) * K + c];
        if (t == kNoVertex) continue;
        std::string w = words[i];
        w.push_back(static_cast<char>('0' + c));
        set.insert(w);
        words.push_back(std::move(w));
        ends.push_back(t);
        if (words.size() > 2'000'000) throw SemanticError("language enumeration too large; lower the depth");
      }
    lo = hi;
  }

  rep.prefix_closed = true;
  for (const std::string& w : words)
    if (!w.empty() && !set.count(w.substr(0, w.size() - 1))) rep.prefix_closed = false;

  auto inv_string = [](const std::string& w) {
    std::string r(w.rbegin(), w.rend());
    for (char& c : r) c = static_cast<char>('0' + ((c - '0') ^ 1));
    return r;
  };

  rep.inverse_padding = true;
  for (const std::string& u : words) {
    if (2 * u.size() > static_cast<std::size_t>(depth)) continue;
    const std::string round_trip = u + inv_string(u);
    for (const std::string& v : words) {
      if (round_trip.size() + v.size() > static_cast<std::size_t>(depth)) continue;
      if (!set.count(round_trip + v)) rep.inverse_padding = false;
    }
  }

  rep.cancellation = true;
  for (const std::string& z : words) {
    const std::size_t n = z.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 1; i + 2 * l <= n; ++l) {
        bool mirror = true;
        for (std::size_t t = 0; t < l && mirror; ++t)
          if (((z[i + t] - '0') ^ 1) != (z[i + 2 * l - 1 - t] - '0')) mirror = false;
        if (!mirror) continue;
        if (!set.count(z.substr(0, i) + z.substr(i + 2 * l))) rep.cancellation = false;
      }
  }

  rep.extendable = true;
  for (std::size_t i = 0; i < words.size(); ++i) {
    const std::string& w = words[i];
    if (w.empty() || w.size() >= static_cast<std::size_t>(depth)) continue;
    const int banned = (w.back() - '0') ^ 1;
    bool ok = false;
    for (int c = 0; c < K && !ok; ++c)
      if (c != banned && mnext[static_cast<std::size_t>(ends[i]) * K + c] != kNoVertex) ok = true;
    if (!ok) rep.extendable = false;
  }
  return rep;
}

}  // namespace stallings
