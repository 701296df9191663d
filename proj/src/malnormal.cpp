#include "stallings/malnormal.hpp"

#include <algorithm>

#include "stallings/errors.hpp"

namespace stallings {

namespace {

constexpr Vertex kMaxMaterialized = 4096;
constexpr std::int64_t kMaxPairBits = std::int64_t{1} << 31;  // 256 MiB of visit bits

inline std::int64_t pack(Vertex p, Vertex q) { return (static_cast<std::int64_t>(p) << 32) | static_cast<std::uint32_t>(q); }

}  // namespace

ProductGraph fiber_square(const CoreAutomaton& core) {
  const Vertex m = core.state_count;
  if (m > kMaxMaterialized) throw SemanticError("core too large to materialize the pair product");
  const int K = 2 * core.rank;
  ProductGraph prod;
  prod.m = m;
  prod.component.assign(static_cast<std::size_t>(m) * m, -1);
  std::vector<std::int64_t> queue;
  for (std::int64_t start = 0; start < static_cast<std::int64_t>(m) * m; ++start) {
    if (prod.component[start] != -1) continue;
    const int id = prod.component_count++;
    std::int64_t vertices = 0, degree_sum = 0;
    bool off_diagonal = false;
    queue.clear();
    queue.push_back(start);
    prod.component[start] = id;
    while (!queue.empty()) {
      const std::int64_t cur = queue.back();
      queue.pop_back();
      const Vertex p = static_cast<Vertex>(cur / m), q = static_cast<Vertex>(cur % m);
      ++vertices;
      off_diagonal = off_diagonal || p != q;
      for (int s = 0; s < K; ++s) {
        const Vertex tp = core.next_sym(p, s), tq = core.next_sym(q, s);
        if (tp == kNoVertex || tq == kNoVertex) continue;
        ++degree_sum;
        const std::int64_t next = static_cast<std::int64_t>(tp) * m + tq;
        if (prod.component[next] == -1) {
          prod.component[next] = id;
          queue.push_back(next);
        }
      }
    }
    prod.comp_vertices.push_back(vertices);
    prod.comp_edges.push_back(degree_sum / 2);
    prod.comp_off_diagonal.push_back(off_diagonal);
    prod.comp_cyclic.push_back(degree_sum / 2 >= vertices);
  }
  return prod;
}

std::vector<std::pair<Vertex, Vertex>> infinite_intersection_pairs(const StallingsGraph& h) {
  const CoreDecomposition d = decompose(h);
  const CoreAutomaton core = core_automaton(h, d);
  const Vertex m = core.state_count;
  const std::int64_t pairs = static_cast<std::int64_t>(m) * m;
  if (pairs > kMaxPairBits) throw SemanticError("core too large for the pair scan");
  const int K = 2 * core.rank;

  std::vector<std::uint64_t> visited((pairs + 63) / 64, 0);
  auto test_and_set = [&](Vertex p, Vertex q) {
    const std::int64_t bit = static_cast<std::int64_t>(p) * m + q;
    std::uint64_t& word = visited[bit >> 6];
    const std::uint64_t mask = std::uint64_t{1} << (bit & 63);
    if (word & mask) return true;
    word |= mask;
    return false;
  };
  // Diagonal pairs are pre-marked: the diagonal component never meets an
  // off-diagonal one (projections of a path from (p, p) stay equal), and a
  // scan has nothing to report about it.
  for (Vertex p = 0; p < m; ++p) test_and_set(p, p);

  std::vector<std::pair<Vertex, Vertex>> result;
  std::vector<std::int64_t> queue;
  std::vector<std::int64_t> members;
  for (Vertex sp = 0; sp < m; ++sp)
    for (Vertex sq = 0; sq < m; ++sq) {
      if (test_and_set(sp, sq)) continue;
      queue.clear();
      members.clear();
      queue.push_back(pack(sp, sq));
      std::int64_t degree_sum = 0;
      while (!queue.empty()) {
        const std::int64_t cur = queue.back();
        queue.pop_back();
        members.push_back(cur);
        const Vertex p = static_cast<Vertex>(cur >> 32), q = static_cast<Vertex>(cur & 0xffffffff);
        for (int s = 0; s < K; ++s) {
          const Vertex tp = core.next_sym(p, s), tq = core.next_sym(q, s);
          if (tp == kNoVertex || tq == kNoVertex) continue;
          ++degree_sum;
          if (!test_and_set(tp, tq)) queue.push_back(pack(tp, tq));
        }
      }
      if (degree_sum / 2 < static_cast<std::int64_t>(members.size())) continue;  // tree component
      for (const std::int64_t cur : members) {
        const Vertex p = static_cast<Vertex>(cur >> 32), q = static_cast<Vertex>(cur & 0xffffffff);
        if (p < q) result.emplace_back(core.graph_vertex[p], core.graph_vertex[q]);
      }
    }
  std::sort(result.begin(), result.end());
  result.erase(std::unique(result.begin(), result.end()), result.end());
  return result;
}

bool is_malnormal(const StallingsGraph& h) { return infinite_intersection_pairs(h).empty(); }

MalnormalClosure malnormal_closure(const StallingsGraph& h) {
  MalnormalClosure out{canonicalize(h), 0};
  while (true) {
    const auto pairs = infinite_intersection_pairs(out.graph);
    if (pairs.empty()) return out;
    out.graph = identify_and_fold(out.graph, pairs);
    ++out.iterations;
  }
}

}  // namespace stallings
