#include "stallings/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "stallings/errors.hpp"

namespace stallings {

namespace {

// Lines with comments stripped and surrounding whitespace trimmed, paired
// with their 1-based line numbers; blank results are dropped.
std::vector<std::pair<int, std::string>> significant_lines(const std::string& text) {
  std::vector<std::pair<int, std::string>> out;
  std::istringstream in(text);
  std::string line;
  for (int no = 1; std::getline(in, line); ++no) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::size_t b = 0, e = line.size();
    while (b < e && std::isspace(static_cast<unsigned char>(line[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(line[e - 1]))) --e;
    if (b < e) out.emplace_back(no, line.substr(b, e - b));
  }
  return out;
}

int parse_header_int(const std::string& line, const std::string& key) {
  if (line.compare(0, key.size(), key) != 0)
    throw ParseError("expected \"" + key + " <number>\", got \"" + line + "\"");
  try {
    std::size_t used = 0;
    const int v = std::stoi(line.substr(key.size()), &used);
    if (key.size() + used != line.size()) throw ParseError("trailing characters after \"" + key + "\"");
    return v;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError("malformed number in \"" + line + "\"");
  }
}

}  // namespace

SubgroupFile parse_subgroup_text(const std::string& text) {
  const auto lines = significant_lines(text);
  if (lines.empty()) throw ParseError("empty subgroup file: missing \"rank:\" header");
  const int rank = parse_header_int(lines[0].second, "rank:");
  if (rank < 1 || rank > 26) throw ParseError("line " + std::to_string(lines[0].first) + ": rank must be in 1..26");
  SubgroupFile f{Basis(rank), {}};
  for (std::size_t i = 1; i < lines.size(); ++i) {
    try {
      f.generators.push_back(reduce(parse_word(lines[i].second, f.basis)));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(lines[i].first) + ": " + e.what());
    }
  }
  return f;
}

std::string subgroup_text(int rank, const std::vector<ReducedWord>& generators) {
  std::string out = "rank: " + std::to_string(rank) + "\n";
  for (const ReducedWord& w : generators) out += to_string(w) + "\n";
  return out;
}

StallingsGraph parse_graph_text(const std::string& text, int rank) {
  const auto lines = significant_lines(text);
  if (lines.size() < 2) throw ParseError("graph text needs \"vertices:\" and \"base:\" headers");
  const int n = parse_header_int(lines[0].second, "vertices:");
  if (n < 1) throw ParseError("vertex count must be at least 1");
  const int base = parse_header_int(lines[1].second, "base:");
  if (base != 0) throw ParseError("base must be vertex 0");
  struct RawEdge {
    int line;
    Vertex src, dst;
    int gen;
  };
  std::vector<RawEdge> raw;
  int max_gen = 1;
  for (std::size_t i = 2; i < lines.size(); ++i) {
    const auto& [no, line] = lines[i];
    std::istringstream es(line);
    long p = -1, q = -1;
    std::string letter;
    if (!(es >> p >> letter >> q) || !(es >> std::ws).eof() || letter.size() != 1)
      throw ParseError("line " + std::to_string(no) + ": expected \"p a q\"");
    const char c = letter[0];
    int gen;
    bool inv;
    if (c >= 'a' && c <= 'z') {
      gen = c - 'a' + 1;
      inv = false;
    } else if (c >= 'A' && c <= 'Z') {
      gen = c - 'A' + 1;
      inv = true;
    } else {
      throw ParseError("line " + std::to_string(no) + ": unknown letter '" + std::string(1, c) + "'");
    }
    if (p < 0 || p >= n || q < 0 || q >= n)
      throw ParseError("line " + std::to_string(no) + ": vertex id out of range");
    max_gen = std::max(max_gen, gen);
    if (inv) std::swap(p, q);  // store tail-first with a positive label
    raw.push_back({no, static_cast<Vertex>(p), static_cast<Vertex>(q), gen});
  }
  if (rank == 0) rank = max_gen;
  if (rank < max_gen || rank > 26) throw ParseError("rank " + std::to_string(rank) + " cannot label these edges");
  std::vector<Edge> edges;
  edges.reserve(raw.size());
  for (const RawEdge& e : raw) edges.push_back({e.src, e.gen, e.dst});
  try {
    return StallingsGraph::from_edges(rank, n, edges);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("graph text rejected: ") + e.what());
  }
}

std::string dot_text(const StallingsGraph& g) {
  std::string out = "digraph stallings {\n  rankdir=LR;\n  node [shape=circle];\n  0 [shape=doublecircle];\n";
  for (const Edge& e : g.positive_edges()) {
    out += "  " + std::to_string(e.src) + " -> " + std::to_string(e.dst) + " [label=\"" +
           std::string(1, Letter(e.gen, false).to_char()) + "\"];\n";
  }
  out += "}\n";
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << content)) throw ParseError("cannot write " + path);
}

SubgroupFile load_subgroup(const std::string& path) {
  try {
    return parse_subgroup_text(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace stallings
