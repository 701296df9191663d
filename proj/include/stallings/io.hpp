#pragma once

// File formats: subgroup files (a rank header plus one generator word per
// line), graph text (the canonical_form payload), and DOT export.

#include <string>
#include <vector>

#include "stallings/graph.hpp"
#include "stallings/word.hpp"

namespace stallings {

struct SubgroupFile {
  Basis basis{1};
  std::vector<ReducedWord> generators;
};

// Line-oriented: first significant line "rank: r", then one generator word
// per line. "#" starts a comment; blank lines are skipped.
SubgroupFile parse_subgroup_text(const std::string& text);
std::string subgroup_text(int rank, const std::vector<ReducedWord>& generators);

// Graph text: "vertices: n", "base: 0", then one positive edge "p a q" per
// line in (p, letter) order. rank 0 means: infer from the letters used
// (at least 1). Inverse letters are accepted and written tail-first.
StallingsGraph parse_graph_text(const std::string& text, int rank = 0);

std::string dot_text(const StallingsGraph& g);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

SubgroupFile load_subgroup(const std::string& path);

}  // namespace stallings
