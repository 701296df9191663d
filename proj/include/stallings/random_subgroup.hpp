#pragma once

// Reproducible random subgroup generation for experiments and fuzz tests.

#include <cstdint>
#include <vector>

#include "stallings/word.hpp"

namespace stallings {

struct RandomSpec {
  int rank = 2;
  int count = 3;        // number of generator words
  int max_len = 8;      // each word has length in 1..max_len
  std::uint64_t seed = 0;
};

// Deterministic for a given spec, independent of platform: the engine is
// mt19937_64 and bounded draws use multiply-shift, not the (unspecified)
// standard distributions. Words are reduced by construction: consecutive
// letters are never mutual inverses.
std::vector<ReducedWord> random_generators(const RandomSpec& spec);

}  // namespace stallings
