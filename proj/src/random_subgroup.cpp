#include "stallings/random_subgroup.hpp"

#include <random>
#include <stdexcept>

namespace stallings {

namespace {

// Uniform-enough draw from [0, n) via the high bits of a 64-bit product;
// bit-stable across platforms, unlike std::uniform_int_distribution.
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(rng()) * n) >> 64);
}

}  // namespace

std::vector<ReducedWord> random_generators(const RandomSpec& spec) {
  Basis basis(spec.rank);  // validates the rank
  if (spec.count < 0 || spec.max_len < 1) throw std::invalid_argument("need count >= 0 and max_len >= 1");
  std::mt19937_64 rng(spec.seed);
  std::vector<ReducedWord> out;
  out.reserve(spec.count);
  for (int i = 0; i < spec.count; ++i) {
    const int len = 1 + static_cast<int>(draw(rng, spec.max_len));
    Word w;
    w.reserve(len);
    for (int j = 0; j < len; ++j) {
      if (w.empty()) {
        w.push_back(Letter::from_sym(static_cast<int>(draw(rng, 2 * spec.rank))));
      } else {
        // Any sym except the inverse of the previous letter keeps w reduced.
        const int banned = w.back().inverse().sym();
        int sym = static_cast<int>(draw(rng, 2 * spec.rank - 1));
        if (sym >= banned) ++sym;
        w.push_back(Letter::from_sym(sym));
      }
    }
    out.push_back(reduce(std::move(w)));
  }
  return out;
}

}  // namespace stallings
