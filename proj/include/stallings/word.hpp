#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "stallings/errors.hpp"

namespace stallings {

// Free group basis. Generators are numbered 1..rank; rank is capped at 26 so
// compact notation (a..z, uppercase for inverses) can spell every letter.
struct Basis {
  int rank;

  explicit Basis(int r) : rank(r) {
    if (r < 1 || r > 26) throw std::invalid_argument("basis rank must be in 1..26");
  }
};

// One letter of the symmetrized alphabet: a generator or a generator inverse.
// sym() indexes the alphabet in the order a1 < A1 < a2 < A2 < ...; this order
// is used everywhere a deterministic letter sweep is needed.
class Letter {
 public:
  Letter(int generator, bool inverse) : code_(static_cast<std::int8_t>(inverse ? -generator : generator)) {}

  static Letter from_sym(int sym) { return Letter(sym / 2 + 1, (sym & 1) != 0); }

  int generator() const { return code_ < 0 ? -code_ : code_; }
  bool is_inverse() const { return code_ < 0; }
  Letter inverse() const {
    Letter l = *this;
    l.code_ = static_cast<std::int8_t>(-l.code_);
    return l;
  }
  int sym() const { return 2 * (generator() - 1) + (is_inverse() ? 1 : 0); }
  char to_char() const { return static_cast<char>((is_inverse() ? 'A' : 'a') + generator() - 1); }

  friend bool operator==(Letter a, Letter b) { return a.code_ == b.code_; }
  friend bool operator!=(Letter a, Letter b) { return a.code_ != b.code_; }

 private:
  std::int8_t code_;
};

// A word over the symmetrized alphabet, possibly with cancelling factors.
using Word = std::vector<Letter>;

struct CyclicDecomposition;

// A freely reduced word: no adjacent mutually inverse letters. Instances are
// only produced by reduce() and the operations below, so the invariant holds
// by construction.
class ReducedWord {
 public:
  ReducedWord() = default;

  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const std::vector<Letter>& letters() const { return letters_; }
  Letter at(std::size_t i) const { return letters_[i]; }

  friend bool operator==(const ReducedWord& a, const ReducedWord& b) { return a.letters_ == b.letters_; }
  friend bool operator!=(const ReducedWord& a, const ReducedWord& b) { return !(a == b); }
  friend bool operator<(const ReducedWord& a, const ReducedWord& b);

 private:
  friend ReducedWord reduce(const Word& w);
  friend ReducedWord invert(const ReducedWord& u);
  friend ReducedWord concat(const ReducedWord& u, const ReducedWord& v);
  friend struct CyclicDecomposition;
  friend CyclicDecomposition cyclic_reduce(const ReducedWord& u);

  explicit ReducedWord(std::vector<Letter> letters) : letters_(std::move(letters)) {}

  std::vector<Letter> letters_;
};

// u = shell . body . shell^-1 with body cyclically reduced; body is empty
// exactly when u is.
struct CyclicDecomposition {
  ReducedWord shell;
  ReducedWord body;
};

// Parses either compact notation ("aB", whitespace ignored, "1" or "" for the
// identity) or explicit notation ("a1 a2^-1", chosen when a digit appears).
// Throws ParseError on unknown letters, generators beyond the basis rank, or
// malformed exponents.
Word parse_word(std::string_view text, const Basis& basis);

// Free reduction by a single stack pass.
ReducedWord reduce(const Word& w);

ReducedWord invert(const ReducedWord& u);

// Reduced product of two reduced words (cancellation only at the seam).
ReducedWord concat(const ReducedWord& u, const ReducedWord& v);

// Peels mutually inverse end pairs off a reduced word.
CyclicDecomposition cyclic_reduce(const ReducedWord& u);

bool is_reduced(const Word& w);
bool is_cyclically_reduced(const ReducedWord& u);

// Compact notation; the empty word prints as "1".
std::string to_string(const Word& w);
std::string to_string(const ReducedWord& u);

}  // namespace stallings
