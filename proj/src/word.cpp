#include "stallings/word.hpp"

#include <algorithm>
#include <cctype>

namespace stallings {

bool operator<(const ReducedWord& a, const ReducedWord& b) {
  const auto& x = a.letters();
  const auto& y = b.letters();
  return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(),
                                      [](Letter l, Letter r) { return l.sym() < r.sym(); });
}

namespace {

Letter letter_from_char(char c, const Basis& basis) {
  int gen;
  bool inv;
  if (c >= 'a' && c <= 'z') {
    gen = c - 'a' + 1;
    inv = false;
  } else if (c >= 'A' && c <= 'Z') {
    gen = c - 'A' + 1;
    inv = true;
  } else {
    throw ParseError(std::string("unknown letter '") + c + "'");
  }
  if (gen > basis.rank)
    throw ParseError(std::string("generator '") + c + "' out of range for rank " + std::to_string(basis.rank));
  return Letter(gen, inv);
}

Word parse_compact(std::string_view text, const Basis& basis) {
  Word w;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    w.push_back(letter_from_char(c, basis));
  }
  return w;
}

// Explicit notation: a sequence of "a<k>" factors, each optionally followed
// by "^<int>". Whitespace may separate factors but is not required.
Word parse_explicit(std::string_view text, const Basis& basis) {
  Word w;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    char c = text[i];
    if (c != 'a') throw ParseError(std::string("unknown letter '") + c + "' in explicit notation");
    ++i;
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
      throw ParseError("expected generator index after 'a'");
    long gen = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      gen = gen * 10 + (text[i] - '0');
      if (gen > 26) throw ParseError("generator index out of range");
      ++i;
    }
    if (gen < 1 || gen > basis.rank)
      throw ParseError("generator a" + std::to_string(gen) + " out of range for rank " + std::to_string(basis.rank));
    long exp = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      bool neg = false;
      if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
        neg = text[i] == '-';
        ++i;
      }
      if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
        throw ParseError("malformed exponent");
      long mag = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        mag = mag * 10 + (text[i] - '0');
        if (mag > 1'000'000) throw ParseError("exponent too large");
        ++i;
      }
      exp = neg ? -mag : mag;
    }
    Letter l(static_cast<int>(gen), exp < 0);
    for (long k = 0; k < (exp < 0 ? -exp : exp); ++k) w.push_back(l);
    skip_ws();
  }
  return w;
}

}  // namespace

Word parse_word(std::string_view text, const Basis& basis) {
  std::string stripped;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) stripped.push_back(c);
  if (stripped.empty() || stripped == "1") return {};
  bool has_digit = std::any_of(stripped.begin(), stripped.end(),
                               [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  return has_digit ? parse_explicit(text, basis) : parse_compact(text, basis);
}

ReducedWord reduce(const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.size());
  for (Letter l : w) {
    if (!out.empty() && out.back() == l.inverse())
      out.pop_back();
    else
      out.push_back(l);
  }
  return ReducedWord(std::move(out));
}

ReducedWord invert(const ReducedWord& u) {
  std::vector<Letter> out;
  out.reserve(u.length());
  for (auto it = u.letters().rbegin(); it != u.letters().rend(); ++it) out.push_back(it->inverse());
  return ReducedWord(std::move(out));
}

ReducedWord concat(const ReducedWord& u, const ReducedWord& v) {
  std::size_t i = u.length(), j = 0;
  while (i > 0 && j < v.length() && u.at(i - 1) == v.at(j).inverse()) {
    --i;
    ++j;
  }
  std::vector<Letter> out;
  out.reserve(i + v.length() - j);
  out.insert(out.end(), u.letters().begin(), u.letters().begin() + static_cast<std::ptrdiff_t>(i));
  out.insert(out.end(), v.letters().begin() + static_cast<std::ptrdiff_t>(j), v.letters().end());
  return ReducedWord(std::move(out));
}

CyclicDecomposition cyclic_reduce(const ReducedWord& u) {
  std::size_t lo = 0, hi = u.length();
  while (hi - lo >= 2 && u.at(lo) == u.at(hi - 1).inverse()) {
    ++lo;
    --hi;
  }
  CyclicDecomposition d;
  d.shell = ReducedWord(std::vector<Letter>(u.letters().begin(), u.letters().begin() + static_cast<std::ptrdiff_t>(lo)));
  d.body = ReducedWord(std::vector<Letter>(u.letters().begin() + static_cast<std::ptrdiff_t>(lo),
                                           u.letters().begin() + static_cast<std::ptrdiff_t>(hi)));
  return d;
}

bool is_reduced(const Word& w) {
  for (std::size_t i = 1; i < w.size(); ++i)
    if (w[i] == w[i - 1].inverse()) return false;
  return true;
}

bool is_cyclically_reduced(const ReducedWord& u) {
  if (u.length() < 2) return true;
  return u.at(0) != u.at(u.length() - 1).inverse();
}

std::string to_string(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  s.reserve(w.size());
  for (Letter l : w) s.push_back(l.to_char());
  return s;
}

std::string to_string(const ReducedWord& u) {
  if (u.empty()) return "1";
  std::string s;
  s.reserve(u.length());
  for (Letter l : u.letters()) s.push_back(l.to_char());
  return s;
}

}  // namespace stallings
