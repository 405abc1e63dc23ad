#include "word.hpp"

#include <algorithm>

namespace simcon {

Word parse_word(std::string_view text, Alphabet alphabet) {
  if (alphabet.k > 26) {
    throw input_error("text format supports at most 26 letters, alphabet has "
                      + std::to_string(alphabet.k));
  }
  std::vector<letter_t> letters;
  letters.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c < 'a' || c >= static_cast<char>('a' + alphabet.k)) {
      throw input_error("invalid letter '" + std::string(1, c)
                        + "' at position " + std::to_string(i + 1)
                        + " for a " + std::to_string(alphabet.k)
                        + "-letter alphabet");
    }
    letters.push_back(static_cast<letter_t>(c - 'a' + 1));
  }
  return Word(std::move(letters));
}

std::string to_text(Word const& w) {
  std::string out;
  out.reserve(w.length());
  for (letter_t a : w) {
    if (a <= 26) {
      out.push_back(static_cast<char>('a' + a - 1));
    } else {
      out += "{" + std::to_string(a) + "}";
    }
  }
  return out;
}

bool is_subword(Word const& u, Word const& x) {
  std::size_t i = 0;
  for (std::size_t j = 0; i < u.length() && j < x.length(); ++j) {
    if (u[i] == x[j]) {
      ++i;
    }
  }
  return i == u.length();
}

std::size_t letter_count(Word const& x, letter_t a) {
  return static_cast<std::size_t>(
      std::count(x.begin(), x.end(), a));
}

std::vector<std::uint32_t> capped_letter_counts(Word const& x,
                                                std::uint32_t n,
                                                Alphabet alphabet) {
  std::vector<std::uint32_t> counts(alphabet.k, 0);
  for (letter_t a : x) {
    if (alphabet.contains(a) && counts[a - 1] < n) {
      ++counts[a - 1];
    }
  }
  return counts;
}

LetterDecomposition decompose_by_letter(Word const& x, letter_t a) {
  LetterDecomposition dec;
  dec.separator = a;
  Word current;
  for (letter_t b : x) {
    if (b == a) {
      dec.segments.push_back(std::move(current));
      current = Word();
    } else {
      current.push_back(b);
    }
  }
  dec.segments.push_back(std::move(current));
  return dec;
}

int shortlex_compare(Word const& x, Word const& y) {
  if (x.length() != y.length()) {
    return x.length() < y.length() ? -1 : 1;
  }
  for (std::size_t i = 0; i < x.length(); ++i) {
    if (x[i] != y[i]) {
      return x[i] < y[i] ? -1 : 1;
    }
  }
  return 0;
}

}  // namespace simcon
