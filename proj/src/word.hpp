#ifndef SIMCON_WORD_HPP_
#define SIMCON_WORD_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace simcon {

// Letters are 1-based indices into an ordered alphabet a_1 < a_2 < ... < a_k.
using letter_t = std::uint32_t;

// A k-letter alphabet.  Only the size matters; the letter order is the index
// order and is fixed.
struct Alphabet {
  std::uint32_t k;

  explicit Alphabet(std::uint32_t k_) : k(k_) {
    if (k == 0) {
      throw input_error("alphabet must have at least one letter");
    }
  }

  bool contains(letter_t a) const { return a >= 1 && a <= k; }
};

// A finite word over some alphabet.  The empty word has length 0.
// Words are plain values; they do not remember which alphabet they were
// parsed against.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<letter_t> letters) : letters_(std::move(letters)) {}

  std::size_t length() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  letter_t operator[](std::size_t i) const { return letters_[i]; }

  std::vector<letter_t> const& letters() const { return letters_; }

  void push_back(letter_t a) { letters_.push_back(a); }
  void append(Word const& w) {
    letters_.insert(letters_.end(), w.letters_.begin(), w.letters_.end());
  }

  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }

  // Largest letter index used, 0 for the empty word.
  letter_t max_letter() const {
    letter_t m = 0;
    for (letter_t a : letters_) {
      m = std::max(m, a);
    }
    return m;
  }

  friend bool operator==(Word const& x, Word const& y) {
    return x.letters_ == y.letters_;
  }
  friend bool operator!=(Word const& x, Word const& y) { return !(x == y); }

 private:
  std::vector<letter_t> letters_;
};

// Text form: letter i is the i-th lowercase Latin letter, so the format only
// covers k <= 26.  Parsing rejects anything else; rendering falls back to
// "{i}" for letters beyond 'z' so diagnostics stay printable.
Word parse_word(std::string_view text, Alphabet alphabet);
std::string to_text(Word const& w);

// u is a (scattered) subword of x.  Greedy left-to-right matching.
bool is_subword(Word const& u, Word const& x);

// Number of occurrences of the letter a in x.
std::size_t letter_count(Word const& x, letter_t a);

// Component a-1 holds min(count of a in x, n), for a = 1..k.
std::vector<std::uint32_t> capped_letter_counts(Word const& x,
                                                std::uint32_t n,
                                                Alphabet alphabet);

// x cut at every occurrence of a: x = s_0 a s_1 a ... a s_p with p the number
// of occurrences and no s_i containing a.
struct LetterDecomposition {
  letter_t separator;
  std::vector<Word> segments;  // p + 1 entries

  std::size_t occurrence_count() const { return segments.size() - 1; }
};
LetterDecomposition decompose_by_letter(Word const& x, letter_t a);

// Length first, then lexicographic on letter indices.  Returns <0, 0, >0.
int shortlex_compare(Word const& x, Word const& y);

}  // namespace simcon

#endif  // SIMCON_WORD_HPP_
