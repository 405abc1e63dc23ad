#include "richness.hpp"

namespace simcon {

bool is_rich(Word const& x, Alphabet alphabet) {
  std::vector<bool> seen(alphabet.k, false);
  std::uint32_t distinct = 0;
  for (letter_t a : x) {
    if (alphabet.contains(a) && !seen[a - 1]) {
      seen[a - 1] = true;
      if (++distinct == alphabet.k) {
        return true;
      }
    }
  }
  return false;
}

Word RichFactorization::recompose() const {
  Word out;
  for (Pair const& p : pairs) {
    out.append(p.segment);
    out.push_back(p.separator);
  }
  out.append(tail);
  return out;
}

RichFactorization rich_factorization(Word const& x, Alphabet alphabet) {
  RichFactorization fact;
  std::vector<bool> seen(alphabet.k, false);
  std::uint32_t distinct = 0;
  Word segment;
  for (letter_t a : x) {
    if (!alphabet.contains(a)) {
      throw input_error("letter " + std::to_string(a)
                        + " outside alphabet of size "
                        + std::to_string(alphabet.k));
    }
    if (!seen[a - 1]) {
      seen[a - 1] = true;
      ++distinct;
    }
    if (distinct == alphabet.k) {
      // The prefix up to and including a is the shortest rich one: dropping
      // a leaves a poor word, so a is the separator.
      fact.pairs.push_back({std::move(segment), a});
      segment = Word();
      seen.assign(alphabet.k, false);
      distinct = 0;
    } else {
      segment.push_back(a);
    }
  }
  fact.tail = std::move(segment);
  return fact;
}

std::size_t richness(Word const& x, Alphabet alphabet) {
  return rich_factorization(x, alphabet).richness();
}

bool is_l_rich(Word const& x, std::size_t l, Alphabet alphabet) {
  std::size_t const m = richness(x, alphabet);
  if (l == 0) {
    return m == 0;  // 0-rich means poor, not "empty concatenation"
  }
  return m >= l;
}

std::string factorization_to_text(RichFactorization const& f) {
  std::string out;
  for (RichFactorization::Pair const& p : f.pairs) {
    out += to_text(p.segment);
    out += "\xc2\xb7";  // '·'
    out += to_text(Word({p.separator}));
    out += "|";
  }
  out += to_text(f.tail);
  return out;
}

}  // namespace simcon
