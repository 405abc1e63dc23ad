#ifndef SIMCON_RICHNESS_HPP_
#define SIMCON_RICHNESS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "word.hpp"

namespace simcon {

// A word is rich when every letter of the alphabet occurs in it, poor
// otherwise.  Note that 0-rich means poor, not "trivially decomposable":
// is_l_rich(x, 0) holds exactly for poor x.

bool is_rich(Word const& x, Alphabet alphabet);

// x = x_1 a_1 ... x_m a_m y obtained by repeatedly splitting off the
// shortest rich prefix; the x_i and y are poor and m is the richness.
struct RichFactorization {
  struct Pair {
    Word segment;
    letter_t separator;
  };
  std::vector<Pair> pairs;
  Word tail;

  std::size_t richness() const { return pairs.size(); }
  Word recompose() const;
};

RichFactorization rich_factorization(Word const& x, Alphabet alphabet);
std::size_t richness(Word const& x, Alphabet alphabet);
bool is_l_rich(Word const& x, std::size_t l, Alphabet alphabet);

// "x1·a1|x2·a2|...|y" CLI rendering.
std::string factorization_to_text(RichFactorization const& f);

}  // namespace simcon

#endif  // SIMCON_RICHNESS_HPP_
