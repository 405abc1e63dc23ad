#ifndef SIMCON_CONGRUENCE_HPP_
#define SIMCON_CONGRUENCE_HPP_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "subwords.hpp"
#include "word.hpp"

namespace simcon {

// Two words are related at cap n exactly when they have the same subwords of
// length <= n.  Keys give that relation a comparable token:
//
//   - a word shorter than n is alone in its class, so the word itself is
//     the key (kind short_word);
//   - otherwise the set of subwords of length exactly n determines the whole
//     set up to n (every shorter subword extends to length n inside the
//     word), so the key is that set, held as a bitset over all k^n words of
//     length n (kind exact_set);
//   - fingerprint keys replace the exact_set payload by a 128-bit digest of
//     its canonical serialization, trading certainty for memory.

enum class KeyMode { exact, fingerprint };
enum class KeyKind : std::uint8_t { short_word = 1, exact_set = 2, fingerprint = 3 };

struct KeyBudget {
  // Upper bound on the bits allocated across all profile levels, i.e. on
  // sum_{j<=n} k^j.  Mirrors the subword-set member budget: the bitset has
  // one bit per potential member.
  std::uint64_t max_total_bits = 1ull << 25;
};

class CongruenceKey {
 public:
  CongruenceKey(KeyKind kind, std::uint32_t cap, std::uint32_t k,
                std::string payload)
      : kind_(kind), cap_(cap), k_(k), payload_(std::move(payload)) {}

  KeyKind kind() const { return kind_; }
  std::uint32_t cap() const { return cap_; }
  std::uint32_t alphabet_size() const { return k_; }
  std::string const& payload() const { return payload_; }

  // Flat byte form, suitable as a hash-set element.  Includes the kind tag
  // so keys of different kinds can never compare equal.
  std::string storage_blob() const;

  friend bool operator==(CongruenceKey const& a, CongruenceKey const& b) {
    return a.kind_ == b.kind_ && a.cap_ == b.cap_ && a.k_ == b.k_
           && a.payload_ == b.payload_;
  }
  friend bool operator!=(CongruenceKey const& a, CongruenceKey const& b) {
    return !(a == b);
  }

 private:
  KeyKind kind_;
  std::uint32_t cap_;
  std::uint32_t k_;
  std::string payload_;
};

// Incremental subword bookkeeping for one word: levels[j] is the bitset of
// length-j subwords of the letters consumed so far, indexed by the rank of
// the word in the lexicographic order of all k^j words of length j.
class SubwordProfile {
 public:
  SubwordProfile(Alphabet alphabet, std::uint32_t n, KeyBudget budget = {});

  void append(letter_t a);

  std::uint32_t cap() const { return n_; }
  std::uint32_t alphabet_size() const { return k_; }
  std::uint64_t consumed() const { return consumed_; }

  std::vector<std::uint64_t> const& level(std::uint32_t j) const {
    return levels_[j];
  }
  std::uint64_t level_bit_count(std::uint32_t j) const { return sizes_[j]; }
  std::uint64_t level_popcount(std::uint32_t j) const;

  // Raw limb bytes of the top level; canonical for fixed (k, n).
  std::string top_level_bytes() const;

  // Ascending member ranks of level j.
  void for_each_member(std::uint32_t j,
                       std::function<void(std::uint64_t)> const& fn) const;

  // Approximate heap footprint, for budget accounting.
  std::size_t memory_bytes() const;

 private:
  std::uint32_t k_;
  std::uint32_t n_;
  std::uint64_t consumed_;
  std::vector<std::uint64_t> sizes_;                 // k^j per level
  std::vector<std::vector<std::uint64_t>> levels_;   // bit limbs per level
};

// Rank <-> word conversions within A_k^len, lexicographic order.
Word word_from_rank(std::uint64_t rank, std::uint32_t len, std::uint32_t k);
std::uint64_t rank_of_word(Word const& w, std::uint32_t k);

// Comma-joined text of the length-n words whose bits are set; the format
// fingerprints are computed over.
std::string serialize_exact_level(std::vector<std::uint64_t> const& limbs,
                                  std::uint32_t n, std::uint32_t k);

CongruenceKey key_from_profile(SubwordProfile const& profile, Word const& w,
                               KeyMode mode);
CongruenceKey congruence_key(Word const& x, std::uint32_t n, KeyMode mode,
                             Alphabet alphabet, KeyBudget budget = {});

bool equivalent(Word const& x, Word const& y, std::uint32_t n,
                Alphabet alphabet, KeyBudget budget = {});

// Witness search for inequivalent pairs: the shortest length at which the
// subword sets differ; at that length, the lexicographically least witness
// on x's side when x has one, otherwise the least on y's side.
struct Distinction {
  bool equivalent;
  Word witness;
  bool witness_in_first;
};
Distinction distinguish(Word const& x, Word const& y, std::uint32_t n,
                        Alphabet alphabet, KeyBudget budget = {});

struct OracleBudget {
  std::uint64_t max_words = 1ull << 22;
};

// Exhaustive shortlex scan over words built from the letters occurring in x;
// oracle-grade, small instances only.
Word minimal_representative(Word const& x, std::uint32_t n,
                            OracleBudget budget = {});
bool is_minimal(Word const& x, std::uint32_t n, OracleBudget budget = {});

}  // namespace simcon

#endif  // SIMCON_CONGRUENCE_HPP_
