#ifndef SIMCON_SUBWORDS_HPP_
#define SIMCON_SUBWORDS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "word.hpp"

namespace simcon {

struct SubwordBudget {
  std::uint64_t max_members = 1ull << 24;
};

// The downward-closed set of subwords of some word, truncated at length cap.
// Members are kept in shortlex order.  This explicit representation is the
// semantic ground truth for the congruence; keys are the compact route.
class SubwordSet {
 public:
  SubwordSet(std::uint32_t cap, std::vector<Word> members)
      : cap_(cap), members_(std::move(members)) {}

  std::uint32_t cap() const { return cap_; }
  std::vector<Word> const& members() const { return members_; }
  std::size_t size() const { return members_.size(); }

  bool contains(Word const& u) const;

  // Members in shortlex order, each in text form, joined by single commas.
  // Fingerprints of full sets and of exact-length slices hash this format.
  std::string canonical_serialization() const;

  friend bool operator==(SubwordSet const& a, SubwordSet const& b) {
    return a.cap_ == b.cap_ && a.members_ == b.members_;
  }

 private:
  std::uint32_t cap_;
  std::vector<Word> members_;
};

// All u with u a subword of x and |u| <= n.
SubwordSet subwords_up_to(Word const& x, std::uint32_t n,
                          SubwordBudget budget = {});

}  // namespace simcon

#endif  // SIMCON_SUBWORDS_HPP_
