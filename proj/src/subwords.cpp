#include "subwords.hpp"

#include <algorithm>
#include <set>

namespace simcon {

bool SubwordSet::contains(Word const& u) const {
  auto it = std::lower_bound(
      members_.begin(), members_.end(), u,
      [](Word const& a, Word const& b) { return shortlex_compare(a, b) < 0; });
  return it != members_.end() && *it == u;
}

std::string SubwordSet::canonical_serialization() const {
  std::string out;
  bool first = true;
  for (Word const& w : members_) {
    if (!first) {
      out.push_back(',');
    }
    first = false;
    out += to_text(w);
  }
  return out;
}

SubwordSet subwords_up_to(Word const& x, std::uint32_t n, SubwordBudget budget) {
  // levels[j] holds the length-j subwords of the prefix processed so far.
  // Appending a letter only ever extends level j from level j-1, so the
  // levels are updated top-down.
  std::uint32_t depth = static_cast<std::uint32_t>(
      std::min<std::uint64_t>(n, x.length()));
  std::vector<std::set<std::vector<letter_t>>> levels(depth + 1);
  levels[0].emplace();

  std::uint64_t member_count = 1;
  std::uint32_t reached = 0;
  for (letter_t a : x) {
    if (reached < depth) {
      ++reached;
    }
    for (std::uint32_t j = reached; j >= 1; --j) {
      for (auto const& w : levels[j - 1]) {
        std::vector<letter_t> ext = w;
        ext.push_back(a);
        if (levels[j].insert(std::move(ext)).second) {
          ++member_count;
          if (member_count > budget.max_members) {
            throw budget_error("subword set exceeds member budget of "
                               + std::to_string(budget.max_members));
          }
        }
      }
    }
  }

  std::vector<Word> members;
  members.reserve(member_count);
  for (auto const& level : levels) {
    for (auto const& w : level) {
      members.emplace_back(w);
    }
  }
  return SubwordSet(n, std::move(members));
}

}  // namespace simcon
