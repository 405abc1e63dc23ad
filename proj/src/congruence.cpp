#include "congruence.hpp"

#include <algorithm>
#include <bit>
#include <cstring>

#include "hash128.hpp"

namespace simcon {

namespace {

std::uint64_t checked_pow(std::uint32_t k, std::uint32_t j,
                          std::uint64_t limit) {
  std::uint64_t v = 1;
  for (std::uint32_t i = 0; i < j; ++i) {
    if (v > limit / k) {
      throw budget_error("profile for k=" + std::to_string(k) + ", n="
                         + std::to_string(j) + " exceeds the bit budget");
    }
    v *= k;
  }
  return v;
}

}  // namespace

std::string CongruenceKey::storage_blob() const {
  std::string blob;
  blob.reserve(1 + payload_.size());
  blob.push_back(static_cast<char>(kind_));
  blob += payload_;
  return blob;
}

SubwordProfile::SubwordProfile(Alphabet alphabet, std::uint32_t n,
                               KeyBudget budget)
    : k_(alphabet.k), n_(n), consumed_(0) {
  sizes_.resize(n_ + 1);
  std::uint64_t total = 0;
  for (std::uint32_t j = 0; j <= n_; ++j) {
    sizes_[j] = checked_pow(k_, j, budget.max_total_bits);
    total += sizes_[j];
    if (total > budget.max_total_bits) {
      throw budget_error("profile for k=" + std::to_string(k_) + ", n="
                         + std::to_string(n_) + " exceeds the bit budget of "
                         + std::to_string(budget.max_total_bits) + " bits");
    }
  }
  levels_.resize(n_ + 1);
  for (std::uint32_t j = 0; j <= n_; ++j) {
    levels_[j].assign((sizes_[j] + 63) / 64, 0);
  }
  levels_[0][0] = 1;  // the empty word
}

void SubwordProfile::append(letter_t a) {
  if (a < 1 || a > k_) {
    throw input_error("letter " + std::to_string(a)
                      + " outside alphabet of size " + std::to_string(k_));
  }
  ++consumed_;
  std::uint64_t const offset = a - 1;
  std::uint32_t const top = static_cast<std::uint32_t>(
      std::min<std::uint64_t>(n_, consumed_));
  for (std::uint32_t j = top; j >= 1; --j) {
    auto const& src = levels_[j - 1];
    auto& dst = levels_[j];
    for (std::size_t limb = 0; limb < src.size(); ++limb) {
      std::uint64_t bits = src[limb];
      while (bits != 0) {
        unsigned b = std::countr_zero(bits);
        bits &= bits - 1;
        std::uint64_t rank = 64 * limb + b;
        std::uint64_t target = rank * k_ + offset;
        dst[target / 64] |= 1ull << (target % 64);
      }
    }
  }
}

std::uint64_t SubwordProfile::level_popcount(std::uint32_t j) const {
  std::uint64_t count = 0;
  for (std::uint64_t limb : levels_[j]) {
    count += std::popcount(limb);
  }
  return count;
}

std::string SubwordProfile::top_level_bytes() const {
  auto const& limbs = levels_[n_];
  std::string bytes(limbs.size() * 8, '\0');
  std::memcpy(bytes.data(), limbs.data(), bytes.size());
  return bytes;
}

void SubwordProfile::for_each_member(
    std::uint32_t j, std::function<void(std::uint64_t)> const& fn) const {
  auto const& limbs = levels_[j];
  for (std::size_t limb = 0; limb < limbs.size(); ++limb) {
    std::uint64_t bits = limbs[limb];
    while (bits != 0) {
      unsigned b = std::countr_zero(bits);
      bits &= bits - 1;
      fn(64 * limb + b);
    }
  }
}

std::size_t SubwordProfile::memory_bytes() const {
  std::size_t total = sizeof(*this);
  for (auto const& level : levels_) {
    total += level.capacity() * 8;
  }
  return total;
}

Word word_from_rank(std::uint64_t rank, std::uint32_t len, std::uint32_t k) {
  std::vector<letter_t> letters(len);
  for (std::uint32_t i = len; i-- > 0;) {
    letters[i] = static_cast<letter_t>(rank % k) + 1;
    rank /= k;
  }
  return Word(std::move(letters));
}

std::uint64_t rank_of_word(Word const& w, std::uint32_t k) {
  std::uint64_t rank = 0;
  for (letter_t a : w) {
    rank = rank * k + (a - 1);
  }
  return rank;
}

std::string serialize_exact_level(std::vector<std::uint64_t> const& limbs,
                                  std::uint32_t n, std::uint32_t k) {
  std::string out;
  bool first = true;
  for (std::size_t limb = 0; limb < limbs.size(); ++limb) {
    std::uint64_t bits = limbs[limb];
    while (bits != 0) {
      unsigned b = std::countr_zero(bits);
      bits &= bits - 1;
      if (!first) {
        out.push_back(',');
      }
      first = false;
      out += to_text(word_from_rank(64 * limb + b, n, k));
    }
  }
  return out;
}

CongruenceKey key_from_profile(SubwordProfile const& profile, Word const& w,
                               KeyMode mode) {
  std::uint32_t const n = profile.cap();
  std::uint32_t const k = profile.alphabet_size();
  if (w.length() < n) {
    return CongruenceKey(KeyKind::short_word, n, k, to_text(w));
  }
  if (mode == KeyMode::exact) {
    return CongruenceKey(KeyKind::exact_set, n, k, profile.top_level_bytes());
  }
  std::string serialized = serialize_exact_level(profile.level(n), n, k);
  Digest128 digest = murmur3_x64_128(serialized, kFingerprintSeed);
  auto bytes = digest.bytes();
  return CongruenceKey(KeyKind::fingerprint, n, k,
                       std::string(bytes.begin(), bytes.end()));
}

CongruenceKey congruence_key(Word const& x, std::uint32_t n, KeyMode mode,
                             Alphabet alphabet, KeyBudget budget) {
  SubwordProfile profile(alphabet, n, budget);
  for (letter_t a : x) {
    profile.append(a);
  }
  return key_from_profile(profile, x, mode);
}

bool equivalent(Word const& x, Word const& y, std::uint32_t n,
                Alphabet alphabet, KeyBudget budget) {
  return congruence_key(x, n, KeyMode::exact, alphabet, budget)
         == congruence_key(y, n, KeyMode::exact, alphabet, budget);
}

Distinction distinguish(Word const& x, Word const& y, std::uint32_t n,
                        Alphabet alphabet, KeyBudget budget) {
  SubwordProfile px(alphabet, n, budget);
  for (letter_t a : x) {
    px.append(a);
  }
  SubwordProfile py(alphabet, n, budget);
  for (letter_t a : y) {
    py.append(a);
  }
  for (std::uint32_t j = 0; j <= n; ++j) {
    auto const& lx = px.level(j);
    auto const& ly = py.level(j);
    bool differ = false;
    for (std::size_t limb = 0; limb < lx.size(); ++limb) {
      if (lx[limb] != ly[limb]) {
        differ = true;
        break;
      }
    }
    if (!differ) {
      continue;
    }
    // Least witness on x's side if it has one, else on y's side.
    for (int side = 0; side < 2; ++side) {
      auto const& a = side == 0 ? lx : ly;
      auto const& b = side == 0 ? ly : lx;
      for (std::size_t limb = 0; limb < a.size(); ++limb) {
        std::uint64_t only = a[limb] & ~b[limb];
        if (only != 0) {
          std::uint64_t rank = 64 * limb + std::countr_zero(only);
          return Distinction{false, word_from_rank(rank, j, alphabet.k),
                             side == 0};
        }
      }
    }
  }
  return Distinction{true, Word(), false};
}

namespace {

// Distinct letters of x in increasing order.
std::vector<letter_t> occurring_letters(Word const& x) {
  std::vector<letter_t> letters(x.begin(), x.end());
  std::sort(letters.begin(), letters.end());
  letters.erase(std::unique(letters.begin(), letters.end()), letters.end());
  return letters;
}

}  // namespace

Word minimal_representative(Word const& x, std::uint32_t n,
                            OracleBudget budget) {
  if (n == 0) {
    return Word();
  }
  std::vector<letter_t> letters = occurring_letters(x);
  if (letters.empty()) {
    return Word();
  }
  // Any word related to x uses exactly the letters of x (their capped counts
  // agree and n >= 1), so the scan ranges over those letters only.
  Alphabet alphabet(x.max_letter());
  CongruenceKey const target = congruence_key(x, n, KeyMode::exact, alphabet);

  std::uint64_t const base = letters.size();
  std::uint64_t scanned = 0;
  for (std::size_t len = 0; len <= x.length(); ++len) {
    std::vector<std::size_t> digits(len, 0);
    while (true) {
      if (++scanned > budget.max_words) {
        throw budget_error("minimal-representative scan exceeds word budget of "
                           + std::to_string(budget.max_words));
      }
      std::vector<letter_t> candidate_letters(len);
      for (std::size_t i = 0; i < len; ++i) {
        candidate_letters[i] = letters[digits[i]];
      }
      Word candidate(std::move(candidate_letters));
      if (congruence_key(candidate, n, KeyMode::exact, alphabet) == target) {
        return candidate;
      }
      // Next word of the same length in lexicographic order.
      std::size_t pos = len;
      while (pos > 0 && digits[pos - 1] + 1 == base) {
        digits[--pos] = 0;
      }
      if (pos == 0) {
        break;
      }
      ++digits[pos - 1];
    }
  }
  // x is related to itself, so the scan cannot fall through.
  throw internal_error("minimal-representative scan missed the input word");
}

bool is_minimal(Word const& x, std::uint32_t n, OracleBudget budget) {
  return minimal_representative(x, n, budget) == x;
}

}  // namespace simcon
