#ifndef SIMCON_ERROR_HPP_
#define SIMCON_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace simcon {

// Bad user input: malformed word text, letter outside the alphabet,
// invalid configuration.
class input_error : public std::runtime_error {
 public:
  explicit input_error(std::string const& msg) : std::runtime_error(msg) {}
};

// A configured resource budget (members, words, bytes, seconds) would be
// exceeded.  Callers may retry with a larger budget or switch to
// fingerprint keys.
class budget_error : public std::runtime_error {
 public:
  explicit budget_error(std::string const& msg) : std::runtime_error(msg) {}
};

// An internal invariant failed, e.g. a detected fingerprint collision.
class internal_error : public std::runtime_error {
 public:
  explicit internal_error(std::string const& msg) : std::runtime_error(msg) {}
};

}  // namespace simcon

#endif  // SIMCON_ERROR_HPP_
