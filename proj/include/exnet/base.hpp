#pragma once

// Shared identifiers and error types for the expansion net toolkit.

#include <cstdint>
#include <stdexcept>
#include <string>

namespace exnet {

using NodeId = std::uint32_t;

// Raised on malformed textual or JSON input.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when an API precondition or internal invariant is violated, and by
// the brute-force routines when an input exceeds their hard size caps.
class ContractViolation : public std::logic_error {
 public:
  explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw ContractViolation(msg);
}

inline std::size_t hash_combine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2));
}

}  // namespace exnet
