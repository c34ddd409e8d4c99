#pragma once

#include <stdexcept>
#include <string>

namespace csm {

// Malformed input documents or ill-formed fixture data. Maps to exit code 2.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// An operation was invoked outside its stated domain (e.g. a priority query
// for an assigned set at or above capacity, or an enumeration guard was
// exceeded). Maps to exit code 2.
class PreconditionError : public std::runtime_error {
 public:
  explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

// A violated internal invariant: a bug, not bad input. Maps to exit code 3.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw PreconditionError(what);
}

inline void internal_check(bool cond, const std::string& what) {
  if (!cond) throw InternalError(what);
}

}  // namespace csm
