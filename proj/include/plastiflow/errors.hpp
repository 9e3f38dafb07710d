#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace plastiflow {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A point or stencil fell outside the domain where a field is defined.
struct DomainError : Error { using Error::Error; };
// Parameters violate a family's preconditions.
struct ParamError : Error { using Error::Error; };
struct MissingGradients : Error { using Error::Error; };
struct EmptyDomainError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t offset, std::string expected)
      : Error(msg + " at offset " + std::to_string(offset) +
              (expected.empty() ? "" : " (expected " + expected + ")")),
        offset(offset), expected(std::move(expected)) {}
  std::size_t offset;
  std::string expected;
};
struct EvalError : Error { using Error::Error; };
struct UnsupportedNode : Error { using Error::Error; };

struct SingularityError : Error { using Error::Error; };
struct NoBracketError : Error { using Error::Error; };
struct NoRootError : Error { using Error::Error; };
struct BranchJumpError : Error { using Error::Error; };

}  // namespace plastiflow
