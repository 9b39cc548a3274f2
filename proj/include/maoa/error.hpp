#pragma once

#include <stdexcept>
#include <string>

namespace maoa {

/// Malformed or truncated file contents.
class FormatError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

/// Input that parses but violates a documented invariant.
class ValidationError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace maoa
