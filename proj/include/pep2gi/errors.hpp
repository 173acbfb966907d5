#pragma once

#include <stdexcept>
#include <string>

namespace pep2gi {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when an orthogonal projector is requested for a code whose Gram
/// matrix under the chosen bilinear form is singular. Callers typically
/// react by trying a different structure matrix or reporting a nonzero
/// hull dimension.
class NotMLcdError : public Error {
  public:
    explicit NotMLcdError(const std::string& what) : Error(what) {}
};

}  // namespace pep2gi
