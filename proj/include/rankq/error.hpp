#pragma once

#include <stdexcept>
#include <string>

namespace rankq {

// Raised when an input violates a model, matrix or question invariant.
// The CLI maps it to exit status 2.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// Raised on file-system failures. The CLI maps it to exit status 1.
class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace rankq
