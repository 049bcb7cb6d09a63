#pragma once

#include <stdexcept>
#include <string>

namespace holant {

// Raised when an operation is given well-formed input that violates its
// mathematical precondition (singular transform, non-affine constraint, ...).
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Raised on malformed input documents. `path` locates the offending field.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& path, const std::string& what)
        : std::runtime_error(path.empty() ? what : path + ": " + what), path_(path) {}

    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

} // namespace holant
