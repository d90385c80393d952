#ifndef TOPKAT_ERROR_HPP
#define TOPKAT_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace topkat {

/// Malformed input: bad syntax, undeclared identifier, bad alphabet.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Lexing/parsing failure with the byte offset where it was detected.
class ParseError : public InputError {
public:
    ParseError(const std::string& what, std::size_t position)
        : InputError(what + " at position " + std::to_string(position)), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// A term of the wrong sort was supplied (e.g. an action under negation,
/// or a term containing T where only KAT terms are accepted).
class SortError : public InputError {
public:
    using InputError::InputError;
};

/// A configured resource cap (atom count, enumeration ceiling) was exceeded.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A self-check failed. Always a bug in this library.
class InternalError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace topkat

#endif
