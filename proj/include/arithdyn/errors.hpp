#pragma once

#include <stdexcept>
#include <string>

namespace arithdyn {

/// A caller-supplied input violates an operation's precondition.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A configured resource cap (form degree, digit budget) would be exceeded.
class CapExceeded : public std::length_error {
public:
    using std::length_error::length_error;
};

/// An internal mathematical invariant failed. Always a defect.
class InvariantFailure : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Malformed textual input (map expressions, points, place sets).
class ParseError : public PreconditionError {
public:
    ParseError(const std::string& what, std::size_t position)
        : PreconditionError(what + " at position " + std::to_string(position)),
          position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

}  // namespace arithdyn
