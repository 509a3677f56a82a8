#pragma once

#include <stdexcept>
#include <string>

namespace neron {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed problem text or presentation text; carries a source position.
struct ParseError : Error {
    int line;
    int column;
    ParseError(const std::string& what, int line_, int column_)
        : Error("parse error at " + std::to_string(line_) + ":" + std::to_string(column_) +
                ": " + what),
          line(line_),
          column(column_) {}
};

// exact_divide was asked for a quotient that does not exist.
struct NonDivisibleError : Error {
    std::string remainder;
    NonDivisibleError(const std::string& what, std::string remainder_)
        : Error(what), remainder(std::move(remainder_)) {}
};

// A denominator (or other element required to be a unit of k[x]_(x)) has
// zero constant term.
struct NotUnitError : Error {
    explicit NotUnitError(const std::string& what) : Error(what) {}
};

// An ideal-membership representation was requested for a non-member; the
// witness is the nonzero normal form.
struct MembershipError : Error {
    std::string witness;
    MembershipError(const std::string& what, std::string witness_)
        : Error(what), witness(std::move(witness_)) {}
};

// Signals a bug (exceeded an internal guard that mathematics says cannot be
// reached), never a property of the input.
struct InternalError : Error {
    explicit InternalError(const std::string& what) : Error(what) {}
};

}  // namespace neron
