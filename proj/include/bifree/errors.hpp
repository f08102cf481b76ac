#pragma once

#include <stdexcept>
#include <string>

namespace bifree {

// Input that violates an operation's mathematical precondition
// (partition not in BNC(chi), mixed-side product segment, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A degree bound or enumeration size guard was exceeded.
class LimitError : public std::length_error {
public:
    using std::length_error::length_error;
};

// Malformed textual input (chi strings, partitions, words, model files).
class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace bifree
