#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace pscale {

/// Base for every error raised by the simulator library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed layer file, config file, or report CSV.
class ParseError : public Error {
public:
    using Error::Error;
};

/// A value violates a documented invariant or precondition.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A count does not fit in 64 bits.
class OverflowError : public Error {
public:
    using Error::Error;
};

/// Unreadable or unwritable file.
class IoError : public Error {
public:
    using Error::Error;
};

/// Named workload / pe_count / topology not present.
class LookupError : public Error {
public:
    using Error::Error;
};

using Count = std::uint64_t;

inline Count checked_mul(Count a, Count b, const char* what = "count") {
    Count out = 0;
    if (__builtin_mul_overflow(a, b, &out))
        throw OverflowError(std::string("arithmetic overflow computing ") + what);
    return out;
}

inline Count checked_add(Count a, Count b, const char* what = "count") {
    Count out = 0;
    if (__builtin_add_overflow(a, b, &out))
        throw OverflowError(std::string("arithmetic overflow computing ") + what);
    return out;
}

inline Count ceil_div(Count a, Count b) { return a / b + (a % b != 0 ? 1 : 0); }

}  // namespace pscale
