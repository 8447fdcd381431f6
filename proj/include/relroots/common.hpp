#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace relroots {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Raised when an internal exactness guarantee is violated: nonzero remainder
// in an exact division, a negative intermediate in the F->H transform, a
// mismatched root count, and the like. Maps to exit code 2 in the CLI.
class integrity_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Filesystem trouble (unwritable output path, unreadable input).
class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input text. Carries the byte offset where decoding failed.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, std::size_t byte_offset)
        : std::runtime_error(what + " (byte " + std::to_string(byte_offset) + ")"),
          offset_(byte_offset) {}

    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

Int binomial(int n, int k);

// "p/q" (or "p" for integers); the exact-rational wire format.
std::string rat_to_string(const Rat& r);
Rat rat_from_string(const std::string& s);

}  // namespace relroots
