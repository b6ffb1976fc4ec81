#pragma once

#include <stdexcept>
#include <string>

namespace lanehmm {

// Malformed input text (profile files, FASTA). Carries a 1-based line number
// when one is known.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, long line = -1)
        : std::runtime_error(line >= 0 ? "line " + std::to_string(line) + ": " + msg : msg),
          line_(line) {}
    long line() const { return line_; }

private:
    long line_;
};

// Structurally invalid data: bad block databases, checksum failures,
// geometry/profile mismatches.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A caller broke a documented precondition.
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace lanehmm
