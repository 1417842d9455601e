#pragma once

#include <stdexcept>
#include <string>

namespace subleak {

// Bad input data: malformed corpus files, unusable CLI arguments, inconsistent
// matrix dimensions coming from outside. Maps to CLI exit code 2.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// A violated internal invariant: a bug, not a user problem. Exit code 3.
class InvariantError : public std::logic_error {
public:
    explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

inline void require(bool cond, const char* msg) {
    if (!cond) throw InvariantError(msg);
}

inline void require_data(bool cond, const std::string& msg) {
    if (!cond) throw DataError(msg);
}

} // namespace subleak
