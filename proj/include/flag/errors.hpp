#pragma once

#include <stdexcept>
#include <string>

namespace flag {

// Malformed or truncated input file (bad magic, short payload, CSV syntax).
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Internal numerical validation failed (root finding did not converge,
// admissibility residual out of tolerance).
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace flag
