#pragma once

#include <stdexcept>
#include <string>

namespace altiso {

struct cap_exceeded : std::runtime_error {
    explicit cap_exceeded(const std::string& what) : std::runtime_error(what) {}
};

struct dimension_mismatch : std::invalid_argument {
    explicit dimension_mismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct dimension_too_large : std::invalid_argument {
    explicit dimension_too_large(const std::string& what) : std::invalid_argument(what) {}
};

struct division_by_zero : std::domain_error {
    explicit division_by_zero(const std::string& what) : std::domain_error(what) {}
};

struct infeasible : std::runtime_error {
    explicit infeasible(const std::string& what) : std::runtime_error(what) {}
};

struct even_characteristic : std::invalid_argument {
    explicit even_characteristic(const std::string& what) : std::invalid_argument(what) {}
};

struct invalid_permutation : std::invalid_argument {
    explicit invalid_permutation(const std::string& what) : std::invalid_argument(what) {}
};

// Parse failures carry the 1-based line number of the offending input line.
struct parse_error : std::runtime_error {
    int line;
    parse_error(int line_, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_) + ": " + what), line(line_) {}
};

} // namespace altiso
