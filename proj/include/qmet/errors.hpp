#pragma once

#include <stdexcept>
#include <string>

namespace qmet {

// Malformed or out-of-contract input (bad schema, non-prime p, asymmetric
// matrix, unknown label, ...).
struct input_error : std::invalid_argument {
    explicit input_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// An exact result was requested but is not representable in the chosen
// domain (incommensurable magnitude exponents, non-integer power of a
// stored matrix, ...).
struct representation_error : std::domain_error {
    explicit representation_error(const std::string& msg) : std::domain_error(msg) {}
};

// A stated operation precondition does not hold (matrix not ultrametric,
// sets not U-separated, ...).
struct precondition_error : std::logic_error {
    explicit precondition_error(const std::string& msg) : std::logic_error(msg) {}
};

// A size/cap guard tripped (product space too large, group order over cap).
struct resource_error : std::length_error {
    explicit resource_error(const std::string& msg) : std::length_error(msg) {}
};

}  // namespace qmet
