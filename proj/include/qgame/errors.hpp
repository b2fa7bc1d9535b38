#pragma once

#include <stdexcept>
#include <string>

namespace qgame {

// Input vector fails the unit-norm requirement.
struct normalization_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Out-of-range or ill-ordered user parameter.
struct parameter_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// A quantity that must be real (or a matrix invariant) drifted beyond tolerance.
struct numeric_integrity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A documented precondition was violated by the caller.
struct contract_error : std::logic_error {
    using std::logic_error::logic_error;
};

// Config-file rejection; carries the offending line and key.
struct parse_error : std::runtime_error {
    parse_error(int line_number, std::string key_name, const std::string& what)
        : std::runtime_error("line " + std::to_string(line_number) +
                             (key_name.empty() ? "" : ", key '" + key_name + "'") + ": " + what),
          line(line_number),
          key(std::move(key_name)) {}

    int line;
    std::string key;
};

}  // namespace qgame
