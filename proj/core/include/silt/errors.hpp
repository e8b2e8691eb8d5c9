#pragma once

#include <stdexcept>
#include <string>

namespace silt {

/// Bad user input (malformed files, non-admissible relations, d^2 != 0, ...).
/// The CLI maps this to exit code 2.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A certificate the library relies on could not be produced
/// (composition escaping a Hom basis, locality check failing, ...).
struct ComputeError : std::runtime_error {
    explicit ComputeError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace silt
