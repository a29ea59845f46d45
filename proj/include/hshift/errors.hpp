#pragma once

#include <stdexcept>
#include <string>

namespace hshift {

/// Raised when user-supplied configuration is malformed or out of range.
/// The CLI maps this to exit code 2.
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a computation is asked to operate outside its domain
/// (negative field, vanishing rate constant, integrator breakdown, ...).
/// The CLI maps this to exit code 3.
class domain_error : public std::runtime_error {
public:
    explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace hshift
