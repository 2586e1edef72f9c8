#pragma once

#include <stdexcept>
#include <string>

namespace vadam {

/// Raised when an evaluation leaves the numerically valid regime
/// (non-finite gradients, degenerate/inverted triangles, ...).
/// Shape and configuration mistakes use std::invalid_argument instead.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace vadam
