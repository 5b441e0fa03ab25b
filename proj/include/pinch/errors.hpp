#pragma once

#include <stdexcept>
#include <string>

namespace pinch {

// A well-formed input that violates an operation's stated precondition
// (non-1PI graph where irreducibility is required, scheme undefined on a
// value, physical limit of a series with poles, ...).  Distinct from
// std::invalid_argument, which file loaders throw for malformed input.
struct PreconditionError : std::runtime_error {
    explicit PreconditionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pinch
