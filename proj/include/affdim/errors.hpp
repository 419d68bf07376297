#pragma once

#include <stdexcept>
#include <string>

namespace affdim {

/// Malformed or out-of-contract input (bad matrix entries, indices out of
/// range, parameters outside their stated domain).
class invalid_input : public std::invalid_argument {
public:
    explicit invalid_input(const std::string& what) : std::invalid_argument(what) {}
};

/// A configured budget (word-tree enumeration, recursion depth) would be
/// exceeded. The message names the limit that was hit.
class resource_limit : public std::runtime_error {
public:
    explicit resource_limit(const std::string& what) : std::runtime_error(what) {}
};

/// Operation defined only for a subset of ambient dimensions (typically d = 2).
class unsupported_dimension : public std::runtime_error {
public:
    explicit unsupported_dimension(const std::string& what) : std::runtime_error(what) {}
};

} // namespace affdim
