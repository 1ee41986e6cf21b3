#pragma once

#include <stdexcept>
#include <string>

namespace aapso {

/// Invalid experiment configuration (bad key, out-of-range value, ...).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Dataset-level failure: unreadable file, malformed rows, broken invariants.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace aapso
