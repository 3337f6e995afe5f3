#pragma once

#include <stdexcept>
#include <string>

namespace rssauc {

// Invalid configuration: bad grids, non-integral cycle counts, invalid
// population parameters. CLI exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed or insufficient input data: CSV parse failures, empty groups,
// exhausted finite-population sources. CLI exit code 3.
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical degeneracy: zero-variance samples, single-unit strata,
// degenerate bandwidths. CLI exit code 4.
struct DegenerateError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace rssauc
