#pragma once

#include <stdexcept>

namespace tspr {

// Error taxonomy mirrors the CLI exit codes: config=2, data=3, estimation=4.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EstimationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace tspr
