#pragma once

#include <stdexcept>
#include <string>

namespace gazetrace {

// Error taxonomy mirrors the CLI exit codes: configuration problems (bad
// scene/gallery/script files, missing paths) exit with 2, malformed data
// streams (frames, rasters) with 3, anything else with 4.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct DataError : Error {
    using Error::Error;
};

// Infeasible or self-contradictory synthetic scenario scripts.
struct ScriptError : ConfigError {
    using ConfigError::ConfigError;
};

// Geometry precondition violations (invalid depth, out-of-bounds pixel,
// point behind camera).
struct GeometryError : Error {
    using Error::Error;
};

}  // namespace gazetrace
