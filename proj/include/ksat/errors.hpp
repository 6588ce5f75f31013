#pragma once

#include <stdexcept>
#include <string>

namespace ksat {

// Error taxonomy used across the library. The CLI maps these to exit codes.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : DataError {
    using DataError::DataError;
};

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DivergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A pipeline error wrapping the failing stage name (data, knowledge,
// compression, training, evaluation, report).
struct StageError : std::runtime_error {
    StageError(const std::string& stage, const std::string& what)
        : std::runtime_error("stage=" + stage + ": " + what), stage(stage) {}
    std::string stage;
};

}  // namespace ksat
