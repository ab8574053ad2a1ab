#pragma once

#include <stdexcept>
#include <string>

namespace sanet {

// Error taxonomy. The CLI maps these onto exit codes: config/argument/shape/data
// problems exit 2, I/O and runtime failures exit 3.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error("config error: " + msg) {}
};

struct ShapeError : std::runtime_error {
  explicit ShapeError(const std::string& msg) : std::runtime_error("shape error: " + msg) {}
};

struct ArgumentError : std::runtime_error {
  explicit ArgumentError(const std::string& msg) : std::runtime_error("argument error: " + msg) {}
};

struct DataError : std::runtime_error {
  explicit DataError(const std::string& msg) : std::runtime_error("data error: " + msg) {}
};

struct IoError : std::runtime_error {
  explicit IoError(const std::string& msg) : std::runtime_error("i/o error: " + msg) {}
};

struct TrainingError : std::runtime_error {
  explicit TrainingError(const std::string& msg) : std::runtime_error("training error: " + msg) {}
};

struct GenerationError : std::runtime_error {
  explicit GenerationError(const std::string& msg) : std::runtime_error("generation error: " + msg) {}
};

}  // namespace sanet
