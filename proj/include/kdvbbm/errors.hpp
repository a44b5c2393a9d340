#pragma once

#include <stdexcept>
#include <string>

namespace kdvbbm {

// Bad user-supplied configuration (grid sizes, exponents, CLI input).
struct config_error : std::runtime_error {
  explicit config_error(const std::string& what) : std::runtime_error(what) {}
};

// Input that could not be read or tokenized at all (missing file, malformed
// JSON).  Distinct from validation so the CLI can map it to its own exit code.
struct parse_error : std::runtime_error {
  explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// Mismatched array/grid dimensions between operands.
struct shape_error : std::runtime_error {
  explicit shape_error(const std::string& what) : std::runtime_error(what) {}
};

// A multiplier symbol evaluated to NaN/Inf (or a singular denominator) on the grid.
struct symbol_error : std::runtime_error {
  explicit symbol_error(const std::string& what) : std::runtime_error(what) {}
};

// Config validation failure with the offending field path and the violated
// hypothesis, e.g. field_path="norms[0].p", hypothesis="p >= 1".
struct validation_error : std::runtime_error {
  validation_error(const std::string& field_path, const std::string& hypothesis)
      : std::runtime_error(field_path + ": violates " + hypothesis),
        field_path(field_path),
        hypothesis(hypothesis) {}
  std::string field_path;
  std::string hypothesis;
};

}  // namespace kdvbbm
