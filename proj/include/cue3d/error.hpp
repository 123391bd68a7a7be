#pragma once

#include <stdexcept>
#include <string>

namespace cue3d {

// All spec'd failure modes surface as cue3d::error with a stable code
// prefix ("EmptyMask: ...", "DegenerateMesh: ...") so callers and tests
// can match on the code without parsing prose.
struct error : std::runtime_error {
  explicit error(const std::string& code, const std::string& what)
      : std::runtime_error(code + ": " + what), code(code) {}
  std::string code;
};

}  // namespace cue3d
