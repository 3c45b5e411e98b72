#pragma once

#include <stdexcept>
#include <string>

namespace symmlab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (radius, volume,
// beta, dimension out of range).
struct DomainError : Error {
  using Error::Error;
};

// Invalid mesh construction parameters or malformed mesh data.
struct MeshError : Error {
  using Error::Error;
};

// Graph connectivity requirement violated.
struct TopologyError : Error {
  using Error::Error;
};

// Array-length mismatch between related inputs.
struct ShapeError : Error {
  using Error::Error;
};

// Missing or inconsistent product structure.
struct StructureError : Error {
  using Error::Error;
};

// Total-measure mismatch between a field domain and a model space.
struct VolumeError : Error {
  using Error::Error;
};

// Field that projects to zero under the active constraint.
struct DegenerateFieldError : Error {
  using Error::Error;
};

struct UsageError : Error {
  using Error::Error;
};

}  // namespace symmlab
