#pragma once

#include <stdexcept>
#include <string>

namespace superfan {

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// complement_is_finite hit its k_max cap without resolving a generator ray.
struct InconclusiveError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InfiniteComplementError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The a' = a'' = 0 case, where the construction is not defined.
struct FiberProductError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class MorphismErrorKind {
  dimension_mismatch,
  c_equation,
  fan_compatibility,
  decoration_compatibility,
  chain_mismatch,
};

struct MorphismError : std::runtime_error {
  MorphismErrorKind kind;
  MorphismError(MorphismErrorKind kind_, const std::string& msg)
      : std::runtime_error(msg), kind(kind_) {}
};

struct WitnessError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace superfan
