// errors.hpp - error taxonomy shared by the core and the C API boundary.
#pragma once

#include <stdexcept>
#include <string>

namespace fusecost {

enum class ErrorCode {
  InvalidArgument,
  MalformedDocument,   // input text is not valid JSON
  SchemaViolation,     // valid JSON but wrong structure, keys or value ranges
  DegenerateShape,     // a layer output dimension would drop below one
  InvalidGrouping,     // not a contiguous partition, or breaks the pool rule
  InvalidConfig,       // zero tiling factor or unusable tech parameter
  EmptyConfigSet,
  TooManyGroupings,    // enumeration would exceed the configured cap
  Io,
  Internal,            // invariant broken; always a bug, never user input
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace fusecost
