#pragma once

#include <stdexcept>
#include <string>

namespace convexlab {

// Errors carry the CLI exit code they map to.
class Error : public std::runtime_error {
 public:
  Error(const std::string& what, int exit_code)
      : std::runtime_error(what), exit_code_(exit_code) {}
  int exit_code() const noexcept { return exit_code_; }

 private:
  int exit_code_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error(what, 2) {}
};

class DimensionMismatch : public InvalidArgument {
 public:
  explicit DimensionMismatch(const std::string& what)
      : InvalidArgument("dimension mismatch: " + what) {}
};

class InvalidBody : public InvalidArgument {
 public:
  explicit InvalidBody(const std::string& what)
      : InvalidArgument("invalid body: " + what) {}
};

class ConfigError : public InvalidArgument {
 public:
  explicit ConfigError(const std::string& what)
      : InvalidArgument("config: " + what) {}
};

class NumericFailure : public Error {
 public:
  explicit NumericFailure(const std::string& what) : Error(what, 3) {}
};

class SamplerStarvation : public Error {
 public:
  explicit SamplerStarvation(const std::string& what) : Error(what, 4) {}
};

}  // namespace convexlab
