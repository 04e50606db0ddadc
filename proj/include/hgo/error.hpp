#pragma once

#include <stdexcept>
#include <string>

namespace hgo {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class RegistryMismatch : public Error {
 public:
  using Error::Error;
};

class ZeroDivision : public Error {
 public:
  using Error::Error;
};

class SingularSubstitution : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Raised for malformed configuration documents; `path` names the offending field.
class ConfigError : public Error {
 public:
  ConfigError(std::string path, const std::string& what)
      : Error(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

}  // namespace hgo
