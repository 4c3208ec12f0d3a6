#pragma once

#include <stdexcept>
#include <string>

namespace iwa {

/// Base of every error raised by the library.
class IwasawaError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: wrong shape, missing fields, out-of-range parameters.
class SchemaError : public IwasawaError {
 public:
  SchemaError(const std::string& path, const std::string& what)
      : IwasawaError(path.empty() ? what : path + ": " + what), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// A mathematical contract failed (norm relation, exact divisibility, ...).
class ContractViolation : public IwasawaError {
 public:
  using IwasawaError::IwasawaError;
};

/// The working precision cannot support the requested target precision.
class PrecisionExhausted : public IwasawaError {
 public:
  using IwasawaError::IwasawaError;
};

}  // namespace iwa
