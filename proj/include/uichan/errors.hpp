#pragma once

#include <stdexcept>
#include <string>

namespace uichan {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  Parse,
  Domain,
  InvalidModel,
  Inconsistent,
  Limit,
};

// Base of everything the core throws. The C API maps code() onto uichan_status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class InvalidArgumentError : public Error {
 public:
  explicit InvalidArgumentError(const std::string& what)
      : Error(ErrorCode::InvalidArgument, what) {}
};

class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& what)
      : Error(ErrorCode::DimensionMismatch, what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(ErrorCode::Parse, what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what)
      : Error(ErrorCode::Domain, what) {}
};

class InvalidModelError : public Error {
 public:
  explicit InvalidModelError(const std::string& what)
      : Error(ErrorCode::InvalidModel, what) {}
};

class InconsistentError : public Error {
 public:
  explicit InconsistentError(const std::string& what)
      : Error(ErrorCode::Inconsistent, what) {}
};

class LimitError : public Error {
 public:
  explicit LimitError(const std::string& what) : Error(ErrorCode::Limit, what) {}
};

}  // namespace uichan
