#pragma once

#include <stdexcept>
#include <string>

namespace spar {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Domain value failed an invariant check.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// ---- LLM gateway ----------------------------------------------------------

class TransportError : public Error {
 public:
  using Error::Error;
};

class TimeoutError : public TransportError {
 public:
  using TransportError::TransportError;
};

class RateLimitedError : public Error {
 public:
  RateLimitedError(const std::string& what, double retry_after_seconds)
      : Error(what), retry_after_seconds(retry_after_seconds) {}
  double retry_after_seconds;
};

class CassetteMissError : public Error {
 public:
  using Error::Error;
};

class UnknownTemplateError : public Error {
 public:
  using Error::Error;
};

class MissingBindingError : public Error {
 public:
  explicit MissingBindingError(const std::string& name)
      : Error("missing binding: " + name), name(name) {}
  std::string name;
};

// ---- Response parsing -----------------------------------------------------

class ParseError : public Error {
 public:
  using Error::Error;
};

class NoScoreFoundError : public ParseError {
 public:
  using ParseError::ParseError;
};

class ScoreOutOfRangeError : public ParseError {
 public:
  using ParseError::ParseError;
};

class NoArrayFoundError : public ParseError {
 public:
  using ParseError::ParseError;
};

class MalformedArrayError : public ParseError {
 public:
  using ParseError::ParseError;
};

class MarkersNotFoundError : public ParseError {
 public:
  using ParseError::ParseError;
};

class EmptyKeywordListError : public ParseError {
 public:
  using ParseError::ParseError;
};

class NoLinesMatchedError : public ParseError {
 public:
  using ParseError::ParseError;
};

class DuplicateIndexError : public ParseError {
 public:
  using ParseError::ParseError;
};

class IndexOutOfRangeError : public ParseError {
 public:
  using ParseError::ParseError;
};

class MissingFieldError : public ParseError {
 public:
  explicit MissingFieldError(const std::string& field)
      : ParseError("missing field: " + field), field(field) {}
  std::string field;
};

class UnknownSourceError : public ParseError {
 public:
  explicit UnknownSourceError(const std::string& name)
      : ParseError("unknown source: " + name), name(name) {}
  std::string name;
};

class MalformedBooleanError : public ParseError {
 public:
  using ParseError::ParseError;
};

class InterpretationParseError : public ParseError {
 public:
  using ParseError::ParseError;
};

// ---- Source adapters ------------------------------------------------------

class WrongSourceKindError : public Error {
 public:
  using Error::Error;
};

class QuotaExceededError : public Error {
 public:
  using Error::Error;
};

class SourceParseError : public Error {
 public:
  using Error::Error;
};

// ---- Configuration / files ------------------------------------------------

class ConfigParseError : public Error {
 public:
  using Error::Error;
};

class ConfigInvalidError : public Error {
 public:
  ConfigInvalidError(const std::string& key, const std::string& why)
      : Error("invalid config value for '" + key + "': " + why), key(key) {}
  std::string key;
};

class FileNotFoundError : public Error {
 public:
  using Error::Error;
};

class SchemaError : public Error {
 public:
  SchemaError(int line, const std::string& field, const std::string& why)
      : Error("schema error at line " + std::to_string(line) + ", field '" + field +
              "': " + why),
        line(line),
        field(field) {}
  int line;
  std::string field;
};

}  // namespace spar
