#pragma once

#include <stdexcept>
#include <string>

namespace sackg {

// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class InvalidEntityError : public Error {
 public:
  using Error::Error;
};

class MalformedTripleError : public Error {
 public:
  using Error::Error;
};

class IllegalTransitionError : public Error {
 public:
  using Error::Error;
};

class UnknownEntityError : public Error {
 public:
  using Error::Error;
};

class NoContextError : public Error {
 public:
  using Error::Error;
};

class EmptyKgError : public Error {
 public:
  using Error::Error;
};

class InsufficientPoolError : public Error {
 public:
  using Error::Error;
};

// Transient transport failure; retryable.
class TransportError : public Error {
 public:
  using Error::Error;
};

// The provider rejected the request; not retryable.
class ProviderRejectionError : public Error {
 public:
  using Error::Error;
};

// The mock client had no scripted response for a prompt.
class NoScriptError : public Error {
 public:
  using Error::Error;
};

class MissingJudgmentError : public Error {
 public:
  using Error::Error;
};

class KeyMismatchError : public Error {
 public:
  using Error::Error;
};

class EmptyInputError : public Error {
 public:
  using Error::Error;
};

class UnknownFormatError : public Error {
 public:
  using Error::Error;
};

// Malformed input file (open KG, snapshot, rules, transcript, judgments).
class ParseError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace sackg
