#pragma once

#include <stdexcept>
#include <string>

namespace tnbn {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input text (model file, event log, evidence syntax).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A file could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

/// The input parsed but violates the model or the query contract.
class DomainError : public Error {
 public:
  using Error::Error;
};

class ZeroProbabilityEvidence : public DomainError {
 public:
  ZeroProbabilityEvidence()
      : DomainError("evidence has probability zero under the model") {}
};

class SizeGuardExceeded : public DomainError {
 public:
  using DomainError::DomainError;
};

class IntervalOverflow : public DomainError {
 public:
  using DomainError::DomainError;
};

class DuplicateObservation : public DomainError {
 public:
  using DomainError::DomainError;
};

class UnanchoredSession : public DomainError {
 public:
  UnanchoredSession()
      : DomainError("session has no observations; nothing anchors it") {}
};

}  // namespace tnbn
