#pragma once

#include <stdexcept>
#include <string>

namespace dagsched {

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- graph construction / generation / parsing ---

struct CycleError : Error {
  using Error::Error;
};

struct BadWeightError : Error {
  using Error::Error;
};

struct DanglingEdgeError : Error {
  using Error::Error;
};

struct InvalidParamsError : Error {
  using Error::Error;
};

// Malformed document; the message carries position/field diagnostics.
struct ParseError : Error {
  using Error::Error;
};

// --- scheduling ---

struct NotAPartitionError : Error {
  using Error::Error;
};

// Queue simulation cannot make progress. Only reachable for queue orders
// that invert precedence (height-ordered queues never deadlock).
struct DeadlockError : Error {
  using Error::Error;
};

struct InvalidProcessorCountError : Error {
  using Error::Error;
};

// Instance exceeds the brute-force enumeration caps.
struct TooLargeError : Error {
  using Error::Error;
};

// --- schedule validation defects; messages name the offending task(s) ---

struct MissingTaskError : Error {
  using Error::Error;
};

struct DuplicateTaskError : Error {
  using Error::Error;
};

struct ProcessorOverlapError : Error {
  using Error::Error;
};

struct PrecedenceViolationError : Error {
  using Error::Error;
};

struct BadDurationError : Error {
  using Error::Error;
};

// --- reporting ---

struct EmptyInputError : Error {
  using Error::Error;
};

}  // namespace dagsched
