#ifndef TEEBOOST_COMMON_ERRORS_H_
#define TEEBOOST_COMMON_ERRORS_H_

#include <stdexcept>
#include <string>

namespace teeboost {

// Base class for all recoverable failures raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad arguments from a caller (length mismatch, empty input, bad flag).
class UsageError : public Error {
 public:
  using Error::Error;
};

// Party/enclave topology or run configuration does not fit the requested mode.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A peer sent something malformed or out of range during a protocol run.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

// Authenticated decryption failed (wrong key, tampering, nonce replay).
class IntegrityError : public Error {
 public:
  using Error::Error;
};

// A value does not fit the fixed-point or plaintext encoding.
class RangeError : public Error {
 public:
  using Error::Error;
};

// Arithmetic with an undefined result, such as a zero denominator.
class ArithmeticError : public Error {
 public:
  using Error::Error;
};

// An internal precondition was broken by library code.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace teeboost

#endif  // TEEBOOST_COMMON_ERRORS_H_
