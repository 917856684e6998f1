#pragma once

#include <stdexcept>
#include <string>

namespace beauville {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A defining relation fails in the built group, or an associativity probe
/// found a violating triple.
class InconsistentPresentation : public Error {
 public:
  using Error::Error;
};

/// The requested object exceeds a configured size cap.
class TooLarge : public Error {
 public:
  using Error::Error;
};

class InvalidParams : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class NotInFamily : public Error {
 public:
  using Error::Error;
};

class NotClass2 : public Error {
 public:
  using Error::Error;
};

/// The class-2 Beauville criterion only applies to odd primes.
class EvenPrime : public Error {
 public:
  using Error::Error;
};

class NotAWitness : public Error {
 public:
  using Error::Error;
};

class WrongForm : public Error {
 public:
  using Error::Error;
};

class NotTriangleQuotient : public Error {
 public:
  using Error::Error;
};

/// Neither the constructive algorithm nor the exhaustive fallback produced a
/// strongly-real witness. Carries enough text to replay the structure.
class WitnessVerificationFailed : public Error {
 public:
  using Error::Error;
};

/// Three-valued outcome for searches that may run out of budget.
enum class Tri { no, yes, unknown };

inline const char* to_string(Tri t) {
  switch (t) {
    case Tri::no:
      return "false";
    case Tri::yes:
      return "true";
    case Tri::unknown:
      return "unknown";
  }
  return "unknown";
}

}  // namespace beauville
