#pragma once

#include <stdexcept>
#include <string>

namespace symorbit {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SYMORBIT_ERROR(Name)          \
  class Name : public Error {         \
   public:                            \
    using Error::Error;               \
  }

SYMORBIT_ERROR(CollisionSingularity);
SYMORBIT_ERROR(ClosureOverflow);
SYMORBIT_ERROR(MassIncompatible);
SYMORBIT_ERROR(NotASubgroup);
SYMORBIT_ERROR(NotAReflection);
SYMORBIT_ERROR(LatticeIncompatible);
SYMORBIT_ERROR(NotAFundamentalDomain);
SYMORBIT_ERROR(EndpointViolation);
SYMORBIT_ERROR(NotCoercive);
SYMORBIT_ERROR(CollisionEncountered);
SYMORBIT_ERROR(DomainError);
SYMORBIT_ERROR(ShapeMassMismatch);
SYMORBIT_ERROR(EvenN);
SYMORBIT_ERROR(UnknownScenario);
SYMORBIT_ERROR(InvalidArgument);

#undef SYMORBIT_ERROR

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace symorbit
