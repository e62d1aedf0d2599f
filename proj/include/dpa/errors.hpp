#pragma once

#include <stdexcept>
#include <string>

namespace dpa {

// Base for all errors raised by the workbench. The CLI maps these to exit
// code 2 (bad input); assertion-style internal failures abort instead.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParseError : Error {
  using Error::Error;
};
struct SizeMismatch : Error {
  using Error::Error;
};
struct FieldMismatch : Error {
  using Error::Error;
};
struct DivisionByZero : Error {
  using Error::Error;
};
struct SingularMatrix : Error {
  using Error::Error;
};
struct InvalidQuiver : Error {
  using Error::Error;
};
struct DisconnectedQuiver : Error {
  using Error::Error;
};
struct LoopAtVertex : Error {
  using Error::Error;
};
struct DynkinQuiver : Error {
  using Error::Error;
};
struct IncompatibleWeights : Error {
  using Error::Error;
};
struct ZeroWeightAtVertex : Error {
  using Error::Error;
};
struct InvalidRepresentation : Error {
  using Error::Error;
};
struct NotSimple : Error {
  using Error::Error;
};
struct NotInSigma : Error {
  using Error::Error;
};
struct InvalidFamily : Error {
  using Error::Error;
};
struct InvalidWord : Error {
  using Error::Error;
};

}  // namespace dpa
