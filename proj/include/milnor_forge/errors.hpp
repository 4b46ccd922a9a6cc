#pragma once

#include <stdexcept>
#include <string>

namespace milnor_forge {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Modulus or requested prime is composite.
class NotPrime : public Error {
public:
  using Error::Error;
};

class DimensionMismatch : public Error {
public:
  using Error::Error;
};

// Operands built over different algebra contexts.
class ContextMismatch : public Error {
public:
  using Error::Error;
};

// An exact product or image would land above the context's working degree.
class TruncationOverflow : public Error {
public:
  using Error::Error;
};

// Integer overflow in cyclotomic coefficient arithmetic.
class ArithmeticOverflow : public Error {
public:
  using Error::Error;
};

class InvalidArgument : public Error {
public:
  using Error::Error;
};

// A differential violates d o d = 0 or lands in the wrong bidegree.
class DifferentialError : public Error {
public:
  using Error::Error;
};

} // namespace milnor_forge
