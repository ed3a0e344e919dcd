#pragma once

#include <stdexcept>
#include <string>

namespace forge {

// Base of everything the library throws on bad input or violated preconditions.
// Verification failures are never exceptions; they come back as report rows.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InvalidInput : public Error {
public:
  using Error::Error;
};

class PreconditionError : public Error {
public:
  using Error::Error;
};

class Unsupported : public Error {
public:
  using Error::Error;
};

class EffortBoundExceeded : public Error {
public:
  using Error::Error;
};

} // namespace forge
