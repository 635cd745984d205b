#pragma once

#include <stdexcept>
#include <string>

namespace spark {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed polynomial, ideal, universe, matrix or model input.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A sampling loop ran past its configured round cap.
class RoundCapExceeded : public Error {
 public:
  using Error::Error;
};

/// Buchberger hit its pair or basis-size cap.
class ResourceCapExceeded : public Error {
 public:
  using Error::Error;
};

/// The pipeline used up its escalation budget without a verified basis.
class EscalationExhausted : public Error {
 public:
  using Error::Error;
};

}  // namespace spark
