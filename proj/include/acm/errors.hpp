#pragma once

#include <stdexcept>
#include <string>

namespace acm {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Quad with (near-)zero hull area, no enclosing rectangle is defined.
struct DegenerateQuad : Error {
  using Error::Error;
};

// Encoded angle vector too close to the origin to carry a direction.
struct ZeroVector : Error {
  using Error::Error;
};

// Covariance failed the positive-definiteness check.
struct NonSPD : Error {
  using Error::Error;
};

struct LengthMismatch : Error {
  using Error::Error;
};

struct MalformedLine : Error {
  int line_no;
  std::string content;
  MalformedLine(int line, std::string text, const std::string& reason)
      : Error("line " + std::to_string(line) + ": " + reason + ": '" + text + "'"),
        line_no(line),
        content(std::move(text)) {}
};

struct DivergedTraining : Error {
  using Error::Error;
};

}  // namespace acm
