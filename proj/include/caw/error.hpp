#pragma once

#include <stdexcept>
#include <string>

namespace caw {

enum class Errc {
  io,                  // file missing, unreadable or unwritable
  malformed,           // broken RIFF structure or key file syntax
  unsupported_format,  // WAV format code / bit depth we do not handle
  empty_data,          // zero-length data chunk
  invalid_argument,    // precondition violated by caller-supplied values
  non_finite,          // NaN or infinity where finite values are required
  out_of_range,        // sample or parameter outside its allowed interval
  length_mismatch,     // paired vectors disagree in length
  divergence,          // chaotic orbit escaped the divergence guard
  undefined_correlation,
};

inline const char* errc_name(Errc code) {
  switch (code) {
    case Errc::io: return "io";
    case Errc::malformed: return "malformed";
    case Errc::unsupported_format: return "unsupported_format";
    case Errc::empty_data: return "empty_data";
    case Errc::invalid_argument: return "invalid_argument";
    case Errc::non_finite: return "non_finite";
    case Errc::out_of_range: return "out_of_range";
    case Errc::length_mismatch: return "length_mismatch";
    case Errc::divergence: return "divergence";
    case Errc::undefined_correlation: return "undefined_correlation";
  }
  return "unknown";
}

// All library failures surface as caw::Error; code() lets callers branch
// without parsing the message.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace caw
