#pragma once

#include <stdexcept>
#include <string>

namespace gmorph {

/// Error for malformed text inputs (structuring graphs, edge-set files,
/// decomposition files, PNM images). Carries a 1-based line number when the
/// input is line oriented; 0 means "no meaningful line".
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                    : message),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

/// Filesystem-level failure (missing file, unreadable stream, failed write).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gmorph
