#pragma once

#include <stdexcept>
#include <string>

namespace sbfly {

enum class Errc {
  DuplicateEdge,
  IndexOutOfRange,
  EmptySide,
  MalformedLine,
  MissingValue,
  InvalidSignValue,
  InvalidProbability,
  InvalidK,
  InvalidWorkers,
  InvalidTileConfig,
  InvalidThresholds,
  CountOverflow,
  NoWork,
  Io,
};

const char* to_string(Errc code) noexcept;

/// Every library failure surfaces as this exception; `code()` identifies the
/// condition so callers (and the CLI exit-code mapping) can branch on it.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Reported by the parser; `line()` is 1-based.
class MalformedLineError : public Error {
 public:
  MalformedLineError(std::size_t line, const std::string& why)
      : Error(Errc::MalformedLine, "malformed line " + std::to_string(line) + ": " + why), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace sbfly
