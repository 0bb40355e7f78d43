#pragma once

#include <stdexcept>
#include <string>

namespace gesem {

/// Machine-checkable failure categories used across the library.
enum class errc {
  invalid_argument,
  degenerate_path,
  parse_error,
  arity_error,
  empty_trajectory,
  mode_error,
  anisotropy_violation,
  reference_error,
  frame_error,
  no_spatial_extension,
  not_found,
  type_error,
  mode_mismatch,
  closure_error,
  stale_label,
  ambiguous_resolution,
  io_error,
};

const char* to_string(errc code);

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  errc code() const { return code_; }

 private:
  errc code_;
};

/// Parse failure with a source location (1-based line and column).
class parse_error : public error {
 public:
  parse_error(const std::string& what, int line, int column)
      : error(errc::parse_error,
              what + " (line " + std::to_string(line) + ", column " +
                  std::to_string(column) + ")"),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace gesem
