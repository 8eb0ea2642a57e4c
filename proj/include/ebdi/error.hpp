#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ebdi {

/// Raised for malformed or inconsistent input data. Carries the source name
/// and 1-based line number when the problem can be pinned to a row.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& message)
      : std::runtime_error(message) {}

  InputError(const std::string& source, std::size_t line,
             const std::string& message)
      : std::runtime_error(source + ":" + std::to_string(line) + ": " +
                           message),
        source_(source),
        line_(line) {}

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string source_;
  std::size_t line_ = 0;
};

}  // namespace ebdi
