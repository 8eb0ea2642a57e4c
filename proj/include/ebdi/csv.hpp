#pragma once

#include <cstddef>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ebdi::csv {

struct Row {
  std::size_t line = 0;  // 1-based line where the record starts
  std::vector<std::string> fields;
};

/// Minimal RFC 4180 reader: comma delimiter, double-quote quoting with ""
/// escapes, LF or CRLF record ends. A UTF-8 byte order mark is skipped.
/// Blank lines are ignored.
class Reader {
 public:
  Reader(std::istream& in, std::string source);

  /// Reads the next record; returns false at end of input.
  bool next(Row& row);

  const std::string& source() const noexcept { return source_; }

 private:
  std::istream& in_;
  std::string source_;
  std::size_t line_ = 1;
  bool started_ = false;
};

/// Reads the header record and checks it against `expected` (surrounding
/// whitespace ignored). Throws InputError on mismatch or empty input.
void expect_header(Reader& reader, std::span<const std::string_view> expected);

/// Quotes a field when it contains a delimiter, quote or line break.
std::string escape(std::string_view field);

std::string_view trim(std::string_view s);

}  // namespace ebdi::csv
