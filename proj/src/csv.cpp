#include "ebdi/csv.hpp"

#include "ebdi/error.hpp"

namespace ebdi::csv {

Reader::Reader(std::istream& in, std::string source)
    : in_(in), source_(std::move(source)) {}

bool Reader::next(Row& row) {
  if (!started_) {
    started_ = true;
    if (in_.peek() == 0xEF) {
      char bom[3];
      in_.read(bom, 3);
      if (!(bom[1] == '\xBB' && bom[2] == '\xBF')) {
        throw InputError(source_, 1, "invalid byte order mark");
      }
    }
  }

  while (true) {
    row.fields.clear();
    row.line = line_;
    if (in_.peek() == std::char_traits<char>::eof()) return false;

    std::string field;
    bool in_quotes = false;
    bool was_quoted = false;
    bool any_content = false;
    int c;
    while ((c = in_.get()) != std::char_traits<char>::eof()) {
      const char ch = static_cast<char>(c);
      if (in_quotes) {
        if (ch == '"') {
          if (in_.peek() == '"') {
            in_.get();
            field.push_back('"');
          } else {
            in_quotes = false;
          }
        } else {
          if (ch == '\n') ++line_;
          field.push_back(ch);
        }
        continue;
      }
      if (ch == '"') {
        if (!field.empty() && !trim(field).empty()) {
          throw InputError(source_, line_, "unexpected quote inside field");
        }
        field.clear();
        in_quotes = true;
        was_quoted = true;
        any_content = true;
      } else if (ch == ',') {
        row.fields.push_back(std::move(field));
        field.clear();
        was_quoted = false;
        any_content = true;
      } else if (ch == '\r') {
        if (in_.peek() == '\n') continue;
        field.push_back(ch);
      } else if (ch == '\n') {
        ++line_;
        break;
      } else {
        if (was_quoted && ch != ' ' && ch != '\t') {
          throw InputError(source_, line_, "text after closing quote");
        }
        if (!was_quoted) field.push_back(ch);
        any_content = true;
      }
    }
    if (in_quotes) {
      throw InputError(source_, row.line, "unterminated quoted field");
    }
    if (!any_content && trim(field).empty()) {
      if (c == std::char_traits<char>::eof()) return false;
      continue;  // blank line
    }
    row.fields.push_back(std::move(field));
    return true;
  }
}

void expect_header(Reader& reader, std::span<const std::string_view> expected) {
  Row header;
  if (!reader.next(header)) {
    throw InputError(reader.source(), 1, "missing header row");
  }
  bool ok = header.fields.size() == expected.size();
  for (std::size_t i = 0; ok && i < expected.size(); ++i) {
    ok = trim(header.fields[i]) == expected[i];
  }
  if (!ok) {
    std::string want;
    for (auto name : expected) {
      if (!want.empty()) want += ',';
      want += name;
    }
    throw InputError(reader.source(), header.line,
                     "unexpected header, expected '" + want + "'");
  }
}

std::string escape(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

}  // namespace ebdi::csv
