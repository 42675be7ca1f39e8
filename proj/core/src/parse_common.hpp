#pragma once

// Helpers shared by the text and CSV parsers.

#include <string>
#include <string_view>
#include <vector>

#include "haraforge/dsl.hpp"
#include "lexer.hpp"

namespace haraforge::detail {

/// Rejects a byte order mark and invalid UTF-8. Returns false after
/// recording a diagnostic.
bool check_encoding(std::string_view text, const std::string& file, std::vector<ParseDiagnostic>& diagnostics);

template <class Class>
Class expect_class(Cursor& cursor, std::string_view what) {
  const Token& t = cursor.expect_word(std::string(what) + " class");
  if (auto parsed = Class::parse(t.text)) return *parsed;
  const std::string range = std::string(1, Class::kPrefix) + "0.." + std::string(1, Class::kPrefix) +
                            std::to_string(Class::kMax);
  if (t.text.size() >= 2 && t.text[0] == Class::kPrefix &&
      t.text.find_first_not_of("0123456789", 1) == std::string::npos) {
    cursor.fail(t, std::string(what) + " class " + t.text + " is out of range " + range);
  }
  cursor.fail(t, "expected " + std::string(what) + " class " + range + ", found '" + t.text + "'");
}

}  // namespace haraforge::detail
