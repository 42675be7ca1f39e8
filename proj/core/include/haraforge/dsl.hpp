#pragma once

/// @file dsl.hpp
/// On-disk formats: the block-structured `.item` / `.hara` text format and
/// the semicolon-separated CSV table of hazard entries.
///
/// Parsers never throw on bad input. They return either a fully resolved
/// value or at least one error diagnostic, each located inside the input.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "haraforge/model.hpp"

namespace haraforge {

struct SourceLocation {
  std::string file;
  int line = 1;    ///< 1-based
  int column = 1;  ///< 1-based, in bytes

  bool operator==(const SourceLocation&) const = default;
};

enum class DiagnosticSeverity { kError, kWarning };

struct ParseDiagnostic {
  SourceLocation location;
  std::string message;
  DiagnosticSeverity severity = DiagnosticSeverity::kError;

  /// "file:line:col: error: message"
  std::string to_string() const;
};

template <class T>
struct ParseResult {
  std::optional<T> value;
  std::vector<ParseDiagnostic> diagnostics;

  bool ok() const noexcept { return value.has_value(); }
};

/// Header row of the CSV table.
inline constexpr std::string_view kCsvHeader =
    "ID;Operating Mode;Function;Malfunction;Hazardous Scenario and Consequence;"
    "S;Rationale;E;Rationale;C;Rationale;A;SG";

ParseResult<ItemDefinition> parse_item_file(std::string_view text,
                                            std::string_view file_name = "<item>");

/// Stated-vs-derived ASIL mismatches and missing rationales are accepted;
/// they are validator findings, not syntax.
ParseResult<HaraDocument> parse_hara_file(std::string_view text, const ItemDefinition& item,
                                          std::string_view file_name = "<hara>");

/// Canonical text: fixed statement order, entries by EntryId, goals by SG
/// number, two-space continuation indent, LF line endings.
std::string serialize(const ItemDefinition& item);
std::string serialize(const HaraDocument& doc);

/// Reads the entries of a document from CSV. Everything the table cannot
/// carry (title, revision data, goals, waivers) is taken from `frame`, whose
/// own entries are ignored.
///
/// Cell conventions: mode and function by display text or id; malfunction as
/// "<GUIDEWORD>" or "<GUIDEWORD>: <description>"; hazardous scenario as
/// "<scenario-id>: <consequence>"; classes as "S2"/"E3"/"C1"; ASIL as
/// "QM" or "A".."D".
ParseResult<HaraDocument> parse_csv(std::string_view text, const ItemDefinition& item,
                                    const HaraDocument& frame,
                                    std::string_view file_name = "<csv>");

/// Canonical CSV: header row, one row per entry in EntryId order, fields
/// containing `;`, `"`, CR or LF quoted with inner quotes doubled, LF endings.
std::string write_csv(const HaraDocument& doc, const ItemDefinition& item);

}  // namespace haraforge
