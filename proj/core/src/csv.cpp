#include <map>
#include <set>

#include "haraforge/dsl.hpp"
#include "lexer.hpp"
#include "parse_common.hpp"

namespace haraforge {

namespace {

constexpr std::size_t kColumns = 13;

struct Field {
  std::string text;
  int line = 1;
  int column = 1;
};

using Record = std::vector<Field>;

// Splits CSV text into records. CRLF outside quotes ends a record like LF;
// inside quotes it is kept verbatim. Returns false on a quoting error.
bool split_records(std::string_view text, const std::string& file, std::vector<Record>& records,
                   std::vector<ParseDiagnostic>& diags) {
  std::size_t i = 0;
  const std::size_t n = text.size();
  int line = 1;
  int column = 1;
  auto step = [&] {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
    ++i;
  };
  auto error = [&](int l, int c, std::string message) {
    diags.push_back({{file, l, c}, std::move(message), DiagnosticSeverity::kError});
  };
  auto at_record_end = [&] { return i >= n || text[i] == '\n' || text.substr(i, 2) == "\r\n"; };

  while (i < n) {
    Record record;
    while (true) {
      Field field{{}, line, column};
      if (i < n && text[i] == '"') {
        step();
        bool closed = false;
        while (i < n) {
          if (text[i] == '"') {
            if (i + 1 < n && text[i + 1] == '"') {
              field.text.push_back('"');
              step();
              step();
              continue;
            }
            step();
            closed = true;
            break;
          }
          field.text.push_back(text[i]);
          step();
        }
        if (!closed) {
          error(field.line, field.column, "unterminated quoted field");
          return false;
        }
        if (!at_record_end() && text[i] != ';') {
          error(line, column, "expected ';' or end of line after closing quote");
          return false;
        }
      } else {
        while (!at_record_end() && text[i] != ';') {
          if (text[i] == '"') {
            error(line, column, "quote character inside an unquoted field");
            return false;
          }
          field.text.push_back(text[i]);
          step();
        }
      }
      record.push_back(std::move(field));
      if (i < n && text[i] == ';') {
        step();
        continue;
      }
      break;
    }
    if (i < n && text[i] == '\r') step();
    if (i < n) step();  // the LF
    records.push_back(std::move(record));
  }
  return true;
}

bool needs_quotes(std::string_view field) {
  return field.find_first_of(";\"\r\n") != std::string_view::npos;
}

std::string csv_field(std::string_view field) {
  if (!needs_quotes(field)) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Display text for an object in a CSV cell: its name when the name maps
// back to exactly this object, otherwise its id.
template <class T, class Name>
std::string cell_name(const std::vector<T>& all, const T& object, Name name) {
  const std::string& text = name(object);
  if (text.empty()) return object.id;
  for (const T& other : all) {
    if (&other == &object) continue;
    if (name(other) == text || other.id == text) return object.id;
  }
  return text;
}

template <class T, class Name>
const T* resolve_name(const std::vector<T>& all, std::string_view cell, Name name) {
  for (const T& t : all) {
    if (t.id == cell) return &t;
  }
  const T* found = nullptr;
  for (const T& t : all) {
    if (name(t) == cell) {
      if (found != nullptr) return nullptr;
      found = &t;
    }
  }
  return found;
}

const std::string& mode_name(const OperatingMode& m) { return m.name; }
const std::string& function_name(const FunctionDef& f) { return f.description; }

// "<head>" or "<head>: <tail>".
std::string joined(const std::string& head, const std::string& tail) {
  return tail.empty() ? head : head + ": " + tail;
}

std::pair<std::string, std::string> split_joined(const std::string& cell) {
  const auto colon = cell.find(':');
  if (colon == std::string::npos) return {cell, {}};
  std::string tail = cell.substr(colon + 1);
  if (!tail.empty() && tail[0] == ' ') tail.erase(0, 1);
  return {cell.substr(0, colon), tail};
}

class CsvReader {
 public:
  CsvReader(const ItemDefinition& item, const HaraDocument& frame, std::string file,
            std::vector<ParseDiagnostic>& diags)
      : item_(item), frame_(frame), file_(std::move(file)), diags_(diags) {}

  std::optional<HaraDocument> read(const std::vector<Record>& records) {
    if (records.empty()) {
      error({{}, 1, 1}, "missing header row");
      return std::nullopt;
    }
    check_header(records.front());
    HaraDocument doc = frame_;
    doc.entries.clear();
    std::map<EntryId, int> lines;
    for (std::size_t r = 1; r < records.size(); ++r) {
      const Record& row = records[r];
      if (row.size() != kColumns) {
        error(row.front(), "row has " + std::to_string(row.size()) + " columns, expected " +
                               std::to_string(kColumns));
        continue;
      }
      if (auto entry = read_row(row)) {
        auto [it, inserted] = lines.emplace(entry->id, row[0].line);
        if (!inserted) {
          error(row[0], "duplicate entry " + row[0].text + " (first at line " + std::to_string(it->second) + ")");
          continue;
        }
        doc.entries.push_back(std::move(*entry));
      }
    }
    if (failed_) return std::nullopt;
    normalize(doc);
    return doc;
  }

 private:
  void error(const Field& at, std::string message) {
    diags_.push_back({{file_, at.line, at.column}, std::move(message), DiagnosticSeverity::kError});
    failed_ = true;
  }

  void check_header(const Record& header) {
    std::vector<std::string> expected;
    std::string_view rest = kCsvHeader;
    while (true) {
      const auto semi = rest.find(';');
      expected.emplace_back(rest.substr(0, semi));
      if (semi == std::string_view::npos) break;
      rest.remove_prefix(semi + 1);
    }
    if (header.size() != expected.size()) {
      error(header.front(), "header has " + std::to_string(header.size()) + " columns, expected " +
                                std::to_string(expected.size()));
      return;
    }
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (header[i].text != expected[i]) {
        error(header[i], "header column " + std::to_string(i + 1) + " must be '" + expected[i] + "', found '" +
                             header[i].text + "'");
      }
    }
  }

  template <class Class>
  std::optional<Class> read_class(const Field& f, std::string_view what) {
    if (auto c = Class::parse(f.text)) return c;
    error(f, "malformed " + std::string(what) + " class '" + f.text + "' (expected " +
                 std::string(1, Class::kPrefix) + "0.." + std::string(1, Class::kPrefix) +
                 std::to_string(Class::kMax) + ")");
    return std::nullopt;
  }

  std::optional<HazardEntry> read_row(const Record& row) {
    const bool before = failed_;
    failed_ = false;
    HazardEntry e;

    std::string why;
    if (auto id = EntryId::try_parse(row[0].text, &why)) {
      e.id = *id;
    } else {
      error(row[0], "malformed entry id '" + row[0].text + "': " + why);
    }

    const OperatingMode* mode = resolve_name(item_.modes, row[1].text, mode_name);
    if (mode == nullptr) error(row[1], "unknown operating mode '" + row[1].text + "'");
    const FunctionDef* function = resolve_name(item_.functions, row[2].text, function_name);
    if (function == nullptr) error(row[2], "unknown function '" + row[2].text + "'");
    if (mode != nullptr && function != nullptr && !function->applies_in(mode->id)) {
      error(row[2], "function '" + function->id + "' does not apply in mode '" + mode->id + "'");
    }

    auto [guide_word, description] = split_joined(row[3].text);
    if (item_.find_guide_word(guide_word) == nullptr) error(row[3], "unknown guide word '" + guide_word + "'");
    auto [scenario, consequence] = split_joined(row[4].text);
    if (item_.find_scenario(scenario) == nullptr) {
      error(row[4], "unknown scenario '" + scenario + "' (expected '<scenario-id>: <consequence>')");
    }

    auto s = read_class<SeverityClass>(row[5], "severity");
    auto x = read_class<ExposureClass>(row[7], "exposure");
    auto c = read_class<ControllabilityClass>(row[9], "controllability");
    auto asil = parse_asil(row[11].text);
    if (!asil) error(row[11], "malformed ASIL '" + row[11].text + "' (expected QM, A, B, C or D)");
    auto goal = GoalId::try_parse(row[12].text);
    if (!goal) {
      error(row[12], "malformed safety goal id '" + row[12].text + "'");
    } else if (frame_.find_goal(*goal) == nullptr) {
      error(row[12], "unknown safety goal " + row[12].text);
    }

    const bool row_failed = failed_;
    failed_ = before || row_failed;
    if (row_failed) return std::nullopt;

    e.mode = mode->id;
    e.malfunction = {function->id, guide_word, description};
    e.scenario = scenario;
    e.consequence = consequence;
    e.severity = {*s, row[6].text};
    e.exposure = {*x, row[8].text};
    e.controllability = {*c, row[10].text};
    e.asil = *asil;
    e.goal = *goal;
    return e;
  }

  const ItemDefinition& item_;
  const HaraDocument& frame_;
  std::string file_;
  std::vector<ParseDiagnostic>& diags_;
  bool failed_ = false;
};

}  // namespace

ParseResult<HaraDocument> parse_csv(std::string_view text, const ItemDefinition& item, const HaraDocument& frame,
                                    std::string_view file_name) {
  ParseResult<HaraDocument> result;
  const std::string file(file_name);
  if (!detail::check_encoding(text, file, result.diagnostics)) return result;
  std::vector<Record> records;
  if (!split_records(text, file, records, result.diagnostics)) return result;
  CsvReader reader(item, frame, file, result.diagnostics);
  result.value = reader.read(records);
  return result;
}

std::string write_csv(const HaraDocument& input, const ItemDefinition& item) {
  HaraDocument doc = input;
  normalize(doc);
  std::string out(kCsvHeader);
  out += '\n';
  for (const HazardEntry& e : doc.entries) {
    std::string mode = e.mode;
    if (const OperatingMode* m = item.find_mode(e.mode)) mode = cell_name(item.modes, *m, mode_name);
    std::string function = e.malfunction.function;
    if (const FunctionDef* f = item.find_function(function)) function = cell_name(item.functions, *f, function_name);

    const std::string cells[kColumns] = {
        e.id.to_string(),
        mode,
        function,
        joined(e.malfunction.guide_word, e.malfunction.description),
        joined(e.scenario, e.consequence),
        e.severity.level.to_string(),
        e.severity.rationale,
        e.exposure.level.to_string(),
        e.exposure.rationale,
        e.controllability.level.to_string(),
        e.controllability.rationale,
        std::string(to_string(e.asil)),
        e.goal ? e.goal->to_string() : std::string(),
    };
    for (std::size_t i = 0; i < kColumns; ++i) {
      if (i > 0) out += ';';
      out += csv_field(cells[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace haraforge
