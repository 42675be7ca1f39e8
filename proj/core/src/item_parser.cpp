#include <charconv>
#include <cmath>
#include <map>
#include <set>

#include "haraforge/dsl.hpp"
#include "lexer.hpp"
#include "parse_common.hpp"

namespace haraforge {

namespace {

using detail::Cursor;
using detail::StatementAborted;
using detail::Token;

constexpr std::string_view kItemKeywords[] = {
    "item", "element", "connect", "mode", "function", "guideword", "scenario", "param"};

std::optional<double> parse_number(std::string_view text) noexcept {
  if (text.empty() || text[0] == '+') return std::nullopt;
  double value = 0.0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size() || !std::isfinite(value)) return std::nullopt;
  return value;
}

class ItemParser {
 public:
  ItemParser(Cursor& cursor) : cur_(cursor) {}

  std::optional<ItemDefinition> run() {
    while (!cur_.at_end()) {
      const std::size_t start = cur_.position();
      try {
        statement();
      } catch (const StatementAborted&) {
        if (cur_.position() == start) cur_.next();
        cur_.recover(kItemKeywords);
      }
    }
    resolve();
    if (failed()) return std::nullopt;
    return std::move(item_);
  }

 private:
  bool failed() const { return cur_.has_errors(); }

  void statement() {
    const Token& kw = cur_.expect_word("statement keyword");
    if (kw.text == "item") {
      const Token& name = cur_.expect_string("item name");
      if (item_token_) {
        cur_.error(kw, "duplicate 'item' statement (first at line " + std::to_string(item_token_->line) + ")");
        return;
      }
      item_token_ = kw;
      item_.name = name.text;
      if (name.text.empty()) cur_.error(name, "item name is empty");
    } else if (kw.text == "element") {
      const Token& id = cur_.expect_identifier("element id");
      const bool primary = cur_.accept_word("primary");
      if (declare(elements_, id, "element")) item_.elements.push_back({id.text, primary});
      if (primary) {
        if (primary_token_) {
          cur_.error(id, "second primary element '" + id.text + "' (first is '" + primary_token_->text + "')");
        } else {
          primary_token_ = id;
        }
      }
    } else if (kw.text == "connect") {
      const Token& a = cur_.expect_identifier("element id");
      const Token& b = cur_.expect_identifier("element id");
      connections_.push_back({a, b});
    } else if (kw.text == "mode") {
      const Token& id = cur_.expect_identifier("mode id");
      const Token& name = cur_.expect_string("mode name");
      const bool automated = cur_.accept_word("automated");
      if (name.text.empty()) cur_.error(name, "mode name is empty");
      if (declare(modes_, id, "mode")) item_.modes.push_back({id.text, name.text, automated});
    } else if (kw.text == "function") {
      const Token& id = cur_.expect_identifier("function id");
      const Token& description = cur_.expect_string("function description");
      cur_.expect_keyword("modes");
      std::vector<Token> modes = cur_.expect_identifier_list("mode");
      if (modes.empty()) cur_.error(id, "function '" + id.text + "' applies in no mode");
      if (declare(functions_, id, "function")) {
        FunctionDef f{id.text, description.text, {}};
        for (const Token& m : modes) f.modes.push_back(m.text);
        item_.functions.push_back(std::move(f));
        function_modes_.push_back(std::move(modes));
      }
    } else if (kw.text == "guideword") {
      const Token& id = cur_.expect_identifier("guide word id");
      const Token& interpretation = cur_.expect_string("guide word interpretation");
      if (declare(guide_words_, id, "guide word")) item_.guide_words.push_back({id.text, interpretation.text});
    } else if (kw.text == "scenario") {
      const Token& id = cur_.expect_identifier("scenario id");
      const Token& description = cur_.expect_string("scenario description");
      cur_.expect_keyword("exposure");
      const ExposureClass exposure = detail::expect_class<ExposureClass>(cur_, "exposure");
      cur_.expect_keyword("rationale");
      const Token& rationale = cur_.expect_string("exposure rationale");
      if (declare(scenarios_, id, "scenario")) {
        item_.scenarios.push_back({id.text, description.text, exposure, rationale.text});
      }
    } else if (kw.text == "param") {
      const Token& name = cur_.expect_identifier("parameter name");
      const Token& number = cur_.expect_word("number");
      const auto value = parse_number(number.text);
      if (!value) cur_.fail(number, "invalid number '" + number.text + "'");
      const Token& unit = cur_.expect_string("unit");
      if (unit.text.empty()) cur_.error(unit, "parameter '" + name.text + "' needs a unit");
      if (declare(parameters_, name, "parameter")) item_.parameters.push_back({name.text, *value, unit.text});
    } else {
      cur_.fail(kw, "unknown keyword '" + kw.text + "'");
    }
  }

  bool declare(std::map<std::string, Token>& table, const Token& id, std::string_view what) {
    auto [it, inserted] = table.emplace(id.text, id);
    if (!inserted) {
      cur_.error(id, "duplicate " + std::string(what) + " '" + id.text + "' (first declared at line " +
                         std::to_string(it->second.line) + ")");
    }
    return inserted;
  }

  void resolve() {
    const Token& end = cur_.peek();
    if (!item_token_) cur_.error(end, "missing 'item' statement");

    if (!primary_token_) {
      cur_.error(item_token_ ? *item_token_ : end, "no element is marked 'primary'");
    }

    std::set<std::pair<std::string, std::string>> seen_edges;
    std::map<std::string, std::vector<std::string>> adjacency;
    for (const auto& [a, b] : connections_) {
      bool ok = true;
      for (const Token* t : {&a, &b}) {
        if (elements_.count(t->text) == 0) {
          cur_.error(*t, "unknown element '" + t->text + "'");
          ok = false;
        }
      }
      if (!ok) continue;
      if (a.text == b.text) {
        cur_.error(b, "element '" + a.text + "' cannot be connected to itself");
        continue;
      }
      auto key = std::minmax(a.text, b.text);
      if (!seen_edges.emplace(key.first, key.second).second) {
        cur_.error(a, "duplicate connection " + a.text + " - " + b.text);
        continue;
      }
      item_.connections.push_back({a.text, b.text});
      adjacency[a.text].push_back(b.text);
      adjacency[b.text].push_back(a.text);
    }

    if (primary_token_) {
      std::set<std::string> reached{primary_token_->text};
      std::vector<std::string> frontier{primary_token_->text};
      while (!frontier.empty()) {
        const std::string at = frontier.back();
        frontier.pop_back();
        for (const std::string& n : adjacency[at]) {
          if (reached.insert(n).second) frontier.push_back(n);
        }
      }
      for (const ElementNode& e : item_.elements) {
        if (reached.count(e.id) == 0) {
          cur_.error(elements_.at(e.id),
                     "element '" + e.id + "' is not connected to primary element '" + primary_token_->text + "'");
        }
      }
    }

    for (std::size_t i = 0; i < item_.functions.size(); ++i) {
      std::set<std::string> listed;
      for (const Token& m : function_modes_[i]) {
        if (modes_.count(m.text) == 0) {
          cur_.error(m, "unknown mode '" + m.text + "'");
        } else if (!listed.insert(m.text).second) {
          cur_.error(m, "mode '" + m.text + "' listed twice");
        }
      }
    }

    if (item_.guide_words.empty() && item_token_) {
      cur_.warning(*item_token_, "no guide words declared; using the default set");
      item_.guide_words = default_guide_words();
    }
  }

  Cursor& cur_;
  ItemDefinition item_;
  std::optional<Token> item_token_;
  std::optional<Token> primary_token_;
  std::map<std::string, Token> elements_, modes_, functions_, guide_words_, scenarios_, parameters_;
  std::vector<std::pair<Token, Token>> connections_;
  std::vector<std::vector<Token>> function_modes_;
};

}  // namespace

ParseResult<ItemDefinition> parse_item_file(std::string_view text, std::string_view file_name) {
  ParseResult<ItemDefinition> result;
  const std::string file(file_name);
  std::string input = detail::normalize_newlines(text);
  if (!detail::check_encoding(input, file, result.diagnostics)) return result;
  Cursor cursor(detail::lex(input, file, result.diagnostics), file, result.diagnostics);
  ItemParser parser(cursor);
  result.value = parser.run();
  return result;
}

}  // namespace haraforge
