#include <map>
#include <set>
#include <tuple>

#include "haraforge/dsl.hpp"
#include "lexer.hpp"
#include "parse_common.hpp"

namespace haraforge {

namespace {

using detail::Cursor;
using detail::StatementAborted;
using detail::Token;

constexpr std::string_view kHaraKeywords[] = {"hara", "goal", "entry", "waive"};

struct EntryRefs {
  Token id, mode, function, guide_word, scenario, goal;
};

struct GoalRefs {
  Token id;
  std::vector<Token> modes;
  bool explicit_order = false;
};

struct WaiverRefs {
  Token function, guide_word, mode;
};

class HaraParser {
 public:
  HaraParser(Cursor& cursor, const ItemDefinition& item) : cur_(cursor), item_(item) {
    doc_.item_name = item.name;
  }

  std::optional<HaraDocument> run() {
    while (!cur_.at_end()) {
      const std::size_t start = cur_.position();
      try {
        statement();
      } catch (const StatementAborted&) {
        if (cur_.position() == start) cur_.next();
        cur_.recover(kHaraKeywords);
      }
    }
    resolve();
    if (cur_.has_errors()) return std::nullopt;
    normalize(doc_);
    return std::move(doc_);
  }

 private:
  void statement() {
    const Token& kw = cur_.expect_word("statement keyword");
    if (kw.text == "hara") {
      header(kw);
    } else if (kw.text == "goal") {
      goal();
    } else if (kw.text == "entry") {
      entry();
    } else if (kw.text == "waive") {
      waiver();
    } else {
      cur_.fail(kw, "unknown keyword '" + kw.text + "'");
    }
  }

  int expect_count(std::string_view what) {
    const Token& t = cur_.expect_word(what);
    const auto value = detail::parse_count(t.text);
    if (!value || *value < 1) cur_.fail(t, std::string(what) + " must be a positive integer, found '" + t.text + "'");
    return *value;
  }

  AsilLevel expect_asil() {
    const Token& t = cur_.expect_word("ASIL");
    const auto level = parse_asil(t.text);
    if (!level) cur_.fail(t, "expected ASIL QM, A, B, C or D, found '" + t.text + "'");
    return *level;
  }

  GoalId expect_goal_id(const Token& t) {
    const auto id = GoalId::try_parse(t.text);
    if (!id) cur_.fail(t, "malformed safety goal id '" + t.text + "' (expected SG01..SG99)");
    return *id;
  }

  void header(const Token& kw) {
    const Token& title = cur_.expect_string("title");
    cur_.expect_keyword("revision");
    const int revision = expect_count("revision");
    cur_.expect_keyword("kind");
    const Token& kind_token = cur_.expect_word("revision kind");
    const auto kind = parse_revision_kind(kind_token.text);
    if (!kind) {
      cur_.fail(kind_token, "unknown revision kind '" + kind_token.text +
                                "' (expected initial, item-refinement or safety-refinement)");
    }
    std::optional<int> based_on;
    if (cur_.accept_word("based-on")) based_on = expect_count("based-on revision");
    if (header_) {
      cur_.error(kw, "duplicate 'hara' statement (first at line " + std::to_string(header_->line) + ")");
      return;
    }
    header_ = kw;
    doc_.title = title.text;
    doc_.revision = revision;
    doc_.kind = *kind;
    doc_.based_on = based_on;
    if (title.text.empty()) cur_.error(title, "title is empty");
    if (*kind == RevisionKind::kInitial && based_on) {
      cur_.error(kind_token, "an initial revision cannot be based on another revision");
    } else if (*kind != RevisionKind::kInitial && !based_on) {
      cur_.error(kind_token, "a refinement revision needs 'based-on <revision>'");
    }
  }

  void goal() {
    GoalRefs refs;
    refs.id = cur_.expect_word("safety goal id");
    SafetyGoal g;
    g.id = expect_goal_id(refs.id);
    const Token& text = cur_.expect_string("safety goal text");
    cur_.expect_keyword("modes");
    refs.modes = cur_.expect_identifier_list("mode");
    if (cur_.accept_word("asil")) g.asil = expect_asil();
    if (cur_.accept_word("order")) {
      const Token& t = cur_.expect_word("order");
      const auto order = detail::parse_count(t.text);
      if (!order) cur_.fail(t, "order must be a non-negative integer, found '" + t.text + "'");
      g.ordinal = *order;
      refs.explicit_order = true;
    }
    g.text = text.text;
    if (is_blank(text.text)) cur_.error(text, "safety goal " + refs.id.text + " has no text");
    if (refs.modes.empty()) cur_.error(refs.id, "safety goal " + refs.id.text + " applies in no mode");
    for (const Token& m : refs.modes) g.modes.push_back(m.text);
    auto [it, inserted] = goal_tokens_.emplace(g.id, refs.id);
    if (!inserted) {
      cur_.error(refs.id, "duplicate safety goal " + refs.id.text + " (first declared at line " +
                              std::to_string(it->second.line) + ")");
      return;
    }
    doc_.goals.push_back(std::move(g));
    goal_refs_.push_back(std::move(refs));
  }

  void entry() {
    EntryRefs refs;
    HazardEntry e;
    refs.id = cur_.expect_word("entry id");
    std::string why;
    const auto id = EntryId::try_parse(refs.id.text, &why);
    if (!id) cur_.fail(refs.id, "malformed entry id '" + refs.id.text + "': " + why);
    e.id = *id;
    cur_.expect_keyword("mode");
    refs.mode = cur_.expect_identifier("mode id");
    cur_.expect_keyword("function");
    refs.function = cur_.expect_identifier("function id");
    cur_.expect_keyword("guideword");
    refs.guide_word = cur_.expect_identifier("guide word id");
    cur_.expect_keyword("malfunction");
    e.malfunction.description = cur_.expect_string("malfunction description").text;
    cur_.expect_keyword("scenario");
    refs.scenario = cur_.expect_identifier("scenario id");
    cur_.expect_keyword("consequence");
    e.consequence = cur_.expect_string("consequence").text;
    e.severity.level = detail::expect_class<SeverityClass>(cur_, "severity");
    e.severity.rationale = cur_.expect_string("severity rationale").text;
    e.exposure.level = detail::expect_class<ExposureClass>(cur_, "exposure");
    e.exposure.rationale = cur_.expect_string("exposure rationale").text;
    e.controllability.level = detail::expect_class<ControllabilityClass>(cur_, "controllability");
    e.controllability.rationale = cur_.expect_string("controllability rationale").text;
    cur_.expect_keyword("asil");
    e.asil = expect_asil();
    cur_.expect_keyword("goal");
    refs.goal = cur_.expect_word("safety goal id");
    e.goal = expect_goal_id(refs.goal);
    e.mode = refs.mode.text;
    e.malfunction.function = refs.function.text;
    e.malfunction.guide_word = refs.guide_word.text;
    e.scenario = refs.scenario.text;

    auto [it, inserted] = entry_tokens_.emplace(e.id, refs.id);
    if (!inserted) {
      cur_.error(refs.id, "duplicate entry " + refs.id.text + " (first declared at line " +
                              std::to_string(it->second.line) + ")");
      return;
    }
    doc_.entries.push_back(std::move(e));
    entry_refs_.push_back(std::move(refs));
  }

  void waiver() {
    WaiverRefs refs;
    cur_.expect_keyword("function");
    refs.function = cur_.expect_identifier("function id");
    cur_.expect_keyword("guideword");
    refs.guide_word = cur_.expect_identifier("guide word id");
    cur_.expect_keyword("mode");
    refs.mode = cur_.expect_identifier("mode id");
    cur_.expect_keyword("rationale");
    const Token& rationale = cur_.expect_string("waiver rationale");
    if (is_blank(rationale.text)) cur_.error(rationale, "a waiver needs a rationale");
    auto key = std::make_tuple(refs.function.text, refs.guide_word.text, refs.mode.text);
    if (!waived_.insert(key).second) {
      cur_.error(refs.function, "duplicate waiver for " + refs.function.text + "/" + refs.guide_word.text + "/" +
                                    refs.mode.text);
      return;
    }
    doc_.waivers.push_back({refs.function.text, refs.guide_word.text, refs.mode.text, rationale.text});
    waiver_refs_.push_back(std::move(refs));
  }

  // Reports an unresolved reference; returns whether it resolved.
  template <class Find>
  bool check_ref(const Token& t, std::string_view what, Find&& find) {
    if (find(t.text) != nullptr) return true;
    cur_.error(t, "unknown " + std::string(what) + " '" + t.text + "'");
    return false;
  }

  bool check_mode(const Token& t) {
    return check_ref(t, "mode", [&](const std::string& id) { return item_.find_mode(id); });
  }

  void check_triple(const Token& function, const Token& guide_word, const Token& mode) {
    const bool function_ok =
        check_ref(function, "function", [&](const std::string& id) { return item_.find_function(id); });
    check_ref(guide_word, "guide word", [&](const std::string& id) { return item_.find_guide_word(id); });
    const bool mode_ok = check_mode(mode);
    if (function_ok && mode_ok && !item_.find_function(function.text)->applies_in(mode.text)) {
      cur_.error(mode, "function '" + function.text + "' does not apply in mode '" + mode.text + "'");
    }
  }

  void resolve() {
    if (!header_) cur_.error(cur_.peek(), "missing 'hara' statement");

    int position = 0;
    for (std::size_t i = 0; i < doc_.goals.size(); ++i) {
      ++position;
      for (const Token& m : goal_refs_[i].modes) check_mode(m);
      if (!goal_refs_[i].explicit_order) doc_.goals[i].ordinal = position;
    }

    for (std::size_t i = 0; i < doc_.entries.size(); ++i) {
      const EntryRefs& refs = entry_refs_[i];
      check_triple(refs.function, refs.guide_word, refs.mode);
      check_ref(refs.scenario, "scenario", [&](const std::string& id) { return item_.find_scenario(id); });
      if (goal_tokens_.count(*doc_.entries[i].goal) == 0) {
        cur_.error(refs.goal, "unknown safety goal " + refs.goal.text);
      }
    }

    for (const WaiverRefs& refs : waiver_refs_) check_triple(refs.function, refs.guide_word, refs.mode);
  }

  Cursor& cur_;
  const ItemDefinition& item_;
  HaraDocument doc_;
  std::optional<Token> header_;
  std::map<GoalId, Token> goal_tokens_;
  std::map<EntryId, Token> entry_tokens_;
  std::set<std::tuple<std::string, std::string, std::string>> waived_;
  std::vector<GoalRefs> goal_refs_;
  std::vector<EntryRefs> entry_refs_;
  std::vector<WaiverRefs> waiver_refs_;
};

}  // namespace

ParseResult<HaraDocument> parse_hara_file(std::string_view text, const ItemDefinition& item,
                                          std::string_view file_name) {
  ParseResult<HaraDocument> result;
  const std::string file(file_name);
  std::string input = detail::normalize_newlines(text);
  if (!detail::check_encoding(input, file, result.diagnostics)) return result;
  Cursor cursor(detail::lex(input, file, result.diagnostics), file, result.diagnostics);
  HaraParser parser(cursor, item);
  result.value = parser.run();
  return result;
}

}  // namespace haraforge
