#include "haraforge/model.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <tuple>

namespace haraforge {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kMalformed: return "malformed";
    case ErrorCode::kOutOfRange: return "out-of-range";
    case ErrorCode::kInvalidModel: return "invalid-model";
    case ErrorCode::kNothingToEnumerate: return "nothing-to-enumerate";
    case ErrorCode::kNoLinkedScenarios: return "no-linked-scenarios";
    case ErrorCode::kUnknownElement: return "unknown-element";
    case ErrorCode::kUnknownGoal: return "unknown-goal";
    case ErrorCode::kInconsistentInput: return "inconsistent-input";
    case ErrorCode::kUnknownRule: return "unknown-rule";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// ASIL

std::strong_ordering compare_asil(AsilLevel a, AsilLevel b) noexcept {
  return static_cast<int>(a) <=> static_cast<int>(b);
}

std::string_view to_string(AsilLevel level) noexcept {
  switch (level) {
    case AsilLevel::QM: return "QM";
    case AsilLevel::A: return "A";
    case AsilLevel::B: return "B";
    case AsilLevel::C: return "C";
    case AsilLevel::D: return "D";
  }
  return "QM";
}

std::string display_name(AsilLevel level) {
  if (level == AsilLevel::QM) return "QM";
  return "ASIL " + std::string(to_string(level));
}

std::optional<AsilLevel> parse_asil(std::string_view text) noexcept {
  for (AsilLevel level : kAllAsilLevels) {
    if (text == to_string(level)) return level;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Identifiers

bool is_blank(std::string_view text) noexcept {
  return std::all_of(text.begin(), text.end(), [](char c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r';
  });
}

bool is_identifier(std::string_view text) noexcept {
  if (text.empty()) return false;
  auto alpha = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!alpha(text.front())) return false;
  return std::all_of(text.begin() + 1, text.end(),
                     [&](char c) { return alpha(c) || digit(c) || c == '-'; });
}

EntryId::EntryId(std::uint32_t stem, std::optional<char> suffix) : stem_(stem), suffix_(suffix) {
  if (stem == 0 || stem > kMaxStem) {
    throw Error(ErrorCode::kMalformed, "entry id stem must be in 1.." + std::to_string(kMaxStem));
  }
  if (suffix && (*suffix < 'a' || *suffix > 'z')) {
    throw Error(ErrorCode::kMalformed, "entry id suffix must be a single lowercase letter");
  }
}

std::optional<EntryId> EntryId::try_parse(std::string_view text, std::string* why) {
  auto fail = [&](const char* reason) -> std::optional<EntryId> {
    if (why != nullptr) *why = reason;
    return std::nullopt;
  };
  if (text.empty()) return fail("empty entry id");
  std::size_t digits = 0;
  while (digits < text.size() && text[digits] >= '0' && text[digits] <= '9') ++digits;
  if (digits == 0) return fail("entry id must start with a decimal stem");
  if (text[0] == '0') return fail("entry id stem has a leading zero");
  if (digits > 9) return fail("entry id stem is too large");
  std::string_view rest = text.substr(digits);
  if (rest.size() > 1) return fail("entry id suffix must be a single lowercase letter");
  std::optional<char> suffix;
  if (rest.size() == 1) {
    if (rest[0] < 'a' || rest[0] > 'z') return fail("entry id suffix must be a single lowercase letter");
    suffix = rest[0];
  }
  std::uint32_t stem = 0;
  std::from_chars(text.data(), text.data() + digits, stem);
  return EntryId(stem, suffix);
}

std::string EntryId::to_string() const {
  std::string out = std::to_string(stem_);
  if (suffix_) out.push_back(*suffix_);
  return out;
}

EntryId parse_entry_id(std::string_view text) {
  std::string why;
  auto id = EntryId::try_parse(text, &why);
  if (!id) throw Error(ErrorCode::kMalformed, why + ": '" + std::string(text) + "'");
  return *id;
}

std::strong_ordering compare_entry_ids(const EntryId& a, const EntryId& b) noexcept { return a <=> b; }

GoalId::GoalId(int number) : number_(number) {
  if (number < 1 || number > 99) {
    throw Error(ErrorCode::kMalformed, "safety goal number must be in 01..99");
  }
}

std::optional<GoalId> GoalId::try_parse(std::string_view text) noexcept {
  if (text.size() != 4 || text[0] != 'S' || text[1] != 'G') return std::nullopt;
  if (text[2] < '0' || text[2] > '9' || text[3] < '0' || text[3] > '9') return std::nullopt;
  int number = (text[2] - '0') * 10 + (text[3] - '0');
  if (number == 0) return std::nullopt;
  return GoalId(number);
}

std::string GoalId::to_string() const {
  std::string out = "SG";
  if (number_ < 10) out.push_back('0');
  out += std::to_string(number_);
  return out;
}

// ---------------------------------------------------------------------------
// Item definition

namespace {

template <class T>
const T* find_by_id(const std::vector<T>& items, std::string_view id) noexcept {
  auto it = std::find_if(items.begin(), items.end(), [&](const T& x) { return x.id == id; });
  return it == items.end() ? nullptr : &*it;
}

template <class T>
void report_duplicates(const std::vector<T>& items, std::string_view what,
                       std::vector<std::string>& problems) {
  std::set<std::string> seen;
  for (const T& x : items) {
    if (!seen.insert(x.id).second) {
      problems.push_back("duplicate " + std::string(what) + " id '" + x.id + "'");
    }
  }
}

template <class T>
void report_bad_ids(const std::vector<T>& items, std::string_view what,
                    std::vector<std::string>& problems) {
  for (const T& x : items) {
    if (!is_identifier(x.id)) {
      problems.push_back("invalid " + std::string(what) + " id '" + x.id + "'");
    }
  }
}

}  // namespace

bool FunctionDef::applies_in(std::string_view mode) const noexcept {
  return std::find(modes.begin(), modes.end(), mode) != modes.end();
}

const ElementNode* ItemDefinition::find_element(std::string_view id) const noexcept {
  return find_by_id(elements, id);
}

const ElementNode* ItemDefinition::primary_element() const noexcept {
  auto it = std::find_if(elements.begin(), elements.end(), [](const ElementNode& e) { return e.primary; });
  return it == elements.end() ? nullptr : &*it;
}

const OperatingMode* ItemDefinition::find_mode(std::string_view id) const noexcept {
  return find_by_id(modes, id);
}

const FunctionDef* ItemDefinition::find_function(std::string_view id) const noexcept {
  return find_by_id(functions, id);
}

const GuideWord* ItemDefinition::find_guide_word(std::string_view id) const noexcept {
  return find_by_id(guide_words, id);
}

const OperationalScenario* ItemDefinition::find_scenario(std::string_view id) const noexcept {
  return find_by_id(scenarios, id);
}

const Parameter* ItemDefinition::find_parameter(std::string_view name) const noexcept {
  auto it = std::find_if(parameters.begin(), parameters.end(),
                         [&](const Parameter& p) { return p.name == name; });
  return it == parameters.end() ? nullptr : &*it;
}

std::vector<GuideWord> default_guide_words() {
  return {
      {"LOSS", "Loss"},
      {"UNINTENDED", "Unintended activation"},
      {"MORE", "Excess beyond specified magnitude"},
      {"LESS", "Shortfall below specified magnitude"},
      {"REVERSE", "Reversed direction"},
      {"EARLY", "Premature activation"},
      {"LATE", "Delayed activation"},
      {"STUCK", "Frozen output"},
  };
}

std::vector<std::string> item_problems(const ItemDefinition& item) {
  std::vector<std::string> problems;
  if (item.name.empty()) problems.emplace_back("item name is empty");

  report_bad_ids(item.elements, "element", problems);
  report_bad_ids(item.modes, "mode", problems);
  report_bad_ids(item.functions, "function", problems);
  report_bad_ids(item.guide_words, "guide word", problems);
  report_bad_ids(item.scenarios, "scenario", problems);
  report_duplicates(item.elements, "element", problems);
  report_duplicates(item.modes, "mode", problems);
  report_duplicates(item.functions, "function", problems);
  report_duplicates(item.guide_words, "guide word", problems);
  report_duplicates(item.scenarios, "scenario", problems);

  std::set<std::string> param_names;
  for (const Parameter& p : item.parameters) {
    if (!is_identifier(p.name)) problems.push_back("invalid parameter name '" + p.name + "'");
    if (!param_names.insert(p.name).second) problems.push_back("duplicate parameter '" + p.name + "'");
    if (p.unit.empty()) problems.push_back("parameter '" + p.name + "' has no unit");
  }

  for (const OperatingMode& m : item.modes) {
    if (m.name.empty()) problems.push_back("mode '" + m.id + "' has an empty name");
  }

  for (const FunctionDef& f : item.functions) {
    if (f.modes.empty()) problems.push_back("function '" + f.id + "' applies in no mode");
    std::set<std::string> seen;
    for (const std::string& m : f.modes) {
      if (item.find_mode(m) == nullptr) {
        problems.push_back("function '" + f.id + "' references unknown mode '" + m + "'");
      }
      if (!seen.insert(m).second) {
        problems.push_back("function '" + f.id + "' lists mode '" + m + "' twice");
      }
    }
  }

  const auto primaries = std::count_if(item.elements.begin(), item.elements.end(),
                                       [](const ElementNode& e) { return e.primary; });
  if (primaries != 1) {
    problems.push_back("item needs exactly one primary element, found " + std::to_string(primaries));
  }

  std::map<std::string, std::vector<std::string>> adjacency;
  for (const Connection& c : item.connections) {
    for (const std::string* end : {&c.a, &c.b}) {
      if (item.find_element(*end) == nullptr) {
        problems.push_back("connection references unknown element '" + *end + "'");
      }
    }
    if (c.a == c.b) problems.push_back("element '" + c.a + "' is connected to itself");
    adjacency[c.a].push_back(c.b);
    adjacency[c.b].push_back(c.a);
  }

  if (const ElementNode* primary = item.primary_element(); primary != nullptr && primaries == 1) {
    std::set<std::string> reached{primary->id};
    std::vector<std::string> frontier{primary->id};
    while (!frontier.empty()) {
      std::string next = frontier.back();
      frontier.pop_back();
      for (const std::string& n : adjacency[next]) {
        if (reached.insert(n).second) frontier.push_back(n);
      }
    }
    for (const ElementNode& e : item.elements) {
      if (reached.count(e.id) == 0) {
        problems.push_back("element '" + e.id + "' is not connected to primary element '" +
                           primary->id + "'");
      }
    }
  }
  return problems;
}

// ---------------------------------------------------------------------------
// HARA document

std::string_view to_string(RevisionKind kind) noexcept {
  switch (kind) {
    case RevisionKind::kInitial: return "initial";
    case RevisionKind::kItemRefinement: return "item-refinement";
    case RevisionKind::kSafetyRefinement: return "safety-refinement";
  }
  return "initial";
}

std::optional<RevisionKind> parse_revision_kind(std::string_view text) noexcept {
  for (RevisionKind k : {RevisionKind::kInitial, RevisionKind::kItemRefinement,
                         RevisionKind::kSafetyRefinement}) {
    if (text == to_string(k)) return k;
  }
  return std::nullopt;
}

const HazardEntry* HaraDocument::find_entry(const EntryId& id) const noexcept {
  auto it = std::find_if(entries.begin(), entries.end(), [&](const HazardEntry& e) { return e.id == id; });
  return it == entries.end() ? nullptr : &*it;
}

const SafetyGoal* HaraDocument::find_goal(const GoalId& id) const noexcept {
  auto it = std::find_if(goals.begin(), goals.end(), [&](const SafetyGoal& g) { return g.id == id; });
  return it == goals.end() ? nullptr : &*it;
}

void normalize(HaraDocument& doc) {
  std::stable_sort(doc.entries.begin(), doc.entries.end(),
                   [](const HazardEntry& a, const HazardEntry& b) { return a.id < b.id; });
  std::stable_sort(doc.goals.begin(), doc.goals.end(),
                   [](const SafetyGoal& a, const SafetyGoal& b) { return a.id < b.id; });
  std::stable_sort(doc.waivers.begin(), doc.waivers.end(), [](const Waiver& a, const Waiver& b) {
    return std::tie(a.function, a.guide_word, a.mode) < std::tie(b.function, b.guide_word, b.mode);
  });
}

std::vector<std::string> document_problems(const ItemDefinition& item, const HaraDocument& doc) {
  std::vector<std::string> problems;
  if (doc.revision < 1) problems.emplace_back("revision number must be positive");
  if (doc.based_on && *doc.based_on < 1) problems.emplace_back("based-on revision must be positive");
  const bool initial = doc.kind == RevisionKind::kInitial;
  if (initial && doc.based_on) problems.emplace_back("initial revision must not be based on another");
  if (!initial && !doc.based_on) problems.emplace_back("refinement revision needs a based-on revision");

  std::set<GoalId> goal_ids;
  for (const SafetyGoal& g : doc.goals) {
    const std::string id = g.id.to_string();
    if (!goal_ids.insert(g.id).second) problems.push_back("duplicate safety goal " + id);
    if (is_blank(g.text)) problems.push_back("safety goal " + id + " has no text");
    if (g.modes.empty()) problems.push_back("safety goal " + id + " applies in no mode");
    for (const std::string& m : g.modes) {
      if (item.find_mode(m) == nullptr) {
        problems.push_back("safety goal " + id + " references unknown mode '" + m + "'");
      }
    }
  }

  std::set<EntryId> entry_ids;
  for (const HazardEntry& e : doc.entries) {
    const std::string id = "entry " + e.id.to_string();
    if (!entry_ids.insert(e.id).second) problems.push_back("duplicate " + id);
    const FunctionDef* function = item.find_function(e.malfunction.function);
    if (item.find_mode(e.mode) == nullptr) problems.push_back(id + " references unknown mode '" + e.mode + "'");
    if (function == nullptr) {
      problems.push_back(id + " references unknown function '" + e.malfunction.function + "'");
    } else if (item.find_mode(e.mode) != nullptr && !function->applies_in(e.mode)) {
      problems.push_back(id + ": function '" + function->id + "' does not apply in mode '" + e.mode + "'");
    }
    if (item.find_guide_word(e.malfunction.guide_word) == nullptr) {
      problems.push_back(id + " references unknown guide word '" + e.malfunction.guide_word + "'");
    }
    if (item.find_scenario(e.scenario) == nullptr) {
      problems.push_back(id + " references unknown scenario '" + e.scenario + "'");
    }
    if (!e.goal) {
      problems.push_back(id + " is not linked to a safety goal");
    } else if (doc.find_goal(*e.goal) == nullptr) {
      problems.push_back(id + " references unknown safety goal " + e.goal->to_string());
    }
  }

  std::set<std::tuple<std::string, std::string, std::string>> waived;
  for (const Waiver& w : doc.waivers) {
    const std::string id = "waiver " + w.function + "/" + w.guide_word + "/" + w.mode;
    if (!waived.emplace(w.function, w.guide_word, w.mode).second) problems.push_back("duplicate " + id);
    const FunctionDef* function = item.find_function(w.function);
    if (function == nullptr) problems.push_back(id + " references an unknown function");
    if (item.find_guide_word(w.guide_word) == nullptr) problems.push_back(id + " references an unknown guide word");
    if (item.find_mode(w.mode) == nullptr) {
      problems.push_back(id + " references an unknown mode");
    } else if (function != nullptr && !function->applies_in(w.mode)) {
      problems.push_back(id + ": function does not apply in that mode");
    }
    if (is_blank(w.rationale)) problems.push_back(id + " has no rationale");
  }
  return problems;
}

RevisionHistory::RevisionHistory(std::vector<HaraDocument> revisions) : revisions_(std::move(revisions)) {
  for (std::size_t i = 1; i < revisions_.size(); ++i) {
    const HaraDocument& prev = revisions_[i - 1];
    const HaraDocument& cur = revisions_[i];
    if (cur.revision <= prev.revision) {
      throw Error(ErrorCode::kInconsistentInput,
                  "revision numbers must strictly increase (" + std::to_string(prev.revision) +
                      " then " + std::to_string(cur.revision) + ")");
    }
    if (cur.based_on != prev.revision) {
      throw Error(ErrorCode::kInconsistentInput,
                  "revision " + std::to_string(cur.revision) + " is not based on its predecessor " +
                      std::to_string(prev.revision));
    }
    if (cur.title != prev.title) {
      throw Error(ErrorCode::kInconsistentInput,
                  "revision " + std::to_string(cur.revision) + " has a different title");
    }
  }
}

const HaraDocument* RevisionHistory::find(int revision) const noexcept {
  auto it = std::find_if(revisions_.begin(), revisions_.end(),
                         [&](const HaraDocument& d) { return d.revision == revision; });
  return it == revisions_.end() ? nullptr : &*it;
}

}  // namespace haraforge
