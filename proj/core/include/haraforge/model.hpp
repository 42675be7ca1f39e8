#pragma once

/// @file model.hpp
/// Domain types of a hazard analysis and risk assessment (HARA): rating
/// scales, identifiers, the item definition and one document revision.
///
/// All types are plain values. Structural invariants that span several
/// objects (unique ids, resolvable references) are checked by
/// item_problems() / document_problems(); the parsers refuse any input that
/// violates them, while programmatically built documents can be handed to
/// the validator to report the same problems as findings.

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "haraforge/error.hpp"

namespace haraforge {

// ---------------------------------------------------------------------------
// ASIL

enum class AsilLevel : std::uint8_t { QM = 0, A, B, C, D };

inline constexpr std::array<AsilLevel, 5> kAllAsilLevels = {
    AsilLevel::QM, AsilLevel::A, AsilLevel::B, AsilLevel::C, AsilLevel::D};

/// Total order QM < A < B < C < D.
std::strong_ordering compare_asil(AsilLevel a, AsilLevel b) noexcept;

/// "QM", "A", "B", "C" or "D".
std::string_view to_string(AsilLevel level) noexcept;

/// "QM" or "ASIL A".."ASIL D".
std::string display_name(AsilLevel level);

std::optional<AsilLevel> parse_asil(std::string_view text) noexcept;

// ---------------------------------------------------------------------------
// Risk parameter classes

/// A class on one of the S/E/C scales. Values outside 0..Max cannot be
/// constructed; the throwing constructor is for literals in code, parse()
/// and from_int() for untrusted input.
template <char Prefix, int Max>
class RiskClass {
 public:
  static constexpr char kPrefix = Prefix;
  static constexpr int kMax = Max;

  constexpr RiskClass() noexcept = default;

  explicit RiskClass(int value) : value_(value) {
    if (value < 0 || value > Max) {
      throw Error(ErrorCode::kOutOfRange,
                  std::string(1, Prefix) + std::to_string(value) +
                      " is outside " + std::string(1, Prefix) + "0.." +
                      std::string(1, Prefix) + std::to_string(Max));
    }
  }

  static constexpr std::optional<RiskClass> from_int(int value) noexcept {
    if (value < 0 || value > Max) return std::nullopt;
    RiskClass c;
    c.value_ = value;
    return c;
  }

  /// Accepts exactly "<Prefix><digit>" with the digit inside the range.
  static constexpr std::optional<RiskClass> parse(std::string_view text) noexcept {
    if (text.size() != 2 || text[0] != Prefix) return std::nullopt;
    if (text[1] < '0' || text[1] > '9') return std::nullopt;
    return from_int(text[1] - '0');
  }

  constexpr int value() const noexcept { return value_; }

  std::string to_string() const { return std::string(1, Prefix) + std::to_string(value_); }

  constexpr auto operator<=>(const RiskClass&) const = default;

 private:
  int value_ = 0;
};

using SeverityClass = RiskClass<'S', 3>;
using ExposureClass = RiskClass<'E', 4>;
using ControllabilityClass = RiskClass<'C', 3>;

/// A class together with the expert argument for it. The argument is
/// mandatory when the class is nonzero; has_required_rationale() reports
/// whether that holds (the validator turns violations into findings).
template <class Class>
struct Rating {
  Class level{};
  std::string rationale;

  bool has_required_rationale() const noexcept;

  bool operator==(const Rating&) const = default;
};

bool is_blank(std::string_view text) noexcept;

template <class Class>
bool Rating<Class>::has_required_rationale() const noexcept {
  return level.value() == 0 || !is_blank(rationale);
}

// ---------------------------------------------------------------------------
// Identifiers

/// `[A-Za-z_][A-Za-z0-9_-]*`
bool is_identifier(std::string_view text) noexcept;

/// Identifier of a hazardous scenario row: decimal stem plus an optional
/// single lowercase suffix ("37", "37a"). Ordered by stem, then
/// no-suffix < 'a' < 'b' < ...
class EntryId {
 public:
  static constexpr std::uint32_t kMaxStem = 999'999'999;

  EntryId() noexcept = default;
  explicit EntryId(std::uint32_t stem, std::optional<char> suffix = std::nullopt);

  /// Parses the canonical text form. Returns nullopt and fills `why` on
  /// failure.
  static std::optional<EntryId> try_parse(std::string_view text, std::string* why = nullptr);

  std::uint32_t stem() const noexcept { return stem_; }
  std::optional<char> suffix() const noexcept { return suffix_; }

  std::string to_string() const;

  auto operator<=>(const EntryId&) const = default;

 private:
  std::uint32_t stem_ = 1;
  std::optional<char> suffix_;
};

/// Throws Error(kMalformed) on anything but the canonical form.
EntryId parse_entry_id(std::string_view text);

std::strong_ordering compare_entry_ids(const EntryId& a, const EntryId& b) noexcept;

/// Safety goal identifier "SG01".."SG99".
class GoalId {
 public:
  GoalId() noexcept = default;
  explicit GoalId(int number);

  static std::optional<GoalId> try_parse(std::string_view text) noexcept;

  int number() const noexcept { return number_; }
  std::string to_string() const;

  auto operator<=>(const GoalId&) const = default;

 private:
  int number_ = 1;
};

// ---------------------------------------------------------------------------
// Item definition

struct OperatingMode {
  std::string id;
  std::string name;
  bool automated = false;

  bool operator==(const OperatingMode&) const = default;
};

struct FunctionDef {
  std::string id;
  std::string description;
  std::vector<std::string> modes;

  bool applies_in(std::string_view mode) const noexcept;

  bool operator==(const FunctionDef&) const = default;
};

struct GuideWord {
  std::string id;
  std::string interpretation;

  bool operator==(const GuideWord&) const = default;
};

struct OperationalScenario {
  std::string id;
  std::string description;
  ExposureClass exposure{};
  std::string exposure_rationale;

  bool operator==(const OperationalScenario&) const = default;
};

struct ElementNode {
  std::string id;
  bool primary = false;

  bool operator==(const ElementNode&) const = default;
};

struct Connection {
  std::string a;
  std::string b;

  bool operator==(const Connection&) const = default;
};

/// Named numeric metadata. Nothing is computed from it.
struct Parameter {
  std::string name;
  double value = 0.0;
  std::string unit;

  bool operator==(const Parameter&) const = default;
};

struct ItemDefinition {
  std::string name;
  std::vector<ElementNode> elements;
  std::vector<Connection> connections;
  std::vector<OperatingMode> modes;
  std::vector<FunctionDef> functions;
  std::vector<GuideWord> guide_words;
  std::vector<OperationalScenario> scenarios;
  std::vector<Parameter> parameters;

  const ElementNode* find_element(std::string_view id) const noexcept;
  const ElementNode* primary_element() const noexcept;
  const OperatingMode* find_mode(std::string_view id) const noexcept;
  const FunctionDef* find_function(std::string_view id) const noexcept;
  const GuideWord* find_guide_word(std::string_view id) const noexcept;
  const OperationalScenario* find_scenario(std::string_view id) const noexcept;
  const Parameter* find_parameter(std::string_view name) const noexcept;

  bool operator==(const ItemDefinition&) const = default;
};

/// LOSS, UNINTENDED, MORE, LESS, REVERSE, EARLY, LATE, STUCK.
std::vector<GuideWord> default_guide_words();

/// Violated item invariants, one message each; empty when the item is valid.
std::vector<std::string> item_problems(const ItemDefinition& item);

// ---------------------------------------------------------------------------
// HARA document

struct Malfunction {
  std::string function;
  std::string guide_word;
  std::string description;

  bool operator==(const Malfunction&) const = default;
};

/// One hazardous scenario row.
struct HazardEntry {
  EntryId id;
  std::string mode;
  Malfunction malfunction;
  std::string scenario;
  std::string consequence;
  Rating<SeverityClass> severity;
  Rating<ExposureClass> exposure;
  Rating<ControllabilityClass> controllability;
  AsilLevel asil = AsilLevel::QM;
  /// Always set in parsed documents; empty only for programmatic construction.
  std::optional<GoalId> goal;

  bool operator==(const HazardEntry&) const = default;
};

/// Expert judgment that a (function, guide word, mode) combination needs no
/// hazardous scenario.
struct Waiver {
  std::string function;
  std::string guide_word;
  std::string mode;
  std::string rationale;

  bool operator==(const Waiver&) const = default;
};

struct SafetyGoal {
  GoalId id;
  std::string text;
  std::vector<std::string> modes;
  std::optional<AsilLevel> asil;
  /// Presentation order of the goal in the goal table. Independent of the
  /// SG number; goals added late keep their grouping position.
  int ordinal = 0;

  bool operator==(const SafetyGoal&) const = default;
};

enum class RevisionKind { kInitial, kItemRefinement, kSafetyRefinement };

std::string_view to_string(RevisionKind kind) noexcept;
std::optional<RevisionKind> parse_revision_kind(std::string_view text) noexcept;

/// One revision of a HARA. Entries are held in EntryId order, goals in SG
/// number order and waivers in (function, guide word, mode) order; the
/// parsers produce that order and normalize() restores it.
struct HaraDocument {
  std::string title;
  std::string item_name;
  int revision = 1;
  RevisionKind kind = RevisionKind::kInitial;
  std::optional<int> based_on;
  std::vector<HazardEntry> entries;
  std::vector<Waiver> waivers;
  std::vector<SafetyGoal> goals;

  const HazardEntry* find_entry(const EntryId& id) const noexcept;
  const SafetyGoal* find_goal(const GoalId& id) const noexcept;

  bool operator==(const HaraDocument&) const = default;
};

/// Sorts entries, goals and waivers into canonical order.
void normalize(HaraDocument& doc);

/// Violated document invariants against `item`, one message each. Covers
/// unique ids, resolvable references, mode applicability of functions,
/// goal links and the kind/based-on pairing. Missing rationales are not
/// structural and are left to the validator.
std::vector<std::string> document_problems(const ItemDefinition& item, const HaraDocument& doc);

/// Ordered revisions of one HARA. Revision numbers strictly increase and
/// every revision after the first is based on its predecessor.
class RevisionHistory {
 public:
  RevisionHistory() = default;

  /// Throws Error(kInconsistentInput) if the ordering or title invariants
  /// do not hold.
  explicit RevisionHistory(std::vector<HaraDocument> revisions);

  const std::vector<HaraDocument>& revisions() const noexcept { return revisions_; }
  bool empty() const noexcept { return revisions_.empty(); }
  std::size_t size() const noexcept { return revisions_.size(); }

  const HaraDocument* find(int revision) const noexcept;

 private:
  std::vector<HaraDocument> revisions_;
};

}  // namespace haraforge
