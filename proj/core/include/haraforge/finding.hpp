#pragma once

/// @file finding.hpp
/// Validator findings: rule catalog, locations and severities.

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "haraforge/model.hpp"
#include "haraforge/scenario_generator.hpp"

namespace haraforge {

enum class RuleId { R1 = 1, R2, R3, R4, R5, R6, R7, R8, R9, R10 };

inline constexpr RuleId kAllRules[] = {RuleId::R1, RuleId::R2, RuleId::R3, RuleId::R4, RuleId::R5,
                                       RuleId::R6, RuleId::R7, RuleId::R8, RuleId::R9, RuleId::R10};

/// "R1".."R10".
std::string_view to_string(RuleId rule) noexcept;
std::optional<RuleId> parse_rule_id(std::string_view text) noexcept;

enum class FindingSeverity { kError, kWarning };

std::string_view to_string(FindingSeverity severity) noexcept;

/// R7 and R9 are warnings, everything else an error.
FindingSeverity default_severity(RuleId rule) noexcept;

/// What a finding points at. Locations of different kinds order by kind
/// (document, revision, entry, goal, triple), then by value.
class Location {
 public:
  struct Revision {
    int number = 0;
    auto operator<=>(const Revision&) const = default;
  };

  Location() = default;

  static Location document() { return Location(); }
  static Location revision(int number) { return Location(Revision{number}); }
  static Location entry(const EntryId& id) { return Location(id); }
  static Location goal(const GoalId& id) { return Location(id); }
  static Location triple(CandidateTriple t) { return Location(std::move(t)); }

  const EntryId* entry_id() const noexcept { return std::get_if<EntryId>(&value_); }
  const GoalId* goal_id() const noexcept { return std::get_if<GoalId>(&value_); }
  const CandidateTriple* candidate() const noexcept { return std::get_if<CandidateTriple>(&value_); }
  const Revision* revision_ref() const noexcept { return std::get_if<Revision>(&value_); }

  /// "document", "revision 6", "entry 37a", "goal SG03", "triple f/g/m".
  std::string to_string() const;

  auto operator<=>(const Location&) const = default;

 private:
  using Value = std::variant<std::monostate, Revision, EntryId, GoalId, CandidateTriple>;
  explicit Location(Value value) : value_(std::move(value)) {}

  Value value_;
};

struct Finding {
  RuleId rule = RuleId::R1;
  Location location;
  FindingSeverity severity = FindingSeverity::kError;
  std::string message;

  bool operator==(const Finding&) const = default;
};

/// Sorts by (rule, location); findings that tie keep their relative order.
void sort_findings(std::vector<Finding>& findings);

bool has_errors(const std::vector<Finding>& findings) noexcept;

}  // namespace haraforge
