#include "haraforge/finding.hpp"

#include <algorithm>

namespace haraforge {

std::string_view to_string(RuleId rule) noexcept {
  switch (rule) {
    case RuleId::R1: return "R1";
    case RuleId::R2: return "R2";
    case RuleId::R3: return "R3";
    case RuleId::R4: return "R4";
    case RuleId::R5: return "R5";
    case RuleId::R6: return "R6";
    case RuleId::R7: return "R7";
    case RuleId::R8: return "R8";
    case RuleId::R9: return "R9";
    case RuleId::R10: return "R10";
  }
  return "R?";
}

std::optional<RuleId> parse_rule_id(std::string_view text) noexcept {
  for (RuleId rule : kAllRules) {
    if (to_string(rule) == text) return rule;
  }
  return std::nullopt;
}

std::string_view to_string(FindingSeverity severity) noexcept {
  return severity == FindingSeverity::kError ? "error" : "warning";
}

FindingSeverity default_severity(RuleId rule) noexcept {
  return rule == RuleId::R7 || rule == RuleId::R9 ? FindingSeverity::kWarning : FindingSeverity::kError;
}

std::string Location::to_string() const {
  struct Visitor {
    std::string operator()(std::monostate) const { return "document"; }
    std::string operator()(const Revision& r) const { return "revision " + std::to_string(r.number); }
    std::string operator()(const EntryId& id) const { return "entry " + id.to_string(); }
    std::string operator()(const GoalId& id) const { return "goal " + id.to_string(); }
    std::string operator()(const CandidateTriple& t) const { return "triple " + t.to_string(); }
  };
  return std::visit(Visitor{}, value_);
}

void sort_findings(std::vector<Finding>& findings) {
  std::stable_sort(findings.begin(), findings.end(), [](const Finding& a, const Finding& b) {
    if (a.rule != b.rule) return a.rule < b.rule;
    return a.location < b.location;
  });
}

bool has_errors(const std::vector<Finding>& findings) noexcept {
  return std::any_of(findings.begin(), findings.end(),
                     [](const Finding& f) { return f.severity == FindingSeverity::kError; });
}

}  // namespace haraforge
