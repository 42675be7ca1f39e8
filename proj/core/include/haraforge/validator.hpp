#pragma once

/// @file validator.hpp
/// Consistency rules R1..R10 over one HARA revision.

#include <string>
#include <string_view>
#include <vector>

#include "haraforge/finding.hpp"
#include "haraforge/model.hpp"

namespace haraforge {

/// Runs every rule and returns the findings ordered by (rule, location).
///
/// R8 (id reuse) and R10 (functional range of a safety refinement) need
/// `history`; without it they are skipped. When a history is given, `doc`
/// must be one of its revisions, otherwise Error(kInconsistentInput).
std::vector<Finding> validate(const ItemDefinition& item, const HaraDocument& doc,
                              const RevisionHistory* history = nullptr);

/// Description of a rule and the reasoning behind it.
std::string_view explain_rule(RuleId rule) noexcept;

/// Looks up "R1".."R10". Throws Error(kUnknownRule) for anything else.
std::string_view explain_rule(std::string_view rule_id);

}  // namespace haraforge
