#pragma once

/// @file revision_diff.hpp
/// Entry-level diff between two HARA revisions and classification of the
/// refinement it represents.

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "haraforge/finding.hpp"
#include "haraforge/model.hpp"

namespace haraforge {

struct FieldChange {
  std::string field;
  std::string before;
  std::string after;

  bool operator==(const FieldChange&) const = default;
};

struct EntryChange {
  EntryId id;
  std::vector<FieldChange> changes;
  /// Set when the stated ASIL differs.
  std::optional<std::pair<AsilLevel, AsilLevel>> asil_transition;

  bool operator==(const EntryChange&) const = default;
};

struct GoalChange {
  GoalId id;
  std::vector<FieldChange> changes;

  bool operator==(const GoalChange&) const = default;
};

/// Suffixed ids added in the next revision whose plain stem id exists in
/// the base, e.g. 37 -> [37a].
struct Split {
  EntryId parent;
  std::vector<EntryId> children;

  bool operator==(const Split&) const = default;
};

struct SetDelta {
  std::vector<std::string> added;
  std::vector<std::string> removed;

  bool empty() const noexcept { return added.empty() && removed.empty(); }
  bool operator==(const SetDelta&) const = default;
};

struct DiffReport {
  int base_revision = 0;
  int next_revision = 0;
  /// next.based_on does not name base.revision. Informational only.
  bool based_on_mismatch = false;

  std::vector<EntryId> added_entries;
  std::vector<EntryId> removed_entries;
  std::vector<EntryChange> modified_entries;
  std::vector<GoalId> added_goals;
  std::vector<GoalId> removed_goals;
  std::vector<GoalChange> modified_goals;
  std::vector<Waiver> added_waivers;
  std::vector<Waiver> removed_waivers;
  std::vector<Split> splits;
  SetDelta functions;
  SetDelta modes;
  /// Stems discarded earlier and reused by a revision up to `next`. Only
  /// filled by the history-aware overload.
  std::vector<std::uint32_t> reused_stems;

  /// No entry, goal, waiver or range changes. The based-on flag is ignored.
  bool empty() const noexcept;

  bool operator==(const DiffReport&) const = default;
};

enum class RefinementClass { kItemRefinement, kSafetyRefinement, kNone, kInvalid };

/// "item-refinement", "safety-refinement", "none", "invalid".
std::string_view to_string(RefinementClass c) noexcept;

/// Functions referenced by the entries of a revision: the functional range
/// the revision actually analyses.
std::set<std::string> functional_range(const HaraDocument& doc);

/// Operating modes referenced by the entries of a revision.
std::set<std::string> mode_range(const HaraDocument& doc);

DiffReport diff(const HaraDocument& base, const HaraDocument& next);

/// As above, plus reused_stems computed over the revisions of `history` up
/// to next.revision.
DiffReport diff(const HaraDocument& base, const HaraDocument& next, const RevisionHistory& history);

RefinementClass classify_refinement(const DiffReport& report) noexcept;

/// One R8 finding per stem that is present in some revision, absent in a
/// later one and present again after that. Located at the revision that
/// reuses it.
std::vector<Finding> check_id_stability(const RevisionHistory& history);

}  // namespace haraforge
