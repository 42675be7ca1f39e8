#pragma once

#include <compare>
#include <string>
#include <vector>

#include "haraforge/model.hpp"

namespace haraforge {

/// A (function, guide word, mode) combination that needs either a hazard
/// entry or a waiver.
struct CandidateTriple {
  std::string function;
  std::string guide_word;
  std::string mode;

  std::string to_string() const { return function + "/" + guide_word + "/" + mode; }

  auto operator<=>(const CandidateTriple&) const = default;
};

enum class CoverageReason { kNoEntryNoWaiver };

struct CoverageFinding {
  CandidateTriple triple;
  CoverageReason reason = CoverageReason::kNoEntryNoWaiver;

  bool operator==(const CoverageFinding&) const = default;
};

/// One malfunction per function x guide word, described as
/// "<interpretation> of <function description>", ordered by
/// (function id, guide word id).
/// Throws Error(kNothingToEnumerate) without functions or guide words.
std::vector<Malfunction> enumerate_malfunctions(const ItemDefinition& item);

/// One triple per function x guide word x applicable mode, ordered by
/// (function id, guide word id, mode id).
/// Throws Error(kNothingToEnumerate) without functions, guide words or modes.
std::vector<CandidateTriple> enumerate_candidates(const ItemDefinition& item);

/// Candidates with neither a matching entry nor a matching waiver. Empty
/// means the document is combinatorially complete.
std::vector<CoverageFinding> coverage_report(const ItemDefinition& item, const HaraDocument& doc);

}  // namespace haraforge
