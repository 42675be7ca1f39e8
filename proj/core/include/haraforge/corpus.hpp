#pragma once

/// @file corpus.hpp
/// The bundled AFA Logic analysis: item definition and two HARA revisions,
/// before and after the split of the steering scenario.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "haraforge/model.hpp"

namespace haraforge {

enum class Provenance {
  kPaperVerbatim,        ///< copied character for character from the publication
  kPaperDerived,         ///< follows from statements in the publication
  kSyntheticConsistent,  ///< invented so that the data is consistent with the above
};

/// "paper-verbatim", "paper-derived", "synthetic-consistent".
std::string_view to_string(Provenance provenance) noexcept;

struct ManifestEntry {
  std::string key;
  Provenance provenance = Provenance::kSyntheticConsistent;
};

/// Provenance of every fixture value. Keys look like "item:mode:FollowMode",
/// "rev6:goal:SG03:asil" or "rev6:entry:37a:ratings".
struct CorpusManifest {
  std::vector<ManifestEntry> entries;

  std::optional<Provenance> find(std::string_view key) const noexcept;
};

struct Corpus {
  ItemDefinition item;
  /// Revision 5 (before the split) and revision 6 (after it).
  RevisionHistory history;
  CorpusManifest manifest;

  const HaraDocument& previous() const { return history.revisions().front(); }
  const HaraDocument& latest() const { return history.revisions().back(); }
};

/// Builds the corpus from compiled-in data. Every call returns an equal
/// value.
Corpus load_corpus();

}  // namespace haraforge
