#pragma once

#include <optional>
#include <span>
#include <vector>

#include "conestream/barcode.hpp"
#include "conestream/tower_stream.hpp"

namespace conestream {

/// Whole boundary matrix of a filtration, held in memory (test sizes only).
struct DenseFiltration {
  std::vector<std::vector<SimplexIndex>> columns;  // sorted row indices
  std::vector<int> dims;

  /// Inactive events are ignored. Throws InputError if an addition refers to
  /// a later or missing index.
  static DenseFiltration from_events(std::span<const FiltrationEvent> events);

  std::size_t size() const noexcept { return columns.size(); }
};

/// Final pivot of every column after left-to-right reduction; nullopt for
/// columns that reduce to zero (positive simplices).
std::vector<std::optional<SimplexIndex>> reduce_pivots(const DenseFiltration& f, bool compress);

/// Standard left-to-right reduction.
Barcode oracle_barcode(const DenseFiltration& f);

/// Same, but each column first drops rows of already-known negative simplices.
Barcode oracle_barcode_with_compression(const DenseFiltration& f);

}  // namespace conestream
