#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include <absl/container/flat_hash_map.h>
#include <absl/container/flat_hash_set.h>

#include "conestream/complex_dict.hpp"
#include "conestream/tower_stream.hpp"

namespace conestream {

struct ConversionStats {
  std::uint64_t n = 0;             ///< elementary inclusions
  std::uint64_t n0 = 0;            ///< vertex inclusions
  std::uint64_t m = 0;             ///< tower length (ops)
  int delta = 0;                   ///< largest included dimension
  std::uint64_t omega = 0;         ///< width: max |K_i| over op boundaries
  std::uint64_t total_output = 0;  ///< additions emitted, |K̂_m|
  std::uint64_t max_live = 0;      ///< peak simplices held by the converter
  std::uint64_t contractions = 0;
  std::uint64_t total_cost = 0;         ///< Σ c_i
  std::uint64_t total_deactivated = 0;  ///< Σ d_i
  std::uint64_t star_work = 0;          ///< simplices touched comparing stars
  std::vector<std::uint64_t> costs;     ///< c_i per contraction, if recorded
};

/// n + 2(Δ+1)·n·(1 + log2 n0): upper bound on the active-coning output size.
double size_bound(const ConversionStats& s);
bool within_size_bound(const ConversionStats& s);

/// Writes "key=value" lines (n, n0, m, delta, omega, filtration_size,
/// max_live_simplices, ...).
void write_stats(std::ostream& os, const ConversionStats& s);

/// Receives each emitted event together with the 0-based tower step that
/// produced it.
using EventSink = std::function<void(const FiltrationEvent&, std::uint64_t step)>;

struct ConverterOptions {
  bool record_costs = false;
  /// Throw BoundViolation from finish() if the size bound is exceeded.
  bool check_size_bound = true;
};

/// Streaming tower-to-filtration conversion with active coning.
///
/// Holds only the active complex (which equals the current tower complex K_i)
/// plus per-contraction scratch space. At a contraction the side with the
/// smaller star is coned onto the other vertex and then deactivated.
///
/// Tower naming: after "c u v" the merged vertex is called u, whichever
/// vertex survives internally.
class ActiveConingConverter {
 public:
  explicit ActiveConingConverter(EventSink sink, ConverterOptions options = {});

  /// Throws InputError if the op is not valid in the current complex.
  void push(const TowerOp& op);
  const ConversionStats& finish();

  const ConversionStats& stats() const noexcept { return stats_; }
  const ComplexDict& active() const noexcept { return active_; }

  /// Internal vertex currently representing a tower vertex name.
  VertexId resolve(VertexId name) const;

 private:
  void include(const Simplex& named);
  void contract(VertexId a, VertexId b);
  SimplexIndex emit_addition(const Simplex& s, FacetIds facet_ids);
  void note_live(std::uint64_t extra);

  EventSink sink_;
  ConverterOptions options_;
  ComplexDict active_;
  absl::flat_hash_map<VertexId, VertexId> name_to_internal_;
  absl::flat_hash_map<VertexId, VertexId> internal_to_name_;
  SimplexIndex next_id_ = 0;
  ConversionStats stats_;
};

/// Baseline coning onto the full closed star of the accumulated complex;
/// after "c u v" the vertex u survives. Keeps every simplex ever emitted and
/// emits no inactive events.
class FullConingConverter {
 public:
  explicit FullConingConverter(EventSink sink, ConverterOptions options = {});

  void push(const TowerOp& op);
  const ConversionStats& finish();
  const ConversionStats& stats() const noexcept { return stats_; }

 private:
  VertexId resolve(VertexId name) const;
  bool all_live(const Simplex& s, std::optional<VertexId> skip = std::nullopt) const;

  EventSink sink_;
  ConverterOptions options_;
  ComplexDict accumulated_;
  absl::flat_hash_map<VertexId, VertexId> names_;  // live tower name -> internal id
  absl::flat_hash_set<VertexId> live_;             // live internal ids
  VertexId next_vertex_ = 0;
  SimplexIndex next_id_ = 0;
  std::uint64_t live_simplices_ = 0;
  ConversionStats stats_;
};

ConversionStats convert(std::span<const TowerOp> tower, const EventSink& sink, ConverterOptions options = {});
ConversionStats convert_full_coning(std::span<const TowerOp> tower, const EventSink& sink,
                                    ConverterOptions options = {});

/// Convenience: the converted event list and the step of every filtration
/// index (for step-stamped barcode comparison).
struct ConvertedFiltration {
  std::vector<FiltrationEvent> events;
  std::vector<std::uint64_t> step_of;
  ConversionStats stats;
};

ConvertedFiltration convert_to_vector(std::span<const TowerOp> tower, bool full_coning = false,
                                      ConverterOptions options = {});

}  // namespace conestream
