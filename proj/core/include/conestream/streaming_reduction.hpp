#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <absl/container/flat_hash_map.h>

#include "conestream/barcode.hpp"
#include "conestream/tower_stream.hpp"

namespace conestream {

/// Z2 column: strictly increasing row indices. The pivot is the last entry.
using SparseColumn = std::vector<SimplexIndex>;

/// Keeps consecutive indices in neighbouring hash slots.
struct IndexHash {
  std::size_t operator()(SimplexIndex i) const noexcept { return static_cast<std::size_t>((i << 7) | (i & 0x7f)); }
};

template <typename V>
using IndexMap = absl::flat_hash_map<SimplexIndex, V, IndexHash>;

/// Columns keyed by simplex index, plus the pivot -> column map and a
/// reference count of every row index that occurs in some stored column.
class ReductionMatrix {
 public:
  /// Without row tracking, distinct_rows() falls back to a full scan.
  explicit ReductionMatrix(bool track_rows = true) : track_rows_(track_rows) {}

  std::size_t columns() const noexcept { return columns_.size(); }
  std::size_t distinct_rows() const;
  bool tracks_rows() const noexcept { return track_rows_; }

  bool contains(SimplexIndex j) const { return columns_.count(j) != 0; }
  const SparseColumn* column(SimplexIndex j) const;
  std::optional<SimplexIndex> pivot(SimplexIndex j) const;

  /// Column whose registered pivot is `row`.
  std::optional<SimplexIndex> owner(SimplexIndex row) const;

  /// Stores a column; empty columns are not stored.
  void insert(SimplexIndex j, SparseColumn rows);
  void erase(SimplexIndex j);
  void erase_entry(SimplexIndex j, SimplexIndex row);

  /// column[target] += column[source] over Z2.
  void add_into(SimplexIndex target, SimplexIndex source);

  void register_pivot(SimplexIndex j);

  /// Adds owners of the current pivot until the pivot is unowned or the
  /// column is empty (then it is erased). Returns the final pivot.
  std::optional<SimplexIndex> reduce_column(SimplexIndex j);

  /// Clears row `row` everywhere by adding its owner column into every other
  /// column containing it, then deletes the owner. No-op if unowned.
  void remove_row(SimplexIndex row);

  /// Pivots are pairwise distinct and the owner map is exactly the inverse
  /// of the registered pivots.
  bool check_invariants() const;

  template <typename Fn>
  void for_each_column(Fn&& fn) const {
    for (const auto& [j, col] : columns_) fn(j, col);
  }

  std::vector<SimplexIndex> column_indices() const;

  std::uint64_t additions() const noexcept { return additions_; }

 private:
  void ref(SimplexIndex row);
  void unref(SimplexIndex row);

  IndexMap<SparseColumn> columns_;
  IndexMap<SimplexIndex> owner_;
  IndexMap<std::uint32_t> row_refs_;
  SparseColumn scratch_;

  void merge(SparseColumn& dst, const SparseColumn& src);
  std::uint64_t additions_ = 0;
  bool track_rows_ = true;
};

enum class ReductionMode { Immediate, Chunked };

struct ReducerOptions {
  ReductionMode mode = ReductionMode::Immediate;
  std::size_t chunk_size = 200000;
  /// When set, assert at every event boundary (immediate) or after every
  /// chunk (chunked) that stored columns stay within 2ω (+ C) and distinct
  /// rows within 4ω (+ 2C); violations throw BoundViolation.
  std::optional<std::uint64_t> omega;
  /// Maintain the distinct-row count (and ReducerStats::max_rows). Always on
  /// when omega is set.
  bool track_rows = false;
};

struct ReducerStats {
  std::uint64_t events = 0;
  std::uint64_t max_columns = 0;
  std::uint64_t max_rows = 0;  ///< only with row tracking
  std::uint64_t max_tracked = 0;  ///< peak size of the per-simplex status map
  std::uint64_t column_additions = 0;
  std::uint64_t remove_row_calls = 0;
  std::uint64_t cleared = 0;  ///< columns zeroed by clearing (chunked)
};

/// Space-bounded barcode computation from a filtration event stream.
///
/// Columns of simplices that can no longer be referenced are dropped as soon
/// as the stream reports them inactive, so the matrix stays proportional to
/// the width of the underlying tower rather than the stream length.
class StreamingReducer {
 public:
  explicit StreamingReducer(ReducerOptions options = {});

  /// Throws InputError on an inconsistent stream, BoundViolation when bound
  /// assertions are enabled and fail.
  void push(const FiltrationEvent& ev);

  /// Flushes pending input and returns all bars, essential ones included.
  /// The reducer must not be used afterwards.
  Barcode finish();

  const ReducerStats& stats() const noexcept { return stats_; }
  const ReductionMatrix& matrix() const noexcept { return matrix_; }

  /// Immediate mode, between events: every stored column is non-zero with an
  /// active pivot, and the matrix invariants hold.
  bool check_invariants() const;

 private:
  enum class Sign : std::uint8_t { Unknown, Positive, Negative };
  struct Status {
    int dim = 0;
    bool active = true;
    Sign sign = Sign::Unknown;
    bool paired = false;
  };

  Status& status(SimplexIndex id);
  SparseColumn compressed(const FiltrationEvent& ev) const;
  void pair(SimplexIndex birth, SimplexIndex death);
  void immediate_add(const FiltrationEvent& ev);
  void immediate_inactive(SimplexIndex id);
  void flush(bool last);
  void sweep();
  void check_bounds(std::uint64_t column_slack, std::uint64_t row_slack);
  void track();

  ReducerOptions options_;
  ReductionMatrix matrix_;
  IndexMap<Status> status_;
  std::vector<FiltrationEvent> pending_;
  Barcode bars_;
  ReducerStats stats_;
};

Barcode stream_barcode(std::span<const FiltrationEvent> events, ReducerOptions options = {});

}  // namespace conestream
