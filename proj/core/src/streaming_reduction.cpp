#include "conestream/streaming_reduction.hpp"

#include <algorithm>
#include <map>
#include <string>

#include <absl/container/flat_hash_set.h>

#include "conestream/errors.hpp"

namespace conestream {

// ---------------------------------------------------------------- matrix

const SparseColumn* ReductionMatrix::column(SimplexIndex j) const {
  auto it = columns_.find(j);
  return it == columns_.end() ? nullptr : &it->second;
}

std::optional<SimplexIndex> ReductionMatrix::pivot(SimplexIndex j) const {
  auto it = columns_.find(j);
  if (it == columns_.end() || it->second.empty()) return std::nullopt;
  return it->second.back();
}

std::optional<SimplexIndex> ReductionMatrix::owner(SimplexIndex row) const {
  auto it = owner_.find(row);
  if (it == owner_.end()) return std::nullopt;
  return it->second;
}

std::size_t ReductionMatrix::distinct_rows() const {
  if (track_rows_) return row_refs_.size();
  absl::flat_hash_set<SimplexIndex> rows;
  for (const auto& [j, col] : columns_) rows.insert(col.begin(), col.end());
  return rows.size();
}

void ReductionMatrix::ref(SimplexIndex row) {
  if (track_rows_) ++row_refs_[row];
}

void ReductionMatrix::unref(SimplexIndex row) {
  if (!track_rows_) return;
  auto it = row_refs_.find(row);
  if (--it->second == 0) row_refs_.erase(it);
}

void ReductionMatrix::insert(SimplexIndex j, SparseColumn rows) {
  if (rows.empty()) return;
  if (!std::is_sorted(rows.begin(), rows.end()) ||
      std::adjacent_find(rows.begin(), rows.end()) != rows.end())
    throw InputError("column rows must be strictly increasing");
  if (columns_.count(j)) throw InputError("column " + std::to_string(j) + " already stored");
  for (SimplexIndex r : rows) ref(r);
  columns_.emplace(j, std::move(rows));
}

void ReductionMatrix::erase(SimplexIndex j) {
  auto it = columns_.find(j);
  if (it == columns_.end()) return;
  if (!it->second.empty()) {
    auto o = owner_.find(it->second.back());
    if (o != owner_.end() && o->second == j) owner_.erase(o);
  }
  for (SimplexIndex r : it->second) unref(r);
  columns_.erase(it);
}

void ReductionMatrix::erase_entry(SimplexIndex j, SimplexIndex row) {
  auto& col = columns_.at(j);
  auto pos = std::lower_bound(col.begin(), col.end(), row);
  if (pos == col.end() || *pos != row) return;
  if (pos + 1 == col.end()) {
    auto o = owner_.find(row);
    if (o != owner_.end() && o->second == j) owner_.erase(o);
  }
  col.erase(pos);
  unref(row);
  if (col.empty()) columns_.erase(j);
}

void ReductionMatrix::add_into(SimplexIndex target, SimplexIndex source) {
  auto& dst = columns_.at(target);
  const auto& src = columns_.at(source);
  ++additions_;
  const bool had_owned_pivot = [&] {
    if (dst.empty()) return false;
    auto o = owner_.find(dst.back());
    return o != owner_.end() && o->second == target;
  }();
  const SimplexIndex old_pivot = dst.empty() ? 0 : dst.back();

  merge(dst, src);
  if (had_owned_pivot && (dst.empty() || dst.back() != old_pivot)) owner_.erase(old_pivot);
  if (dst.empty()) columns_.erase(target);
}

void ReductionMatrix::merge(SparseColumn& dst, const SparseColumn& src) {
  scratch_.resize(dst.size() + src.size());
  auto out = scratch_.begin();
  if (!track_rows_) {
    out = std::set_symmetric_difference(dst.begin(), dst.end(), src.begin(), src.end(), out);
  } else {
    auto a = dst.begin();
    auto b = src.begin();
    while (a != dst.end() || b != src.end()) {
      if (b == src.end() || (a != dst.end() && *a < *b)) {
        *out++ = *a++;
      } else if (a == dst.end() || *b < *a) {
        ref(*b);
        *out++ = *b++;
      } else {
        unref(*a);
        ++a;
        ++b;
      }
    }
  }
  const auto n = static_cast<std::size_t>(out - scratch_.begin());
  if (dst.capacity() < n) dst.reserve(std::max(n, 2 * dst.capacity()));
  dst.assign(scratch_.begin(), out);
}

void ReductionMatrix::register_pivot(SimplexIndex j) {
  const auto& col = columns_.at(j);
  auto [it, inserted] = owner_.emplace(col.back(), j);
  if (!inserted && it->second != j)
    throw InputError("pivot " + std::to_string(col.back()) + " already owned");
}

std::optional<SimplexIndex> ReductionMatrix::reduce_column(SimplexIndex j) {
  auto it = columns_.find(j);
  if (it == columns_.end()) return std::nullopt;
  SparseColumn& col = it->second;
  for (;;) {
    auto o = owner_.find(col.back());
    if (o == owner_.end() || o->second == j) return col.back();
    // the pivot belongs to another column, so no ownership changes here
    ++additions_;
    merge(col, columns_.find(o->second)->second);
    if (col.empty()) {
      columns_.erase(it);
      return std::nullopt;
    }
  }
}

void ReductionMatrix::remove_row(SimplexIndex row) {
  auto o = owner_.find(row);
  if (o == owner_.end()) return;
  const SimplexIndex j = o->second;
  std::vector<SimplexIndex> holders;
  for (const auto& [i, col] : columns_) {
    if (i == j) continue;
    if (std::binary_search(col.begin(), col.end(), row)) holders.push_back(i);
  }
  std::sort(holders.begin(), holders.end());
  for (SimplexIndex i : holders) add_into(i, j);
  erase(j);
}

bool ReductionMatrix::check_invariants() const {
  IndexMap<std::uint32_t> refs;
  for (const auto& [j, col] : columns_) {
    if (col.empty()) return false;
    for (std::size_t k = 1; k < col.size(); ++k)
      if (col[k - 1] >= col[k]) return false;
    for (SimplexIndex r : col) ++refs[r];
  }
  if (track_rows_ && refs != row_refs_) return false;
  for (const auto& [row, j] : owner_) {
    auto it = columns_.find(j);
    if (it == columns_.end() || it->second.back() != row) return false;
  }
  return true;
}

std::vector<SimplexIndex> ReductionMatrix::column_indices() const {
  std::vector<SimplexIndex> out;
  out.reserve(columns_.size());
  for (const auto& [j, col] : columns_) out.push_back(j);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------- reducer

StreamingReducer::StreamingReducer(ReducerOptions options)
    : options_(options), matrix_(options.track_rows || options.omega.has_value()) {
  if (options_.mode == ReductionMode::Chunked && options_.chunk_size == 0)
    throw InputError("chunk size must be positive");
}

StreamingReducer::Status& StreamingReducer::status(SimplexIndex id) {
  auto it = status_.find(id);
  if (it == status_.end()) throw InputError("simplex " + std::to_string(id) + " is not live");
  return it->second;
}

SparseColumn StreamingReducer::compressed(const FiltrationEvent& ev) const {
  SparseColumn rows;
  rows.reserve(ev.facets.size());
  for (SimplexIndex f : ev.facets) {
    auto it = status_.find(f);
    if (it == status_.end()) throw InputError("facet " + std::to_string(f) + " is not live");
    // Chunked mode keeps negative rows inside a chunk, so only rows that the
    // sweep has already purged everywhere may be dropped.
    const bool drop = it->second.sign == Sign::Negative &&
                      (options_.mode == ReductionMode::Immediate || !it->second.active);
    if (!drop) rows.push_back(f);
  }
  std::sort(rows.begin(), rows.end());
  return rows;
}

void StreamingReducer::pair(SimplexIndex birth, SimplexIndex death) {
  auto& b = status(birth);
  b.sign = Sign::Positive;
  b.paired = true;
  status(death).sign = Sign::Negative;
  bars_.add(b.dim, birth, death);
}

void StreamingReducer::track() {
  stats_.max_columns = std::max<std::uint64_t>(stats_.max_columns, matrix_.columns());
  if (matrix_.tracks_rows())
    stats_.max_rows = std::max<std::uint64_t>(stats_.max_rows, matrix_.distinct_rows());
  stats_.max_tracked = std::max<std::uint64_t>(stats_.max_tracked, status_.size());
  stats_.column_additions = matrix_.additions();
}

void StreamingReducer::check_bounds(std::uint64_t column_slack, std::uint64_t row_slack) {
  if (!options_.omega) return;
  const std::uint64_t w = *options_.omega;
  if (matrix_.columns() > 2 * w + column_slack)
    throw BoundViolation("stored columns " + std::to_string(matrix_.columns()) + " exceed bound " +
                         std::to_string(2 * w + column_slack));
  if (matrix_.distinct_rows() > 4 * w + row_slack)
    throw BoundViolation("distinct rows " + std::to_string(matrix_.distinct_rows()) + " exceed bound " +
                         std::to_string(4 * w + row_slack));
}

void StreamingReducer::push(const FiltrationEvent& ev) {
  ++stats_.events;
  if (options_.mode == ReductionMode::Chunked) {
    pending_.push_back(ev);
    if (pending_.size() >= options_.chunk_size) flush(false);
    return;
  }
  if (ev.is_addition())
    immediate_add(ev);
  else
    immediate_inactive(ev.id);
  track();
  check_bounds(0, 0);
}

void StreamingReducer::immediate_add(const FiltrationEvent& ev) {
  if (status_.count(ev.id)) throw InputError("simplex " + std::to_string(ev.id) + " added twice");
  SparseColumn rows = compressed(ev);
  status_.emplace(ev.id, Status{ev.dimension, true, Sign::Unknown, false});
  if (rows.empty()) {
    status_.at(ev.id).sign = Sign::Positive;
    return;
  }
  matrix_.insert(ev.id, std::move(rows));
  const auto low = matrix_.reduce_column(ev.id);
  if (!low) {
    status_.at(ev.id).sign = Sign::Positive;
    return;
  }
  matrix_.register_pivot(ev.id);
  pair(*low, ev.id);
  if (!status_.at(*low).active) {
    ++stats_.remove_row_calls;
    matrix_.remove_row(*low);
    status_.erase(*low);
  }
}

void StreamingReducer::immediate_inactive(SimplexIndex id) {
  auto& s = status(id);
  if (!s.active) throw InputError("simplex " + std::to_string(id) + " deactivated twice");
  s.active = false;
  if (s.sign == Sign::Negative) {
    status_.erase(id);
  } else if (s.paired) {
    ++stats_.remove_row_calls;
    matrix_.remove_row(id);
    status_.erase(id);
  }
}

void StreamingReducer::flush(bool last) {
  std::map<int, std::vector<SimplexIndex>, std::greater<>> by_dim;
  for (const auto& ev : pending_) {
    if (!ev.is_addition()) continue;
    if (status_.count(ev.id)) throw InputError("simplex " + std::to_string(ev.id) + " added twice");
    SparseColumn rows = compressed(ev);
    status_.emplace(ev.id, Status{ev.dimension, true, rows.empty() ? Sign::Positive : Sign::Unknown, false});
    if (rows.empty()) continue;
    matrix_.insert(ev.id, std::move(rows));
    by_dim[ev.dimension].push_back(ev.id);
  }
  track();

  for (auto& [dim, ids] : by_dim) {
    for (SimplexIndex j : ids) {
      auto& sj = status_.at(j);
      if (sj.sign != Sign::Unknown) continue;  // cleared
      const auto low = matrix_.reduce_column(j);
      if (!low) {
        sj.sign = Sign::Positive;
        continue;
      }
      matrix_.register_pivot(j);
      auto& sl = status_.at(*low);
      if (sl.sign == Sign::Unknown) {
        matrix_.erase(*low);
        ++stats_.cleared;
      }
      pair(*low, j);
    }
  }
  stats_.column_additions = matrix_.additions();

  bool deactivated = false;
  for (const auto& ev : pending_) {
    if (ev.is_addition()) continue;
    auto& s = status(ev.id);
    if (!s.active) throw InputError("simplex " + std::to_string(ev.id) + " deactivated twice");
    s.active = false;
    deactivated = true;
  }
  pending_.clear();
  track();
  if (!last) {
    // Without new inactive simplices the matrix is as clean as after the
    // previous sweep.
    if (deactivated) sweep();
    track();
    check_bounds(options_.chunk_size, 2 * options_.chunk_size);
  }
}

void StreamingReducer::sweep() {
  auto inactive = [&](SimplexIndex r) { return !status_.at(r).active; };
  std::vector<SimplexIndex> doomed;
  for (SimplexIndex j : matrix_.column_indices()) {
    const SimplexIndex low = *matrix_.pivot(j);
    if (inactive(low)) {
      doomed.push_back(j);
      continue;
    }
    // Walk below the pivot from high to low; additions only touch rows below
    // the current entry, so the position can be found again by value.
    SimplexIndex bound = low;
    for (;;) {
      const SparseColumn* col = matrix_.column(j);
      auto pos = std::lower_bound(col->begin(), col->end(), bound);
      if (pos == col->begin()) break;
      const SimplexIndex r = *(pos - 1);
      bound = r;
      if (!inactive(r)) continue;
      if (auto o = matrix_.owner(r)) {
        matrix_.add_into(j, *o);
      } else if (status_.at(r).sign == Sign::Negative) {
        matrix_.erase_entry(j, r);
      }
    }
  }
  for (SimplexIndex j : doomed) matrix_.erase(j);
  for (auto it = status_.begin(); it != status_.end();) {
    const Status& s = it->second;
    if (!s.active && (s.sign == Sign::Negative || s.paired))
      status_.erase(it++);
    else
      ++it;
  }
}

Barcode StreamingReducer::finish() {
  if (options_.mode == ReductionMode::Chunked) flush(true);
  for (const auto& [id, s] : status_)
    if (s.sign == Sign::Positive && !s.paired) bars_.add(s.dim, id, kInfinity);
  status_.clear();
  return std::move(bars_);
}

bool StreamingReducer::check_invariants() const {
  if (!matrix_.check_invariants()) return false;
  if (options_.mode != ReductionMode::Immediate) return true;
  bool ok = true;
  matrix_.for_each_column([&](SimplexIndex j, const SparseColumn& col) {
    auto it = status_.find(col.back());
    if (it == status_.end() || !it->second.active) ok = false;
    if (matrix_.owner(col.back()) != j) ok = false;
  });
  return ok;
}

Barcode stream_barcode(std::span<const FiltrationEvent> events, ReducerOptions options) {
  StreamingReducer r(options);
  for (const auto& ev : events) r.push(ev);
  return r.finish();
}

}  // namespace conestream
