#include "conestream/oracle.hpp"

#include <algorithm>
#include <iterator>
#include <limits>

#include "conestream/errors.hpp"

namespace conestream {

DenseFiltration DenseFiltration::from_events(std::span<const FiltrationEvent> events) {
  DenseFiltration f;
  for (const auto& ev : events) {
    if (!ev.is_addition()) continue;
    if (ev.id != f.columns.size()) throw InputError("addition ids must be consecutive");
    std::vector<SimplexIndex> col(ev.facets.begin(), ev.facets.end());
    std::sort(col.begin(), col.end());
    if (!col.empty() && col.back() >= ev.id) throw InputError("boundary matrix is not upper-triangular");
    f.columns.push_back(std::move(col));
    f.dims.push_back(ev.dimension);
  }
  return f;
}

std::vector<std::optional<SimplexIndex>> reduce_pivots(const DenseFiltration& f, bool compress) {
  constexpr SimplexIndex kNone = std::numeric_limits<SimplexIndex>::max();
  const std::size_t m = f.size();
  std::vector<std::vector<SimplexIndex>> reduced(m);
  std::vector<SimplexIndex> owner(m, kNone);  // row -> column with that pivot
  std::vector<bool> negative(m, false);
  std::vector<std::optional<SimplexIndex>> pivots(m);
  std::vector<SimplexIndex> scratch;

  for (std::size_t j = 0; j < m; ++j) {
    std::vector<SimplexIndex> col;
    col.reserve(f.columns[j].size());
    for (SimplexIndex r : f.columns[j])
      if (!compress || !negative[r]) col.push_back(r);

    while (!col.empty() && owner[col.back()] != kNone) {
      const auto& other = reduced[owner[col.back()]];
      scratch.clear();
      std::set_symmetric_difference(col.begin(), col.end(), other.begin(), other.end(),
                                    std::back_inserter(scratch));
      col.swap(scratch);
    }
    if (!col.empty()) {
      owner[col.back()] = j;
      negative[j] = true;
      pivots[j] = col.back();
    }
    reduced[j] = std::move(col);
  }
  return pivots;
}

namespace {

Barcode barcode_from_pivots(const DenseFiltration& f, const std::vector<std::optional<SimplexIndex>>& pivots) {
  Barcode b;
  std::vector<bool> paired(f.size(), false);
  for (std::size_t j = 0; j < f.size(); ++j) {
    if (!pivots[j]) continue;
    const SimplexIndex birth = *pivots[j];
    paired[birth] = true;
    b.add(f.dims[birth], birth, j);
  }
  for (std::size_t i = 0; i < f.size(); ++i)
    if (!pivots[i] && !paired[i]) b.add(f.dims[i], i, kInfinity);
  return b;
}

}  // namespace

Barcode oracle_barcode(const DenseFiltration& f) { return barcode_from_pivots(f, reduce_pivots(f, false)); }

Barcode oracle_barcode_with_compression(const DenseFiltration& f) {
  return barcode_from_pivots(f, reduce_pivots(f, true));
}

}  // namespace conestream
