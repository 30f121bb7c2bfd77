#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace conestream {

using VertexId = std::uint32_t;

/// Position of a simplex in a filtration stream (0-based, dense).
using SimplexIndex = std::uint64_t;
/// Facet ids of one simplex; inline up to dimension 5.
using FacetIds = boost::container::small_vector<SimplexIndex, 6>;

/// A non-empty set of vertices, stored as a strictly increasing list.
///
/// The sorted vertex list is the canonical key used by every dictionary in
/// the library; two simplices compare equal iff their vertex lists do.
class Simplex {
 public:
  Simplex() = default;

  /// Sorts the input. Throws std::invalid_argument on empty input or
  /// repeated vertices.
  explicit Simplex(std::vector<VertexId> vertices);
  Simplex(std::initializer_list<VertexId> vertices);

  /// Wraps an already strictly increasing list without re-sorting.
  static Simplex from_sorted(std::span<const VertexId> vertices);
  static Simplex from_sorted(std::initializer_list<VertexId> vertices);

  std::span<const VertexId> vertices() const noexcept { return {vertices_.data(), vertices_.size()}; }
  std::size_t size() const noexcept { return vertices_.size(); }
  bool empty() const noexcept { return vertices_.empty(); }
  int dimension() const noexcept { return static_cast<int>(vertices_.size()) - 1; }

  VertexId front() const { return vertices_.front(); }
  VertexId back() const { return vertices_.back(); }

  bool contains(VertexId v) const noexcept;

  /// Simplex with `v` removed; `v` must be a vertex and the result non-empty.
  Simplex without(VertexId v) const;

  /// Simplex with `v` added; throws std::invalid_argument if already present.
  Simplex with(VertexId v) const;

  std::strong_ordering operator<=>(const Simplex& o) const noexcept;
  bool operator==(const Simplex& o) const noexcept;

  friend std::ostream& operator<<(std::ostream& os, const Simplex& s);

 private:
  using Storage = boost::container::small_vector<VertexId, 16>;
  Storage vertices_;
};

/// The dim(s)+1 facets: facet i omits the i-th vertex. Empty for a vertex.
std::vector<Simplex> facets(const Simplex& s);

/// The join {v} ∪ s. Throws std::invalid_argument when v ∈ s.
Simplex join(VertexId v, const Simplex& s);

/// Orders by dimension first, then lexicographically.
struct DimensionThenLex {
  bool operator()(const Simplex& a, const Simplex& b) const noexcept {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

struct SimplexHash {
  std::size_t operator()(const Simplex& s) const noexcept;
};

}  // namespace conestream
