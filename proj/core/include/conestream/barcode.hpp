#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <vector>

#include "conestream/simplex.hpp"

namespace conestream {

inline constexpr SimplexIndex kInfinity = std::numeric_limits<SimplexIndex>::max();

struct Bar {
  int dimension = 0;
  SimplexIndex birth = 0;
  SimplexIndex death = kInfinity;

  bool essential() const noexcept { return death == kInfinity; }
  auto operator<=>(const Bar&) const = default;
};

/// Multiset of bars. Equality ignores insertion order.
class Barcode {
 public:
  Barcode() = default;
  explicit Barcode(std::vector<Bar> bars) : bars_(std::move(bars)) {}

  void add(Bar b) { bars_.push_back(b); }
  void add(int dim, SimplexIndex birth, SimplexIndex death) { bars_.push_back({dim, birth, death}); }

  std::size_t size() const noexcept { return bars_.size(); }
  bool empty() const noexcept { return bars_.empty(); }
  std::span<const Bar> bars() const noexcept { return bars_; }

  /// Bars ordered by (dimension, birth, death); essential bars last per key.
  std::vector<Bar> sorted() const;

  std::size_t count(int dim) const;
  std::size_t count_essential(int dim) const;

  friend bool operator==(const Barcode& a, const Barcode& b) { return a.sorted() == b.sorted(); }

 private:
  std::vector<Bar> bars_;
};

/// Re-labels births and deaths with the step that produced each index and
/// drops bars that start and end within one step. `step_of[i]` is the step of
/// filtration index i.
Barcode stamp_with_steps(const Barcode& b, std::span<const std::uint64_t> step_of);

/// One line per bar: "dim birth death", death "inf" for essential bars,
/// sorted by (dim, birth, death).
void write_barcode(std::ostream& os, const Barcode& b);

/// Inverse of write_barcode. Throws FormatError on malformed lines.
Barcode read_barcode(std::istream& is);

}  // namespace conestream
