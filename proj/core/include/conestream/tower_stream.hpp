#pragma once

// Text formats for towers, filtration event streams and barcodes.
//
// Tower:       "i v0 v1 ... vk"  inclusion of a simplex
//              "c u v"           contraction; u names the merged vertex
// Filtration:  "a <id> <dim> <facet ids...>"  addition
//              "d <id>"                       simplex became inactive
// '#' starts a comment in both; blank lines are ignored.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "conestream/simplex.hpp"

namespace conestream {

struct TowerOp {
  enum class Kind { Inclusion, Contraction };

  Kind kind = Kind::Inclusion;
  Simplex simplex;  // inclusion only
  VertexId u = 0;   // contraction only
  VertexId v = 0;

  static TowerOp inclusion(Simplex s) { return {Kind::Inclusion, std::move(s), 0, 0}; }
  static TowerOp contraction(VertexId u, VertexId v) { return {Kind::Contraction, {}, u, v}; }

  bool is_inclusion() const noexcept { return kind == Kind::Inclusion; }
  bool operator==(const TowerOp&) const = default;
};

/// Lazy reader over a tower text stream. Checks syntax only; whether the ops
/// form a valid tower is decided by the consumer.
class TowerReader {
 public:
  explicit TowerReader(std::istream& in) : in_(&in) {}

  /// Next op, or nullopt at end of input. Throws FormatError.
  std::optional<TowerOp> next();

  /// Line number of the most recently returned op.
  std::size_t line() const noexcept { return line_; }

 private:
  std::istream* in_;
  std::string buf_;
  std::size_t line_ = 0;
};

void write_tower_op(std::ostream& os, const TowerOp& op);
void write_tower(std::ostream& os, std::span<const TowerOp> ops);
std::vector<TowerOp> read_tower(std::istream& in);
std::vector<TowerOp> parse_tower(std::string_view text);

struct FiltrationEvent {
  enum class Kind { Addition, Inactive };

  Kind kind = Kind::Addition;
  SimplexIndex id = 0;
  int dimension = 0;                  // addition only
  FacetIds facets;                    // addition only; strictly increasing

  static FiltrationEvent addition(SimplexIndex id, int dim, FacetIds facets) {
    return {Kind::Addition, id, dim, std::move(facets)};
  }
  static FiltrationEvent inactive(SimplexIndex id) { return {Kind::Inactive, id, 0, {}}; }

  bool is_addition() const noexcept { return kind == Kind::Addition; }
  bool operator==(const FiltrationEvent&) const = default;
};

/// Checks the well-formedness rules of a filtration event stream: addition
/// ids are consecutive from 0, a simplex of dimension d >= 1 lists exactly
/// d+1 distinct facets of dimension d-1 that were added and are not yet
/// inactive, and inactive events name live simplices.
///
/// Memory is proportional to the number of live (added, not deactivated)
/// simplices.
class FiltrationValidator {
 public:
  /// Throws InputError describing the first violated rule.
  void check(const FiltrationEvent& ev);

  SimplexIndex next_id() const noexcept { return next_id_; }
  std::size_t live() const noexcept { return live_dims_.size(); }

 private:
  SimplexIndex next_id_ = 0;
  std::unordered_map<SimplexIndex, int> live_dims_;
};

/// Lazy reader over a filtration text stream; every event is validated.
class FiltrationReader {
 public:
  explicit FiltrationReader(std::istream& in) : in_(&in) {}

  /// Throws FormatError on syntax or validity errors.
  std::optional<FiltrationEvent> next();
  std::size_t line() const noexcept { return line_; }

 private:
  std::istream* in_;
  std::string buf_;
  std::size_t line_ = 0;
  FiltrationValidator validator_;
};

void write_event(std::ostream& os, const FiltrationEvent& ev);
void write_filtration(std::ostream& os, std::span<const FiltrationEvent> events);
std::vector<FiltrationEvent> read_filtration(std::istream& in);
std::vector<FiltrationEvent> parse_filtration(std::string_view text);

}  // namespace conestream
