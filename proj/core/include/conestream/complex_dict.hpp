#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include <absl/container/node_hash_map.h>
#include <boost/container/flat_map.hpp>

#include "conestream/simplex.hpp"

namespace conestream {

/// Result of comparing the two sides of a contraction.
struct StarSplit {
  VertexId winner = 0;  ///< vertex with the larger |St(·,¬other)|; survives
  VertexId loser = 0;   ///< vertex that is deactivated
  std::vector<Simplex> loser_star;  ///< St(loser, ¬winner), fully enumerated
  std::size_t touched = 0;          ///< simplices expanded by the traversal
};

/// Dictionary-of-simplices complex with per-simplex cofacet dictionaries.
///
/// Every stored simplex owns a map from vertex `v` to the entry of its
/// cofacet `v ∗ σ`, so stars are enumerated by walking cofacet links without
/// touching the rest of the complex. Each entry also carries an index payload
/// (the converters store filtration ids there).
///
/// Invariants: closed under faces; `v` is a key in the cofacet map of `σ` iff
/// `v ∗ σ` is stored.
class ComplexDict {
 public:
  struct Entry {
    const Simplex* key = nullptr;
    SimplexIndex index = 0;
    boost::container::flat_map<VertexId, Entry*> cofacets;
  };

  ComplexDict() = default;
  ComplexDict(const ComplexDict&) = delete;
  ComplexDict& operator=(const ComplexDict&) = delete;
  ComplexDict(ComplexDict&&) = default;
  ComplexDict& operator=(ComplexDict&&) = default;

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  bool contains(const Simplex& s) const { return entries_.count(s) != 0; }
  bool contains_vertex(VertexId v) const;

  const Entry* find(const Simplex& s) const;
  Entry* find(const Simplex& s);

  /// Throws InputError if `s` is present or one of its facets is missing.
  /// When `facet_indices` is given it receives the payloads of the facets.
  Entry& insert(const Simplex& s, SimplexIndex index = 0, FacetIds* facet_indices = nullptr);

  /// Throws InputError if `s` is absent or still has cofacets.
  void remove(const Simplex& s);

  /// All stored cofaces of `u` (including {u}) that do not contain `v`.
  /// Throws InputError if `u` is not stored.
  std::vector<Simplex> star_excluding(VertexId u, VertexId v) const;

  /// All stored cofaces of `u`, including {u}.
  std::vector<Simplex> star(VertexId u) const;

  /// Same as star() but by reference; the keys stay valid until they are removed.
  std::vector<const Simplex*> star_keys(VertexId u) const;

  /// Lockstep traversal of St(u,¬v) and St(v,¬u) that stops once the smaller
  /// side is known. Equal sizes make `u` the loser.
  StarSplit smaller_star_side(VertexId u, VertexId v) const;

  /// Full scan of the closure and cofacet-consistency invariants.
  bool check_invariants() const;

  void for_each(const std::function<void(const Simplex&, const Entry&)>& fn) const;

 private:
  using Map = absl::node_hash_map<Simplex, Entry, SimplexHash>;

  const Entry& vertex_entry(VertexId u) const;

  Map entries_;
};

}  // namespace conestream
