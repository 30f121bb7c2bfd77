#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "conestream/barcode.hpp"
#include "conestream/tower_stream.hpp"

namespace conestream {

class ComplexDict;

namespace detail {

/// The generators' own view of the current complex K_i, updated with the
/// first-named vertex surviving each contraction.
class TrackedComplex {
 public:
  TrackedComplex();
  ~TrackedComplex();
  TrackedComplex(TrackedComplex&&) noexcept;
  TrackedComplex& operator=(TrackedComplex&&) noexcept;

  const ComplexDict& dict() const { return *dict_; }
  bool contains(const Simplex& s) const;
  void insert(const Simplex& s);
  /// Applies "c u v"; returns the simplices that were not present before.
  std::vector<Simplex> contract(VertexId u, VertexId v);
  std::vector<VertexId> neighbors(VertexId u) const;

 private:
  std::unique_ptr<ComplexDict> dict_;
};

}  // namespace detail

struct RandomTowerParams {
  std::uint32_t n0 = 100;
  double p_include = 0.9;
  int max_dim = 4;
  std::uint64_t seed = 0;
  std::uint64_t op_budget = 0;  ///< 0 means 10·n0²
};

/// Incremental random tower on the vertex pool 0..n0-1. Each step includes a
/// uniformly random addable simplex (all facets present, dimension capped)
/// with probability p_include, otherwise contracts two random distinct
/// vertices. Stops when nothing is addable and at most one vertex remains
/// or no contraction is possible, or at the op budget.
class RandomTower {
 public:
  explicit RandomTower(const RandomTowerParams& params);
  ~RandomTower();
  std::optional<TowerOp> next();

 private:
  struct State;
  std::unique_ptr<State> st_;
};

std::vector<TowerOp> random_tower(const RandomTowerParams& params);

/// p = 2^k edges (a_i, b_i) on 2p vertices, then p-1 contractions of the
/// a-vertices along a fully balanced binary tree.
std::vector<TowerOp> tightness_tower(int k);

struct TorusParams {
  std::uint32_t num_points = 10;
  double t1 = 0.2;    ///< edge threshold
  double t2 = 0.05;   ///< contraction threshold
  double speed = 0.01;
  std::uint64_t steps = 1000;
  std::uint64_t seed = 0;
  int max_dim = 3;
  std::uint64_t max_ops = 0;  ///< 0 = unlimited
};

/// Flag tower of points moving on the unit flat torus.
class TorusFlagTower {
 public:
  explicit TorusFlagTower(const TorusParams& params);
  ~TorusFlagTower();
  std::optional<TowerOp> next();

 private:
  struct State;
  std::unique_ptr<State> st_;
};

std::vector<TowerOp> torus_flag_tower(const TorusParams& params);

/// t empty triangles a b c_i glued along ab, then "c a b".
std::vector<TowerOp> fan_fixture(int t);
/// t octahedron boundaries glued along a common edge ab, each missing one
/// triangle incident to ab, then "c a b".
std::vector<TowerOp> sphere_fixture(int t);
/// Filled triangle abc with a pendant edge cd, then "c a b".
std::vector<TowerOp> neutral_fixture();

struct RealizedFiltration {
  std::vector<FiltrationEvent> events;
  /// Abstract time of every addition: the bar time it realizes.
  std::vector<std::uint64_t> time_of;
};

/// A filtration whose barcode, stamped with `time_of`, equals `b`. The first
/// bar by birth must be an essential 0-bar and all finite times distinct;
/// throws InputError otherwise.
RealizedFiltration filtration_from_barcode(const Barcode& b);

}  // namespace conestream
