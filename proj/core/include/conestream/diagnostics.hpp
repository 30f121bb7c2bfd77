#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "conestream/tower_stream.hpp"

namespace conestream {

/// Contracting forest of a tower: leaves are vertex inclusions, internal
/// nodes are contractions whose two children are the merged trees.
struct ContractionForest {
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  struct Node {
    VertexId label = 0;  ///< tower name of the vertex the node stands for
    std::size_t left = kNone;
    std::size_t right = kNone;
    std::size_t parent = kNone;
    std::uint64_t cost = 0;
    boost::dynamic_bitset<> E;  ///< included simplices touching the subtree
    int r = 0;
    std::uint64_t s = 0;  ///< subtree size in nodes
    bool leaf() const noexcept { return left == kNone; }
  };

  std::vector<Node> nodes;   ///< children precede parents
  std::uint64_t n = 0;       ///< elementary inclusions
  std::uint64_t n0 = 0;
  int delta = 0;

  std::vector<std::size_t> roots() const;
};

/// Throws InputError if the tower is invalid or the number of costs differs
/// from the number of contractions.
ContractionForest build_forest(std::span<const TowerOp> tower, std::span<const std::uint64_t> costs);

/// Iteration (1-based) in which each node is removed when only-child-paths
/// are deleted repeatedly.
std::vector<int> pruning_iterations(const ContractionForest& f);

struct ForestReport {
  std::vector<std::string> violations;
  std::uint64_t total_cost = 0;
  double cost_bound = 0.0;
  bool ok() const noexcept { return violations.empty(); }
};

/// Per-node cost bound c(x) <= 2·min(|E(y1)∖E(y2)|, |E(y2)∖E(y1)|) and the
/// global bound on the total cost.
ForestReport check_cost_bounds(const ContractionForest& f);

/// Structural lemmas: pruning iteration equals r, s >= 2^r - 1, and
/// |E(x)| >= |E(y1)| + |E(y2)∖E(y1)| for both child orders.
ForestReport check_forest_lemmas(const ContractionForest& f);

/// CSV with header "id,label,cost,E,r,s,prune_iter".
void write_forest_csv(std::ostream& os, const ContractionForest& f);

}  // namespace conestream
