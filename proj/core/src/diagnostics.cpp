#include "conestream/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <unordered_map>

#include "conestream/errors.hpp"

namespace conestream {

std::vector<std::size_t> ContractionForest::roots() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].parent == kNone) out.push_back(i);
  return out;
}

ContractionForest build_forest(std::span<const TowerOp> tower, std::span<const std::uint64_t> costs) {
  ContractionForest f;
  std::unordered_map<VertexId, std::size_t> root_of;  // live tower name -> node
  std::vector<std::vector<std::size_t>> direct;       // node -> simplices naming it
  std::size_t next_cost = 0;

  for (const TowerOp& op : tower) {
    if (op.is_inclusion()) {
      const std::size_t simplex = f.n++;
      f.delta = std::max(f.delta, op.simplex.dimension());
      if (op.simplex.size() == 1) {
        const VertexId v = op.simplex.front();
        if (root_of.count(v)) throw InputError("vertex " + std::to_string(v) + " included twice");
        root_of[v] = f.nodes.size();
        f.nodes.push_back({});
        f.nodes.back().label = v;
        direct.emplace_back();
        ++f.n0;
      }
      for (VertexId v : op.simplex.vertices()) {
        auto it = root_of.find(v);
        if (it == root_of.end()) throw InputError("vertex " + std::to_string(v) + " is not active");
        direct[it->second].push_back(simplex);
      }
    } else {
      auto iu = root_of.find(op.u);
      auto iv = root_of.find(op.v);
      if (iu == root_of.end() || iv == root_of.end() || op.u == op.v)
        throw InputError("contraction of inactive vertices");
      if (next_cost >= costs.size()) throw InputError("fewer costs than contractions");
      const std::size_t x = f.nodes.size();
      ContractionForest::Node node;
      node.label = op.u;
      node.left = iu->second;
      node.right = iv->second;
      node.cost = costs[next_cost++];
      f.nodes[node.left].parent = x;
      f.nodes[node.right].parent = x;
      f.nodes.push_back(std::move(node));
      direct.emplace_back();
      root_of.erase(iv);
      root_of[op.u] = x;
    }
  }
  if (next_cost != costs.size()) throw InputError("more costs than contractions");

  for (std::size_t i = 0; i < f.nodes.size(); ++i) {
    auto& x = f.nodes[i];
    x.E.resize(f.n);
    for (std::size_t s : direct[i]) x.E.set(s);
    if (x.leaf()) {
      x.r = 1;
      x.s = 1;
      continue;
    }
    const auto& a = f.nodes[x.left];
    const auto& b = f.nodes[x.right];
    x.E |= a.E;
    x.E |= b.E;
    x.s = 1 + a.s + b.s;
    x.r = a.r == b.r ? a.r + 1 : std::max(a.r, b.r);
  }
  return f;
}

std::vector<int> pruning_iterations(const ContractionForest& f) {
  const std::size_t none = ContractionForest::kNone;
  std::vector<int> deleted(f.nodes.size(), 0);
  const auto alive = [&](std::size_t i) { return i != none && deleted[i] == 0; };
  std::size_t remaining = f.nodes.size();

  for (int iter = 1; remaining > 0; ++iter) {
    std::vector<std::size_t> doomed;
    for (std::size_t i = 0; i < f.nodes.size(); ++i) {
      const auto& x = f.nodes[i];
      if (!alive(i) || alive(x.left) || alive(x.right)) continue;
      // i is a leaf of the current forest; climb while the node has no sibling
      std::size_t cur = i;
      for (;;) {
        doomed.push_back(cur);
        const std::size_t p = f.nodes[cur].parent;
        if (p == none) break;
        const std::size_t sib = f.nodes[p].left == cur ? f.nodes[p].right : f.nodes[p].left;
        if (alive(sib)) break;
        cur = p;
      }
    }
    for (std::size_t i : doomed) {
      if (deleted[i] == 0) --remaining;
      deleted[i] = iter;
    }
  }
  return deleted;
}

ForestReport check_cost_bounds(const ContractionForest& f) {
  ForestReport rep;
  for (std::size_t i = 0; i < f.nodes.size(); ++i) {
    const auto& x = f.nodes[i];
    rep.total_cost += x.cost;
    if (x.leaf()) {
      if (x.cost != 0) rep.violations.push_back("leaf " + std::to_string(i) + " has non-zero cost");
      continue;
    }
    const auto& a = f.nodes[x.left].E;
    const auto& b = f.nodes[x.right].E;
    const std::uint64_t bound = 2 * std::min((a - b).count(), (b - a).count());
    if (x.cost > bound)
      rep.violations.push_back("node " + std::to_string(i) + ": cost " + std::to_string(x.cost) +
                               " exceeds " + std::to_string(bound));
  }
  const double n = static_cast<double>(f.n);
  const double log_n0 = f.n0 > 1 ? std::log2(static_cast<double>(f.n0)) : 0.0;
  rep.cost_bound = 2.0 * (f.delta + 1) * n * (1.0 + log_n0);
  if (static_cast<double>(rep.total_cost) > rep.cost_bound)
    rep.violations.push_back("total cost " + std::to_string(rep.total_cost) + " exceeds " +
                             std::to_string(rep.cost_bound));
  return rep;
}

ForestReport check_forest_lemmas(const ContractionForest& f) {
  ForestReport rep;
  const std::vector<int> iters = pruning_iterations(f);
  for (std::size_t i = 0; i < f.nodes.size(); ++i) {
    const auto& x = f.nodes[i];
    const std::string id = "node " + std::to_string(i);
    if (iters[i] != x.r)
      rep.violations.push_back(id + ": pruned in iteration " + std::to_string(iters[i]) + ", r = " +
                               std::to_string(x.r));
    if (x.r >= 64 || x.s < (std::uint64_t{1} << x.r) - 1)
      rep.violations.push_back(id + ": s = " + std::to_string(x.s) + " < 2^r - 1");
    if ((x.left == ContractionForest::kNone) != (x.right == ContractionForest::kNone))
      rep.violations.push_back(id + " has exactly one child");
    if (x.leaf()) continue;
    const auto& a = f.nodes[x.left].E;
    const auto& b = f.nodes[x.right].E;
    const std::size_t e = x.E.count();
    if (e < a.count() + (b - a).count() || e < b.count() + (a - b).count())
      rep.violations.push_back(id + ": E-set not superadditive");
  }
  return rep;
}

void write_forest_csv(std::ostream& os, const ContractionForest& f) {
  const std::vector<int> iters = pruning_iterations(f);
  os << "id,label,cost,E,r,s,prune_iter\n";
  for (std::size_t i = 0; i < f.nodes.size(); ++i) {
    const auto& x = f.nodes[i];
    os << i << ',' << x.label << ',' << x.cost << ',' << x.E.count() << ',' << x.r << ',' << x.s << ','
       << iters[i] << '\n';
  }
}

}  // namespace conestream
