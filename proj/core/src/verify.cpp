#include "conestream/verify.hpp"

#include <exception>

#include "conestream/diagnostics.hpp"
#include "conestream/errors.hpp"
#include "conestream/oracle.hpp"
#include "conestream/streaming_reduction.hpp"

namespace conestream {

bool VerifyReport::ok() const {
  if (!violations.empty()) return false;
  for (const auto& p : pipelines)
    if (!p.match) return false;
  return true;
}

namespace {

void run_reducers(const char* label, const ConvertedFiltration& f, const VerifyOptions& options,
                  bool with_bounds, VerifyReport& rep) {
  std::vector<ReducerOptions> modes(1);
  for (std::size_t c : options.chunk_sizes) {
    ReducerOptions o;
    o.mode = ReductionMode::Chunked;
    o.chunk_size = c;
    modes.push_back(o);
  }
  for (auto& o : modes) {
    if (with_bounds) o.omega = f.stats.omega;
    PipelineResult res;
    res.name = std::string(label) + '/' +
               (o.mode == ReductionMode::Immediate ? std::string("immediate")
                                                   : "chunked(" + std::to_string(o.chunk_size) + ")");
    try {
      res.match = stamp_with_steps(stream_barcode(f.events, o), f.step_of) == rep.reference;
    } catch (const BoundViolation& e) {
      res.error = e.what();
      rep.violations.push_back(res.name + ": " + e.what());
    }
    rep.pipelines.push_back(std::move(res));
  }
}

}  // namespace

VerifyReport verify_tower(std::span<const TowerOp> tower, const VerifyOptions& options) {
  VerifyReport rep;
  ConverterOptions copt;
  copt.record_costs = options.check_forest;
  copt.check_size_bound = false;
  const ConvertedFiltration active = convert_to_vector(tower, false, copt);
  rep.active = active.stats;
  if (!within_size_bound(rep.active))
    rep.violations.push_back("filtration size " + std::to_string(rep.active.total_output) + " exceeds bound " +
                             std::to_string(size_bound(rep.active)));
  rep.reference = stamp_with_steps(oracle_barcode(DenseFiltration::from_events(active.events)), active.step_of);
  run_reducers("active", active, options, options.assert_matrix_bounds, rep);

  if (options.check_forest) {
    const ContractionForest forest = build_forest(tower, rep.active.costs);
    for (const ForestReport& r : {check_cost_bounds(forest), check_forest_lemmas(forest)})
      for (const auto& v : r.violations) rep.violations.push_back("forest: " + v);
  }

  if (options.full_coning) {
    const ConvertedFiltration full = convert_to_vector(tower, true, copt);
    rep.full = full.stats;
    if (options.oracle_on_full) {
      PipelineResult res{"full/oracle", false, {}};
      res.match = stamp_with_steps(oracle_barcode(DenseFiltration::from_events(full.events)), full.step_of) ==
                  rep.reference;
      rep.pipelines.push_back(std::move(res));
    }
    run_reducers("full", full, options, false, rep);
  }
  return rep;
}

}  // namespace conestream
