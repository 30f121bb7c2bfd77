#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "conestream/barcode.hpp"
#include "conestream/coning.hpp"
#include "conestream/tower_stream.hpp"

namespace conestream {

struct VerifyOptions {
  std::vector<std::size_t> chunk_sizes{7, 1000};
  bool full_coning = true;
  /// Also reduce the full-coning filtration with the in-memory oracle.
  bool oracle_on_full = false;
  /// Run the active-coning reductions with the 2ω / 4ω assertions on.
  bool assert_matrix_bounds = true;
  bool check_forest = true;
};

struct PipelineResult {
  std::string name;  ///< e.g. "active/chunked(7)"
  bool match = false;
  std::string error;  ///< set if the pipeline threw
};

struct VerifyReport {
  ConversionStats active;
  ConversionStats full;
  Barcode reference;  ///< oracle barcode of the active filtration, step-stamped
  std::vector<PipelineResult> pipelines;
  std::vector<std::string> violations;  ///< size, matrix and forest bounds

  bool ok() const;
};

/// Converts the tower with both coning variants, reduces every filtration in
/// immediate and chunked mode and compares the step-stamped barcodes with the
/// oracle. Throws InputError if the tower is invalid.
VerifyReport verify_tower(std::span<const TowerOp> tower, const VerifyOptions& options = {});

}  // namespace conestream
