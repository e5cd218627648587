#pragma once

#include <vector>

#include "monoalign/types.hpp"

namespace monoalign::reference {

/// Dense [t, s] table of best monotonic prefix-path scores. Cells with
/// i > j are unreachable and keep the sentinel they were initialized with.
struct QCache {
  int text = 0;
  int speech = 0;
  // Floats between row starts, >= speech. Kept an odd multiple of the cache
  // line so the column-order forward walk does not collapse onto a single
  // cache set when speech*4 is a multiple of the page size.
  int stride = 0;
  std::vector<float> values;  // row-major [text][stride]; row tails unused

  float at(int i, int j) const {
    return values[static_cast<std::size_t>(i) * stride + j];
  }
  float& at(int i, int j) {
    return values[static_cast<std::size_t>(i) * stride + j];
  }
  /// Total score of the best full alignment.
  float final_score() const { return at(text - 1, speech - 1); }
};

/// Forward recurrence with an explicit cache and nested loops. Row 0 is the
/// running sum of the first text row; every other feasible cell is
/// max(upper-left, left) + own likelihood.
QCache forward_reference(const LikelihoodView& q, const MasConfig& cfg = {});

/// Serial argmax walk from (t-1, s-1) back to column 0. On ties the walk
/// keeps the current text index.
PathVector backward_reference(const QCache& cache);

/// Whole-batch alignment, one item at a time.
AlignmentMatrix align_reference(const LikelihoodBatch& batch, const MasConfig& cfg = {});

namespace detail {

/// align_reference without config validation. Exists so tests can drive
/// deliberately unsafe sentinel values.
AlignmentMatrix align_unchecked(const LikelihoodBatch& batch, const MasConfig& cfg);

}  // namespace detail

}  // namespace monoalign::reference
