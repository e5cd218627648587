#pragma once

#include "monoalign/types.hpp"

namespace monoalign::parallel {

/// Lane count for a given text length. NextPowerOfTwo rounds up to the
/// smallest power of two >= t; padded lanes are sentinel-filled and never
/// reach the output.
int pad_lanes(int t, LanePadding policy);

/// In-place forward recurrence on a single item: q's values become the
/// cumulative best scores. Column j is computed from column j-1 alone, as
/// one elementwise shift + max + add over the text lanes. The row above the
/// matrix is treated as sentinel, which is also what keeps cells with i > j
/// sentinel-dominated without an explicit mask. No scratch is allocated.
void forward_parallel(MutableLikelihoodView q, const MasConfig& cfg = {});

/// Serial argmax walk over scores produced by forward_parallel. Identical
/// tie rule to the reference engine: keep the current index.
PathVector backward_parallel(const LikelihoodView& scores);

/// Whole-batch alignment. Items are distributed over worker threads; each
/// worker runs the forward recurrence on a private speech-major copy of its
/// item (the only T x S allocation) so the caller's batch is never mutated.
/// Output is bit-identical to align_reference on every valid input.
AlignmentMatrix align_parallel(const LikelihoodBatch& batch, const MasConfig& cfg = {});

namespace detail {

/// align_parallel without config validation. Exists so tests can drive
/// deliberately unsafe sentinel values.
AlignmentMatrix align_unchecked(const LikelihoodBatch& batch, const MasConfig& cfg);

/// The per-column kernel: cur[i] = max(prev[i-1], prev[i]) + cur[i] over
/// contiguous lanes, with prev[-1] read as the sentinel. Column j of the
/// forward pass is exactly relax_column(scores of column j-1, likelihoods of
/// column j); the whole column dependency surface is these two pointers.
void relax_column(const float* prev, float* cur, int lanes, float sentinel);

}  // namespace detail

}  // namespace monoalign::parallel
