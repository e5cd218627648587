#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "monoalign/errors.hpp"

namespace monoalign {

// Text indices are stored 0-based throughout. Written material (README,
// messages) uses the same convention, so an alignment path always starts
// at index 0 and ends at index t-1.

/// Sentinel standing in for -inf in infeasible cells. Large enough that a
/// sentinel-seeded score can never beat a feasible one, small enough that
/// per-column accumulation stays inside float32 range up to kMaxSpeechLen.
inline constexpr float kDefaultMaxNegVal = -1e32f;

/// Configs with a sentinel above this bound are rejected.
inline constexpr float kMaxNegValCeiling = -1e30f;

/// Hard limit on per-item speech length. Sentinel-seeded cells accumulate at
/// most one term per column, so scores stay finite in float32 below this.
inline constexpr std::int64_t kMaxSpeechLen = 100000;

enum class EngineKind { Reference, Parallel };

enum class LanePadding { None, NextPowerOfTwo };

struct MasConfig {
  EngineKind engine = EngineKind::Parallel;
  float max_neg_val = kDefaultMaxNegVal;
  LanePadding lane_padding = LanePadding::None;
  // Worker threads for the parallel engine's batch loop; 0 = all hardware
  // threads. Ignored by the reference engine.
  int threads = 0;
};

/// Throws ValidationError(InvalidConfig) unless max_neg_val is finite and
/// at most kMaxNegValCeiling.
void validate_config(const MasConfig& cfg);

struct ValidLengths {
  std::uint32_t text = 0;
  std::uint32_t speech = 0;

  friend bool operator==(const ValidLengths&, const ValidLengths&) = default;
};

/// Batch of dense row-major [T, S] float32 log-likelihood matrices with
/// per-item valid lengths. Entries outside an item's valid region are
/// padding and never read by the engines.
struct LikelihoodBatch {
  int batch = 0;
  int text_cap = 0;
  int speech_cap = 0;
  std::vector<float> values;           // [batch][text_cap][speech_cap]
  std::vector<ValidLengths> lengths;   // one entry per item

  LikelihoodBatch() = default;
  LikelihoodBatch(int batch_size, int text_capacity, int speech_capacity);

  std::size_t item_stride() const {
    return static_cast<std::size_t>(text_cap) * static_cast<std::size_t>(speech_cap);
  }
  std::span<const float> item(int b) const {
    return {values.data() + static_cast<std::size_t>(b) * item_stride(), item_stride()};
  }
  std::span<float> item(int b) {
    return {values.data() + static_cast<std::size_t>(b) * item_stride(), item_stride()};
  }
  float at(int b, int i, int j) const {
    return values[static_cast<std::size_t>(b) * item_stride() +
                  static_cast<std::size_t>(i) * speech_cap + j];
  }
  float& at(int b, int i, int j) {
    return values[static_cast<std::size_t>(b) * item_stride() +
                  static_cast<std::size_t>(i) * speech_cap + j];
  }
};

/// Batch of binary alignment matrices, same shape as the likelihood batch
/// they were computed from. Within each item's valid region every speech
/// column carries exactly one 1; everything else is 0.
struct AlignmentMatrix {
  int batch = 0;
  int text_cap = 0;
  int speech_cap = 0;
  std::vector<std::uint8_t> values;    // [batch][text_cap][speech_cap]
  std::vector<ValidLengths> lengths;

  AlignmentMatrix() = default;
  AlignmentMatrix(int batch_size, int text_capacity, int speech_capacity);

  std::size_t item_stride() const {
    return static_cast<std::size_t>(text_cap) * static_cast<std::size_t>(speech_cap);
  }
  std::uint8_t at(int b, int i, int j) const {
    return values[static_cast<std::size_t>(b) * item_stride() +
                  static_cast<std::size_t>(i) * speech_cap + j];
  }
  std::uint8_t& at(int b, int i, int j) {
    return values[static_cast<std::size_t>(b) * item_stride() +
                  static_cast<std::size_t>(i) * speech_cap + j];
  }

  friend bool operator==(const AlignmentMatrix&, const AlignmentMatrix&) = default;
};

/// Compact alignment: one 0-based text index per speech frame. A valid path
/// starts at 0, ends at t-1, and steps by 0 or 1 between frames.
using PathVector = std::vector<std::int32_t>;

/// Read-only view of one item's valid [t, s] block inside a padded
/// row-major buffer.
struct LikelihoodView {
  const float* data = nullptr;
  int text = 0;
  int speech = 0;
  std::ptrdiff_t row_stride = 0;

  float at(int i, int j) const { return data[i * row_stride + j]; }
};

struct MutableLikelihoodView {
  float* data = nullptr;
  int text = 0;
  int speech = 0;
  std::ptrdiff_t row_stride = 0;

  float at(int i, int j) const { return data[i * row_stride + j]; }
  float& at(int i, int j) { return data[i * row_stride + j]; }

  operator LikelihoodView() const { return {data, text, speech, row_stride}; }
};

LikelihoodView item_view(const LikelihoodBatch& batch, int b);
MutableLikelihoodView item_view(LikelihoodBatch& batch, int b);

/// Checks every LikelihoodBatch invariant; throws ValidationError naming the
/// offending item on the first violation.
void validate_batch(const LikelihoodBatch& batch);

/// Per-item validation, same checks as validate_batch for one item.
void validate_item(const LikelihoodBatch& batch, int b);

/// Throws ValidationError(InvalidPath) unless path is a valid alignment
/// for dimensions (t, s).
void validate_path(const PathVector& path, int t, int s);

/// Single-item binary matrix for a valid path.
AlignmentMatrix matrix_from_path(const PathVector& path, int t, int s);

/// Inverse of matrix_from_path for one item of a matrix batch. Throws
/// ValidationError(InvalidMatrix) if a valid-region column does not carry
/// exactly one 1.
PathVector path_from_matrix(const AlignmentMatrix& m, int b = 0);

/// Writes a path into item b of an alignment batch.
void write_path(AlignmentMatrix& out, int b, const PathVector& path);

}  // namespace monoalign
