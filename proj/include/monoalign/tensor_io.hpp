#pragma once

#include <cstddef>
#include <filesystem>
#include <variant>

#include "monoalign/types.hpp"

namespace monoalign::io {

// Tensor file layout, version 1, all integers little-endian:
//
//   offset  size  field
//        0     8  magic "MASTENS\0"
//        8     4  version (u32) = 1
//       12     1  dtype (u8): 0 = float32, 1 = uint8
//       13     1  ndims (u8) = 3
//       14    24  dims (3 x u64): B, T, S
//       38     1  lengths_present (u8)
//       39     .  payload, row-major, dims product * dtype size bytes
//        .     .  if lengths_present: B pairs of u32 (t_b, s_b)
//
// The layout is frozen; readers reject anything else.

inline constexpr std::size_t kHeaderSize = 39;

/// Payload byte budget a reader will accept before touching the payload.
inline constexpr std::size_t kDefaultByteBudget = std::size_t{1} << 30;

using Tensor = std::variant<LikelihoodBatch, AlignmentMatrix>;

void write_tensor(const std::filesystem::path& path, const LikelihoodBatch& batch);
void write_tensor(const std::filesystem::path& path, const AlignmentMatrix& m);

/// Reads a tensor file back. The header is fully validated before the
/// payload is allocated; dims whose byte size exceeds the budget are
/// rejected with DimensionOverflow.
Tensor read_tensor(const std::filesystem::path& path,
                   std::size_t byte_budget = kDefaultByteBudget);

}  // namespace monoalign::io
