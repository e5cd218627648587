#pragma once

#include <cstdint>
#include <vector>

#include "monoalign/types.hpp"

namespace monoalign::oracle {

/// Enumeration guard: instances with more than this many monotonic paths
/// are rejected with TooLarge.
inline constexpr std::uint64_t kMaxPaths = 1'000'000;

/// Ties within this absolute distance of the 64-bit maximum count as optimal.
inline constexpr double kScoreTol = 1e-9;

/// Number of monotonic alignments for (t, s), i.e. C(s-1, t-1), saturated
/// at kMaxPaths + 1.
std::uint64_t count_paths(int t, int s);

/// Every monotonic alignment for (t, s), in lexicographic order of the
/// transition-column subsets. Throws TooLarge past the guard.
std::vector<PathVector> enumerate_paths(int t, int s);

struct BestPaths {
  double max_score = 0.0;
  std::vector<PathVector> paths;  // all optima within kScoreTol of max_score
};

/// Exhaustive ground truth: scores every path with 64-bit accumulation and
/// returns the maximum plus every path attaining it.
BestPaths best_paths(const LikelihoodView& q);

}  // namespace monoalign::oracle
