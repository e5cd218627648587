#pragma once

#include "monoalign/types.hpp"

namespace monoalign::detail {

/// Score table access with both strides explicit, so the row-major cache and
/// the speech-major scratch share one backward walk.
struct ScoreView {
  const float* data = nullptr;
  std::ptrdiff_t row_stride = 0;
  std::ptrdiff_t col_stride = 0;

  float at(int i, int j) const { return data[i * row_stride + j * col_stride]; }
};

/// Argmax walk from (t-1, s-1) down to column 0. At each column the walk
/// either keeps the current text index or drops by one; on equal scores it
/// keeps the current index. Both engines route through this so their
/// outputs agree bit for bit.
inline PathVector backtrack(const ScoreView& scores, int t, int s) {
  PathVector path(static_cast<std::size_t>(s));
  int cur = t - 1;
  path[s - 1] = cur;
  for (int j = s - 2; j >= 0; --j) {
    if (cur > 0 && scores.at(cur - 1, j) > scores.at(cur, j)) {
      --cur;
    }
    path[j] = cur;
  }
  return path;
}

}  // namespace monoalign::detail
