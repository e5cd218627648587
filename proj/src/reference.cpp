#include "monoalign/reference.hpp"

#include <algorithm>

#include "backtrack.hpp"

namespace monoalign::reference {

QCache forward_reference(const LikelihoodView& q, const MasConfig& cfg) {
  const int t = q.text;
  const int s = q.speech;
  int stride = (s + 15) & ~15;
  if ((stride / 16) % 2 == 0) {
    stride += 16;
  }
  QCache cache{t, s, stride,
               std::vector<float>(static_cast<std::size_t>(t) * stride, cfg.max_neg_val)};

  // Row 0 is the running sum of the first text row.
  float run = 0.0f;
  for (int j = 0; j < s; ++j) {
    run += q.at(0, j);
    cache.at(0, j) = run;
  }

  // Each cell is max(upper-left, left) + own likelihood. Starting the column
  // loop at j = i keeps cells with i > j at the sentinel; visiting rows
  // outermost makes all three streams sequential without changing any cell's
  // operands (row i-1 is complete, column j-1 was just written).
  for (int i = 1; i < t; ++i) {
    for (int j = i; j < s; ++j) {
      cache.at(i, j) = std::max(cache.at(i - 1, j - 1), cache.at(i, j - 1)) + q.at(i, j);
    }
  }
  return cache;
}

PathVector backward_reference(const QCache& cache) {
  const monoalign::detail::ScoreView view{cache.values.data(), cache.stride, 1};
  return monoalign::detail::backtrack(view, cache.text, cache.speech);
}

namespace detail {

AlignmentMatrix align_unchecked(const LikelihoodBatch& batch, const MasConfig& cfg) {
  validate_batch(batch);
  AlignmentMatrix out(batch.batch, batch.text_cap, batch.speech_cap);
  out.lengths = batch.lengths;
  for (int b = 0; b < batch.batch; ++b) {
    const QCache cache = forward_reference(item_view(batch, b), cfg);
    write_path(out, b, backward_reference(cache));
  }
  return out;
}

}  // namespace detail

AlignmentMatrix align_reference(const LikelihoodBatch& batch, const MasConfig& cfg) {
  validate_config(cfg);
  return detail::align_unchecked(batch, cfg);
}

}  // namespace monoalign::reference
