#include "monoalign/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <exception>
#include <thread>
#include <vector>

#include "backtrack.hpp"

namespace monoalign::parallel {

int pad_lanes(int t, LanePadding policy) {
  if (policy == LanePadding::None) {
    return t;
  }
  return static_cast<int>(std::bit_ceil(static_cast<unsigned>(t)));
}

namespace detail {

// Sentinel propagation through max and add is what keeps cells with i > j
// sentinel-dominated, so no triangular mask is needed.
void relax_column(const float* __restrict prev, float* __restrict cur, int lanes,
                  float sentinel) {
  cur[0] += std::max(sentinel, prev[0]);
  for (int i = 1; i < lanes; ++i) {
    cur[i] += std::max(prev[i - 1], prev[i]);
  }
}

}  // namespace detail

namespace {

/// dst[j * dst_stride + i] = src[i * src_stride + j], tiled.
void transpose_into(const float* src, int rows, int cols, std::ptrdiff_t src_stride,
                    float* dst, std::ptrdiff_t dst_stride) {
  constexpr int kTile = 32;
  for (int i0 = 0; i0 < rows; i0 += kTile) {
    const int i1 = std::min(i0 + kTile, rows);
    for (int j0 = 0; j0 < cols; j0 += kTile) {
      const int j1 = std::min(j0 + kTile, cols);
      for (int i = i0; i < i1; ++i) {
        for (int j = j0; j < j1; ++j) {
          dst[j * dst_stride + i] = src[i * src_stride + j];
        }
      }
    }
  }
}

/// Forward + backward for one item on a speech-major scratch copy. The copy
/// is the single T x S allocation; every column update then runs on a
/// contiguous lane vector, reading column j-1 and writing column j only.
void align_one(const LikelihoodBatch& batch, int b, const MasConfig& cfg,
               std::vector<float>& scratch, AlignmentMatrix& out) {
  const int t = static_cast<int>(batch.lengths[b].text);
  const int s = static_cast<int>(batch.lengths[b].speech);
  const int lanes = pad_lanes(t, cfg.lane_padding);
  const float mnv = cfg.max_neg_val;

  scratch.resize(static_cast<std::size_t>(s) * lanes);
  transpose_into(batch.item(b).data(), t, s, batch.speech_cap, scratch.data(), lanes);
  if (lanes > t) {
    for (int j = 0; j < s; ++j) {
      float* col = scratch.data() + static_cast<std::size_t>(j) * lanes;
      std::fill(col + t, col + lanes, mnv);
    }
  }
  // First column: every lane but the first starts at the sentinel.
  for (int i = 1; i < t; ++i) {
    scratch[i] = mnv;
  }

  for (int j = 1; j < s; ++j) {
    detail::relax_column(scratch.data() + static_cast<std::size_t>(j - 1) * lanes,
                         scratch.data() + static_cast<std::size_t>(j) * lanes, lanes, mnv);
  }

  const monoalign::detail::ScoreView view{scratch.data(), 1, lanes};
  write_path(out, b, monoalign::detail::backtrack(view, t, s));
}

int worker_count(int requested, int items) {
  int n = requested > 0 ? requested
                        : static_cast<int>(std::thread::hardware_concurrency());
  n = std::max(n, 1);
  return std::min(n, items);
}

}  // namespace

void forward_parallel(MutableLikelihoodView q, const MasConfig& cfg) {
  const int t = q.text;
  const int s = q.speech;
  const float mnv = cfg.max_neg_val;
  for (int i = 1; i < t; ++i) {
    q.at(i, 0) = mnv;
  }
  for (int j = 1; j < s; ++j) {
    q.at(0, j) += std::max(mnv, q.at(0, j - 1));
    for (int i = 1; i < t; ++i) {
      q.at(i, j) += std::max(q.at(i - 1, j - 1), q.at(i, j - 1));
    }
  }
}

PathVector backward_parallel(const LikelihoodView& scores) {
  const monoalign::detail::ScoreView view{scores.data, scores.row_stride, 1};
  return monoalign::detail::backtrack(view, scores.text, scores.speech);
}

namespace detail {

AlignmentMatrix align_unchecked(const LikelihoodBatch& batch, const MasConfig& cfg) {
  if (batch.batch < 1 || batch.text_cap < 1 || batch.speech_cap < 1) {
    throw ValidationError(Errc::ZeroDim, "batch and capacities must be at least 1");
  }
  if (batch.lengths.size() != static_cast<std::size_t>(batch.batch) ||
      batch.values.size() != static_cast<std::size_t>(batch.batch) * batch.item_stride()) {
    throw ValidationError(Errc::ShapeMismatch,
                          "container sizes do not match the declared dimensions");
  }

  AlignmentMatrix out(batch.batch, batch.text_cap, batch.speech_cap);
  out.lengths = batch.lengths;

  const int workers = worker_count(cfg.threads, batch.batch);
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> item_errors(batch.batch);

  auto body = [&] {
    std::vector<float> scratch;
    for (;;) {
      const int b = next.fetch_add(1, std::memory_order_relaxed);
      if (b >= batch.batch) {
        break;
      }
      try {
        validate_item(batch, b);
        align_one(batch, b, cfg, scratch, out);
      } catch (...) {
        item_errors[b] = std::current_exception();
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (int w = 1; w < workers; ++w) {
    pool.emplace_back(body);
  }
  body();
  for (auto& th : pool) {
    th.join();
  }

  // Lowest item index wins so diagnostics are deterministic.
  for (const auto& err : item_errors) {
    if (err) {
      std::rethrow_exception(err);
    }
  }
  return out;
}

}  // namespace detail

AlignmentMatrix align_parallel(const LikelihoodBatch& batch, const MasConfig& cfg) {
  validate_config(cfg);
  return detail::align_unchecked(batch, cfg);
}

}  // namespace monoalign::parallel
