#pragma once

#include <initializer_list>
#include <optional>
#include <vector>

#include "monoalign/bench.hpp"
#include "monoalign/types.hpp"

namespace testutil {

/// Single-item batch from row-major values.
inline monoalign::LikelihoodBatch make_item(int t, int s, std::vector<float> values) {
  monoalign::LikelihoodBatch batch(1, t, s);
  batch.values = std::move(values);
  return batch;
}

/// The error code f() throws with, if any.
template <typename F>
std::optional<monoalign::Errc> thrown_code(F&& f) {
  try {
    f();
  } catch (const monoalign::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

/// Random single-item batch with dims derived from the seed: t in
/// [1, t_max], s in [t, s_max].
inline monoalign::LikelihoodBatch random_item(std::uint64_t seed, int t_max, int s_max) {
  std::uint64_t state = seed;
  int t = 1 + static_cast<int>(monoalign::bench::detail::splitmix64(state) %
                               static_cast<std::uint64_t>(t_max));
  if (t > s_max) {
    t = s_max;
  }
  const int s = t + static_cast<int>(monoalign::bench::detail::splitmix64(state) %
                                     static_cast<std::uint64_t>(s_max - t + 1));
  return monoalign::bench::generate_random_batch(1, t, s, seed);
}

}  // namespace testutil
