#include <cmath>
#include <limits>

#include "doctest.h"
#include "helpers.hpp"
#include "monoalign/types.hpp"

using monoalign::AlignmentMatrix;
using monoalign::Errc;
using monoalign::LikelihoodBatch;
using monoalign::MasConfig;
using monoalign::PathVector;
using testutil::make_item;
using testutil::thrown_code;

namespace {
const float kNan = std::numeric_limits<float>::quiet_NaN();
}

TEST_CASE("validate_batch accepts a well-formed item") {
  const auto batch = make_item(2, 3, {1, 2, 3, 4, 5, 6});
  CHECK_NOTHROW(monoalign::validate_batch(batch));
}

TEST_CASE("validate_batch rejects t > s") {
  LikelihoodBatch batch(1, 4, 3);
  CHECK(thrown_code([&] { monoalign::validate_batch(batch); }) ==
        Errc::InfeasibleLengths);
}

TEST_CASE("validate_batch rejects NaN inside the valid region") {
  auto batch = make_item(2, 3, {kNan, 2, 3, 4, 5, 6});
  CHECK(thrown_code([&] { monoalign::validate_batch(batch); }) == Errc::NonFinite);
}

TEST_CASE("NaN in the padding region is ignored") {
  LikelihoodBatch batch(1, 3, 4);
  batch.lengths[0] = {2, 3};
  batch.at(0, 2, 0) = kNan;  // below the valid rows
  batch.at(0, 0, 3) = kNan;  // right of the valid columns
  CHECK_NOTHROW(monoalign::validate_batch(batch));
}

TEST_CASE("validate_batch rejects zero lengths") {
  LikelihoodBatch batch(1, 2, 3);
  batch.lengths[0] = {0, 3};
  CHECK(thrown_code([&] { monoalign::validate_batch(batch); }) == Errc::ZeroDim);
}

TEST_CASE("validate_batch rejects lengths above the capacities") {
  LikelihoodBatch batch(1, 2, 3);
  batch.lengths[0] = {2, 4};
  CHECK(thrown_code([&] { monoalign::validate_batch(batch); }) ==
        Errc::LengthsOutOfRange);
}

TEST_CASE("validate_batch rejects mismatched container sizes") {
  LikelihoodBatch batch(1, 2, 3);
  batch.values.pop_back();
  CHECK(thrown_code([&] { monoalign::validate_batch(batch); }) == Errc::ShapeMismatch);

  LikelihoodBatch batch2(2, 2, 3);
  batch2.lengths.pop_back();
  CHECK(thrown_code([&] { monoalign::validate_batch(batch2); }) == Errc::ShapeMismatch);
}

TEST_CASE("validate_batch rejects speech lengths past the hard limit") {
  LikelihoodBatch batch(1, 1, static_cast<int>(monoalign::kMaxSpeechLen) + 1);
  CHECK(thrown_code([&] { monoalign::validate_batch(batch); }) == Errc::SpeechTooLong);
}

TEST_CASE("validation messages name the failing item") {
  LikelihoodBatch batch(3, 2, 3);
  batch.lengths[2] = {3, 3};  // t above text_cap
  try {
    monoalign::validate_batch(batch);
    FAIL("expected ValidationError");
  } catch (const monoalign::ValidationError& e) {
    CHECK(std::string(e.what()).find("item 2") != std::string::npos);
  }
}

TEST_CASE("validate_config") {
  CHECK_NOTHROW(monoalign::validate_config(MasConfig{}));

  MasConfig weak;
  weak.max_neg_val = -1e9f;
  CHECK(thrown_code([&] { monoalign::validate_config(weak); }) == Errc::InvalidConfig);

  MasConfig nan_cfg;
  nan_cfg.max_neg_val = kNan;
  CHECK(thrown_code([&] { monoalign::validate_config(nan_cfg); }) == Errc::InvalidConfig);

  MasConfig inf_cfg;
  inf_cfg.max_neg_val = -std::numeric_limits<float>::infinity();
  CHECK(thrown_code([&] { monoalign::validate_config(inf_cfg); }) == Errc::InvalidConfig);

  MasConfig bad_threads;
  bad_threads.threads = -1;
  CHECK(thrown_code([&] { monoalign::validate_config(bad_threads); }) ==
        Errc::InvalidConfig);
}

TEST_CASE("matrix_from_path lays out ones at (path[j], j)") {
  const AlignmentMatrix m = monoalign::matrix_from_path({0, 1, 1}, 2, 3);
  CHECK(m.values == std::vector<std::uint8_t>{1, 0, 0, 0, 1, 1});
}

TEST_CASE("matrix_from_path single cell") {
  const AlignmentMatrix m = monoalign::matrix_from_path({0}, 1, 1);
  CHECK(m.values == std::vector<std::uint8_t>{1});
}

TEST_CASE("matrix_from_path with t = s is the identity matrix") {
  const AlignmentMatrix m = monoalign::matrix_from_path({0, 1, 2}, 3, 3);
  CHECK(m.values == std::vector<std::uint8_t>{1, 0, 0, 0, 1, 0, 0, 0, 1});
}

TEST_CASE("validate_path rejects malformed paths") {
  auto code = [](const PathVector& p, int t, int s) {
    return thrown_code([&] { monoalign::validate_path(p, t, s); });
  };
  CHECK(code({1, 1, 1}, 2, 3) == Errc::InvalidPath);   // does not start at 0
  CHECK(code({0, 0, 0}, 2, 3) == Errc::InvalidPath);   // does not end at t-1
  CHECK(code({0, 2, 2}, 3, 3) == Errc::InvalidPath);   // step of 2
  CHECK(code({0, 1}, 2, 3) == Errc::InvalidPath);      // wrong length
  CHECK(code({0, 1, 0}, 2, 3) == Errc::InvalidPath);   // step of -1
  CHECK(code({0, 1, 1}, 4, 3) == Errc::InvalidPath);   // t > s admits no path
}

TEST_CASE("path_from_matrix inverts matrix_from_path") {
  AlignmentMatrix m(1, 2, 3);
  m.values = {1, 0, 0, 0, 1, 1};
  CHECK(monoalign::path_from_matrix(m) == PathVector{0, 1, 1});

  AlignmentMatrix eye(1, 3, 3);
  eye.values = {1, 0, 0, 0, 1, 0, 0, 0, 1};
  CHECK(monoalign::path_from_matrix(eye) == PathVector{0, 1, 2});
}

TEST_CASE("path_from_matrix rejects a column with two ones") {
  AlignmentMatrix m(1, 2, 2);
  m.values = {1, 1, 0, 1};
  CHECK(thrown_code([&] { monoalign::path_from_matrix(m); }) == Errc::InvalidMatrix);
}

TEST_CASE("path/matrix round trip on random valid paths") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    std::uint64_t state = seed;
    const int t = 1 + static_cast<int>(monoalign::bench::detail::splitmix64(state) % 8);
    const int s =
        t + static_cast<int>(monoalign::bench::detail::splitmix64(state) % 8);
    // Random monotonic path: start at 0, step up t-1 times somewhere.
    PathVector path(static_cast<std::size_t>(s), 0);
    int level = 0;
    for (int j = 1; j < s; ++j) {
      const int remaining_cols = s - j;
      const int remaining_ups = (t - 1) - level;
      const bool must_up = remaining_ups == remaining_cols;
      const bool may_up = remaining_ups > 0;
      if (must_up ||
          (may_up && monoalign::bench::detail::splitmix64(state) % 2 == 0)) {
        ++level;
      }
      path[j] = level;
    }
    const AlignmentMatrix m = monoalign::matrix_from_path(path, t, s);
    CHECK(monoalign::path_from_matrix(m) == path);
  }
}

TEST_CASE("item_view strides match the batch layout") {
  LikelihoodBatch batch(2, 2, 3);
  batch.at(1, 1, 2) = 42.0f;
  batch.lengths[1] = {2, 3};
  const monoalign::LikelihoodView v = monoalign::item_view(batch, 1);
  CHECK(v.text == 2);
  CHECK(v.speech == 3);
  CHECK(v.at(1, 2) == 42.0f);

  monoalign::MutableLikelihoodView mv = monoalign::item_view(batch, 1);
  mv.at(0, 1) = 7.0f;
  CHECK(batch.at(1, 0, 1) == 7.0f);
}

TEST_CASE("write_path fills one item of a batch output") {
  AlignmentMatrix out(2, 2, 3);
  monoalign::write_path(out, 1, {0, 1, 1});
  CHECK(out.at(1, 0, 0) == 1);
  CHECK(out.at(1, 1, 1) == 1);
  CHECK(out.at(1, 1, 2) == 1);
  CHECK(out.at(0, 0, 0) == 0);  // other item untouched
}
