#include <algorithm>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "monoalign/oracle.hpp"

using monoalign::Errc;
using monoalign::PathVector;
using testutil::make_item;
using testutil::thrown_code;
namespace oracle = monoalign::oracle;

TEST_CASE("count_paths is C(s-1, t-1)") {
  CHECK(oracle::count_paths(2, 3) == 2);
  CHECK(oracle::count_paths(3, 5) == 6);
  CHECK(oracle::count_paths(1, 4) == 1);
  CHECK(oracle::count_paths(4, 4) == 1);
  CHECK(oracle::count_paths(3, 7) == 15);
}

TEST_CASE("count_paths saturates past the guard") {
  // C(28, 14) = 40116600
  CHECK(oracle::count_paths(15, 29) == oracle::kMaxPaths + 1);
}

TEST_CASE("count_paths rejects bad dimensions") {
  CHECK(thrown_code([] { oracle::count_paths(0, 3); }) == Errc::ZeroDim);
  CHECK(thrown_code([] { oracle::count_paths(4, 3); }) == Errc::InfeasibleLengths);
}

TEST_CASE("enumerate_paths lists every monotonic path exactly once") {
  const auto paths = oracle::enumerate_paths(2, 3);
  REQUIRE(paths.size() == 2);
  const std::set<PathVector> expect = {{0, 0, 1}, {0, 1, 1}};
  CHECK(std::set<PathVector>(paths.begin(), paths.end()) == expect);
}

TEST_CASE("enumerate_paths yields valid distinct paths") {
  const auto paths = oracle::enumerate_paths(3, 5);
  CHECK(paths.size() == 6);
  std::set<PathVector> distinct(paths.begin(), paths.end());
  CHECK(distinct.size() == 6);
  for (const PathVector& p : paths) {
    CHECK_NOTHROW(monoalign::validate_path(p, 3, 5));
  }
}

TEST_CASE("enumerate_paths single-row case") {
  const auto paths = oracle::enumerate_paths(1, 4);
  REQUIRE(paths.size() == 1);
  CHECK(paths[0] == PathVector{0, 0, 0, 0});
}

TEST_CASE("enumeration order is stable") {
  // Lexicographic over transition-column subsets: {1} sorts before {2}.
  const auto paths = oracle::enumerate_paths(2, 3);
  CHECK(paths[0] == PathVector{0, 1, 1});
  CHECK(paths[1] == PathVector{0, 0, 1});
}

TEST_CASE("enumerate_paths rejects instances past the guard") {
  CHECK(thrown_code([] { oracle::enumerate_paths(15, 29); }) == Errc::TooLarge);
}

TEST_CASE("best_paths on the 2x3 worked example") {
  const auto batch = make_item(2, 3, {1, 2, 3, 4, 5, 6});
  const oracle::BestPaths best = oracle::best_paths(monoalign::item_view(batch, 0));
  CHECK(best.max_score == doctest::Approx(12.0).epsilon(1e-12));
  REQUIRE(best.paths.size() == 1);
  CHECK(best.paths[0] == PathVector{0, 1, 1});
}

TEST_CASE("best_paths under total degeneracy returns every path") {
  const auto batch = make_item(3, 5, std::vector<float>(15, 0.0f));
  const oracle::BestPaths best = oracle::best_paths(monoalign::item_view(batch, 0));
  CHECK(best.max_score == 0.0);
  CHECK(best.paths.size() == 6);
}

TEST_CASE("best_paths with t = s has the single forced path") {
  const auto batch = make_item(2, 2, {0, 0, 0, 0});
  const oracle::BestPaths best = oracle::best_paths(monoalign::item_view(batch, 0));
  CHECK(best.max_score == 0.0);
  REQUIRE(best.paths.size() == 1);
  CHECK(best.paths[0] == PathVector{0, 1});
}

TEST_CASE("best_paths score equals the maximum over explicit path sums") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto batch = testutil::random_item(seed, 5, 9);
    const auto q = monoalign::item_view(batch, 0);
    const auto best = oracle::best_paths(q);
    double expect = -1e300;
    for (const PathVector& p : oracle::enumerate_paths(q.text, q.speech)) {
      double sum = 0.0;
      for (int j = 0; j < q.speech; ++j) {
        sum += static_cast<double>(q.at(p[j], j));
      }
      expect = std::max(expect, sum);
    }
    CHECK(best.max_score == doctest::Approx(expect).epsilon(1e-12));
  }
}
