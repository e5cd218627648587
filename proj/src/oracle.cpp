#include "monoalign/oracle.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace monoalign::oracle {

namespace {

void check_dims(int t, int s) {
  if (t < 1 || s < 1) {
    throw ValidationError(Errc::ZeroDim, "dimensions must be at least 1");
  }
  if (t > s) {
    throw ValidationError(Errc::InfeasibleLengths, "no monotonic path exists for t > s");
  }
}

void check_guard(int t, int s) {
  if (count_paths(t, s) > kMaxPaths) {
    std::ostringstream msg;
    msg << "instance (" << t << ", " << s << ") has more than " << kMaxPaths
        << " monotonic paths";
    throw ValidationError(Errc::TooLarge, msg.str());
  }
}

/// Visits every monotonic path for (t, s) in lexicographic order of the
/// transition-column subsets. A path is determined by choosing which t-1 of
/// the s-1 frame transitions step up by one text index.
void for_each_path(int t, int s, const std::function<void(const PathVector&)>& visit) {
  const int k = t - 1;
  // transitions[r] = frame index whose step is +1; strictly increasing.
  std::vector<int> transitions(k);
  for (int r = 0; r < k; ++r) {
    transitions[r] = r + 1;
  }
  PathVector path(static_cast<std::size_t>(s));

  for (;;) {
    std::int32_t level = 0;
    int r = 0;
    path[0] = 0;
    for (int j = 1; j < s; ++j) {
      if (r < k && transitions[r] == j) {
        ++level;
        ++r;
      }
      path[j] = level;
    }
    visit(path);

    // Next combination: bump the rightmost transition that still has room.
    int pos = k - 1;
    while (pos >= 0 && transitions[pos] == s - 1 - (k - 1 - pos)) {
      --pos;
    }
    if (pos < 0) {
      break;
    }
    ++transitions[pos];
    for (int r2 = pos + 1; r2 < k; ++r2) {
      transitions[r2] = transitions[r2 - 1] + 1;
    }
  }
}

double path_score(const LikelihoodView& q, const PathVector& path) {
  double sum = 0.0;
  for (int j = 0; j < q.speech; ++j) {
    sum += static_cast<double>(q.at(path[j], j));
  }
  return sum;
}

}  // namespace

std::uint64_t count_paths(int t, int s) {
  check_dims(t, s);
  const std::uint64_t n = static_cast<std::uint64_t>(s) - 1;
  const std::uint64_t k = static_cast<std::uint64_t>(t) - 1;
  // C(n, k) built up as C(n-k+i, i); each prefix is integral and
  // nondecreasing, so saturation can be checked before overflow.
  std::uint64_t c = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    if (c > kMaxPaths) {
      return kMaxPaths + 1;
    }
    c = c * (n - k + i) / i;
  }
  return c > kMaxPaths ? kMaxPaths + 1 : c;
}

std::vector<PathVector> enumerate_paths(int t, int s) {
  check_guard(t, s);
  std::vector<PathVector> out;
  out.reserve(static_cast<std::size_t>(count_paths(t, s)));
  for_each_path(t, s, [&](const PathVector& path) { out.push_back(path); });
  return out;
}

BestPaths best_paths(const LikelihoodView& q) {
  check_guard(q.text, q.speech);
  BestPaths result;
  result.max_score = -std::numeric_limits<double>::infinity();
  for_each_path(q.text, q.speech, [&](const PathVector& path) {
    result.max_score = std::max(result.max_score, path_score(q, path));
  });
  for_each_path(q.text, q.speech, [&](const PathVector& path) {
    if (path_score(q, path) >= result.max_score - kScoreTol) {
      result.paths.push_back(path);
    }
  });
  return result;
}

}  // namespace monoalign::oracle
