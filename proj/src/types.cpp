#include "monoalign/types.hpp"

#include <cmath>
#include <sstream>

namespace monoalign {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::ZeroDim: return "ZeroDim";
    case Errc::InfeasibleLengths: return "InfeasibleLengths";
    case Errc::LengthsOutOfRange: return "LengthsOutOfRange";
    case Errc::NonFinite: return "NonFinite";
    case Errc::SpeechTooLong: return "SpeechTooLong";
    case Errc::ShapeMismatch: return "ShapeMismatch";
    case Errc::InvalidPath: return "InvalidPath";
    case Errc::InvalidMatrix: return "InvalidMatrix";
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::TooLarge: return "TooLarge";
    case Errc::EmptyReport: return "EmptyReport";
    case Errc::InsufficientPoints: return "InsufficientPoints";
    case Errc::IoFailure: return "IoFailure";
    case Errc::BadMagic: return "BadMagic";
    case Errc::UnsupportedVersion: return "UnsupportedVersion";
    case Errc::TruncatedFile: return "TruncatedFile";
    case Errc::DimensionOverflow: return "DimensionOverflow";
  }
  return "Unknown";
}

LikelihoodBatch::LikelihoodBatch(int batch_size, int text_capacity, int speech_capacity)
    : batch(batch_size),
      text_cap(text_capacity),
      speech_cap(speech_capacity),
      values(static_cast<std::size_t>(batch_size) * text_capacity * speech_capacity, 0.0f),
      lengths(static_cast<std::size_t>(batch_size),
              ValidLengths{static_cast<std::uint32_t>(text_capacity),
                           static_cast<std::uint32_t>(speech_capacity)}) {}

AlignmentMatrix::AlignmentMatrix(int batch_size, int text_capacity, int speech_capacity)
    : batch(batch_size),
      text_cap(text_capacity),
      speech_cap(speech_capacity),
      values(static_cast<std::size_t>(batch_size) * text_capacity * speech_capacity, 0),
      lengths(static_cast<std::size_t>(batch_size),
              ValidLengths{static_cast<std::uint32_t>(text_capacity),
                           static_cast<std::uint32_t>(speech_capacity)}) {}

LikelihoodView item_view(const LikelihoodBatch& batch, int b) {
  return {batch.item(b).data(), static_cast<int>(batch.lengths[b].text),
          static_cast<int>(batch.lengths[b].speech), batch.speech_cap};
}

MutableLikelihoodView item_view(LikelihoodBatch& batch, int b) {
  return {batch.item(b).data(), static_cast<int>(batch.lengths[b].text),
          static_cast<int>(batch.lengths[b].speech), batch.speech_cap};
}

void validate_config(const MasConfig& cfg) {
  if (!std::isfinite(cfg.max_neg_val) || cfg.max_neg_val > kMaxNegValCeiling) {
    std::ostringstream msg;
    msg << "max_neg_val must be finite and at most " << kMaxNegValCeiling << ", got "
        << cfg.max_neg_val;
    throw ValidationError(Errc::InvalidConfig, msg.str());
  }
  if (cfg.threads < 0) {
    throw ValidationError(Errc::InvalidConfig, "threads must be >= 0");
  }
}

namespace {

[[noreturn]] void fail_item(Errc code, int b, const std::string& detail) {
  std::ostringstream msg;
  msg << "item " << b << ": " << detail;
  throw ValidationError(code, msg.str());
}

}  // namespace

void validate_item(const LikelihoodBatch& batch, int b) {
  const auto [t, s] = batch.lengths[b];
  if (t < 1 || s < 1) {
    std::ostringstream d;
    d << "valid lengths must be at least 1, got (" << t << ", " << s << ")";
    fail_item(Errc::ZeroDim, b, d.str());
  }
  if (t > static_cast<std::uint32_t>(batch.text_cap) ||
      s > static_cast<std::uint32_t>(batch.speech_cap)) {
    std::ostringstream d;
    d << "valid lengths (" << t << ", " << s << ") exceed capacities (" << batch.text_cap
      << ", " << batch.speech_cap << ")";
    fail_item(Errc::LengthsOutOfRange, b, d.str());
  }
  if (s > kMaxSpeechLen) {
    std::ostringstream d;
    d << "speech length " << s << " exceeds the supported maximum " << kMaxSpeechLen;
    fail_item(Errc::SpeechTooLong, b, d.str());
  }
  if (t > s) {
    std::ostringstream d;
    d << "text length " << t << " exceeds speech length " << s
      << "; every text unit needs at least one frame";
    fail_item(Errc::InfeasibleLengths, b, d.str());
  }
  const LikelihoodView q = item_view(batch, b);
  for (int i = 0; i < q.text; ++i) {
    for (int j = 0; j < q.speech; ++j) {
      if (!std::isfinite(q.at(i, j))) {
        std::ostringstream d;
        d << "non-finite likelihood at (" << i << ", " << j << ")";
        fail_item(Errc::NonFinite, b, d.str());
      }
    }
  }
}

void validate_batch(const LikelihoodBatch& batch) {
  if (batch.batch < 1 || batch.text_cap < 1 || batch.speech_cap < 1) {
    throw ValidationError(Errc::ZeroDim, "batch and capacities must be at least 1");
  }
  if (batch.lengths.size() != static_cast<std::size_t>(batch.batch) ||
      batch.values.size() != static_cast<std::size_t>(batch.batch) * batch.item_stride()) {
    throw ValidationError(Errc::ShapeMismatch,
                          "container sizes do not match the declared dimensions");
  }
  for (int b = 0; b < batch.batch; ++b) {
    validate_item(batch, b);
  }
}

void validate_path(const PathVector& path, int t, int s) {
  if (t < 1 || s < 1 || t > s) {
    throw ValidationError(Errc::InvalidPath, "dimensions do not admit a monotonic path");
  }
  if (path.size() != static_cast<std::size_t>(s)) {
    throw ValidationError(Errc::InvalidPath, "path length does not equal the speech length");
  }
  if (path.front() != 0 || path.back() != t - 1) {
    throw ValidationError(Errc::InvalidPath, "path must start at 0 and end at t-1");
  }
  for (int j = 1; j < s; ++j) {
    const std::int32_t step = path[j] - path[j - 1];
    if (step != 0 && step != 1) {
      std::ostringstream msg;
      msg << "step of " << step << " at frame " << j << "; only 0 and 1 are allowed";
      throw ValidationError(Errc::InvalidPath, msg.str());
    }
  }
}

AlignmentMatrix matrix_from_path(const PathVector& path, int t, int s) {
  validate_path(path, t, s);
  AlignmentMatrix m(1, t, s);
  for (int j = 0; j < s; ++j) {
    m.at(0, path[j], j) = 1;
  }
  return m;
}

PathVector path_from_matrix(const AlignmentMatrix& m, int b) {
  const auto [t, s] = m.lengths[b];
  PathVector path(s, -1);
  for (std::uint32_t j = 0; j < s; ++j) {
    int ones = 0;
    for (std::uint32_t i = 0; i < t; ++i) {
      if (m.at(b, i, j) != 0) {
        ++ones;
        path[j] = static_cast<std::int32_t>(i);
      }
    }
    if (ones != 1) {
      std::ostringstream msg;
      msg << "item " << b << ": column " << j << " carries " << ones << " ones, expected 1";
      throw ValidationError(Errc::InvalidMatrix, msg.str());
    }
  }
  return path;
}

void write_path(AlignmentMatrix& out, int b, const PathVector& path) {
  for (std::size_t j = 0; j < path.size(); ++j) {
    out.at(b, path[j], static_cast<int>(j)) = 1;
  }
}

}  // namespace monoalign
