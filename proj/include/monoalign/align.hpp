#pragma once

#include "monoalign/parallel.hpp"
#include "monoalign/reference.hpp"

namespace monoalign {

/// Engine dispatch on cfg.engine.
inline AlignmentMatrix align(const LikelihoodBatch& batch, const MasConfig& cfg = {}) {
  return cfg.engine == EngineKind::Reference ? reference::align_reference(batch, cfg)
                                             : parallel::align_parallel(batch, cfg);
}

}  // namespace monoalign
