"""Batched monotonic alignment on log-likelihood matrices."""

from ._monoalign import (
    __version__,
    align,
    align_paths,
    generate_random_batch,
    read_tensor,
    write_tensor,
)

__all__ = [
    "__version__",
    "align",
    "align_paths",
    "generate_random_batch",
    "read_tensor",
    "write_tensor",
]
