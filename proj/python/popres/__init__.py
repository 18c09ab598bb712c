"""Recovery of a sparse distribution on binary strings from noisy samples.

Points cross the boundary as ASCII bit strings whose leftmost character is
coordinate 1. See the individual function docstrings for parameters.
"""

from ._core import (
    far_threshold,
    local_inverse,
    recover,
    recover_from_samples,
    sample,
    verify,
)

__all__ = [
    "far_threshold",
    "local_inverse",
    "recover",
    "recover_from_samples",
    "sample",
    "verify",
]
