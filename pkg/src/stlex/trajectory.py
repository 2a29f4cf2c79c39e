"""Multivariate, uniformly sampled trajectories."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class Trajectory:
    """A (channels x length) real-valued series with an optional class label.

    The value matrix is frozen after construction; trajectories are safe to
    share across threads.
    """

    values: np.ndarray
    label: int | None = None
    id: str = ""

    def __post_init__(self):
        values = np.ascontiguousarray(self.values, dtype=np.float64)
        if values.ndim != 2:
            raise ValueError(f"values must be 2-D (channels x length), got {values.shape}")
        if values.shape[1] < 1:
            raise ValueError("trajectory length must be >= 1")
        if not np.all(np.isfinite(values)):
            raise ValueError("trajectory values must be finite")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def channels(self) -> int:
        return self.values.shape[0]

    @property
    def length(self) -> int:
        return self.values.shape[1]


def stack_values(taus: list[Trajectory]) -> np.ndarray:
    """Stack trajectories into a (batch, channels, length) array.

    All trajectories must share channel count and length.
    """
    if not taus:
        raise ValueError("empty trajectory list")
    shape = taus[0].values.shape
    for tau in taus:
        if tau.values.shape != shape:
            raise ValueError(
                f"inconsistent trajectory shapes: {tau.values.shape} vs {shape}"
            )
    return np.stack([tau.values for tau in taus])
