"""Cosine noise schedule shared by all three diffusion modalities."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError

BETA_MIN = 1e-5
BETA_MAX = 0.999


@dataclass(frozen=True)
class NoiseSchedule:
    """Per-step beta values and cumulative alpha-bar products.

    ``beta`` has length T (steps 1..T); ``alpha_bar`` has length T+1 with
    ``alpha_bar[0] = 1``.
    """

    T: int
    s: float
    beta: np.ndarray = field(repr=False)
    alpha_bar: np.ndarray = field(repr=False)

    def beta_at(self, t: int) -> float:
        return float(self.beta[t - 1])

    def alpha_bar_at(self, t: int) -> float:
        return float(self.alpha_bar[t])


def make_schedule(T: int = 100, s: float = 0.01) -> NoiseSchedule:
    """Build a cosine schedule with offset ``s``, betas clipped to (1e-5, 0.999)."""
    if T < 1:
        raise ConfigError(f"schedule needs T >= 1, got {T}")
    if s <= 0:
        raise ConfigError(f"schedule offset must be positive, got {s}")
    t = np.arange(T + 1, dtype=float)
    f = np.cos(((t / T + s) / (1.0 + s)) * (math.pi / 2.0)) ** 2
    raw_alpha_bar = f / f[0]
    beta = 1.0 - raw_alpha_bar[1:] / raw_alpha_bar[:-1]
    beta = np.clip(beta, BETA_MIN, BETA_MAX)
    alpha_bar = np.concatenate([[1.0], np.cumprod(1.0 - beta)])
    return NoiseSchedule(T=T, s=s, beta=beta, alpha_bar=alpha_bar)
