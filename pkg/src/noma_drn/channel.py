"""Nakagami-m fading and complex AWGN generators.

All samplers take an explicit ``numpy.random.Generator`` and hold no state
of their own, so identical generator states give identical samples.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError


@dataclass(frozen=True)
class NakagamiParams:
    """Severity ``m`` (m=1 is Rayleigh) and mean power ``omega = E|h|^2``."""

    m: float
    omega: float

    def __post_init__(self):
        if not self.m >= 0.5:
            raise ConfigurationError(f"Nakagami m must be >= 0.5, got {self.m}")
        if not self.omega > 0:
            raise ConfigurationError(f"Nakagami omega must be > 0, got {self.omega}")


@dataclass(frozen=True)
class NoiseParams:
    n0: float

    def __post_init__(self):
        if not self.n0 > 0:
            raise ConfigurationError(f"noise power must be > 0, got {self.n0}")


def sample_fading(p: NakagamiParams, rng: np.random.Generator, size=None):
    """Draw h with |h|^2 ~ Gamma(shape=m, scale=omega/m) and uniform phase."""
    power = rng.gamma(p.m, p.omega / p.m, size)
    phase = rng.uniform(0.0, 2 * np.pi, size)
    return np.sqrt(power) * np.exp(1j * phase)


def sample_noise(p: NoiseParams, rng: np.random.Generator, size=None):
    """Circularly symmetric CN(0, n0) samples."""
    sigma = np.sqrt(p.n0 / 2)
    re = rng.standard_normal(size)
    im = rng.standard_normal(size)
    return sigma * (re + 1j * im)
