"""Baseband signal construction for both transmission phases.

Phase 1 is a downlink broadcast of the superposed symbol from the source to
both relays; phase 2 is an uplink where the relays transmit their decisions
to the destination at the same time.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import sqrt

from .errors import ConfigurationError

_TOL = 1e-12


@dataclass(frozen=True)
class PowerAllocation:
    """Source split ``alpha1/alpha2`` and relay split ``beta``.

    ``validate=False`` skips the strong/weak ordering checks; it exists for
    degenerate test inputs such as ``alpha1=1, alpha2=0``.
    """

    alpha1: float
    alpha2: float
    beta: float
    ps: float = 1.0
    pr: float = 1.0
    validate: bool = True

    def __post_init__(self):
        if abs(self.alpha1 + self.alpha2 - 1) > _TOL:
            raise ConfigurationError("alpha1 + alpha2 must equal 1")
        if self.ps <= 0 or self.pr <= 0:
            raise ConfigurationError("source and relay powers must be positive")
        if not self.validate:
            return
        if not 0.5 < self.alpha1 < 1 or not self.alpha1 > self.alpha2:
            raise ConfigurationError(f"need 0.5 < alpha1 < 1, got {self.alpha1}")
        if not 0 < self.beta < 1:
            raise ConfigurationError(f"beta must lie in (0, 1), got {self.beta}")

    @property
    def pr1(self) -> float:
        return self.beta * self.pr

    @property
    def pr2(self) -> float:
        return (1 - self.beta) * self.pr


def superpose(x1: complex, x2: complex, pa: PowerAllocation) -> complex:
    return sqrt(pa.alpha1) * x1 + sqrt(pa.alpha2) * x2


def downlink_rx(x_sc: complex, h: complex, ps: float, noise: complex) -> complex:
    return sqrt(ps) * x_sc * h + noise


def uplink_rx(xh1, xh2, h1, h2, pr1: float, pr2: float, noise: complex) -> complex:
    """Destination observation given the symbols the relays decided on."""
    return sqrt(pr1) * xh1 * h1 + sqrt(pr2) * xh2 * h2 + noise
