"""Scalar receivers with complex-operation accounting.

Counting convention (one unit per complex operation):

* forming a candidate ``g * x`` costs one multiplier;
* the residual ``y - g*x`` (or ``y - g1*x1 - g2*x2``) costs one adder per
  subtraction;
* the squared distance ``|d|^2`` costs one multiplier;
* a search over ``n`` distances costs ``n - 1`` comparators;
* SIC spends one extra adder removing the regenerated strong symbol.

With ``M1 = M2 = M`` this yields ``8M - 1`` for SIC and ``6M^2 - 1`` for
JML, matching the reference complexity table. The batched Monte Carlo
kernels in :mod:`noma_drn.kernels` implement the same decisions without the
tally.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .constellation import Constellation
from .errors import ConfigurationError


@dataclass(frozen=True)
class OperationTally:
    adders: int = 0
    multipliers: int = 0
    comparators: int = 0

    @property
    def total(self) -> int:
        return self.adders + self.multipliers + self.comparators

    def __add__(self, other: "OperationTally") -> "OperationTally":
        return OperationTally(
            self.adders + other.adders,
            self.multipliers + other.multipliers,
            self.comparators + other.comparators,
        )


@dataclass(frozen=True)
class DetectionResult:
    index1: Optional[int] = None
    index2: Optional[int] = None
    ops_count: OperationTally = OperationTally()


def _nearest(y: complex, g: complex, c: Constellation) -> tuple[int, OperationTally]:
    best, best_d = 0, None
    for k, x in enumerate(c.points):
        d = y - g * x
        dist = d.real * d.real + d.imag * d.imag
        if best_d is None or dist < best_d:
            best, best_d = k, dist
    m = c.order
    return best, OperationTally(adders=m, multipliers=2 * m, comparators=m - 1)


def ml_detect(y: complex, g: complex, c: Constellation) -> DetectionResult:
    """Single-stream ML decision treating everything else as noise."""
    k, ops = _nearest(y, g, c)
    return DetectionResult(index1=k, ops_count=ops)


def sic_detect(y, g1, g2, c1: Constellation, c2: Constellation) -> DetectionResult:
    k, ops1 = _nearest(y, g1, c1)
    residual = y - g1 * c1.points[k]
    j, ops2 = _nearest(residual, g2, c2)
    # the regenerated g1*x1 is reused from the first search; only the
    # subtraction is new
    return DetectionResult(k, j, ops1 + ops2 + OperationTally(adders=1))


def jml_detect(y, g1, g2, c1: Constellation, c2: Constellation) -> DetectionResult:
    best = (0, 0)
    best_d = None
    for k, x1 in enumerate(c1.points):
        for j, x2 in enumerate(c2.points):
            d = y - g1 * x1 - g2 * x2
            dist = d.real * d.real + d.imag * d.imag
            if best_d is None or dist < best_d:
                best, best_d = (k, j), dist
    n = c1.order * c2.order
    ops = OperationTally(adders=2 * n, multipliers=3 * n, comparators=n - 1)
    return DetectionResult(best[0], best[1], ops)


def _check_order(m: int) -> None:
    if isinstance(m, bool) or not isinstance(m, int) or m < 2:
        raise ConfigurationError(f"modulation order must be an integer >= 2, got {m!r}")


def sic_ops(m: int) -> OperationTally:
    _check_order(m)
    return OperationTally(adders=2 * m + 1, multipliers=4 * m, comparators=2 * (m - 1))


def jml_ops(m: int) -> OperationTally:
    _check_order(m)
    return OperationTally(adders=2 * m * m, multipliers=3 * m * m, comparators=m * m - 1)
