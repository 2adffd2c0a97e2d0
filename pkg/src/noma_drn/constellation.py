"""Modulation alphabets with Gray bit labels."""
from __future__ import annotations

from dataclasses import dataclass
from math import log2, sqrt

import numpy as np

from .errors import ConfigurationError

_SUPPORTED = {"BPSK": 2, "QPSK-Gray": 4}


@dataclass(frozen=True)
class Constellation:
    """Unit average energy point set.

    ``labels[k]`` is the integer value of the bit string attached to
    ``points[k]`` (most significant bit first), so bit errors between two
    indices are ``popcount(labels[a] ^ labels[b])``.
    """

    kind: str
    points: tuple[complex, ...]
    labels: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.points)

    @property
    def bits_per_symbol(self) -> int:
        return int(log2(self.order))

    @property
    def bit_labels(self) -> tuple[str, ...]:
        width = self.bits_per_symbol
        return tuple(format(lab, f"0{width}b") for lab in self.labels)

    def points_array(self) -> np.ndarray:
        return np.asarray(self.points, dtype=np.complex128)

    def labels_array(self) -> np.ndarray:
        return np.asarray(self.labels, dtype=np.int64)


def make_constellation(kind: str, order: int) -> Constellation:
    if _SUPPORTED.get(kind) != order:
        raise ConfigurationError(f"unsupported constellation ({kind!r}, {order})")
    if kind == "BPSK":
        # bit 0 -> +1
        return Constellation(kind, (1 + 0j, -1 + 0j), (0b0, 0b1))
    s = 1 / sqrt(2)
    # counter-clockwise from the first quadrant; neighbours differ in one bit
    points = (complex(s, s), complex(-s, s), complex(-s, -s), complex(s, -s))
    labels = (0b00, 0b01, 0b11, 0b10)
    return Constellation(kind, points, labels)


def constellation_for_order(order: int) -> Constellation:
    """The live alphabet used for a modulation order (2 -> BPSK, 4 -> QPSK)."""
    for kind, m in _SUPPORTED.items():
        if m == order:
            return make_constellation(kind, order)
    raise ConfigurationError(f"no constructible alphabet of order {order}")


def modulate(bits: str, c: Constellation) -> complex:
    if len(bits) != c.bits_per_symbol or set(bits) - {"0", "1"}:
        raise ConfigurationError(
            f"expected {c.bits_per_symbol} bits for {c.kind}, got {bits!r}"
        )
    return c.points[c.labels.index(int(bits, 2))]


def demap(point_index: int, c: Constellation) -> str:
    if not 0 <= point_index < c.order:
        raise IndexError(f"point index {point_index} out of range for {c.kind}")
    return c.bit_labels[point_index]
