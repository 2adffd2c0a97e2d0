import itertools

import numpy as np
import pytest

from noma_drn.constellation import demap, make_constellation, modulate
from noma_drn.errors import ConfigurationError

ALPHABETS = [("BPSK", 2), ("QPSK-Gray", 4)]


@pytest.mark.parametrize("kind,order", ALPHABETS)
def test_invariants(kind, order):
    c = make_constellation(kind, order)
    pts = c.points_array()
    assert c.order == order
    assert abs(np.mean(np.abs(pts) ** 2) - 1) < 1e-12
    assert len(set(c.points)) == order
    width = c.bits_per_symbol
    assert sorted(c.bit_labels) == ["".join(b) for b in itertools.product("01", repeat=width)]


def test_bpsk_points():
    c = make_constellation("BPSK", 2)
    assert modulate("0", c) == 1
    assert modulate("1", c) == -1
    assert demap(0, c) == "0"


def test_qpsk_points_and_gray_neighbours():
    c = make_constellation("QPSK-Gray", 4)
    s = 1 / np.sqrt(2)
    assert {complex(round(p.real, 12), round(p.imag, 12)) for p in c.points} == {
        complex(round(a * s, 12), round(b * s, 12)) for a in (1, -1) for b in (1, -1)
    }
    pts = c.points_array()
    dmin = min(abs(a - b) for a, b in itertools.combinations(pts, 2))
    for i, j in itertools.combinations(range(4), 2):
        if abs(abs(pts[i] - pts[j]) - dmin) < 1e-9:
            diff = sum(x != y for x, y in zip(c.bit_labels[i], c.bit_labels[j]))
            assert diff == 1
    assert c.points[c.bit_labels.index("10")] == modulate("10", c)
    assert demap(3, c) == c.bit_labels[3]


@pytest.mark.parametrize("kind,order", ALPHABETS)
def test_round_trip(kind, order):
    c = make_constellation(kind, order)
    for k in range(order):
        assert c.points.index(modulate(demap(k, c), c)) == k
    for bits in c.bit_labels:
        assert demap(c.points.index(modulate(bits, c)), c) == bits


@pytest.mark.parametrize("kind,order", [("BPSK", 4), ("QPSK-Gray", 2), ("16QAM", 16)])
def test_unsupported(kind, order):
    with pytest.raises(ConfigurationError):
        make_constellation(kind, order)


def test_bad_bits_and_index():
    c = make_constellation("QPSK-Gray", 4)
    with pytest.raises(ConfigurationError):
        modulate("1", c)
    with pytest.raises(IndexError):
        demap(4, c)
