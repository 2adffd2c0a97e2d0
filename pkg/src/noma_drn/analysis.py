"""Post-processing of sweep records: BER composition, slopes and floors."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import log10, sqrt
from typing import Optional, Sequence

from .errors import DomainError

MIN_ERRORS = 10
DEFAULT_LOW_WINDOW = (0.0, 20.0)
DEFAULT_HIGH_WINDOW = (40.0, 50.0)
FLOOR_RATIO = 0.5
DECAY_RATIO = 0.2


def _check_prob(*ps):
    for p in ps:
        if not 0.0 <= p <= 1.0:
            raise DomainError(f"probability {p} outside [0, 1]")


def combine_e2e(p_sr: float, p_rd: float) -> float:
    """BER after two independent decode-and-forward hops (either hop fails)."""
    _check_prob(p_sr, p_rd)
    return 1 - (1 - p_sr) * (1 - p_rd)


def two_hop_flip(p_sr: float, p_rd: float) -> float:
    """Exact BPSK end-to-end flip probability: exactly one hop flips the bit."""
    _check_prob(p_sr, p_rd)
    return p_sr + p_rd - 2 * p_sr * p_rd


def average_ber(p1: float, p2: float) -> float:
    _check_prob(p1, p2)
    return (p1 + p2) / 2


@dataclass
class DiversityEstimate:
    slopes: list = field(default_factory=list)  # (snr_midpoint_db, slope)
    low_medium_slope: Optional[float] = None
    high_snr_slope: Optional[float] = None

    @property
    def low_available(self) -> bool:
        return self.low_medium_slope is not None

    @property
    def high_available(self) -> bool:
        return self.high_snr_slope is not None


def _reliable(records, min_errors):
    return [r for r in records if r.errors_total >= min_errors and r.ber_avg > 0]


def _pair_slopes(records, min_errors):
    pts = sorted(_reliable(records, min_errors), key=lambda r: r.snr_db)
    out = []
    for a, b in zip(pts, pts[1:]):
        slope = -(log10(b.ber_avg) - log10(a.ber_avg)) / ((b.snr_db - a.snr_db) / 10)
        # inverse variance of the log-BER difference is ~ 1/(1/ea + 1/eb)
        weight = a.errors_total * b.errors_total / (a.errors_total + b.errors_total)
        out.append((a, b, slope, weight))
    return out


def _window_slope(pairs, window):
    lo, hi = window
    inside = [(s, w) for a, b, s, w in pairs if a.snr_db >= lo and b.snr_db <= hi]
    if not inside:
        return None
    return sum(s * w for s, w in inside) / sum(w for _, w in inside)


def estimate_diversity(records: Sequence, low_window=DEFAULT_LOW_WINDOW,
                       high_window=DEFAULT_HIGH_WINDOW,
                       min_errors=MIN_ERRORS) -> DiversityEstimate:
    """Empirical log-log slope of ``ber_avg`` against SNR.

    Consecutive reliable points (at least ``min_errors`` errors each) give
    pairwise slopes; a window's slope is their error-weighted mean over pairs
    lying entirely inside it. Windows without such a pair stay ``None``.
    """
    pairs = _pair_slopes(records, min_errors)
    return DiversityEstimate(
        slopes=[((a.snr_db + b.snr_db) / 2, s) for a, b, s, _ in pairs],
        low_medium_slope=_window_slope(pairs, low_window),
        high_snr_slope=_window_slope(pairs, high_window),
    )


@dataclass(frozen=True)
class FloorVerdict:
    verdict: str  # "floored" | "decaying" | "inconclusive"
    ratio: Optional[float] = None
    snr_from: Optional[float] = None
    snr_to: Optional[float] = None


def detect_floor(records: Sequence, window=DEFAULT_HIGH_WINDOW, min_errors=MIN_ERRORS,
                 n_sigma=3.0) -> FloorVerdict:
    """Classify the BER tail between the first and last reliable points of ``window``.

    ``floored``: ratio > 0.5 and the 3-sigma band of the later BER stays above
    half the band of the earlier one. ``decaying``: ratio < 0.2 with disjoint
    3-sigma bands. Anything else is ``inconclusive``.
    """
    lo, hi = window
    pts = sorted((r for r in _reliable(records, min_errors) if lo <= r.snr_db <= hi),
                 key=lambda r: r.snr_db)
    if len(pts) < 2:
        return FloorVerdict("inconclusive")
    a, b = pts[0], pts[-1]
    ratio = b.ber_avg / a.ber_avg
    a_lo, a_hi = a.ber_avg - n_sigma * a.std_err_avg, a.ber_avg + n_sigma * a.std_err_avg
    b_lo, b_hi = b.ber_avg - n_sigma * b.std_err_avg, b.ber_avg + n_sigma * b.std_err_avg
    if ratio > FLOOR_RATIO and b_lo > FLOOR_RATIO * a_hi:
        verdict = "floored"
    elif ratio < DECAY_RATIO and b_hi < a_lo:
        verdict = "decaying"
    else:
        verdict = "inconclusive"
    return FloorVerdict(verdict, ratio, a.snr_db, b.snr_db)


def snr_to_reach(records: Sequence, target: float) -> Optional[float]:
    """First SNR (log-linear interpolation) where ``ber_avg`` drops to ``target``."""
    pts = sorted(records, key=lambda r: r.snr_db)
    for a, b in zip(pts, pts[1:]):
        if a.ber_avg <= target:
            return a.snr_db
        if b.ber_avg <= target:
            if b.ber_avg == 0:
                return b.snr_db
            la, lb, lt = log10(a.ber_avg), log10(b.ber_avg), log10(target)
            return a.snr_db + (b.snr_db - a.snr_db) * (la - lt) / (la - lb)
    if pts and pts[-1].ber_avg <= target:
        return pts[-1].snr_db
    return None


@dataclass(frozen=True)
class CompositionCheck:
    snr_db: float
    stream: int
    measured: float
    predicted: float  # exact two-hop flip algebra
    product_form: float  # 1 - (1 - p1)(1 - p2)
    z: float
    z_product: float
    errors: int

    def passed(self, n_sigma=3.0) -> bool:
        return abs(self.z) <= n_sigma


def composition_checks(records: Sequence) -> list[CompositionCheck]:
    """Compare measured e2e BER with the value composed from per-phase BERs.

    Uses records that carry a ``phase`` field. The z-scores use the combined
    binomial standard error of the three independent-looking estimates.
    """
    out = []
    for r in records:
        ph = r.phase
        if ph is None:
            continue
        for stream in (1, 2):
            bits = r.bits_x1 if stream == 1 else r.bits_x2
            e2e = r.ber_x1 if stream == 1 else r.ber_x2
            errors = r.bit_errors_x1 if stream == 1 else r.bit_errors_x2
            p1 = ph.ber_p1_x1 if stream == 1 else ph.ber_p1_x2
            p2 = ph.ber_p2_x1 if stream == 1 else ph.ber_p2_x2
            se = sqrt(sum(p * (1 - p) for p in (e2e, p1, p2)) / bits)
            pred = two_hop_flip(p1, p2)
            prod = combine_e2e(p1, p2)
            z = (e2e - pred) / se if se > 0 else 0.0
            zp = (e2e - prod) / se if se > 0 else 0.0
            out.append(CompositionCheck(r.snr_db, stream, e2e, pred, prod, z, zp, errors))
    return out
