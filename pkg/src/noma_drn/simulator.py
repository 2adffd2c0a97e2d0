"""End-to-end Monte Carlo trials of the two-phase relay network.

Trials at one SNR point are grouped into fixed-size blocks. Every block owns
a random stream derived from ``(seed, snr_index, block_index)``, so counts do
not depend on how many worker threads process the blocks.
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from math import sqrt
from typing import Optional

import numpy as np

from .channel import NakagamiParams, NoiseParams, sample_fading, sample_noise
from .constellation import Constellation, constellation_for_order
from .errors import ConfigurationError, SimulationError
from .kernels import get_kernel
from .phy import PowerAllocation

log = logging.getLogger(__name__)

BLOCK_TRIALS = 1 << 16
MIN_EARLY_STOP_ERRORS = 400
DETECTORS = ("jml", "sic")


@dataclass(frozen=True)
class Links:
    sr1: NakagamiParams
    sr2: NakagamiParams
    r1d: NakagamiParams
    r2d: NakagamiParams

    def as_tuple(self):
        return (self.sr1, self.sr2, self.r1d, self.r2d)

    @classmethod
    def uniform(cls, m, omegas):
        return cls(*(NakagamiParams(m, w) for w in omegas))


def default_snr_grid():
    return tuple(float(s) for s in range(0, 51, 5))


@dataclass(frozen=True)
class ScenarioConfig:
    pa: PowerAllocation
    links: Links
    m1: int = 2
    m2: int = 2
    snr_grid_db: tuple = field(default_factory=default_snr_grid)
    trials: int = 1_000_000
    seed: int = 0
    destination_detector: str = "jml"
    genie_phase2: bool = False
    early_stop_errors: int = 0
    name: str = "custom"

    def __post_init__(self):
        grid = tuple(float(s) for s in self.snr_grid_db)
        object.__setattr__(self, "snr_grid_db", grid)
        if not grid or any(b <= a for a, b in zip(grid, grid[1:])):
            raise ConfigurationError("snr_grid_db must be non-empty and strictly increasing")
        if int(self.trials) != self.trials or self.trials < 1:
            raise ConfigurationError(f"trials must be a positive integer, got {self.trials}")
        if self.destination_detector not in DETECTORS:
            raise ConfigurationError(
                f"destination_detector must be one of {DETECTORS}, got {self.destination_detector!r}"
            )
        if self.early_stop_errors and self.early_stop_errors < MIN_EARLY_STOP_ERRORS:
            raise ConfigurationError(
                f"early_stop_errors must be 0 (off) or >= {MIN_EARLY_STOP_ERRORS}"
            )
        if not 0 <= self.seed < 2**64:
            raise ConfigurationError("seed must be a 64-bit unsigned integer")
        # raises for unsupported orders
        self.constellations()

    def constellations(self) -> tuple[Constellation, Constellation]:
        return constellation_for_order(self.m1), constellation_for_order(self.m2)

    def with_(self, **changes) -> "ScenarioConfig":
        return replace(self, **changes)

    def n0(self, snr_db: float) -> float:
        return self.pa.ps / 10 ** (snr_db / 10)


@dataclass(frozen=True)
class PhaseRecord:
    """Per-phase bit errors: phase 1 at the relays, phase 2 with genie relays."""

    snr_db: float
    bits_x1: int
    bits_x2: int
    errors_p1_x1: int
    errors_p1_x2: int
    errors_p2_x1: int
    errors_p2_x2: int

    @property
    def ber_p1_x1(self):
        return self.errors_p1_x1 / self.bits_x1

    @property
    def ber_p1_x2(self):
        return self.errors_p1_x2 / self.bits_x2

    @property
    def ber_p2_x1(self):
        return self.errors_p2_x1 / self.bits_x1

    @property
    def ber_p2_x2(self):
        return self.errors_p2_x2 / self.bits_x2


@dataclass(frozen=True)
class BerRecord:
    snr_db: float
    bit_errors_x1: int
    bit_errors_x2: int
    bits_x1: int
    bits_x2: int
    trials: int = field(default=0, compare=False)  # not carried by CSV
    detector: str = ""
    scenario: str = ""
    phase: Optional[PhaseRecord] = None

    @property
    def ber_x1(self):
        return self.bit_errors_x1 / self.bits_x1

    @property
    def ber_x2(self):
        return self.bit_errors_x2 / self.bits_x2

    @property
    def ber_avg(self):
        return (self.ber_x1 + self.ber_x2) / 2

    @property
    def std_err_x1(self):
        return _binomial_se(self.ber_x1, self.bits_x1)

    @property
    def std_err_x2(self):
        return _binomial_se(self.ber_x2, self.bits_x2)

    @property
    def std_err_avg(self):
        return 0.5 * sqrt(self.std_err_x1**2 + self.std_err_x2**2)

    @property
    def errors_total(self):
        return self.bit_errors_x1 + self.bit_errors_x2


def _binomial_se(p, n):
    return sqrt(p * (1 - p) / n)


@dataclass(frozen=True)
class TrialDraws:
    """Random inputs of a batch of trials; rows follow the kernel layout."""

    sym1: np.ndarray
    sym2: np.ndarray
    h_re: np.ndarray  # SR1, SR2, R1D, R2D
    h_im: np.ndarray
    n_re: np.ndarray  # R1, R2, D
    n_im: np.ndarray

    def without_noise(self) -> "TrialDraws":
        return replace(self, n_re=np.zeros_like(self.n_re), n_im=np.zeros_like(self.n_im))


@dataclass(frozen=True)
class TrialOutcome:
    errors_x1: int
    errors_x2: int
    phase1_x1: int
    phase1_x2: int
    phase2_x1: int
    phase2_x2: int


def draw_trials(cfg: ScenarioConfig, n0: float, n: int, rng: np.random.Generator) -> TrialDraws:
    sym1 = rng.integers(0, cfg.m1, n, dtype=np.int64)
    sym2 = rng.integers(0, cfg.m2, n, dtype=np.int64)
    h = np.stack([sample_fading(p, rng, n) for p in cfg.links.as_tuple()])
    noise = NoiseParams(n0)
    w = np.stack([sample_noise(noise, rng, n) for _ in range(3)])
    return TrialDraws(
        sym1, sym2,
        np.ascontiguousarray(h.real), np.ascontiguousarray(h.imag),
        np.ascontiguousarray(w.real), np.ascontiguousarray(w.imag),
    )


def _error_table(c: Constellation) -> np.ndarray:
    lab = c.labels_array()
    return np.array([[bin(a ^ b).count("1") for b in lab] for a in lab], dtype=np.int64)


class _Prepared:
    """Per-config constants handed to the kernel."""

    def __init__(self, cfg: ScenarioConfig):
        pa = cfg.pa
        c1, c2 = cfg.constellations()
        self.gains = (
            sqrt(pa.ps), sqrt(pa.alpha1), sqrt(pa.alpha2),
            sqrt(pa.ps * pa.alpha1), sqrt(pa.ps * pa.alpha2),
            sqrt(pa.pr1), sqrt(pa.pr2),
        )
        p1, p2 = c1.points_array(), c2.points_array()
        self.points = (
            np.ascontiguousarray(p1.real), np.ascontiguousarray(p1.imag),
            np.ascontiguousarray(p2.real), np.ascontiguousarray(p2.imag),
        )
        self.err1 = _error_table(c1)
        self.err2 = _error_table(c2)
        self.dest_jml = cfg.destination_detector == "jml"
        self.genie = cfg.genie_phase2

    def run(self, draws: TrialDraws, per_phase: bool, kernel) -> np.ndarray:
        return kernel(
            draws.sym1, draws.sym2, draws.h_re, draws.h_im, draws.n_re, draws.n_im,
            self.gains, *self.points, self.err1, self.err2,
            self.dest_jml, self.genie, per_phase,
        )


def simulate_draws(cfg: ScenarioConfig, draws: TrialDraws, per_phase=True, backend=None):
    """Counters ``[e2e_x1, e2e_x2, p1_x1, p1_x2, p2_x1, p2_x2]`` for given draws."""
    return _Prepared(cfg).run(draws, per_phase, get_kernel(backend))


def run_trial(cfg: ScenarioConfig, snr_db: float, rng: np.random.Generator,
              per_phase=True, backend=None) -> TrialOutcome:
    draws = draw_trials(cfg, cfg.n0(snr_db), 1, rng)
    return TrialOutcome(*(int(v) for v in simulate_draws(cfg, draws, per_phase, backend)))


def block_rng(seed: int, snr_index: int, block_index: int) -> np.random.Generator:
    ss = np.random.SeedSequence(seed, spawn_key=(snr_index, block_index))
    return np.random.Generator(np.random.PCG64(ss))


def _run_point(cfg, prep, kernel, snr_index, snr_db, per_phase, pool, workers):
    n0 = cfg.n0(snr_db)
    n_blocks = -(-cfg.trials // BLOCK_TRIALS)

    def block(b):
        n = min(BLOCK_TRIALS, cfg.trials - b * BLOCK_TRIALS)
        draws = draw_trials(cfg, n0, n, block_rng(cfg.seed, snr_index, b))
        return n, prep.run(draws, per_phase, kernel)

    totals = np.zeros(6, dtype=np.int64)
    trials = 0
    # blocks are merged in index order, so an early stop lands on the same
    # block regardless of how many were computed ahead in parallel
    wave = max(1, workers)
    for start in range(0, n_blocks, wave):
        idx = range(start, min(start + wave, n_blocks))
        results = pool.map(block, idx) if pool is not None else map(block, idx)
        for n, counts in results:
            totals += counts
            trials += n
            if cfg.early_stop_errors and totals[0] + totals[1] >= cfg.early_stop_errors:
                return trials, totals
    return trials, totals


def _sweep(cfg: ScenarioConfig, per_phase: bool, workers: int, backend):
    prep = _Prepared(cfg)
    kernel = get_kernel(backend)
    b1 = cfg.constellations()[0].bits_per_symbol
    b2 = cfg.constellations()[1].bits_per_symbol
    pool = ThreadPoolExecutor(workers) if workers > 1 else None
    records = []
    try:
        for i, snr in enumerate(cfg.snr_grid_db):
            try:
                trials, c = _run_point(cfg, prep, kernel, i, snr, per_phase, pool, workers)
            except MemoryError as exc:
                raise SimulationError(f"out of memory at SNR {snr} dB") from exc
            phase = None
            if per_phase:
                phase = PhaseRecord(snr, trials * b1, trials * b2, *(int(v) for v in c[2:]))
            records.append(BerRecord(
                snr, int(c[0]), int(c[1]), trials * b1, trials * b2, trials,
                cfg.destination_detector, cfg.name, phase,
            ))
            log.debug("%s %s %.1f dB: %d trials, errors %s",
                      cfg.name, cfg.destination_detector, snr, trials, c.tolist())
    finally:
        if pool is not None:
            pool.shutdown()
    return records


def run_sweep(cfg: ScenarioConfig, per_phase=False, workers=1, backend=None) -> list[BerRecord]:
    """One record per SNR point; with ``per_phase`` each record carries a PhaseRecord."""
    return _sweep(cfg, per_phase, workers, backend)


def run_phase_sweep(cfg: ScenarioConfig, workers=1, backend=None) -> list[PhaseRecord]:
    return [r.phase for r in _sweep(cfg, True, workers, backend)]


@dataclass(frozen=True)
class DownlinkRecord:
    snr_db: float
    bits: int
    sic_errors: tuple[int, int]
    jml_errors: tuple[int, int]


def run_downlink_comparison(pa: PowerAllocation, link: NakagamiParams, snr_grid_db,
                            trials: int, seed: int = 0, m1=2, m2=2) -> list[DownlinkRecord]:
    """Single-receiver downlink NOMA decoded by SIC and by joint ML on the same draws.

    Both detectors see collinear gains sqrt(ps*alpha_i)*h sharing one fading
    coefficient. Only equal-order alphabets are compared (``bits`` is per stream).
    """
    from ._pykernel import _jml, _sic

    c1, c2 = constellation_for_order(m1), constellation_for_order(m2)
    if c1.bits_per_symbol != c2.bits_per_symbol:
        raise ConfigurationError("downlink comparison needs equal modulation orders")
    p1, p2 = c1.points_array(), c2.points_array()
    pts = (p1.real, p1.imag, p2.real, p2.imag)
    e1, e2 = _error_table(c1), _error_table(c2)
    out = []
    for i, snr in enumerate(snr_grid_db):
        rng = block_rng(seed, i, 0)
        n0 = pa.ps / 10 ** (snr / 10)
        s1 = rng.integers(0, m1, trials)
        s2 = rng.integers(0, m2, trials)
        h = sample_fading(link, rng, trials)
        y = sqrt(pa.ps) * (sqrt(pa.alpha1) * p1[s1] + sqrt(pa.alpha2) * p2[s2]) * h
        y = y + sample_noise(NoiseParams(n0), rng, trials)
        g1 = sqrt(pa.ps * pa.alpha1) * h
        g2 = sqrt(pa.ps * pa.alpha2) * h
        args = (y.real, y.imag, g1.real, g1.imag, g2.real, g2.imag, *pts)
        res = []
        for detect in (_sic, _jml):
            k, j = detect(*args)
            res.append((int(e1[s1, k].sum()), int(e2[s2, j].sum())))
        out.append(DownlinkRecord(float(snr), trials * c1.bits_per_symbol, res[0], res[1]))
    return out
