"""Monte Carlo link simulator for NOMA diamond relaying networks.

Two decode-and-forward relays serve a source/destination pair with no direct
link. The source superposes two symbols, the relays each recover one, and
the destination separates the simultaneous relay transmissions with either
successive interference cancellation or a joint ML search.
"""
from .analysis import average_ber, combine_e2e, detect_floor, estimate_diversity
from .channel import NakagamiParams, NoiseParams, sample_fading, sample_noise
from .constellation import Constellation, demap, make_constellation, modulate
from .detectors import (
    DetectionResult,
    OperationTally,
    jml_detect,
    jml_ops,
    ml_detect,
    sic_detect,
    sic_ops,
)
from .errors import ConfigurationError, DomainError, SimulationError
from .kernels import DEFAULT_BACKEND
from .phy import PowerAllocation, downlink_rx, superpose, uplink_rx
from .simulator import (
    BerRecord,
    Links,
    PhaseRecord,
    ScenarioConfig,
    run_phase_sweep,
    run_sweep,
    run_trial,
)

__version__ = "0.1.0"
