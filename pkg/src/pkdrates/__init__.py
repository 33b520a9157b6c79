"""Secret-key rates for QKD and photon key distribution over lossy links."""

__version__ = "0.1.0"

from .channel import (
    GROUND_NOISE,
    SPACE_NOISE,
    ChannelParams,
    DetectorNoise,
    NoiseYield,
    binary_entropy,
    db_to_transmissivity,
    noise_yield,
    transmissivity_to_db,
)
from .optimize import OptimizationError, OptimizeSpec, optimize_mu
from .pkd import PpmPkdParams, heralded_pkd_rate, ppm_pkd_rate, sps_pkd_rate
from .qkd import (
    ErrorCorrectionModel,
    PairSourceParams,
    RatePoint,
    WcpDecoyParams,
    bbm92_rate,
    decoy_bb84_rate,
    sps_bb84_rate,
)
from .sweep import PROTOCOLS, SweepConfig, SweepResult, evaluate_point, run_sweep

__all__ = [
    "ChannelParams", "DetectorNoise", "NoiseYield", "SPACE_NOISE", "GROUND_NOISE",
    "binary_entropy", "db_to_transmissivity", "noise_yield", "transmissivity_to_db",
    "OptimizationError", "OptimizeSpec", "optimize_mu",
    "PpmPkdParams", "heralded_pkd_rate", "ppm_pkd_rate", "sps_pkd_rate",
    "ErrorCorrectionModel", "PairSourceParams", "RatePoint", "WcpDecoyParams",
    "bbm92_rate", "decoy_bb84_rate", "sps_bb84_rate",
    "PROTOCOLS", "SweepConfig", "SweepResult", "evaluate_point", "run_sweep",
]
