"""Link budget and detector noise.

Turns a scalar link loss and detector count rates into the per-window
probabilities that the protocol rate models consume.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

#: Error probability of a click caused by noise alone (basis-uncorrelated).
NOISE_ERROR = 0.5


def db_to_transmissivity(loss_db: float) -> float:
    """Linear transmission probability for a loss given in dB.

    >>> db_to_transmissivity(20.0)
    0.01
    """
    if not loss_db >= 0:
        raise ValueError(f"loss_db must be non-negative, got {loss_db!r}")
    return 10.0 ** (-loss_db / 10.0)


def transmissivity_to_db(t: float) -> float:
    if not 0 < t <= 1:
        raise ValueError(f"transmissivity must lie in (0, 1], got {t!r}")
    return -10.0 * math.log10(t)


@dataclass(frozen=True)
class ChannelParams:
    """Optical channel between transmitter and receiver detector.

    ``loss_db`` is the total link loss excluding the receiver detector's
    quantum efficiency, which is applied separately as
    ``detector_efficiency``.
    """

    loss_db: float = 20.0
    detector_efficiency: float = 1.0
    gate_window: float = 1e-9
    source_rate: float = 1e8

    def __post_init__(self):
        if not self.loss_db >= 0:
            raise ValueError(f"loss_db must be non-negative, got {self.loss_db!r}")
        if not 0 <= self.detector_efficiency <= 1:
            raise ValueError(
                f"detector_efficiency must lie in [0, 1], got {self.detector_efficiency!r}"
            )
        if not self.gate_window > 0:
            raise ValueError(f"gate_window must be positive, got {self.gate_window!r}")
        if not self.source_rate > 0:
            raise ValueError(f"source_rate must be positive, got {self.source_rate!r}")
        if db_to_transmissivity(self.loss_db) <= 0:
            raise ValueError(f"loss_db={self.loss_db!r} underflows the transmissivity")

    @property
    def transmissivity(self) -> float:
        return db_to_transmissivity(self.loss_db)

    @property
    def eta(self) -> float:
        """Overall probability that a transmitted photon produces a click."""
        return self.transmissivity * self.detector_efficiency


@dataclass(frozen=True)
class DetectorNoise:
    """Dark and background count rates (counts/s) at one detector site."""

    dark_rate: float = 0.0
    background_rate: float = 0.0

    def __post_init__(self):
        if not self.dark_rate >= 0:
            raise ValueError(f"dark_rate must be non-negative, got {self.dark_rate!r}")
        if not self.background_rate >= 0:
            raise ValueError(
                f"background_rate must be non-negative, got {self.background_rate!r}"
            )

    @property
    def total_rate(self) -> float:
        return self.dark_rate + self.background_rate


@dataclass(frozen=True)
class NoiseYield:
    """Probability of a noise click within one gate window, and its error rate."""

    y0: float
    e0: float = NOISE_ERROR

    def __post_init__(self):
        if not 0 <= self.y0 <= 1:
            raise ValueError(f"y0 must lie in [0, 1], got {self.y0!r}")
        if self.e0 != NOISE_ERROR:
            raise ValueError(f"e0 is fixed at {NOISE_ERROR}, got {self.e0!r}")


def noise_yield(noise: DetectorNoise, gate_window: float) -> NoiseYield:
    """Noise click probability per gate; saturates at 1 instead of failing."""
    if not gate_window > 0:
        raise ValueError(f"gate_window must be positive, got {gate_window!r}")
    return NoiseYield(y0=min(1.0, noise.total_rate * gate_window))


def binary_entropy(x: float) -> float:
    """Shannon entropy of a Bernoulli(x) variable in bits, with 0*log2(0) = 0."""
    if not 0 <= x <= 1:
        raise ValueError(f"binary_entropy argument must lie in [0, 1], got {x!r}")
    if x == 0 or x == 1:
        return 0.0
    return -x * math.log2(x) - (1 - x) * math.log2(1 - x)


# Reference scenario: space detectors 15k dark cps, ground 2.5k dark + 1k background.
SPACE_NOISE = DetectorNoise(dark_rate=15_000.0)
GROUND_NOISE = DetectorNoise(dark_rate=2_500.0, background_rate=1_000.0)
