"""Key rates for photon key distribution (no active man-in-the-middle).

PKD uses a single encoding basis, so nothing is lost to sifting, and
privacy amplification is charged only against multi-photon emission.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Dict

from .channel import ChannelParams, DetectorNoise, NoiseYield, binary_entropy
from .qkd import (
    ErrorCorrectionModel,
    PairSourceParams,
    RatePoint,
    pair_statistics,
    single_photon_statistics,
)


def zeta_exp2(zeta: float) -> float:
    """Multi-photon privacy amplification factor ``zeta * exp(-2 zeta)``."""
    return zeta * math.exp(-2.0 * zeta)


PA_MODELS: Dict[str, Callable[[float], float]] = {"zeta_exp2": zeta_exp2}


def register_pa_model(name: str, fn: Callable[[float], float]) -> None:
    """Make an alternative privacy-amplification factor available by name."""
    PA_MODELS[name] = fn


@dataclass(frozen=True)
class PpmPkdParams:
    """``zeta = mu * (1 - t)``; the photon number is recovered per channel."""

    zeta: float = 0.5
    pa_model: str = "zeta_exp2"

    def __post_init__(self):
        if not self.zeta >= 0:
            raise ValueError(f"zeta must be non-negative, got {self.zeta!r}")
        if self.pa_model not in PA_MODELS:
            raise ValueError(
                f"unknown pa_model {self.pa_model!r}; known: {sorted(PA_MODELS)}"
            )

    def mu(self, t: float) -> float:
        return self.zeta / (1.0 - t)


def ppm_qber(mu: float, ch: ChannelParams, noise: NoiseYield) -> float:
    """Noise click landing in the wrong time bin, weight e0."""
    p_click = mu * ch.eta
    total = p_click + noise.y0
    if total == 0:
        return 0.0
    return min(max(noise.e0 * noise.y0 / total, 0.0), 0.5)


def ppm_pkd_rate(
    ch: ChannelParams,
    noise: NoiseYield,
    p: PpmPkdParams = PpmPkdParams(),
    ec: ErrorCorrectionModel = ErrorCorrectionModel(),
) -> RatePoint:
    """PPM-encoded weak coherent pulses without decoys.

    ``R = g(zeta) * t/(1-t) * eta_det * (1 - f_E H2(QBER)) * f_source``
    """
    t = ch.transmissivity
    if t >= 1:
        raise ValueError("ppm_pkd_rate needs a lossy channel (loss_db > 0)")
    mu = p.mu(t)
    qber = ppm_qber(mu, ch, noise)
    correction = 1 - binary_entropy(qber) * ec.efficiency
    g = PA_MODELS[p.pa_model](p.zeta)
    clamped = correction <= 0
    if clamped:
        bps = 0.0
    else:
        bps = g * t / (1 - t) * ch.detector_efficiency * correction * ch.source_rate
    return RatePoint(
        "ppm_pkd", ch.loss_db, mu, qber, bps / ch.source_rate, bps, clamped
    )


def heralded_pkd_rate(
    ch: ChannelParams,
    noise_src: DetectorNoise,
    noise_rx: DetectorNoise,
    pair: PairSourceParams = PairSourceParams(),
    ec: ErrorCorrectionModel = ErrorCorrectionModel(),
) -> RatePoint:
    """Heralded single-basis pairs: same counts as BBM92, error correction only."""
    stats = pair_statistics(ch, noise_src, noise_rx, pair)
    if stats.coincidences == 0:
        return RatePoint("heralded_pkd", ch.loss_db, None, 0.0, 0.0, 0.0)
    fraction = 1 - ec.efficiency * binary_entropy(stats.qber)
    clamped = fraction < 0
    bps = 0.0 if clamped else stats.coincidences * fraction
    return RatePoint(
        "heralded_pkd", ch.loss_db, None, stats.qber, bps / pair.pair_rate, bps, clamped
    )


def sps_pkd_rate(
    ch: ChannelParams,
    noise: NoiseYield,
    ec: ErrorCorrectionModel = ErrorCorrectionModel(),
) -> RatePoint:
    gain, error = single_photon_statistics(ch, noise)
    if gain == 0:
        return RatePoint("sps_pkd", ch.loss_db, None, 0.0, 0.0, 0.0)
    fraction = 1 - ec.efficiency * binary_entropy(error)
    clamped = fraction < 0
    bpp = 0.0 if clamped else gain * fraction
    return RatePoint(
        "sps_pkd", ch.loss_db, None, error, bpp, bpp * ch.source_rate, clamped
    )
