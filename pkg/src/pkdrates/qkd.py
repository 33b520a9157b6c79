"""Asymptotic key rates for the three QKD protocols.

* decoy-state BB84 with a weak coherent pulse source (infinite-decoy limit)
* BBM92 with an SPDC pair source, accidentals from uncorrelated singles
* BB84 with an ideal single-photon source
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .channel import (
    ChannelParams,
    DetectorNoise,
    NoiseYield,
    binary_entropy,
    NOISE_ERROR,
)

SIFT_TWO_BASIS = 0.5


@dataclass(frozen=True)
class ErrorCorrectionModel:
    """Reconciliation inefficiency: bits disclosed per bit of Shannon limit."""

    efficiency: float = 1.16

    def __post_init__(self):
        if not self.efficiency >= 1:
            raise ValueError(f"efficiency must be >= 1, got {self.efficiency!r}")


@dataclass(frozen=True)
class WcpDecoyParams:
    mu_signal: float = 0.8
    mu_decoy: float = 0.1
    p_signal: float = 0.5
    p_decoy: float = 0.25
    p_vacuum: float = 0.25
    misalignment_error: float = 0.0

    def __post_init__(self):
        if not self.mu_signal > self.mu_decoy >= 0:
            raise ValueError(
                f"need mu_signal > mu_decoy >= 0, got {self.mu_signal!r}, {self.mu_decoy!r}"
            )
        probs = (self.p_signal, self.p_decoy, self.p_vacuum)
        if any(not 0 <= p <= 1 for p in probs) or abs(sum(probs) - 1) > 1e-12:
            raise ValueError(f"state probabilities must sum to 1, got {probs!r}")
        if not 0 <= self.misalignment_error <= 0.5:
            raise ValueError(
                f"misalignment_error must lie in [0, 0.5], got {self.misalignment_error!r}"
            )


@dataclass(frozen=True)
class PairSourceParams:
    pair_rate: float = 1e8
    herald_efficiency: float = 0.25
    intrinsic_error: float = 0.0

    def __post_init__(self):
        if not self.pair_rate > 0:
            raise ValueError(f"pair_rate must be positive, got {self.pair_rate!r}")
        if not 0 <= self.herald_efficiency <= 1:
            raise ValueError(
                f"herald_efficiency must lie in [0, 1], got {self.herald_efficiency!r}"
            )
        if not 0 <= self.intrinsic_error <= 0.5:
            raise ValueError(
                f"intrinsic_error must lie in [0, 0.5], got {self.intrinsic_error!r}"
            )


@dataclass(frozen=True)
class RatePoint:
    """One evaluated operating point.

    ``clamped`` is set when the analytic secret fraction was negative and the
    rate was floored at zero.
    """

    protocol: str
    loss_db: float
    mu: Optional[float]
    qber: float
    bits_per_pulse: float
    bits_per_second: float
    clamped: bool = False

    def __post_init__(self):
        if not self.bits_per_pulse >= 0:
            raise ValueError(f"bits_per_pulse must be >= 0, got {self.bits_per_pulse!r}")
        if not 0 <= self.qber <= 0.5:
            raise ValueError(f"qber must lie in [0, 0.5], got {self.qber!r}")
        if self.clamped and self.bits_per_pulse != 0:
            raise ValueError("clamped points must carry zero rate")


def _clamp_qber(e: float) -> float:
    return min(max(e, 0.0), 0.5)


def _floor(value: float) -> tuple[float, bool]:
    if value < 0:
        return 0.0, True
    return value, False


class DecoyTerms(NamedTuple):
    gain: float
    error: float
    single_yield: float
    single_gain: float
    single_error: float


def decoy_bb84_terms(ch: ChannelParams, noise: NoiseYield, wcp: WcpDecoyParams) -> DecoyTerms:
    """Signal gain/error and infinite-decoy single-photon estimates."""
    eta = ch.eta
    mu = wcp.mu_signal
    y0, e0, e_det = noise.y0, noise.e0, wcp.misalignment_error
    signal_part = -math.expm1(-eta * mu)
    gain = signal_part + y0 * math.exp(-eta * mu)
    error = (e0 * y0 + e_det * signal_part) / gain if gain > 0 else 0.0
    y1 = y0 + eta - y0 * eta
    q1 = y1 * mu * math.exp(-mu)
    e1 = (e0 * y0 + e_det * eta) / y1 if y1 > 0 else 0.0
    return DecoyTerms(gain, error, y1, q1, e1)


def decoy_bb84_rate(
    ch: ChannelParams,
    noise: NoiseYield,
    wcp: WcpDecoyParams = WcpDecoyParams(),
    ec: ErrorCorrectionModel = ErrorCorrectionModel(),
) -> RatePoint:
    terms = decoy_bb84_terms(ch, noise, wcp)
    if terms.single_yield == 0:
        return RatePoint("decoy_bb84", ch.loss_db, wcp.mu_signal, 0.0, 0.0, 0.0)
    e_mu = _clamp_qber(terms.error)
    e1 = _clamp_qber(terms.single_error)
    fraction = terms.single_gain * (1 - binary_entropy(e1)) - terms.gain * ec.efficiency * binary_entropy(e_mu)
    fraction, clamped = _floor(fraction)
    bpp = SIFT_TWO_BASIS * wcp.p_signal * fraction
    return RatePoint(
        "decoy_bb84", ch.loss_db, wcp.mu_signal, e_mu, bpp, bpp * ch.source_rate, clamped
    )


class PairStatistics(NamedTuple):
    """Per-second count rates seen by a heralded pair link."""

    singles_source: float
    singles_receiver: float
    true_coincidences: float
    accidentals: float
    qber: float

    @property
    def coincidences(self) -> float:
        return self.true_coincidences + self.accidentals


def pair_statistics(
    ch: ChannelParams,
    noise_src: DetectorNoise,
    noise_rx: DetectorNoise,
    pair: PairSourceParams,
) -> PairStatistics:
    """Singles, true and accidental coincidence rates, and the resulting QBER.

    Accidentals are ``S1 * S2 * window``; each is an error with probability ½.
    """
    r = pair.pair_rate
    s1 = r * pair.herald_efficiency + noise_src.total_rate
    s2 = r * ch.eta + noise_rx.total_rate
    c = r * pair.herald_efficiency * ch.eta
    a = s1 * s2 * ch.gate_window
    total = c + a
    qber = (NOISE_ERROR * a + pair.intrinsic_error * c) / total if total > 0 else 0.0
    return PairStatistics(s1, s2, c, a, _clamp_qber(qber))


def bbm92_rate(
    ch: ChannelParams,
    noise_src: DetectorNoise,
    noise_rx: DetectorNoise,
    pair: PairSourceParams = PairSourceParams(),
    ec: ErrorCorrectionModel = ErrorCorrectionModel(),
) -> RatePoint:
    stats = pair_statistics(ch, noise_src, noise_rx, pair)
    if stats.coincidences == 0:
        return RatePoint("bbm92", ch.loss_db, None, 0.0, 0.0, 0.0)
    fraction, clamped = _floor(1 - (1 + ec.efficiency) * binary_entropy(stats.qber))
    bps = SIFT_TWO_BASIS * stats.coincidences * fraction
    return RatePoint(
        "bbm92", ch.loss_db, None, stats.qber, bps / pair.pair_rate, bps, clamped
    )


def single_photon_statistics(ch: ChannelParams, noise: NoiseYield) -> tuple[float, float]:
    """Click probability and error rate for one photon per pulse.

    Errors come only from noise clicks in pulses whose photon was lost.
    """
    eta = ch.eta
    gain = eta + noise.y0 * (1 - eta)
    error = noise.e0 * noise.y0 * (1 - eta) / gain if gain > 0 else 0.0
    return gain, _clamp_qber(error)


def sps_bb84_rate(
    ch: ChannelParams,
    noise: NoiseYield,
    ec: ErrorCorrectionModel = ErrorCorrectionModel(),
) -> RatePoint:
    gain, error = single_photon_statistics(ch, noise)
    if gain == 0:
        return RatePoint("sps_bb84", ch.loss_db, None, 0.0, 0.0, 0.0)
    h = binary_entropy(error)
    fraction, clamped = _floor(1 - ec.efficiency * h - h)
    bpp = SIFT_TWO_BASIS * gain * fraction
    return RatePoint(
        "sps_bb84", ch.loss_db, None, error, bpp, bpp * ch.source_rate, clamped
    )
