"""Photon-level Monte-Carlo simulation of clicks and errors.

Used as an independent check on the closed-form gains and error rates.
Random numbers come from numpy's PCG64 generator seeded with ``seed`` and
consumed in fixed-size chunks, so results are reproducible across runs and
machines with the same numpy.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import ChannelParams, DetectorNoise, NoiseYield
from .qkd import PairSourceParams

RNG_ALGORITHM = "PCG64"
SCENARIOS = ("wcp", "pair", "sps")
CHUNK = 1 << 20
MAX_PAIRS_PER_WINDOW = 0.1


@dataclass(frozen=True)
class McConfig:
    n_pulses: int
    seed: int = 0
    scenario: str = "wcp"

    def __post_init__(self):
        if self.n_pulses < 1:
            raise ValueError(f"n_pulses must be >= 1, got {self.n_pulses!r}")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")
        if self.scenario not in SCENARIOS:
            raise ValueError(f"scenario must be one of {SCENARIOS}, got {self.scenario!r}")


@dataclass(frozen=True)
class McEstimate:
    """Empirical click probability per trial and error fraction among clicks."""

    gain_hat: float
    gain_se: float
    qber_hat: float
    qber_se: float
    n_clicks: int
    n_errors: int
    n_trials: int


def _estimate(clicks: int, errors: int, n: int) -> McEstimate:
    gain = clicks / n
    gain_se = math.sqrt(gain * (1 - gain) / n)
    if clicks:
        qber = errors / clicks
        qber_se = math.sqrt(qber * (1 - qber) / clicks)
    else:
        qber, qber_se = 0.0, 0.0
    return McEstimate(gain, gain_se, qber, qber_se, clicks, errors, n)


def _chunks(n: int):
    done = 0
    while done < n:
        m = min(CHUNK, n - done)
        yield m
        done += m


def _check(cfg: McConfig, scenario: str):
    if cfg.scenario != scenario:
        raise ValueError(f"config scenario is {cfg.scenario!r}, expected {scenario!r}")


def simulate_wcp(
    cfg: McConfig,
    ch: ChannelParams,
    noise: NoiseYield,
    mu: float,
    misalignment_error: float = 0.0,
) -> McEstimate:
    """Poisson photon number, independent photon survival, Bernoulli noise click."""
    _check(cfg, "wcp")
    if not mu >= 0:
        raise ValueError(f"mu must be non-negative, got {mu!r}")
    rng = np.random.Generator(np.random.PCG64(cfg.seed))
    eta = ch.eta
    clicks = errors = 0
    for m in _chunks(cfg.n_pulses):
        photons = rng.poisson(mu, m)
        signal = rng.binomial(photons, eta) > 0
        dark = rng.random(m) < noise.y0
        u = rng.random(m)
        wrong = np.where(signal, u < misalignment_error, dark & (u < noise.e0))
        clicks += int(np.count_nonzero(signal | dark))
        errors += int(np.count_nonzero(wrong))
    return _estimate(clicks, errors, cfg.n_pulses)


def simulate_sps(cfg: McConfig, ch: ChannelParams, noise: NoiseYield) -> McEstimate:
    """Exactly one photon per pulse."""
    _check(cfg, "sps")
    rng = np.random.Generator(np.random.PCG64(cfg.seed))
    eta = ch.eta
    clicks = errors = 0
    for m in _chunks(cfg.n_pulses):
        signal = rng.random(m) < eta
        dark = rng.random(m) < noise.y0
        u = rng.random(m)
        wrong = ~signal & dark & (u < noise.e0)
        clicks += int(np.count_nonzero(signal | dark))
        errors += int(np.count_nonzero(wrong))
    return _estimate(clicks, errors, cfg.n_pulses)


def simulate_pairs(
    cfg: McConfig,
    ch: ChannelParams,
    pair: PairSourceParams,
    noise_src: DetectorNoise,
    noise_rx: DetectorNoise,
) -> McEstimate:
    """Coincidence counting over ``n_pulses`` windows of width ``gate_window``.

    In each window a genuine pair is detected at both ends with probability
    ``r_p * tau * eta_s * eta``. Independently, each side fires an unrelated
    click with probability ``S * tau`` from its singles rate; when both sides
    fire the coincidence is accidental and wrong half the time.
    """
    _check(cfg, "pair")
    tau = ch.gate_window
    if pair.pair_rate * tau > MAX_PAIRS_PER_WINDOW * (1 + 1e-12):
        raise ValueError(
            f"pair_rate * window = {pair.pair_rate * tau!r} exceeds {MAX_PAIRS_PER_WINDOW}; "
            "multi-pair windows are outside the simulation model"
        )
    eta = ch.eta
    s1 = pair.pair_rate * pair.herald_efficiency + noise_src.total_rate
    s2 = pair.pair_rate * eta + noise_rx.total_rate
    p_true = pair.pair_rate * tau * pair.herald_efficiency * eta
    p1, p2 = min(1.0, s1 * tau), min(1.0, s2 * tau)

    rng = np.random.Generator(np.random.PCG64(cfg.seed))
    clicks = errors = 0
    for m in _chunks(cfg.n_pulses):
        true = rng.random(m) < p_true
        acc = (rng.random(m) < p1) & (rng.random(m) < p2)
        true_wrong = true & (rng.random(m) < pair.intrinsic_error)
        acc_wrong = acc & (rng.random(m) < 0.5)
        clicks += int(np.count_nonzero(true)) + int(np.count_nonzero(acc))
        errors += int(np.count_nonzero(true_wrong)) + int(np.count_nonzero(acc_wrong))
    return _estimate(clicks, errors, cfg.n_pulses)
