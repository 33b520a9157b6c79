"""Analytic-vs-simulated comparison behind ``pkdrates mc-validate``."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List

from .channel import noise_yield
from .montecarlo import (
    RNG_ALGORITHM,
    McConfig,
    McEstimate,
    simulate_pairs,
    simulate_sps,
    simulate_wcp,
)
from .pkd import ppm_qber
from .qkd import decoy_bb84_terms, pair_statistics, single_photon_statistics
from .sweep import PROTOCOLS, SweepConfig, optimize_ppm

Z_LIMIT = 3.0


@dataclass(frozen=True)
class ValidationRow:
    quantity: str
    analytic: float
    empirical: float
    se: float
    z: float
    n_events: int

    @property
    def passed(self) -> bool:
        return abs(self.z) <= Z_LIMIT


def _z(empirical: float, analytic: float, se: float) -> float:
    if se > 0:
        return (empirical - analytic) / se
    return 0.0 if empirical == analytic else math.inf


def compare(est: McEstimate, gain: float, qber: float) -> List[ValidationRow]:
    """z-scores use standard errors evaluated at the analytic values."""
    gain_se = math.sqrt(gain * (1 - gain) / est.n_trials)
    rows = [ValidationRow("gain", gain, est.gain_hat, gain_se, _z(est.gain_hat, gain, gain_se), est.n_trials)]
    if est.n_clicks:
        qber_se = math.sqrt(qber * (1 - qber) / est.n_clicks)
        z = _z(est.qber_hat, qber, qber_se)
    else:
        qber_se, z = math.nan, 0.0  # no clicks: nothing to compare
    rows.append(ValidationRow("qber", qber, est.qber_hat, qber_se, z, est.n_clicks))
    return rows


def validate(
    protocol: str, loss_db: float, n: int, seed: int, cfg: SweepConfig = SweepConfig()
) -> List[ValidationRow]:
    """Simulate ``n`` pulses (or coincidence windows) and compare with the closed forms."""
    if protocol not in PROTOCOLS:
        raise ValueError(f"unknown protocol {protocol!r}; known: {', '.join(PROTOCOLS)}")
    ch = cfg.channel(loss_db)
    ground = noise_yield(cfg.ground_noise, ch.gate_window)
    if protocol == "decoy_bb84":
        terms = decoy_bb84_terms(ch, ground, cfg.wcp)
        est = simulate_wcp(McConfig(n, seed, "wcp"), ch, ground, cfg.mu_signal)
        return compare(est, terms.gain, terms.error)
    if protocol == "ppm_pkd":
        point, _ = optimize_ppm(loss_db, cfg)
        gain = point.mu * ch.eta + ground.y0
        est = simulate_wcp(McConfig(n, seed, "wcp"), ch, ground, point.mu)
        return compare(est, gain, ppm_qber(point.mu, ch, ground))
    if protocol in ("bbm92", "heralded_pkd"):
        stats = pair_statistics(ch, cfg.space_noise, cfg.ground_noise, cfg.pair)
        est = simulate_pairs(McConfig(n, seed, "pair"), ch, cfg.pair, cfg.space_noise, cfg.ground_noise)
        return compare(est, stats.coincidences * ch.gate_window, stats.qber)
    gain, error = single_photon_statistics(ch, ground)
    est = simulate_sps(McConfig(n, seed, "sps"), ch, ground)
    return compare(est, gain, error)


def format_table(
    protocol: str, loss_db: float, n: int, seed: int, rows: List[ValidationRow]
) -> str:
    lines = [
        f"mc-validate protocol={protocol} loss_db={loss_db!r} n={n} seed={seed} rng={RNG_ALGORITHM}",
        f"{'quantity':<8} {'analytic':>14} {'empirical':>14} {'std_err':>12} {'z':>8} {'events':>10}  result",
    ]
    for r in rows:
        lines.append(
            f"{r.quantity:<8} {r.analytic:>14.6e} {r.empirical:>14.6e} {r.se:>12.4e} "
            f"{r.z:>8.3f} {r.n_events:>10d}  {'PASS' if r.passed else 'FAIL'}"
        )
    verdict = "PASS" if all(r.passed for r in rows) else "FAIL"
    lines.append(f"overall: {verdict} (|z| <= {Z_LIMIT:g})")
    return "\n".join(lines) + "\n"
