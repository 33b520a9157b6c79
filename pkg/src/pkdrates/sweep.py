"""Loss sweeps over all six protocols with per-point photon-number optimisation."""
from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Any, Dict, List, Tuple

from .channel import ChannelParams, DetectorNoise, noise_yield
from .optimize import OptimizeSpec, optimize_mu
from .pkd import PA_MODELS, PpmPkdParams, heralded_pkd_rate, ppm_pkd_rate, sps_pkd_rate
from .qkd import (
    ErrorCorrectionModel,
    PairSourceParams,
    RatePoint,
    WcpDecoyParams,
    bbm92_rate,
    decoy_bb84_rate,
    sps_bb84_rate,
)

PROTOCOLS: Tuple[str, ...] = (
    "decoy_bb84",
    "bbm92",
    "sps_bb84",
    "ppm_pkd",
    "heralded_pkd",
    "sps_pkd",
)
QKD_TO_PKD = {"decoy_bb84": "ppm_pkd", "bbm92": "heralded_pkd", "sps_bb84": "sps_pkd"}


class SweepError(RuntimeError):
    def __init__(self, protocol: str, loss_db: float, cause: Exception):
        super().__init__(f"evaluation failed for {protocol} at {loss_db!r} dB: {cause}")
        self.protocol = protocol
        self.loss_db = loss_db


@dataclass(frozen=True)
class SweepConfig:
    """Every tunable of a sweep; defaults describe a satellite downlink
    (WCP at 0.8 photons, 1e8 pairs/s, pessimistic detector noise).

    Source-side (heralding) detectors are in space, the receiver is on the
    ground.
    """

    loss_start_db: float = 20.0
    loss_stop_db: float = 70.0
    loss_step_db: float = 1.0
    mu_signal: float = 0.8
    mu_decoy: float = 0.1
    p_signal: float = 0.5
    p_decoy: float = 0.25
    p_vacuum: float = 0.25
    pair_rate: float = 1e8
    herald_efficiency: float = 0.25
    intrinsic_error: float = 0.0
    tau_s: float = 1e-9
    dark_space: float = 15_000.0
    dark_ground: float = 2_500.0
    background_ground: float = 1_000.0
    detector_efficiency: float = 1.0
    f_ec: float = 1.16
    source_rate: float = 1e8
    pa_model: str = "zeta_exp2"
    opt_lower: float = 0.0
    opt_upper: float = 2.0
    opt_tol: float = 1e-6
    protocols: Tuple[str, ...] = PROTOCOLS

    def __post_init__(self):
        def need(ok: bool, key: str, why: str):
            if not ok:
                raise ValueError(f"{key}: {why} (got {getattr(self, key)!r})")

        for key in (f.name for f in dataclasses.fields(self)):
            value = getattr(self, key)
            if isinstance(value, float):
                need(math.isfinite(value), key, "must be finite")
        need(self.loss_start_db >= 0, "loss_start_db", "must be >= 0")
        need(self.loss_stop_db >= self.loss_start_db, "loss_stop_db", "must be >= loss_start_db")
        need(self.loss_step_db > 0, "loss_step_db", "must be > 0")
        need(self.mu_decoy >= 0, "mu_decoy", "must be >= 0")
        need(self.mu_signal > self.mu_decoy, "mu_signal", "must exceed mu_decoy")
        for key in ("p_signal", "p_decoy", "p_vacuum", "herald_efficiency", "detector_efficiency"):
            need(0 <= getattr(self, key) <= 1, key, "must lie in [0, 1]")
        need(
            abs(self.p_signal + self.p_decoy + self.p_vacuum - 1) <= 1e-12,
            "p_vacuum",
            "p_signal + p_decoy + p_vacuum must equal 1",
        )
        need(self.pair_rate > 0, "pair_rate", "must be > 0")
        need(0 <= self.intrinsic_error <= 0.5, "intrinsic_error", "must lie in [0, 0.5]")
        need(self.tau_s > 0, "tau_s", "must be > 0")
        for key in ("dark_space", "dark_ground", "background_ground"):
            need(getattr(self, key) >= 0, key, "must be >= 0")
        need(self.f_ec >= 1, "f_ec", "must be >= 1")
        need(self.source_rate > 0, "source_rate", "must be > 0")
        need(self.pa_model in PA_MODELS, "pa_model", f"must be one of {sorted(PA_MODELS)}")
        need(self.opt_upper > self.opt_lower, "opt_upper", "must exceed opt_lower")
        need(self.opt_lower >= 0, "opt_lower", "must be >= 0")
        need(self.opt_tol > 0, "opt_tol", "must be > 0")
        need(len(self.protocols) > 0, "protocols", "must not be empty")
        unknown = [p for p in self.protocols if p not in PROTOCOLS]
        need(not unknown, "protocols", f"unknown identifiers {unknown}")
        need(len(set(self.protocols)) == len(self.protocols), "protocols", "duplicates")

    # component builders
    def channel(self, loss_db: float) -> ChannelParams:
        return ChannelParams(
            loss_db=loss_db,
            detector_efficiency=self.detector_efficiency,
            gate_window=self.tau_s,
            source_rate=self.source_rate,
        )

    @property
    def space_noise(self) -> DetectorNoise:
        return DetectorNoise(dark_rate=self.dark_space)

    @property
    def ground_noise(self) -> DetectorNoise:
        return DetectorNoise(dark_rate=self.dark_ground, background_rate=self.background_ground)

    @property
    def wcp(self) -> WcpDecoyParams:
        return WcpDecoyParams(
            self.mu_signal, self.mu_decoy, self.p_signal, self.p_decoy, self.p_vacuum
        )

    @property
    def pair(self) -> PairSourceParams:
        return PairSourceParams(self.pair_rate, self.herald_efficiency, self.intrinsic_error)

    @property
    def ec(self) -> ErrorCorrectionModel:
        return ErrorCorrectionModel(self.f_ec)

    @property
    def optimize_spec(self) -> OptimizeSpec:
        return OptimizeSpec(self.opt_lower, self.opt_upper, self.opt_tol)

    def loss_grid(self) -> List[float]:
        """Start, start + step, ... up to stop (inclusive within 1e-9 dB)."""
        n = int(math.floor((self.loss_stop_db - self.loss_start_db) / self.loss_step_db + 1e-9)) + 1
        return [round(self.loss_start_db + i * self.loss_step_db, 10) for i in range(n)]


def optimize_ppm(loss_db: float, cfg: SweepConfig = SweepConfig()) -> Tuple[RatePoint, float]:
    """Best PPM PKD operating point at one loss; returns the point and its zeta.

    The search runs over ``zeta`` in ``[opt_lower, opt_upper]``; the reported
    ``mu`` is ``zeta / (1 - t)``.
    """
    ch = cfg.channel(loss_db)
    ny = noise_yield(cfg.ground_noise, ch.gate_window)
    ec = cfg.ec

    def rate(zeta: float) -> float:
        return ppm_pkd_rate(ch, ny, PpmPkdParams(zeta, cfg.pa_model), ec).bits_per_pulse

    zeta, _ = optimize_mu(rate, cfg.optimize_spec)
    return ppm_pkd_rate(ch, ny, PpmPkdParams(zeta, cfg.pa_model), ec), zeta


def evaluate_point(protocol: str, loss_db: float, cfg: SweepConfig = SweepConfig()) -> RatePoint:
    ch = cfg.channel(loss_db)
    ground = noise_yield(cfg.ground_noise, ch.gate_window)
    if protocol == "decoy_bb84":
        return decoy_bb84_rate(ch, ground, cfg.wcp, cfg.ec)
    if protocol == "bbm92":
        return bbm92_rate(ch, cfg.space_noise, cfg.ground_noise, cfg.pair, cfg.ec)
    if protocol == "sps_bb84":
        return sps_bb84_rate(ch, ground, cfg.ec)
    if protocol == "ppm_pkd":
        return optimize_ppm(loss_db, cfg)[0]
    if protocol == "heralded_pkd":
        return heralded_pkd_rate(ch, cfg.space_noise, cfg.ground_noise, cfg.pair, cfg.ec)
    if protocol == "sps_pkd":
        return sps_pkd_rate(ch, ground, cfg.ec)
    raise ValueError(f"unknown protocol {protocol!r}; known: {', '.join(PROTOCOLS)}")


@dataclass
class SweepResult:
    points: List[RatePoint]
    metadata: Dict[str, Any] = field(default_factory=dict)

    def for_protocol(self, protocol: str) -> List[RatePoint]:
        return [p for p in self.points if p.protocol == protocol]


def run_sweep(cfg: SweepConfig = SweepConfig()) -> SweepResult:
    """Evaluate every configured protocol on the loss grid.

    Points are ordered by protocol (in ``PROTOCOLS`` order) then by loss.
    """
    from . import __version__

    points = []
    for protocol in sorted(cfg.protocols, key=PROTOCOLS.index):
        for loss in cfg.loss_grid():
            try:
                points.append(evaluate_point(protocol, loss, cfg))
            except Exception as exc:  # noqa: BLE001 - re-raised with the cell
                raise SweepError(protocol, loss, exc) from exc
    metadata = {
        "config": dataclasses.asdict(cfg),
        "version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(),
    }
    return SweepResult(points, metadata)
