"""Flat ``key = value`` configuration files.

One key per line, ``#`` starts a comment, blank lines are ignored. Absent keys
take their defaults; unknown or repeated keys are errors.
"""
from __future__ import annotations

import dataclasses
from typing import Dict, Optional

from .sweep import SweepConfig


class ConfigError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None, key: Optional[str] = None):
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)
        self.line = line
        self.key = key


_FIELDS = {f.name: f for f in dataclasses.fields(SweepConfig)}


def _convert(key: str, raw: str):
    if key == "pa_model":
        return raw
    if key == "protocols":
        return tuple(p.strip() for p in raw.split(",") if p.strip())
    return float(raw)


def parse_config(text: str) -> SweepConfig:
    values: Dict[str, object] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        content = line.split("#", 1)[0].strip()
        if not content:
            continue
        key, sep, raw = content.partition("=")
        key, raw = key.strip(), raw.strip()
        if not sep or not key or not raw:
            raise ConfigError(f"expected 'key = value', got {line.strip()!r}", lineno)
        if key not in _FIELDS:
            raise ConfigError(f"unknown key {key!r}", lineno, key)
        if key in values:
            raise ConfigError(f"duplicate key {key!r}", lineno, key)
        try:
            values[key] = _convert(key, raw)
        except ValueError:
            raise ConfigError(f"{key}: cannot parse value {raw!r}", lineno, key) from None
    try:
        return SweepConfig(**values)
    except ValueError as exc:
        key = str(exc).split(":", 1)[0]
        raise ConfigError(str(exc), key=key if key in _FIELDS else None) from None


def format_config(cfg: SweepConfig) -> str:
    """Render ``cfg`` so that ``parse_config`` returns an equal object."""
    lines = []
    for name in _FIELDS:
        value = getattr(cfg, name)
        if name == "protocols":
            text = ",".join(value)
        elif isinstance(value, str):
            text = value
        else:
            text = repr(float(value))
        lines.append(f"{name} = {text}")
    return "\n".join(lines) + "\n"
