"""Service configuration with environment-variable overrides.

Every field can be overridden by an ``EVENTLINK_``-prefixed variable, e.g.
``EVENTLINK_PORT=9000`` or ``EVENTLINK_RELEVANCE_CAP=20``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, fields
from pathlib import Path

from .answer import DEFAULT_GENERATOR_TIMEOUT
from .query import INTENT_THRESHOLD
from .retrieval import RELEVANCE_CAP

ENV_PREFIX = "EVENTLINK_"

SAMPLE_QUERIES = [
    "Did Mats Hummels, Miroslav Klose, and Philipp Lahm meet?",
    "When did Pierre Curie and Marie Curie marry?",
    "Did Brad Pitt, George Clooney, and Tom Cruise all receive movie awards?",
    "Did Erwin Schrödinger meet Albert Einstein?",
]


def default_data_dir() -> Path:
    """The bundled desk-scale fixture dataset."""
    return Path(__file__).parent / "data"


@dataclass
class ServiceConfig:
    data_dir: Path = field(default_factory=default_data_dir)
    host: str = "127.0.0.1"
    port: int = 8000
    relevance_cap: int = RELEVANCE_CAP
    intent_threshold: float = INTENT_THRESHOLD
    generator_url: str | None = None
    generator_timeout: float = DEFAULT_GENERATOR_TIMEOUT
    clamp_to_lifespan: bool = False
    cors_origin: str = "*"

    def __post_init__(self):
        self.data_dir = Path(self.data_dir)
        if not 1 <= self.port <= 65535:
            raise ValueError(f"port out of range: {self.port}")
        if self.relevance_cap < 1:
            raise ValueError("relevance_cap must be >= 1")

    @classmethod
    def from_env(cls, environ: dict[str, str] | None = None, **overrides) -> ServiceConfig:
        env = os.environ if environ is None else environ
        values: dict = {}
        casts = {
            "data_dir": Path,
            "host": str,
            "port": int,
            "relevance_cap": int,
            "intent_threshold": float,
            "generator_url": str,
            "generator_timeout": float,
            "clamp_to_lifespan": lambda v: v.lower() in ("1", "true", "yes", "on"),
            "cors_origin": str,
        }
        for f in fields(cls):
            raw = env.get(ENV_PREFIX + f.name.upper())
            if raw is not None:
                values[f.name] = casts[f.name](raw)
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)
