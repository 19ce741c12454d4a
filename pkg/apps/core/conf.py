"""
Typed access to the ``HYPSYS`` settings block.
"""
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional

from django.conf import settings


@dataclass(frozen=True)
class EngineSettings:
    precision_bits: int = 1024
    threads: int = 1
    max_depth: Optional[int] = None
    time_budget: Optional[float] = None
    zrl_budget: int = 10_000
    dedup_width: Fraction = Fraction(1, 10 ** 30)
    display_width: Fraction = Fraction(1, 10 ** 12)

    def as_dict(self):
        return {
            'precision_bits': self.precision_bits,
            'threads': self.threads,
            'max_depth': self.max_depth,
            'time_budget': self.time_budget,
            'zrl_budget': self.zrl_budget,
            'dedup_width': str(self.dedup_width),
            'display_width': str(self.display_width),
        }


def _width(value):
    return value if isinstance(value, Fraction) else Fraction(str(value))


def get_engine_settings(**overrides):
    """
    Engine settings from ``settings.HYPSYS`` with non-None overrides applied.
    """
    raw = getattr(settings, 'HYPSYS', {})
    base = EngineSettings(
        precision_bits=int(raw.get('PRECISION_BITS', 1024)),
        threads=int(raw.get('THREADS', 1)),
        max_depth=raw.get('MAX_DEPTH'),
        time_budget=raw.get('TIME_BUDGET'),
        zrl_budget=int(raw.get('ZRL_BUDGET', 10_000)),
        dedup_width=_width(raw.get('DEDUP_WIDTH', '1e-30')),
        display_width=_width(raw.get('DISPLAY_WIDTH', '1e-12')),
    )
    overrides = {key: value for key, value in overrides.items() if value is not None}
    for key in ('dedup_width', 'display_width'):
        if key in overrides:
            overrides[key] = _width(overrides[key])
    return replace(base, **overrides)
