"""
CLI settings, env-driven with desk-scale defaults.

Numeric tolerances and the default seed live in core/config.py; this module
only carries the front-end knobs.
"""

import os

import core  # noqa: F401  (puts the engine directories on sys.path)
from config import DEFAULT_SEED  # noqa: F401


def _int(name: str, default: int) -> int:
    try:
        return int(os.environ.get(name, default))
    except (TypeError, ValueError):
        return default


# Haar-random unitaries drawn by `noclone` before coordinate descent.
DEFAULT_TRIALS = _int("TRANSPROB_TRIALS", 10000)

# Where bare fixture names ("boolean_2x3", "pair_ab.json") are looked up.
FIXTURES_DIR = os.environ.get(
    "TRANSPROB_FIXTURES",
    os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "core", "data", "fixtures"),
)
