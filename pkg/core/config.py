"""
Numeric policy for the engine, env-driven with defaults that suit desk-scale
instances (matrices up to ~12x12, exact rationals where the inputs allow).

Every tolerance below applies to FLOATING mode only. In exact-rational mode the
engine compares against zero exactly and these values are never consulted.

Relative tolerances are scaled by max(1, norm of the reference element), so a
projection of rank 5 gets the same relative slack as one of rank 1.
"""

import os


def _float(name: str, default: float) -> float:
    try:
        return float(os.environ.get(name, default))
    except (TypeError, ValueError):
        return default


def _int(name: str, default: int) -> int:
    try:
        return int(os.environ.get(name, default))
    except (TypeError, ValueError):
        return default


# Idempotence (p o p = p), order (p o q = p), orthogonality (p o q = 0) and
# operator-commutation checks on projections.
EPS_PROJ = _float("TRANSPROB_EPS_PROJ", 1e-8)

# Existence of P(q|p): ||{p,q,p} - s p|| <= EPS_TP * ||p||.
EPS_TP = _float("TRANSPROB_EPS_TP", 1e-8)

# Gap max - min of mu(q) over {mu(p) = 1} when the declared states carry floats.
EPS_LP = _float("TRANSPROB_EPS_LP", 1e-9)

# Spread of the compression eigenvalues for the spectral oracle to call them equal.
EPS_ORACLE = _float("TRANSPROB_EPS_ORACLE", 1e-9)

# A symmetry v is only reported if ||v o v - I|| and ||{v,p,v} - q|| are below this.
SYMMETRY_TOL = _float("TRANSPROB_SYMMETRY_TOL", 1e-7)

# Subalgebra closure: singular values below RANK_RTOL * sigma_max count as zero.
RANK_RTOL = _float("TRANSPROB_RANK_RTOL", 1e-9)

# Hermitian-ness of float input (entry(i,j) vs conj(entry(j,i))), relative.
EPS_HERMITIAN = _float("TRANSPROB_EPS_HERMITIAN", 1e-9)

# Cloning-condition residual below which a unitary counts as a cloner.
CLONE_TOL = _float("TRANSPROB_CLONE_TOL", 1e-7)

# Significant digits for every float in a rendered report.
SIG_DIGITS = _int("TRANSPROB_SIG_DIGITS", 12)

# Seed for every randomized run (generators without u, noclone, selftest).
# Reports echo it back.
DEFAULT_SEED = _int("TRANSPROB_SEED", 42)
