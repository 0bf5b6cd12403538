"""
Registry of transition-probability paths.

Every path takes two projections (p, q) and returns a TransitionResult with the
same shape, so the CLI and the cross-checks can run any of them by name on the
same inputs.

"algebraic" ({p,q,p} = s p via the Jordan triple product) is the baseline: it
is the definition, and the only path that runs on H_3(O). "oracle" compresses q
to range(p) in a matrix representation and raises OracleUnavailable on
octonionic input. Add a path by writing a function (p, q) -> TransitionResult
and registering it here.
"""

from transition import transition_oracle, transition_probability

PATHS = {
    "algebraic": transition_probability,
    "oracle": transition_oracle,
}

BASELINE = "algebraic"


def register(name: str, path_fn) -> None:
    PATHS[name] = path_fn


def run(name: str, p, q):
    try:
        fn = PATHS[name]
    except KeyError:
        raise ValueError(f"unknown path {name!r}; known: {sorted(PATHS)}") from None
    return fn(p, q)
