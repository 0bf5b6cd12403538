"""Shared pytest bootstrap.

The test modules import the engine by bare module name (``from jordan import
...``, ``from omp import ...``). core/ is split into algebra/, logic/,
transition/, omp/, cloning/ and tooling/ with config.py left at the core/
root. Putting all of those directories on sys.path here, before any test
module is collected, keeps every bare import resolving regardless of which
submodule a file lives in. The repo root goes on too, for ``cli``.
"""

import os
import sys

_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
_CORE = os.path.join(_ROOT, "core")
_DIRS = [_ROOT, _CORE] + [os.path.join(_CORE, d) for d in ("algebra", "logic", "transition", "omp", "cloning", "tooling")]
for _p in _DIRS:
    if _p not in sys.path:
        sys.path.insert(0, _p)
