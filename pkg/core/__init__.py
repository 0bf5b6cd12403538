"""transprob core engine.

The engine is split into submodules:

  * core/algebra/    -- division rings (R, C, H, O) and Hermitian Jordan algebras
  * core/logic/      -- the projection lattice of a Jordan algebra
  * core/transition/ -- transition probability, its oracle, isoclinic analysis,
                        decomposition, classification, and the example generators
  * core/omp/        -- abstract finite orthomodular posets and the exact simplex
  * core/cloning/    -- product rule and no-cloning verification harness
  * core/tooling/    -- report rendering and the selftest suite runner

config.py (tolerances, read from the environment) stays at the core/ root.

Every module imports its siblings by bare name (``from jordan import ...``,
``from config import EPS_PROJ``). Importing this package puts core/ and each
submodule directory on sys.path, so that works unchanged from the cli/ front
end, from pytest, and from ``python -m core.<sub>.<module>`` runs.
"""

import os
import sys

_HERE = os.path.dirname(os.path.abspath(__file__))
for _p in (_HERE, *(os.path.join(_HERE, _d) for _d in ("algebra", "logic", "transition", "omp", "cloning", "tooling"))):
    if _p not in sys.path:
        sys.path.insert(0, _p)
