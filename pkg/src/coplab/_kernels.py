"""Kernel selection: compiled extension when importable, else pure Python.

Set COPLAB_FORCE_PYTHON=1 to force the fallback (used by parity tests and
the benchmark).
"""

import os

if os.environ.get("COPLAB_FORCE_PYTHON") == "1":
    from ._core_py import BACKEND, solve_game
else:
    try:
        from ._core import BACKEND, solve_game  # type: ignore[attr-defined]
    except ImportError:
        from ._core_py import BACKEND, solve_game

__all__ = ["BACKEND", "solve_game"]
