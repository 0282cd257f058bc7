"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``GREYWOLF_PURE_PYTHON=1`` to force the fallback.
"""

import os

if os.environ.get("GREYWOLF_PURE_PYTHON"):
    from ._pykernels import evaluate_paths, segment_hits

    BACKEND = "python"
else:
    try:
        from ._ckernels import evaluate_paths, segment_hits

        BACKEND = "cython"
    except ImportError:
        from ._pykernels import evaluate_paths, segment_hits

        BACKEND = "python"

__all__ = ["BACKEND", "evaluate_paths", "segment_hits"]
