"""Kernel selection: the compiled extension when importable, else pure Python.

Set ``HEISCAT_PURE_PYTHON=1`` to force the fallback.
"""
from __future__ import annotations

import os

from . import _kernels_py
from ._kernels_py import coset_factor, extend, inner_dim, perm_rank, perm_table  # noqa: F401

act_py = _kernels_py.act
act_compiled = None

if not os.environ.get("HEISCAT_PURE_PYTHON"):
    try:
        from ._kernels import act as act_compiled
    except ImportError:  # extension not built
        act_compiled = None

BACKEND = "compiled" if act_compiled is not None else "python"


def act(uplevels, n, sigma):
    if act_compiled is not None:
        return act_compiled(tuple(uplevels), n, tuple(sigma))
    return act_py(uplevels, n, sigma)
