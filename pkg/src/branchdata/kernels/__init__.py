"""
Hot loops for tuple enumeration.

The compiled extension is used when it was built; otherwise the pure-Python
module with identical semantics is loaded. Setting ``BRANCHDATA_PURE=1``
forces the pure-Python path.
"""

import os

from . import _pykernels as pykernels

ckernels = None
if os.environ.get("BRANCHDATA_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as ckernels
    except ImportError:  # extension not built
        ckernels = None

_active = ckernels if ckernels is not None else pykernels

BACKEND = _active.BACKEND
enumerate_tuples = _active.enumerate_tuples
canonical_key = _active.canonical_key


def get_backend(name=None):
    """Return the kernel module called ``name`` (``"python"`` or ``"cython"``), or the active one."""
    if name is None:
        return _active
    if name == "python":
        return pykernels
    if name == "cython":
        if ckernels is None:
            raise ImportError("compiled kernels are not available")
        return ckernels
    raise ValueError("unknown backend %r" % name)
