"""Hot kernels, compiled with Cython when available.

Set ``TOLALG_PURE_PYTHON=1`` to force the pure-Python versions.
"""

import logging
import os

import numpy as np

from . import kernels_slow

log = logging.getLogger(__name__)

_impl = kernels_slow
BACKEND = "python"

if os.environ.get("TOLALG_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import kernels_fast as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        log.debug("compiled kernels not built; using pure-Python fallback")


def _prep(a):
    return np.ascontiguousarray(a, dtype=np.complex128)


def _prep_mask(mask):
    return np.ascontiguousarray(mask, dtype=np.uint8)


def _resolve(impl):
    """``impl`` may be None (active backend), a backend name, or a module."""
    if impl is None:
        return _impl
    if isinstance(impl, str):
        backends = available_backends()
        if impl not in backends:
            raise ValueError(f"backend {impl!r} unavailable; have {sorted(backends)}")
        return backends[impl]
    return impl


def support_matmul(a, b, mask, impl=None):
    """Masked product T(ab) computed only over supported index paths.

    Equal to ``(a @ b) * mask`` whenever a and b vanish off mask.
    """
    impl = _resolve(impl)
    return impl.support_matmul(_prep(a), _prep(b), _prep_mask(mask))


def nonassociative_basis_triple(mask, impl=None):
    """0-indexed (i, j, l, q) with (E_ij E_jl) E_lq != E_ij (E_jl E_lq) after truncation, or None."""
    impl = _resolve(impl)
    return impl.nonassociative_basis_triple(_prep_mask(mask))


def available_backends():
    out = {"python": kernels_slow}
    try:
        from . import kernels_fast

        out["cython"] = kernels_fast
    except ImportError:
        pass
    return out
