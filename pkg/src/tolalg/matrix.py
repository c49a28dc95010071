"""Dense complex matrices: sign decisions, Hilbert-Schmidt pairing, rank, JSON."""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotHermitian, ParseError


@dataclass(frozen=True)
class Tolerance:
    rel_eps: float = 1e-9
    abs_eps: float = 1e-12

    def __post_init__(self):
        if not (self.rel_eps > 0 and self.abs_eps > 0):
            raise ValueError("tolerances must be positive")

    def threshold(self, scale: float) -> float:
        return self.rel_eps * scale + self.abs_eps


DEFAULT_TOL = Tolerance()


def as_cmatrix(a) -> np.ndarray:
    """Validate and convert to a square complex128 array (copy)."""
    try:
        m = np.array(a, dtype=complex)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"not a numeric matrix: {exc}") from exc
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {m.shape}")
    if not np.isfinite(m).all():
        raise ParseError("matrix has non-finite entries")
    return m


def is_hermitian(a, tol: Tolerance = DEFAULT_TOL) -> bool:
    a = np.asarray(a)
    return bool(np.abs(a - a.conj().T).max(initial=0.0) <= tol.threshold(np.abs(a).max(initial=0.0)))


def min_eigenvalue(a) -> float:
    """Smallest eigenvalue of the Hermitian part of a."""
    a = np.asarray(a, dtype=complex)
    return float(np.linalg.eigvalsh((a + a.conj().T) / 2)[0])


def is_psd(a, tol: Tolerance = DEFAULT_TOL) -> bool:
    a = np.asarray(a, dtype=complex)
    if not is_hermitian(a, tol):
        raise NotHermitian("is_psd needs a Hermitian matrix")
    if a.size == 0:
        return True
    w = np.linalg.eigvalsh((a + a.conj().T) / 2)
    return bool(w[0] >= -tol.threshold(np.abs(w).max()))


def hs_inner(a, b) -> complex:
    """Tr(a* b)."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"shapes {a.shape} and {b.shape} differ")
    return complex(np.vdot(a, b))


def rank(a, tol: Tolerance = DEFAULT_TOL) -> int:
    a = np.asarray(a, dtype=complex)
    if a.size == 0:
        return 0
    s = np.linalg.svd(a, compute_uv=False)
    return int((s > tol.threshold(s[0])).sum())


def projector(v) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    return np.outer(v, v.conj())


# JSON: row-major [re, im] pairs


def matrix_to_json(a) -> dict:
    a = np.asarray(a, dtype=complex)
    return {
        "n": a.shape[0],
        "entries": [[[float(z.real), float(z.imag)] for z in row] for row in a],
    }


def _entry(z):
    if isinstance(z, list) and len(z) == 2 and all(isinstance(x, (int, float)) for x in z):
        return complex(z[0], z[1])
    if isinstance(z, (int, float)) and not isinstance(z, bool):
        return complex(z)
    raise ParseError(f"matrix entry {z!r} is not [re, im]")


def matrix_from_json(obj) -> np.ndarray:
    if not isinstance(obj, dict) or "entries" not in obj:
        raise ParseError('matrix JSON needs "entries"')
    rows = obj["entries"]
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ParseError('"entries" must be a list of rows')
    m = as_cmatrix([[_entry(z) for z in row] for row in rows]) if rows else np.zeros((0, 0), complex)
    if "n" in obj and obj["n"] != m.shape[0]:
        raise DimensionMismatch(f'"n" = {obj["n"]} but matrix is {m.shape[0]} x {m.shape[0]}')
    return m


def parse_matrix(text: str) -> np.ndarray:
    try:
        return matrix_from_json(json.loads(text))
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from exc
