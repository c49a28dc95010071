"""The cyclic LED-detector POVM and informational completeness.

n detectors sit on a circle and light up in windows of k consecutive
positions; outcome i has effect (1/k) Q_i with Q_i the indicator of
{i, ..., i+k-1} mod n.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotDensity, NotPovm, RangeError
from .matrix import DEFAULT_TOL, Tolerance, as_cmatrix, is_hermitian, is_psd, rank


@dataclass(frozen=True, eq=False)
class Povm:
    elements: tuple

    def __post_init__(self):
        tol = DEFAULT_TOL
        els = tuple(as_cmatrix(e) for e in self.elements)
        if not els:
            raise NotPovm("a POVM needs at least one element")
        n = els[0].shape[0]
        if any(e.shape != (n, n) for e in els):
            raise DimensionMismatch("POVM elements must share one dimension")
        for i, e in enumerate(els, 1):
            if not is_hermitian(e, tol) or not is_psd(e, tol):
                raise NotPovm(f"element {i} is not PSD")
        if np.abs(sum(els) - np.eye(n)).max() > tol.threshold(1.0):
            raise NotPovm("elements do not sum to the identity")
        for e in els:
            e.setflags(write=False)
        object.__setattr__(self, "elements", els)

    @property
    def n(self) -> int:
        return self.elements[0].shape[0]

    def __len__(self):
        return len(self.elements)

    def is_diagonal(self) -> bool:
        return all(np.count_nonzero(e - np.diag(np.diag(e))) == 0 for e in self.elements)


def _check_nk(n: int, k: int):
    if not (isinstance(n, int) and isinstance(k, int)) or not 1 <= k <= n:
        raise RangeError(f"need 1 <= k <= n, got n={n}, k={k}")


def window_indicator(n: int, k: int, i: int) -> np.ndarray:
    """Diagonal of Q_i: ones at positions i, ..., i+k-1 (1-indexed, mod n)."""
    d = np.zeros(n)
    d[[(i - 1 + j) % n for j in range(k)]] = 1
    return d


def led_povm(n: int, k: int) -> Povm:
    _check_nk(n, k)
    return Povm(tuple(np.diag(window_indicator(n, k, i)) / k for i in range(1, n + 1)))


def apply_povm(rho, P: Povm, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Outcome distribution Tr(rho P_i)."""
    rho = as_cmatrix(rho)
    if rho.shape != (P.n, P.n):
        raise DimensionMismatch(f"state is {rho.shape[0]}-dimensional, POVM is {P.n}-dimensional")
    if not is_hermitian(rho, tol) or not is_psd(rho, tol) or abs(np.trace(rho) - 1) > tol.threshold(1.0):
        raise NotDensity("rho must be PSD with unit trace")
    return np.array([np.vdot(e, rho).real for e in P.elements])


@dataclass(frozen=True)
class ICCertificate:
    ic: bool
    rank: int
    dim: int  # dimension of the ambient space the map L acts on
    ambient: str  # "diagonal" or "full"


def is_informationally_complete(P: Povm, ambient: str = "auto", tol: Tolerance = DEFAULT_TOL) -> ICCertificate:
    """IC iff the map a -> (<P_1, a>, ..., <P_k, a>) has trivial kernel.

    For a diagonal POVM with ``ambient="auto"`` the map acts on diagonal
    matrices (a classical system); otherwise on all of M_n.
    """
    if ambient == "auto":
        ambient = "diagonal" if P.is_diagonal() else "full"
    if ambient == "diagonal":
        coeff = np.array([np.diag(e) for e in P.elements])
        dim = P.n
    elif ambient == "full":
        coeff = np.array([e.conj().ravel() for e in P.elements])
        dim = P.n * P.n
    else:
        raise ValueError(f"unknown ambient {ambient!r}")
    r = rank(coeff, tol)
    return ICCertificate(r == dim, r, dim, ambient)


def led_ic_predicate(n: int, k: int) -> bool:
    _check_nk(n, k)
    return math.gcd(n, k) == 1


def circulant_spectrum(n: int, k: int) -> list[complex]:
    """Values sum_{j<k} q^{ij}, i = 1..n, q = e^{2 pi i / n}.

    Exponents are reduced mod n first; an entry is exactly 0 when q^i != 1 and
    q^{ik} = 1 (the geometric sum (1 - q^{ik}) / (1 - q^i) vanishes).
    """
    _check_nk(n, k)
    out = []
    for i in range(1, n + 1):
        if i % n == 0:
            out.append(complex(k))
        elif (i * k) % n == 0:
            out.append(0j)
        else:
            out.append(sum(cmath.exp(2j * math.pi * ((i * j) % n) / n) for j in range(k)))
    return out


def circulant_matrix(n: int, k: int) -> np.ndarray:
    """S^0 + S + ... + S^{k-1}: row i has ones in columns i..i+k-1 mod n."""
    _check_nk(n, k)
    return np.array([window_indicator(n, k, i) for i in range(1, n + 1)])


def pure_fiber_check(d, n: int, k: int, tol: Tolerance = DEFAULT_TOL):
    """If d is a cyclic shift of (1/k)(1,...,1,0,...,0), the unique pure preimage index.

    The preimage is E_ii with i the position of the last 1/k in the cyclic run.
    Returns None for any other distribution, including near-threshold ones.
    """
    _check_nk(n, k)
    if k >= n:
        raise RangeError("pure fibers are singletons only for k < n")
    d = np.asarray(d, dtype=float)
    if d.shape != (n,):
        raise DimensionMismatch(f"distribution must have length {n}")
    eps = tol.threshold(1.0 / k)
    on = np.abs(d - 1.0 / k) <= eps
    off = np.abs(d) <= eps
    if not np.all(on | off) or on.sum() != k:
        return None
    # the run must be cyclically contiguous: exactly one on -> off transition
    ends = [i for i in range(n) if on[i] and not on[(i + 1) % n]]
    if len(ends) != 1:
        return None
    return ends[0] + 1
