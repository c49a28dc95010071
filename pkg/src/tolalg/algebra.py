"""The tolerance algebra A(R): matrices supported on R with product a * b = T(ab).

T is the entrywise mask onto the support of R. The product is generally
non-associative; it is associative exactly when R is an equivalence relation.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import ext
from .errors import DimensionMismatch, ParseError, RelationMismatch, SupportViolation
from .matrix import DEFAULT_TOL, Tolerance, as_cmatrix, matrix_from_json, matrix_to_json
from .relation import ToleranceRelation, _relation_from_obj, non_transitive_triple

SUPPORT_AWARE_THRESHOLD = 64


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    relation: ToleranceRelation
    mat: np.ndarray

    def __post_init__(self):
        m = as_cmatrix(self.mat)
        if m.shape[0] != self.relation.n:
            raise DimensionMismatch(f"matrix is {m.shape[0]}x{m.shape[0]}, relation has n={self.relation.n}")
        if np.any(m[~self.relation.mask] != 0):
            raise SupportViolation("matrix has non-zero entries off the support of R")
        m.setflags(write=False)
        object.__setattr__(self, "mat", m)

    @property
    def n(self) -> int:
        return self.relation.n

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.relation == other.relation and np.array_equal(self.mat, other.mat)

    def __add__(self, other):
        _same_relation(self, other)
        return AlgebraElement(self.relation, self.mat + other.mat)

    def __sub__(self, other):
        _same_relation(self, other)
        return AlgebraElement(self.relation, self.mat - other.mat)

    def __mul__(self, scalar):
        return AlgebraElement(self.relation, self.mat * scalar)

    __rmul__ = __mul__

    def __matmul__(self, other):
        return star(self, other)

    @property
    def H(self):
        return involution(self)

    def to_json(self) -> dict:
        return {**self.relation.to_json(), **matrix_to_json(self.mat)}


def _same_relation(a: AlgebraElement, b: AlgebraElement):
    if a.relation != b.relation:
        raise RelationMismatch("elements live in tolerance algebras of different relations")


def truncate(b, R: ToleranceRelation) -> AlgebraElement:
    """T(b) = sum over (i,j) in R of E_ii b E_jj, i.e. zero every entry off R."""
    b = as_cmatrix(b)
    if b.shape[0] != R.n:
        raise DimensionMismatch(f"matrix is {b.shape[0]}x{b.shape[0]}, relation has n={R.n}")
    return AlgebraElement(R, np.where(R.mask, b, 0))


def mask_matrix(b, R: ToleranceRelation) -> np.ndarray:
    """Raw-array form of :func:`truncate`."""
    return np.where(R.mask, b, 0)


def star(a: AlgebraElement, b: AlgebraElement, method: str = "auto") -> AlgebraElement:
    """a * b = T(a b).

    ``method`` is ``"dense"`` (full product then mask), ``"support"`` (only
    supported index paths, compiled kernel) or ``"auto"`` (support-aware above
    n = 64).
    """
    _same_relation(a, b)
    R = a.relation
    if method == "auto":
        method = "support" if R.n > SUPPORT_AWARE_THRESHOLD else "dense"
    if method == "dense":
        prod = mask_matrix(a.mat @ b.mat, R)
    elif method == "support":
        prod = ext.support_matmul(a.mat, b.mat, R.mask)
    else:
        raise ValueError(f"unknown method {method!r}")
    return AlgebraElement(R, prod)


def involution(a: AlgebraElement) -> AlgebraElement:
    return AlgebraElement(a.relation, a.mat.conj().T)


def unit(R: ToleranceRelation) -> AlgebraElement:
    return AlgebraElement(R, np.eye(R.n, dtype=complex))


def basis(R: ToleranceRelation, i: int, j: int) -> AlgebraElement:
    """Matrix unit E_ij (1-indexed); (i, j) must lie in R."""
    if not R.sim(i, j):
        raise SupportViolation(f"E_{i}{j} is not in A(R): {i} and {j} are not related")
    m = np.zeros((R.n, R.n), dtype=complex)
    m[i - 1, j - 1] = 1
    return AlgebraElement(R, m)


def power_witness_element(R: ToleranceRelation, triple) -> AlgebraElement:
    """E_xy + E_yx + E_yz + E_zy on a non-transitive triple x~y~z, x!~z."""
    x, y, z = triple
    m = np.zeros((R.n, R.n), dtype=complex)
    for i, j in ((x, y), (y, x), (y, z), (z, y)):
        m[i - 1, j - 1] = 1
    return AlgebraElement(R, m)


@dataclass(frozen=True)
class PowerWitness:
    triple: tuple
    element: AlgebraElement
    left: np.ndarray  # (a*a)*a
    right: np.ndarray  # a*(a*a)


@dataclass(frozen=True)
class AssociativityReport:
    associative: bool
    power_associative: bool
    basis_triple: Optional[tuple]  # ((i,j),(j,l),(l,q)), 1-indexed
    witness: Optional[PowerWitness]

    def to_json(self) -> dict:
        out = {"associative": self.associative, "power_associative": self.power_associative}
        if self.basis_triple is not None:
            out["basis_triple"] = [list(p) for p in self.basis_triple]
        if self.witness is not None:
            w = self.witness
            out["witness"] = {
                "triple": list(w.triple),
                "a": matrix_to_json(w.element.mat),
                "(a*a)*a": matrix_to_json(w.left),
                "a*(a*a)": matrix_to_json(w.right),
            }
        return out


def find_nonassociative_basis_triple(R: ToleranceRelation):
    """First basis triple (E_ij, E_jl, E_lq) whose two bracketings differ, or None.

    By trilinearity the product is associative iff no basis triple fails.
    """
    hit = ext.nonassociative_basis_triple(R.mask)
    if hit is None:
        return None
    i, j, l, q = (int(x) + 1 for x in hit)
    return ((i, j), (j, l), (l, q))


def associativity_report(R: ToleranceRelation) -> AssociativityReport:
    basis_triple = find_nonassociative_basis_triple(R)
    witness = None
    triple = non_transitive_triple(R)
    if triple is not None:
        a = power_witness_element(R, triple)
        aa = star(a, a)
        left = star(aa, a).mat
        right = star(a, aa).mat
        if np.array_equal(left, right):
            raise AssertionError(f"power-associativity witness on {triple} failed to separate")
        witness = PowerWitness(triple, a, left, right)
    return AssociativityReport(
        associative=basis_triple is None,
        power_associative=witness is None,
        basis_triple=basis_triple,
        witness=witness,
    )


def element_from_json(obj, tol: Tolerance = DEFAULT_TOL) -> AlgebraElement:
    """Strict loader: entries off the support must be within abs_eps of zero."""
    R = _relation_from_obj(obj)
    m = matrix_from_json(obj)
    if m.shape[0] != R.n:
        raise DimensionMismatch(f"matrix is {m.shape[0]}x{m.shape[0]}, relation has n={R.n}")
    off = np.abs(m[~R.mask])
    if off.size and off.max() > tol.abs_eps:
        raise SupportViolation("entry off the support of R exceeds abs_eps")
    return AlgebraElement(R, np.where(R.mask, m, 0))


def parse_element(text: str, tol: Tolerance = DEFAULT_TOL) -> AlgebraElement:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from exc
    return element_from_json(obj, tol)
