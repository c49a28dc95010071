"""Truncations of C(S^1) and the noncommutative torus at finite support.

Two circle conventions coexist on purpose:

* :class:`TrigPolynomial` uses u(t) = e^{it}, t in [0, 2 pi).
* :class:`TorusElement` uses S^1 = R/Z with U(x) = e^{2 pi i x}; shifting by
  s multiplies the m-th coefficient by e^{2 pi i m s}.

Coefficients are kept exact when they are ints or Fractions (the truncation
weights are Fractions), so the integer identities hold with zero tolerance.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Mapping

import numpy as np

from .errors import ParseError, PreconditionViolation, RangeError
from .matrix import DEFAULT_TOL, Tolerance


def _clean(coeffs) -> dict:
    return {int(k): c for k, c in coeffs.items() if c != 0}


class TrigPolynomial:
    """Finitely supported k -> coefficient of u^k. Zero coefficients are never stored."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, complex] | None = None):
        self._c = _clean(coeffs or {})

    @property
    def coeffs(self) -> dict:
        return dict(self._c)

    @classmethod
    def monomial(cls, k: int, c=1) -> "TrigPolynomial":
        return cls({k: c})

    @classmethod
    def constant(cls, c=1) -> "TrigPolynomial":
        return cls({0: c})

    def __getitem__(self, k: int):
        return self._c.get(k, 0)

    def support(self) -> list[int]:
        return sorted(self._c)

    def __eq__(self, other):
        if not isinstance(other, TrigPolynomial):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __repr__(self):
        terms = " + ".join(f"({c})u^{k}" for k, c in sorted(self._c.items()))
        return f"TrigPolynomial({terms or '0'})"

    def __add__(self, other):
        out = dict(self._c)
        for k, c in other._c.items():
            out[k] = out.get(k, 0) + c
        return TrigPolynomial(out)

    def __sub__(self, other):
        return self + (-1) * other

    def __neg__(self):
        return (-1) * self

    def scale(self, s) -> "TrigPolynomial":
        return TrigPolynomial({k: s * c for k, c in self._c.items()})

    def __rmul__(self, s):
        return self.scale(s)

    def __mul__(self, other):
        """Pointwise product of functions = convolution of coefficients."""
        if not isinstance(other, TrigPolynomial):
            return self.scale(other)
        out: dict = {}
        for k1, c1 in self._c.items():
            for k2, c2 in other._c.items():
                out[k1 + k2] = out.get(k1 + k2, 0) + c1 * c2
        return TrigPolynomial(out)

    def __pow__(self, p: int):
        if p < 0:
            raise ValueError("negative powers are not supported")
        out = TrigPolynomial.constant(1)
        for _ in range(p):
            out = out * self
        return out

    def adjoint(self) -> "TrigPolynomial":
        """f^*(t) = conj(f(t)): coefficient k becomes conj of coefficient -k."""
        return TrigPolynomial({-k: _conj(c) for k, c in self._c.items()})

    def max_abs_diff(self, other) -> float:
        keys = set(self._c) | set(other._c)
        return max((abs(complex(self[k]) - complex(other[k])) for k in keys), default=0.0)

    def to_json(self) -> dict:
        return {"coeffs": {str(k): [float(complex(c).real), float(complex(c).imag)]
                           for k, c in sorted(self._c.items())}}


def _conj(c):
    return c.conjugate() if isinstance(c, complex) else c


def u(power: int = 1) -> TrigPolynomial:
    return TrigPolynomial.monomial(power)


class Kind(Enum):
    PARTIAL_SUM = "partial"
    FEJER = "fejer"


@dataclass(frozen=True)
class TruncationKind:
    kind: Kind
    n: int

    def __post_init__(self):
        if isinstance(self.kind, str):
            object.__setattr__(self, "kind", Kind(self.kind))
        if self.n < 2:
            raise RangeError("truncation cutoff n must be >= 2")

    def weight(self, k: int):
        """Multiplier applied to the coefficient of u^k."""
        if abs(k) >= self.n:
            return 0
        if self.kind is Kind.PARTIAL_SUM:
            return 1
        return Fraction(self.n - abs(k), self.n)


def PartialSum(n: int) -> TruncationKind:
    return TruncationKind(Kind.PARTIAL_SUM, n)


def Fejer(n: int) -> TruncationKind:
    return TruncationKind(Kind.FEJER, n)


def circle_truncate(f: TrigPolynomial, t: TruncationKind) -> TrigPolynomial:
    return TrigPolynomial({k: _mul_weight(t.weight(k), c) for k, c in f.coeffs.items()})


def _mul_weight(w, c):
    if w == 1:
        return c
    if isinstance(c, complex) and isinstance(w, Fraction):
        return c * (w.numerator / w.denominator)
    return w * c


def trig_star(f: TrigPolynomial, g: TrigPolynomial, t: TruncationKind) -> TrigPolynomial:
    return circle_truncate(f * g, t)


def star_power(f: TrigPolynomial, p: int, t: TruncationKind) -> TrigPolynomial:
    """Left-nested f * (f * (... * f)); power associativity makes bracketing irrelevant."""
    out = f
    for _ in range(p - 1):
        out = trig_star(f, out, t)
    return out


def evaluate(f: TrigPolynomial, t) -> complex | np.ndarray:
    """sum_k c_k e^{ikt}; t may be a scalar or an array."""
    tt = np.asarray(t, dtype=float)
    val = np.zeros(tt.shape, dtype=complex)
    for k, c in f.coeffs.items():
        val = val + complex(c) * np.exp(1j * k * tt)
    return complex(val) if val.ndim == 0 else val


def _grid(grid_size: int) -> np.ndarray:
    return 2 * np.pi * np.arange(grid_size) / grid_size


def positivity_check(f: TrigPolynomial, t: TruncationKind, grid_size: int = 4096,
                     tol: Tolerance = DEFAULT_TOL) -> bool:
    """Numerical evidence (grid-based, not a proof) that T(f) >= 0 given f >= 0.

    Raises PreconditionViolation if f itself dips below -abs_eps on the grid.
    """
    ts = _grid(grid_size)
    fv = evaluate(f, ts)
    if np.min(fv.real) < -tol.abs_eps or np.max(np.abs(fv.imag)) > tol.threshold(np.abs(fv).max()):
        raise PreconditionViolation("f is not a non-negative real function on the grid")
    tv = evaluate(circle_truncate(f, t), ts)
    return bool(np.min(tv.real) >= -tol.threshold(np.abs(tv).max()))


def fejer_positivity_check(f: TrigPolynomial, n: int, grid_size: int = 4096,
                           tol: Tolerance = DEFAULT_TOL) -> bool:
    return positivity_check(f, Fejer(n), grid_size, tol)


def find_nonassociative_monomials(t: TruncationKind, radius: int | None = None):
    """First monomial triple (a, b, c), |a|,|b|,|c| < n, with
    (u^a * u^b) * u^c != u^a * (u^b * u^c). Returns None if none exist.
    """
    r = t.n - 1 if radius is None else radius
    rng = sorted(range(-r, r + 1), key=lambda k: (abs(k), -k))
    for a in rng:
        for b in rng:
            for c in rng:
                x, y, z = u(a), u(b), u(c)
                lhs = trig_star(trig_star(x, y, t), z, t)
                rhs = trig_star(x, trig_star(y, z, t), t)
                if lhs != rhs:
                    return (a, b, c)
    return None


def trig_from_json(obj) -> TrigPolynomial:
    if not isinstance(obj, dict) or not isinstance(obj.get("coeffs"), dict):
        raise ParseError('trig polynomial JSON needs an object "coeffs"')
    out = {}
    for k, v in obj["coeffs"].items():
        try:
            key = int(k)
        except ValueError as exc:
            raise ParseError(f"coefficient key {k!r} is not an integer") from exc
        if isinstance(v, list) and len(v) == 2:
            re, im = v
            out[key] = re if im == 0 and isinstance(re, int) else complex(re, im)
        elif isinstance(v, (int, float)) and not isinstance(v, bool):
            out[key] = v
        else:
            raise ParseError(f"coefficient {v!r} is not [re, im]")
    return TrigPolynomial(out)


def parse_trig(text: str) -> TrigPolynomial:
    try:
        return trig_from_json(json.loads(text))
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from exc


# noncommutative torus, S^1 = R/Z


class TorusElement:
    """sum_j f_j V^j with f_j a trigonometric polynomial in U(x) = e^{2 pi i x}."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, TrigPolynomial] | None = None):
        self._terms = {int(j): f for j, f in (terms or {}).items() if f.coeffs}

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    @classmethod
    def U(cls) -> "TorusElement":
        return cls({0: u(1)})

    @classmethod
    def V(cls, j: int = 1) -> "TorusElement":
        return cls({j: TrigPolynomial.constant(1)})

    def __add__(self, other):
        out = dict(self._terms)
        for j, f in other._terms.items():
            out[j] = out[j] + f if j in out else f
        return TorusElement(out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, s) -> "TorusElement":
        return TorusElement({j: f.scale(s) for j, f in self._terms.items()})

    def __repr__(self):
        return f"TorusElement({self._terms})"

    def max_abs_diff(self, other) -> float:
        keys = set(self._terms) | set(other._terms)
        zero = TrigPolynomial()
        return max((self._terms.get(j, zero).max_abs_diff(other._terms.get(j, zero)) for j in keys),
                   default=0.0)

    def to_json(self) -> dict:
        return {"terms": {str(j): f.to_json() for j, f in sorted(self._terms.items())}}


def shift(f: TrigPolynomial, s: float) -> TrigPolynomial:
    """x -> f(x + s) on R/Z."""
    return TrigPolynomial({m: complex(c) * cmath.exp(2j * math.pi * m * s) for m, c in f.coeffs.items()})


def torus_star(F: TorusElement, G: TorusElement, theta: float) -> TorusElement:
    """(f V^j) * (g V^k) = f(x) g(x + j theta) V^{j+k}, extended bilinearly."""
    out: dict = {}
    for j, f in F.terms.items():
        for k, g in G.terms.items():
            term = f * shift(g, j * theta)
            out[j + k] = out[j + k] + term if j + k in out else term
    return TorusElement(out)


def torus_from_json(obj) -> TorusElement:
    if not isinstance(obj, dict) or not isinstance(obj.get("terms"), dict):
        raise ParseError('torus JSON needs an object "terms"')
    try:
        return TorusElement({int(j): trig_from_json(f) for j, f in obj["terms"].items()})
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
