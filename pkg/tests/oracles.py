"""Independent reference implementations used only by the tests.

Nothing here imports tolalg internals; each oracle works from the definitions
with plain loops, exact arithmetic, or sympy.
"""

import itertools
from fractions import Fraction

import numpy as np
import sympy


def related(edges, i, j):
    """1-indexed tolerance test straight from an edge list."""
    return i == j or (min(i, j), max(i, j)) in edges


def dense_truncate(b, n, edges):
    out = np.zeros((n, n), dtype=complex)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if related(edges, i, j):
                out[i - 1, j - 1] = b[i - 1, j - 1]
    return out


def brute_transitive(n, edges):
    for x, y, z in itertools.product(range(1, n + 1), repeat=3):
        if related(edges, x, y) and related(edges, y, z) and not related(edges, x, z):
            return False
    return True


def brute_star(a, b, n, edges):
    """Truncated product with explicit triple loops."""
    out = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            if related(edges, i + 1, j + 1):
                out[i, j] = sum(a[i, k] * b[k, j] for k in range(n))
    return out


def basis_associative(n, edges):
    """Check (E1*E2)*E3 == E1*(E2*E3) over every triple of basis matrices."""
    pairs = [(i, j) for i in range(n) for j in range(n) if related(edges, i + 1, j + 1)]
    mats = {}
    for p in pairs:
        m = np.zeros((n, n))
        m[p] = 1
        mats[p] = m
    for p, q, r in itertools.product(pairs, repeat=3):
        x, y, z = mats[p], mats[q], mats[r]
        lhs = brute_star(brute_star(x, y, n, edges), z, n, edges)
        rhs = brute_star(x, brute_star(y, z, n, edges), n, edges)
        if not np.array_equal(lhs, rhs):
            return False
    return True


def exact_psd(m):
    """Sylvester's criterion for semidefiniteness: every principal minor >= 0."""
    M = sympy.Matrix(m)
    n = M.shape[0]
    for r in range(1, n + 1):
        for idx in itertools.combinations(range(n), r):
            if sympy.nsimplify(M.extract(list(idx), list(idx)).det()) < 0:
                return False
    return True


def exact_rank(rows):
    """Gaussian elimination over Fractions."""
    m = [[Fraction(x) for x in row] for row in rows]
    rank, cols = 0, len(m[0]) if m else 0
    for c in range(cols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c] / m[rank][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        rank += 1
    return rank


def has_dominant(n, edges, comp):
    return any(all(related(edges, d, x) for x in comp) for d in comp)


def components(n, edges):
    seen, out = set(), []
    for s in range(1, n + 1):
        if s in seen:
            continue
        stack, comp = [s], []
        seen.add(s)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y in range(1, n + 1):
                if y not in seen and related(edges, x, y):
                    seen.add(y)
                    stack.append(y)
        out.append(sorted(comp))
    return out


def random_truncation_split(v, n, edges, rng, attempts=200, threshold=1e-4):
    """Randomized search for rho1 != rho2 with T(t rho1 + (1-t) rho2) = T(P_v).

    Candidates are Schur products P_v o G, G the Gram matrix of random unit
    vectors attached to random vertex labels; G has unit diagonal, so the
    product is a density matrix. A candidate counts only if it truncates to
    T(P_v); it refutes purity when a random split rho = t r1 + (1-t) r2 has
    distinguishable truncations. Returns (t, r1, r2) or None; all attempts
    run as one batch.
    """
    if n < 2:
        return None  # a 1 x 1 density matrix is pure
    mask = np.array([[related(edges, i, j) for j in range(1, n + 1)] for i in range(1, n + 1)])
    P = np.outer(v, v.conj())
    n_labels = rng.integers(2, max(n, 2) + 1, size=attempts)
    labels = (rng.random((attempts, n)) * n_labels[:, None]).astype(int)
    pool = rng.normal(size=(attempts, max(n, 2), 3)) + 1j * rng.normal(size=(attempts, max(n, 2), 3))
    pool /= np.linalg.norm(pool, axis=2, keepdims=True)
    vecs = np.take_along_axis(pool, labels[:, :, None], axis=1)
    G = vecs @ vecs.conj().transpose(0, 2, 1)
    rho = P[None] * G
    keep = np.abs(np.where(mask, rho - P[None], 0)).max(axis=(1, 2)) <= 1e-12
    if not keep.any():
        return None
    rho = rho[keep]
    # random split rho = x x^* + (rho - x x^*) with x = rho^(1/2) y
    w, V = np.linalg.eigh(rho)
    root = (V * np.sqrt(np.clip(w, 0, None))[:, None, :]) @ V.conj().transpose(0, 2, 1)
    y = rng.normal(size=(len(rho), n)) + 1j * rng.normal(size=(len(rho), n))
    y /= np.linalg.norm(y, axis=1, keepdims=True)
    x = np.einsum("kij,kj->ki", root, y)
    t = np.sum(np.abs(x) ** 2, axis=1)
    ok = (t > threshold) & (t < 1 - threshold)
    if not ok.any():
        return None
    rho, x, t = rho[ok], x[ok], t[ok]
    xx = x[:, :, None] * x.conj()[:, None, :]
    r1 = xx / t[:, None, None]
    r2 = (rho - xx) / (1 - t)[:, None, None]
    diff = np.abs(np.where(mask, r1 - r2, 0)).max(axis=(1, 2))
    good = diff >= threshold
    if not good.any():
        return None
    k = int(np.flatnonzero(good)[0])
    return t[k], r1[k], r2[k]
