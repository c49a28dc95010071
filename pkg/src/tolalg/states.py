"""States of A(R): weak positivity, weak density matrices, and pure-state classification.

Two orders live on A(R). ``a >= 0`` means a is a PSD matrix; ``a >~ 0`` (weak
positivity) means a = T(b) for some PSD b, i.e. a admits a PSD completion.
States of the operator system A(R) correspond to trace-one weakly positive
elements. Purity verdicts are constructive: a pure verdict carries the unique
reconstructed preimage, a non-pure verdict carries an explicit convex split.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Sequence

import networkx as nx
import numpy as np

from .algebra import AlgebraElement, involution, mask_matrix, star, truncate
from .errors import (
    InvariantViolation,
    NoDominantVertex,
    NotHermitian,
    NotTolerant,
    NotUnit,
    NotWeaklyPositive,
    PreconditionViolation,
    Undecided,
    ZeroVector,
)
from .matrix import DEFAULT_TOL, Tolerance, hs_inner, is_hermitian, is_psd, matrix_to_json, projector
from .relation import (
    ToleranceRelation,
    connected_components,
    dominant_vertices,
    non_transitive_triple,
)

# tolerant vectors


def _as_vector(v) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    if v.ndim != 1:
        raise ValueError("expected a vector")
    return v


def support_of(v, tol: Tolerance = DEFAULT_TOL) -> list[int]:
    """0-indexed positions where |v_i| > abs_eps."""
    return [int(i) for i in np.flatnonzero(np.abs(_as_vector(v)) > tol.abs_eps)]


def _components_on(R: ToleranceRelation, verts: Sequence[int]) -> list[list[int]]:
    """Connected components (0-indexed) of the graph of R restricted to verts."""
    vs = set(verts)
    seen = set()
    comps = []
    for s in verts:
        if s in seen:
            continue
        seen.add(s)
        comp, queue = [], deque([s])
        while queue:
            x = queue.popleft()
            comp.append(x)
            for y in R.neighbors[x]:
                if y in vs and y not in seen:
                    seen.add(y)
                    queue.append(y)
        comps.append(sorted(comp))
    return comps


def r_tolerant(v, R: ToleranceRelation, tol: Tolerance = DEFAULT_TOL) -> bool:
    """True iff R restricted to the support of v has a connected graph.

    Components with |v_i| <= abs_eps count as zero; callers with nearly
    degenerate vectors should round first.
    """
    v = _as_vector(v)
    if v.shape[0] != R.n:
        raise ValueError(f"vector has length {v.shape[0]}, relation has n={R.n}")
    supp = support_of(v, tol)
    if not supp:
        raise ZeroVector("R-tolerance is defined for non-zero vectors")
    return len(_components_on(R, supp)) == 1


def _path_in(R: ToleranceRelation, verts: set, src: int, dst: int) -> list[int]:
    prev = {src: None}
    queue = deque([src])
    while queue:
        x = queue.popleft()
        if x == dst:
            break
        for y in R.neighbors[x]:
            if y in verts and y not in prev:
                prev[y] = x
                queue.append(y)
    if dst not in prev:
        raise NotTolerant(f"no path from {src + 1} to {dst + 1} inside the support")
    out = [dst]
    while out[-1] != src:
        out.append(prev[out[-1]])
    return out[::-1]


def forced_completion(w, partial, tol: Tolerance = DEFAULT_TOL) -> np.ndarray:
    """Unique PSD completion of a matrix known on its three central diagonals.

    ``partial[r, s]`` must equal ``w_r conj(w_s)`` for |r - s| <= 1 and all w_r
    must be non-zero. Filling outward one superdiagonal at a time, the 3 x 3
    principal minor on rows {r, s-1, s} has determinant -|lambda - 1|^2 |w_r
    w_(s-1) w_s|^2 in the unknown ratio lambda, so PSD forces lambda = 1, i.e.
    a[r, s] = a[r, s-1] a[s-1, s] / a[s-1, s-1].
    """
    w = _as_vector(w)
    k = w.shape[0]
    p = np.asarray(partial, dtype=complex)
    if k < 3:
        raise PreconditionViolation("need k >= 3")
    if p.shape != (k, k):
        raise PreconditionViolation(f"partial matrix must be {k}x{k}")
    if np.any(np.abs(w) <= tol.abs_eps):
        raise PreconditionViolation("every w_i must be non-zero")
    band = np.abs(np.subtract.outer(np.arange(k), np.arange(k))) <= 1
    ww = np.outer(w, w.conj())
    if np.abs((p - ww)[band]).max() > tol.threshold(np.abs(ww).max()):
        raise PreconditionViolation("partial entries on |i-j| <= 1 must equal w_i conj(w_j)")
    a = np.where(band, p, 0).astype(complex)
    for d in range(2, k):
        for r in range(k - d):
            s = r + d
            a[r, s] = a[r, s - 1] * a[s - 1, s] / a[s - 1, s - 1]
            a[s, r] = np.conj(a[r, s])
            idx = [r, s - 1, s]
            det = np.linalg.det(a[np.ix_(idx, idx)]).real
            scale = np.prod(np.abs(np.diag(a)[idx]))
            if abs(det) > tol.threshold(scale):
                raise InvariantViolation(f"minor on {idx} is not singular at lambda = 1")
    return a


@dataclass(frozen=True)
class CompletionStep:
    entry: tuple  # (i, j), 1-indexed, i < j, (i, j) not in R
    reason: str  # "zero-minor" or "path"
    path: tuple = ()  # 1-indexed path inside R_v when reason == "path"


@dataclass(frozen=True)
class FiberCertificate:
    """Proof that the only density matrix truncating to T(P_v) is P_v."""

    singleton: bool
    preimage: np.ndarray
    steps: tuple = field(default=())


def fiber_is_singleton(v, R: ToleranceRelation, tol: Tolerance = DEFAULT_TOL) -> FiberCertificate:
    """Rebuild the unique PSD preimage of T(P_v) entry by entry.

    Entries on R are read off T(P_v). An entry off R with a zero endpoint is
    forced to zero by a 2 x 2 principal minor; otherwise a path inside R_v
    joins its endpoints and :func:`forced_completion` along that path fixes it.
    """
    v = _as_vector(v)
    if not r_tolerant(v, R, tol):
        raise NotTolerant("v is not R-tolerant; the fiber is not a singleton")
    v = v / np.linalg.norm(v)
    a = mask_matrix(projector(v), R)
    supp = set(support_of(v, tol))
    diag = np.diag(a).real
    rho = a.copy()
    steps = []
    for i, j in itertools.combinations(range(R.n), 2):
        if R.mask[i, j]:
            continue
        if diag[i] <= tol.abs_eps or diag[j] <= tol.abs_eps:
            rho[i, j] = rho[j, i] = 0
            steps.append(CompletionStep((i + 1, j + 1), "zero-minor"))
            continue
        p = _path_in(R, supp, i, j)
        sub = a[np.ix_(p, p)]
        full = forced_completion(v[p], sub, tol)
        rho[i, j] = full[0, -1]
        rho[j, i] = np.conj(full[0, -1])
        steps.append(CompletionStep((i + 1, j + 1), "path", tuple(x + 1 for x in p)))
    target = projector(v)
    if np.abs(rho - target).max() > tol.threshold(1.0) * 10:
        raise InvariantViolation("reconstructed preimage differs from P_v")
    return FiberCertificate(True, rho, tuple(steps))


@dataclass(frozen=True)
class Decomposition:
    t: float
    rho1: np.ndarray
    rho2: np.ndarray
    parts: tuple  # (first part, rest), 1-indexed vertex lists


@dataclass(frozen=True)
class PurityVerdict:
    pure: bool
    tolerant_vector: Optional[np.ndarray] = None
    decomposition: Optional[Decomposition] = None
    certificate: Optional[FiberCertificate] = None

    def __post_init__(self):
        if (self.tolerant_vector is None) == (self.decomposition is None):
            raise InvariantViolation("exactly one of tolerant_vector / decomposition must be set")

    def to_json(self) -> dict:
        out = {"pure": self.pure}
        if self.tolerant_vector is not None:
            out["vector"] = [[float(z.real), float(z.imag)] for z in self.tolerant_vector]
        if self.decomposition is not None:
            d = self.decomposition
            out["decomposition"] = {
                "t": d.t,
                "rho1": matrix_to_json(d.rho1),
                "rho2": matrix_to_json(d.rho2),
                "parts": [list(p) for p in d.parts],
            }
        return out


def classify_pure(v, R: ToleranceRelation, tol: Tolerance = DEFAULT_TOL) -> PurityVerdict:
    """Decide whether T(P_v) is a pure state of A(R), with a certificate either way."""
    v = _as_vector(v)
    if v.shape[0] != R.n:
        raise ValueError(f"vector has length {v.shape[0]}, relation has n={R.n}")
    norm = np.linalg.norm(v)
    if norm <= tol.abs_eps:
        raise ZeroVector("zero vector")
    if abs(norm - 1) > tol.threshold(1.0) * 1e3:
        raise NotUnit(f"|v| = {norm}, expected 1")
    if r_tolerant(v, R, tol):
        cert = fiber_is_singleton(v, R, tol)
        return PurityVerdict(True, tolerant_vector=v.copy(), certificate=cert)

    comps = _components_on(R, support_of(v, tol))
    first = comps[0]
    rest = sorted(x for c in comps[1:] for x in c)
    t = float(np.sum(np.abs(v[first]) ** 2))
    w1 = np.zeros_like(v)
    w1[first] = v[first] / np.sqrt(t)
    w2 = np.zeros_like(v)
    w2[rest] = v[rest] / np.sqrt(1 - t)
    rho1, rho2 = projector(w1), projector(w2)
    t1, t2 = mask_matrix(rho1, R), mask_matrix(rho2, R)
    target = mask_matrix(projector(v), R)
    if np.abs(t * t1 + (1 - t) * t2 - target).max() > tol.threshold(1.0) * 10:
        raise InvariantViolation("convex split does not reproduce T(P_v)")
    if np.abs(t1 - t2).max() <= tol.threshold(1.0):
        raise InvariantViolation("convex split is trivial")
    parts = ([x + 1 for x in first], [x + 1 for x in rest])
    return PurityVerdict(False, decomposition=Decomposition(t, rho1, rho2, parts))


# weak positivity


def _graph(R: ToleranceRelation) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(R.n))
    G.add_edges_from((i - 1, j - 1) for i, j in R.edges)
    return G


def clique_blocks_psd(a, R: ToleranceRelation, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Necessary condition for a >~ 0: every maximal-clique principal block is PSD.

    Sufficient as well when the graph of R is chordal.
    """
    for clique in nx.find_cliques(_graph(R)):
        idx = sorted(clique)
        if not is_psd(a[np.ix_(idx, idx)], tol):
            return False
    return True


def chordal_psd_completion(a, R: ToleranceRelation, tol: Tolerance = DEFAULT_TOL) -> Optional[np.ndarray]:
    """PSD completion for a chordal pattern, or None if a clique block fails.

    Non-edges are added one at a time so the pattern stays chordal; the new
    entry lies in a single maximal clique K and is set to the max-determinant
    value a[u, S] a[S, S]^+ a[S, v], S = K minus {u, v}.
    """
    a = np.asarray(a, dtype=complex)
    G = _graph(R)
    if not nx.is_chordal(G):
        raise ValueError("pattern is not chordal")
    if not clique_blocks_psd(a, R, tol):
        return None
    b = mask_matrix(a, R).astype(complex)
    comp_of = {}
    for c, comp in enumerate(nx.connected_components(G)):
        for x in comp:
            comp_of[x] = c
    # entries between components stay zero (block-diagonal completion)
    pending = [(u, v) for u, v in itertools.combinations(range(R.n), 2)
               if not G.has_edge(u, v) and comp_of[u] == comp_of[v]]
    while pending:
        progressed = False
        remaining = []
        for u, v in pending:
            G.add_edge(u, v)
            if not nx.is_chordal(G):
                G.remove_edge(u, v)
                remaining.append((u, v))
                continue
            S = sorted(set(G[u]) & set(G[v]))
            if S:
                x = b[u, S] @ np.linalg.pinv(b[np.ix_(S, S)], hermitian=True) @ b[S, v]
            else:
                x = 0
            b[u, v] = x
            b[v, u] = np.conj(x)
            progressed = True
        if not progressed:
            raise InvariantViolation("could not extend a chordal pattern")
        pending = remaining
    return b


def _alternating_projections(a, R: ToleranceRelation, tol: Tolerance, max_iter: int):
    """Alternate between the slice {b : T(b) = a} and the cone {b >= mu}.

    The margin mu shrinks in stages so strictly feasible inputs terminate
    with an exactly PSD slice point.
    """
    n = R.n
    mask = R.mask
    scale = max(np.trace(a).real / n, np.abs(a).max(), tol.abs_eps)
    margins = [1e-2 * scale, 1e-4 * scale, 1e-6 * scale, 0.0]
    per_stage = max(1, max_iter // len(margins))
    b = np.where(mask, a, 0).astype(complex)
    it = 0
    residual = np.inf
    for mu in margins:
        for _ in range(per_stage):
            it += 1
            w, V = np.linalg.eigh(b)
            if w[0] >= -tol.threshold(np.abs(w).max()):
                return b, it, 0.0
            p = (V * np.maximum(w, mu)) @ V.conj().T
            residual = float(np.abs(p - np.where(mask, a, p)).max())
            b = np.where(mask, a, p)
            b = (b + b.conj().T) / 2
    w = np.linalg.eigvalsh(b)
    if w[0] >= -tol.threshold(np.abs(w).max()):
        return b, it, 0.0
    return None, it, residual


def is_weak_positive(a: AlgebraElement, tol: Tolerance = DEFAULT_TOL, max_iter: int = 5000) -> Optional[np.ndarray]:
    """Return a PSD b with T(b) = a, or None when a is provably not weakly positive.

    Chordal patterns are decided exactly by the clique criterion. Otherwise a
    failed clique block refutes, and alternating projections may certify;
    :class:`Undecided` is raised when neither happens within ``max_iter`` steps.
    """
    m = a.mat
    R = a.relation
    if not is_hermitian(m, tol):
        raise NotHermitian("weak positivity is defined for Hermitian elements")
    m = (m + m.conj().T) / 2
    if is_psd(m, tol):
        return np.array(a.mat)
    if nx.is_chordal(_graph(R)):
        b = chordal_psd_completion(m, R, tol)
        if b is None:
            return None
        if not is_psd(b, Tolerance(tol.rel_eps * 10, tol.abs_eps * 10)):
            raise InvariantViolation("chordal completion is not PSD")
        return b
    if not clique_blocks_psd(m, R, tol):
        return None
    b, iters, residual = _alternating_projections(m, R, tol, max_iter)
    if b is None:
        raise Undecided(
            f"alternating projections did not certify within {iters} steps (residual {residual:.3g})",
            iterations=iters,
            residual=residual,
        )
    return b


@dataclass(frozen=True)
class WeakDensityMatrix:
    element: AlgebraElement
    certificate: np.ndarray

    def __post_init__(self):
        tol = DEFAULT_TOL
        if abs(np.trace(self.element.mat) - 1) > 1e-9:
            raise InvariantViolation("weak density matrix must have trace 1")
        if not is_psd(self.certificate, tol):
            raise InvariantViolation("certificate is not PSD")
        if np.abs(mask_matrix(self.certificate, self.element.relation) - self.element.mat).max() > 1e-9:
            raise InvariantViolation("certificate does not truncate to the element")


def weak_density_matrix(a: AlgebraElement, tol: Tolerance = DEFAULT_TOL) -> WeakDensityMatrix:
    c = is_weak_positive(a, tol)
    if c is None:
        raise NotWeaklyPositive("element is not weakly positive")
    return WeakDensityMatrix(a, c)


def decompose_weak_positive(a: AlgebraElement, certificate=None, tol: Tolerance = DEFAULT_TOL) -> list[AlgebraElement]:
    """Write a >~ 0 as a sum of b_i * b_i^* with every b_i in A(R).

    Needs a dominant vertex j0 in each component: each rank-one piece v v^* of
    the certificate becomes b = v placed in column j0, which is supported on R.
    """
    R = a.relation
    comps = connected_components(R)
    doms = dominant_vertices(R)
    for comp, dom in zip(comps, doms):
        if not dom:
            raise NoDominantVertex(f"component {comp} has no dominant vertex")
    if certificate is None:
        certificate = is_weak_positive(a, tol)
        if certificate is None:
            raise NotWeaklyPositive("element is not weakly positive")
    c = np.asarray(certificate, dtype=complex)
    if np.abs(mask_matrix(c, R) - a.mat).max() > tol.threshold(np.abs(a.mat).max()) * 10:
        raise NotWeaklyPositive("certificate does not truncate to a")

    out = []
    for comp, dom in zip(comps, doms):
        idx = np.array(comp) - 1
        j0 = dom[0] - 1
        block = c[np.ix_(idx, idx)]
        w, V = np.linalg.eigh((block + block.conj().T) / 2)
        for lam, u in zip(w, V.T):
            if lam <= 0:
                continue
            b = np.zeros((R.n, R.n), dtype=complex)
            b[idx, j0] = np.sqrt(lam) * u
            out.append(AlgebraElement(R, b))

    total = np.zeros((R.n, R.n), dtype=complex)
    for b in out:
        total += star(b, involution(b)).mat
    if np.abs(total - a.mat).max() > max(1e-9, tol.threshold(np.abs(a.mat).max()) * 100):
        raise InvariantViolation("sum of b b* does not reassemble a")
    return out


@dataclass(frozen=True)
class FiberMember:
    u: complex
    rho: np.ndarray


def nonpure_fiber_family(R: ToleranceRelation, us=(0, 1, 1j)) -> Optional[list[FiberMember]]:
    """Density matrices rho_u on an unrelated pair x !~ z, all with the same truncation.

    rho_u = (E_xx + E_zz + u E_xz + conj(u) E_zx) / 2. It is a rank-one
    projector only for |u| = 1 (rho_0 is mixed). The pair comes from the first
    non-transitive triple when one exists, else the first unrelated pair.
    Returns None iff R is complete, i.e. A(R) is all of M_n.
    """
    if R.is_complete():
        return None
    triple = non_transitive_triple(R)
    if triple is not None:
        x, _, z = triple
    else:
        x, z = next((i, j) for i, j in itertools.combinations(range(1, R.n + 1), 2) if not R.sim(i, j))
    family = []
    for u in us:
        rho = np.zeros((R.n, R.n), dtype=complex)
        rho[x - 1, x - 1] = rho[z - 1, z - 1] = 0.5
        rho[x - 1, z - 1] = u / 2
        rho[z - 1, x - 1] = np.conj(u) / 2
        family.append(FiberMember(complex(u), rho))
    first = mask_matrix(family[0].rho, R)
    for f in family[1:]:
        if not np.array_equal(mask_matrix(f.rho, R), first):
            raise InvariantViolation("rho_u truncations differ")
    return family


@dataclass(frozen=True)
class StateFunctional:
    """phi_x(a) = Tr(x^* a); antilinear in x."""

    density: np.ndarray

    def __call__(self, a) -> complex:
        m = a.mat if isinstance(a, AlgebraElement) else np.asarray(a)
        return hs_inner(self.density, m)


def state_of(x) -> StateFunctional:
    m = x.mat if isinstance(x, AlgebraElement) else np.asarray(x, dtype=complex)
    return StateFunctional(np.array(m, dtype=complex))
