"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` (the lines are written to the
terminal even when output is captured).
"""

import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
import sympy

from tolalg.algebra import AlgebraElement, associativity_report, involution, mask_matrix, star, truncate
from tolalg.circle import (
    Fejer,
    PartialSum,
    TorusElement,
    TrigPolynomial,
    circle_truncate,
    evaluate,
    star_power,
    torus_star,
    trig_star,
    u,
)
from tolalg.errors import NoDominantVertex
from tolalg.matrix import is_psd, projector, rank
from tolalg.povm import (
    apply_povm,
    circulant_spectrum,
    is_informationally_complete,
    led_povm,
    pure_fiber_check,
)
from tolalg.relation import ToleranceRelation, all_relations, connected_components, dominant_vertices, is_equivalence
from tolalg.states import classify_pure, decompose_weak_positive, nonpure_fiber_family
from tolalg.sweep import grid_vectors

from oracles import basis_associative, brute_transitive, exact_psd, exact_rank, random_truncation_split

PATH3 = ToleranceRelation(3, [(1, 2), (2, 3)])


@pytest.fixture
def verdict(request, pytestconfig):
    """Print one PASS/FAIL line per criterion, then fail the test if needed."""
    reporter = pytestconfig.pluginmanager.getplugin("terminalreporter")

    def _verdict(ok: bool, detail: str = ""):
        line = f"[{'PASS' if ok else 'FAIL'}] {request.node.name}: {detail}"
        if reporter is not None:
            reporter.write_line(line)
        else:
            print(line)
        assert ok, detail

    return _verdict


def test_c01_path_adjacency_cube(verdict):
    a = [[0, 1, 0], [1, 0, 1], [0, 1, 0]]
    left_expected = [[0, 1, 0], [2, 0, 2], [0, 1, 0]]
    right_expected = [[0, 2, 0], [1, 0, 1], [0, 2, 0]]
    el = AlgebraElement(PATH3, a)
    aa = star(el, el)
    left, right = star(aa, el).mat, star(el, aa).mat
    # integer entries are exact in complex128; compare with zero tolerance
    ok = np.array_equal(left, left_expected) and np.array_equal(right, right_expected)
    ok &= np.all(left.imag == 0) and np.all(left.real == np.round(left.real))
    verdict(ok, f"(a*a)*a={left.real.astype(int).tolist()} a*(a*a)={right.real.astype(int).tolist()}")


def test_c02_power_associativity_exhaustive(verdict):
    cases, bad = 0, []
    for n in range(1, 5):
        for R in all_relations(n):
            cases += 1
            rep = associativity_report(R)
            eq = is_equivalence(R)
            truth = brute_transitive(n, R.edges)
            if n <= 3:
                truth_basis = basis_associative(n, R.edges)
            else:
                truth_basis = truth
            if not (rep.associative == rep.power_associative == eq == truth == truth_basis):
                bad.append(R)
    verdict(not bad and cases == 75, f"{cases} relations on n<=4, {len(bad)} disagreements")


def test_c03_truncated_square_not_psd(verdict):
    a = AlgebraElement(PATH3, [[0, 1, 0], [0, 1, 0], [0, 1, 0]])
    p = star(a, involution(a)).mat
    det = sympy.Matrix(p.real.astype(int).tolist()).det()
    ok = np.array_equal(p, [[1, 1, 0], [1, 1, 1], [0, 1, 1]]) and det == -1
    ok &= is_psd(p) is False and exact_psd(p.real.astype(int)) is False
    verdict(ok, f"a*a^* = {p.real.astype(int).tolist()}, det = {det}, is_psd = {is_psd(p)}")


def test_c04_truncation_self_adjoint(verdict):
    rng = np.random.default_rng(4)
    worst, relations = 0.0, 0
    for n in range(1, 7):
        # one batch of 1000 random pairs per n, applied to every relation on n points
        x = rng.normal(size=(1000, n, n)) + 1j * rng.normal(size=(1000, n, n))
        y = rng.normal(size=(1000, n, n)) + 1j * rng.normal(size=(1000, n, n))
        for R in all_relations(n):
            relations += 1
            lhs = np.einsum("kij,kij->k", mask_matrix(x, R).conj(), y)
            rhs = np.einsum("kij,kij->k", x.conj(), mask_matrix(y, R))
            worst = max(worst, float(np.abs(lhs - rhs).max()))
    verdict(worst < 1e-12, f"{relations} relations x 1000 pairs, max |<Tx,y>-<x,Ty>| = {worst:.2e}")


def test_c05_pure_state_characterization(verdict):
    rng = np.random.default_rng(5)
    tol = 1e-9
    checked, problems = 0, []
    for n in range(1, 5):
        vecs = list(grid_vectors(n))
        for R in all_relations(n):
            for v in vecs:
                checked += 1
                res = classify_pure(v, R)
                target = mask_matrix(projector(v), R)
                if res.pure:
                    cert_ok = np.abs(res.certificate.preimage - projector(v)).max() <= tol
                    contradicted = random_truncation_split(v, n, R.edges, rng) is not None
                else:
                    d = res.decomposition
                    t1, t2 = mask_matrix(d.rho1, R), mask_matrix(d.rho2, R)
                    cert_ok = (
                        0 < d.t < 1
                        and is_psd(d.rho1) and is_psd(d.rho2)
                        and abs(np.trace(d.rho1) - 1) <= tol and abs(np.trace(d.rho2) - 1) <= tol
                        and np.abs(d.t * t1 + (1 - d.t) * t2 - target).max() <= tol
                        and np.abs(t1 - t2).max() > tol
                    )
                    # the independent search must also find a split
                    contradicted = random_truncation_split(v, n, R.edges, rng) is None
                if not cert_ok or contradicted:
                    problems.append((R, v, res.pure, cert_ok, contradicted))
    verdict(not problems, f"{checked} (relation, vector) pairs, {len(problems)} problems")


def test_c06_decomposition_needs_dominant_vertex(verdict):
    rng = np.random.default_rng(6)
    worst, with_dom, without_dom, bad = 0.0, 0, 0, []
    for n in range(1, 6):
        for R in all_relations(n):
            if len(connected_components(R)) != 1:
                continue
            if dominant_vertices(R)[0]:
                with_dom += 1
                for _ in range(20):
                    g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
                    a = truncate(g @ g.conj().T, R)
                    bs = decompose_weak_positive(a)
                    total = sum(star(b, involution(b)).mat for b in bs)
                    worst = max(worst, float(np.abs(total - a.mat).max()))
            else:
                without_dom += 1
                try:
                    decompose_weak_positive(truncate(np.ones((n, n)) / n, R))
                    bad.append(R)
                except NoDominantVertex:
                    pass
    ok = worst < 1e-9 and not bad
    verdict(ok, f"{with_dom} relations with a dominant vertex (max error {worst:.1e}), "
                f"{without_dom} without ({len(bad)} not flagged)")


def test_c07_circle_identities(verdict):
    failures = []
    for n in range(2, 9):
        P, F = PartialSum(n), Fejer(n)
        lhs = trig_star(trig_star(u(-1), u(n - 1), P), u(1), P)
        rhs = trig_star(u(-1), trig_star(u(n - 1), u(1), P), P)
        if lhs != u(n - 1) or rhs != TrigPolynomial():
            failures.append(("nonassociative", n))
        f = u(-n + 1) + u(n - 1)
        if circle_truncate(f ** 3, P) != 3 * f or star_power(f, 3, P) != 2 * f:
            failures.append(("partial cube", n))
        if circle_truncate(f ** 3, F) != Fraction(3, n) * f or star_power(f, 3, F) != Fraction(2, n) * f:
            failures.append(("fejer cube", n))
        for k in range(-2 * n, 2 * n + 1):
            w = Fraction(n - abs(k), n) if abs(k) < n else 0
            if circle_truncate(u(k), F) != TrigPolynomial({k: w}):
                failures.append(("fejer law", n, k))
        g = TrigPolynomial({k: 1 + abs(k) for k in range(-n - 1, n + 2)})
        if circle_truncate(circle_truncate(g, P), P) != circle_truncate(g, P):
            failures.append(("partial idempotent", n))
        if circle_truncate(circle_truncate(g, F), F) == circle_truncate(g, F):
            failures.append(("fejer idempotent", n))
    h = circle_truncate((u(1) + u(-1) + TrigPolynomial.constant(1)) ** 2, PartialSum(2))
    at_pi = evaluate(h, math.pi)
    grid_min = evaluate(h, np.linspace(0, 2 * np.pi, 100001)).real.min()
    if h != TrigPolynomial({0: 3, 1: 2, -1: 2}) or abs(at_pi + 1) >= 1e-12 or grid_min < -1 - 1e-12:
        failures.append(("3 + 4 cos t", at_pi, grid_min))
    verdict(not failures, f"n = 2..8, T(f^2)(pi) = {at_pi.real:.15f}, failures: {failures}")


def _random_torus(rng):
    terms = {}
    for _ in range(int(rng.integers(1, 6))):
        j, m = (int(x) for x in rng.integers(-3, 4, size=2))
        terms[j] = terms.get(j, TrigPolynomial()) + TrigPolynomial({m: complex(rng.normal(), rng.normal())})
    return TorusElement(terms)


def test_c08_noncommutative_torus(verdict):
    rng = np.random.default_rng(8)
    comm, assoc = 0.0, 0.0
    U, V = TorusElement.U(), TorusElement.V()
    for theta in (math.sqrt(2) - 1, 0.25):
        diff = torus_star(V, U, theta) - torus_star(U, V, theta).scale(np.exp(2j * np.pi * theta))
        comm = max(comm, diff.max_abs_diff(TorusElement()))
        for _ in range(100):
            F, G, H = (_random_torus(rng) for _ in range(3))
            lhs = torus_star(torus_star(F, G, theta), H, theta)
            rhs = torus_star(F, torus_star(G, H, theta), theta)
            assoc = max(assoc, lhs.max_abs_diff(rhs))
    verdict(comm < 1e-12 and assoc < 1e-10, f"commutation {comm:.1e}, associativity {assoc:.1e}")


def test_c09_led_povm(verdict):
    printed = [[1, 1, 1, 0, 0], [0, 1, 1, 1, 0], [0, 0, 1, 1, 1], [1, 0, 0, 1, 1], [1, 1, 0, 0, 1]]
    P = led_povm(5, 3)
    printed_ok = all(np.array_equal(e * 3, np.diag(q)) for e, q in zip(P.elements, printed))
    cases, ic_bad, spec_bad = 0, [], []
    for n in range(1, 13):
        for k in range(1, n + 1):
            cases += 1
            coprime = math.gcd(n, k) == 1
            rows = [[1 if (j - i) % n < k else 0 for j in range(n)] for i in range(n)]
            ic = is_informationally_complete(led_povm(n, k)).ic
            if ic != coprime or (exact_rank(rows) == n) != coprime:
                ic_bad.append((n, k))
            if any(z == 0 for z in circulant_spectrum(n, k)) == coprime:
                spec_bad.append((n, k))
    trips, trip_bad = 0, []
    for n in range(2, 11):
        for k in range(1, n):
            Pk = led_povm(n, k)
            for i in range(1, n + 1):
                trips += 1
                rho = np.zeros((n, n))
                rho[i - 1, i - 1] = 1
                if pure_fiber_check(apply_povm(rho, Pk), n, k) != i:
                    trip_bad.append((n, k, i))
    ok = printed_ok and not ic_bad and not spec_bad and not trip_bad
    verdict(ok, f"printed Q_i {'ok' if printed_ok else 'differ'}; {cases} (n,k) pairs, IC mismatches {ic_bad}, "
                f"spectrum mismatches {spec_bad}; {trips} round trips, {len(trip_bad)} failed")


def test_c10_rho_u_family(verdict):
    fam = nonpure_fiber_family(PATH3, us=(0, 1, 1j))
    ranks = {f.u: rank(f.rho) for f in fam}
    psd = all(is_psd(f.rho) for f in fam)
    traces = all(abs(np.trace(f.rho) - 1) < 1e-15 for f in fam)
    distinct = all(not np.array_equal(f.rho, g.rho) for f, g in itertools.combinations(fam, 2))
    t0 = mask_matrix(fam[0].rho, PATH3)
    same = max(np.abs(mask_matrix(f.rho, PATH3) - t0).max() for f in fam) < 1e-15
    rank_one = all(r == 1 for r in ranks.values())
    detail = (f"ranks {ranks} (rho_0 = diag(1/2, 0, 1/2) is mixed, rank-1 needs |u| = 1); "
              f"PSD {psd}, trace 1 {traces}, distinct {distinct}, equal truncations {same}")
    verdict(rank_one and psd and traces and distinct and same, detail)


def test_c10b_rho_u_family_unimodular(verdict):
    """Same family with |u| = 1 only: distinct pure states sharing one truncation."""
    fam = nonpure_fiber_family(PATH3, us=(1, 1j, -1))
    ok = all(rank(f.rho) == 1 and is_psd(f.rho) and abs(np.trace(f.rho) - 1) < 1e-15 for f in fam)
    ok &= all(not np.array_equal(f.rho, g.rho) for f, g in itertools.combinations(fam, 2))
    t0 = mask_matrix(fam[0].rho, PATH3)
    ok &= max(np.abs(mask_matrix(f.rho, PATH3) - t0).max() for f in fam) < 1e-15
    verdict(ok, "u in {1, i, -1}: rank-1 PSD trace-1, pairwise distinct, identical truncations")
