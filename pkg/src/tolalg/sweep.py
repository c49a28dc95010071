"""Exhaustive small-case cross-checks, exposed as ``tolalg sweep``."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .algebra import associativity_report, mask_matrix
from .matrix import projector
from .povm import apply_povm, circulant_spectrum, is_informationally_complete, led_ic_predicate, led_povm, pure_fiber_check
from .relation import all_relations, is_equivalence
from .states import classify_pure

RTOL_MAX_N = 4
GRID_ENTRIES = (0, 1, -1, 1j)


@dataclass
class CheckResult:
    name: str
    cases: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"check": self.name, "cases": self.cases, "passed": self.passed, "failures": self.failures[:20]}


def check_rpowerass(max_n: int) -> CheckResult:
    res = CheckResult("rpowerass")
    for n in range(1, max_n + 1):
        for R in all_relations(n):
            res.cases += 1
            rep = associativity_report(R)
            eq = is_equivalence(R)
            if not (rep.associative == rep.power_associative == eq):
                res.failures.append({"relation": R.to_json(), "associative": rep.associative,
                                     "power_associative": rep.power_associative, "equivalence": eq})
    return res


def grid_vectors(n: int):
    for entries in itertools.product(GRID_ENTRIES, repeat=n):
        v = np.array(entries, dtype=complex)
        norm = np.linalg.norm(v)
        if norm > 0:
            yield v / norm


def check_rtol(max_n: int) -> CheckResult:
    """classify_pure certificates over the {0, 1, -1, i} grid (n capped at 4)."""
    res = CheckResult("rtol")
    for n in range(1, min(max_n, RTOL_MAX_N) + 1):
        vecs = list(grid_vectors(n))
        for R in all_relations(n):
            for v in vecs:
                res.cases += 1
                try:
                    verdict = classify_pure(v, R)
                    if verdict.pure:
                        ok = np.allclose(verdict.certificate.preimage, projector(v), atol=1e-9)
                    else:
                        d = verdict.decomposition
                        target = mask_matrix(projector(v), R)
                        mix = d.t * mask_matrix(d.rho1, R) + (1 - d.t) * mask_matrix(d.rho2, R)
                        ok = np.allclose(mix, target, atol=1e-9) and 0 < d.t < 1
                except Exception as exc:  # report, never abort the sweep
                    ok = False
                    verdict = exc
                if not ok:
                    res.failures.append({"relation": R.to_json(), "vector": [[z.real, z.imag] for z in v],
                                         "error": repr(verdict)})
    return res


def check_povm(max_n: int) -> CheckResult:
    res = CheckResult("povm")
    for n in range(1, max_n + 1):
        for k in range(1, n + 1):
            res.cases += 1
            P = led_povm(n, k)
            ic = is_informationally_complete(P).ic
            pred = led_ic_predicate(n, k)
            has_zero = any(z == 0 for z in circulant_spectrum(n, k))
            roundtrip = True
            if k < n:
                for i in range(1, n + 1):
                    rho = np.zeros((n, n))
                    rho[i - 1, i - 1] = 1
                    if pure_fiber_check(apply_povm(rho, P), n, k) != i:
                        roundtrip = False
            if not (ic == pred and has_zero == (not pred) and roundtrip):
                res.failures.append({"n": n, "k": k, "ic": ic, "gcd_predicate": pred,
                                     "spectrum_zero": has_zero, "roundtrip": roundtrip})
    return res


CHECKS = {"rpowerass": check_rpowerass, "rtol": check_rtol, "povm": check_povm}
RELATION_CHECKS = {"rpowerass", "rtol"}
