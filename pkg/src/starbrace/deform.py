"""Right distributors and deformed solutions on dual weak left *-braces."""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .report import Check
from .semigroup import projections
from .solutions import PairMap, first_difference, is_ybe_solution
from .tables import NotDistributor, StarBraceStructure, Witness, first_mismatch

VARIANTS = ("r", "rcheck", "barhat", "barcheck")


def thread_count() -> int:
    """Worker cap from ``STARBRACE_THREADS`` (0 or unset: one per CPU)."""
    raw = os.environ.get("STARBRACE_THREADS", "0")
    try:
        k = int(raw)
    except ValueError:
        k = 0
    return k if k > 0 else (os.cpu_count() or 1)


def pmap(fn, items: Iterable) -> list:
    """Ordered parallel map; results come back in input order."""
    items = list(items)
    k = min(thread_count(), len(items))
    if k <= 1:
        return [fn(i) for i in items]
    with ThreadPoolExecutor(max_workers=k) as ex:
        return list(ex.map(fn, items))


@dataclass(frozen=True)
class DistributorSet:
    members: tuple[int, ...]

    def __contains__(self, z: int) -> bool:
        return z in self.members


def distributor_mask(s: StarBraceStructure) -> np.ndarray:
    """``mask[z]`` iff ``(a + b)z = az - z + bz`` for all a, b."""
    A, N, M = s.add.table, s.neg.table, s.mul.table
    n = s.n
    a = np.arange(n)[:, None, None]
    b = np.arange(n)[None, :, None]
    z = np.arange(n)[None, None, :]
    lhs = M[A[a, b], z]
    rhs = A[A[M[a, z], N[z]], M[b, z]]
    return (lhs == rhs).all(axis=(0, 1))


def three_term_distributor_mask(s: StarBraceStructure) -> np.ndarray:
    """``mask[z]`` iff ``(a - b + c)z = az - bz + cz`` for all a, b, c."""
    A, N, M = s.add.table, s.neg.table, s.mul.table
    n = s.n
    a = np.arange(n)[:, None, None]
    b = np.arange(n)[None, :, None]
    c = np.arange(n)[None, None, :]
    abc = A[A[a, N[b]], c]

    def one(z):
        mz = M[:, z]
        return bool(np.array_equal(mz[abc], A[A[mz[a], N[mz[b]]], mz[c]]))

    return np.array(pmap(one, range(n)), dtype=bool)


def right_distributors(s: StarBraceStructure) -> DistributorSet:
    return DistributorSet(tuple(np.flatnonzero(distributor_mask(s)).tolist()))


def distributor_checks(s: StarBraceStructure, decomposition=None) -> list[Check]:
    """Definition vs three-term criterion, closure properties, and (given a
    decomposition) that distributors push down to distributors of lower components."""
    M, St = s.mul.table, s.star.table
    mask = distributor_mask(s)
    members = np.flatnonzero(mask)
    p = np.array(projections(s.multiplicative), dtype=np.intp)
    checks = [
        Check.of("distributors: definition = three-term criterion",
                 first_mismatch("three-term", three_term_distributor_mask(s), mask)),
        Check.of("distributors contain P(S)", first_mismatch("P in D_r", mask[p], np.ones(len(p), bool))),
        Check.of("distributors closed under mul",
                 first_mismatch("z1 z2 in D_r", mask[M[np.ix_(members, members)]],
                                np.ones((len(members), len(members)), bool))),
        Check.of("distributors closed under star",
                 first_mismatch("z* in D_r", mask[St[members]], np.ones(len(members), bool))),
    ]
    if decomposition is not None:
        spec = decomposition.spec
        from .star import all_homs

        homs = all_homs(spec)
        local_masks = [distributor_mask(c) for c in spec.components]
        ok, wit = True, None
        for z in members.tolist():
            d = int(decomposition.class_of[z])
            for xi in range(spec.y_size):
                if spec.leq(xi, d):
                    img = homs[(d, xi)](int(decomposition.coords[z]))
                    if not local_masks[xi][img]:
                        ok = False
                        wit = wit or Witness("phi(z) in D_r(S_xi)", (z, xi), True, False)
        checks.append(Check("distributors map into component distributors", ok, wit))
    return checks


# deformed maps

def _parts(s: StarBraceStructure):
    return s.add.table, s.neg.table, s.mul.table, s.star.table


def hat_core(s: StarBraceStructure, z: int) -> np.ndarray:
    """``core[a, b] = -az + abz``."""
    A, N, M, _ = _parts(s)
    return A[N[M[:, z]][:, None], M[M, z]]


def check_core(s: StarBraceStructure, z: int) -> np.ndarray:
    """``core[a, b] = ab - az + z``."""
    A, N, M, _ = _parts(s)
    return A[A[M, N[M[:, z]][:, None]], z]


def _complete(s: StarBraceStructure, first: np.ndarray) -> PairMap:
    # second component (first)* a b
    M, St = s.mul.table, s.star.table
    return PairMap.from_components(first, M[St[first], M])


def sigma(s: StarBraceStructure, z: int) -> np.ndarray:
    """``sigma[a, b] = z*z (-az + abz) z*z``."""
    M, St = s.mul.table, s.star.table
    zz = M[St[z], z]
    return M[M[zz, hat_core(s, z)], zz]


def deform_r(s: StarBraceStructure, z: int) -> PairMap:
    return _complete(s, sigma(s, z))


def deform_r_check(s: StarBraceStructure, z: int) -> PairMap:
    """``((ab - az + z) z z*, ((ab - az + z) z z*)* ab)``."""
    M, St = s.mul.table, s.star.table
    return _complete(s, M[check_core(s, z), M[z, St[z]]])


def deform_bar(s: StarBraceStructure, z: int, variant: str) -> PairMap:
    if variant == "hat":
        return _complete(s, hat_core(s, z))
    if variant == "check":
        return _complete(s, check_core(s, z))
    raise ValueError(f"unknown bar variant {variant!r}")


def deform(s: StarBraceStructure, z: int, variant: str) -> PairMap:
    """Dispatch on the command-line variant names."""
    if variant == "r":
        return deform_r(s, z)
    if variant == "rcheck":
        return deform_r_check(s, z)
    if variant == "barhat":
        return deform_bar(s, z, "hat")
    if variant == "barcheck":
        return deform_bar(s, z, "check")
    raise ValueError(f"unknown variant {variant!r}")


# verifiers

def verify_distributor_equivalence(s: StarBraceStructure) -> list[Check]:
    """For every z: r_z is a solution exactly when z is a right distributor.

    Both sides are computed independently; the distributor set is also
    recomputed by the three-term criterion.
    """
    mask = distributor_mask(s)
    three = three_term_distributor_mask(s)
    reports = pmap(lambda z: is_ybe_solution(deform_r(s, z)), range(s.n))
    checks = [Check.of("distributors: definition = three-term criterion",
                       first_mismatch("three-term", three, mask))]
    for z, rep in enumerate(reports):
        checks.append(Check(
            f"z={z}: r_z solution iff distributor",
            rep.is_solution == bool(mask[z]),
            None if rep.is_solution == bool(mask[z]) else Witness(
                "solution iff distributor", (z,), bool(mask[z]), rep.is_solution),
            detail={"z": z, "distributor": bool(mask[z]), "solution": rep.is_solution},
        ))
    return checks


def _require_distributor(s: StarBraceStructure, z: int) -> None:
    if not distributor_mask(s)[z]:
        raise NotDistributor(f"{z} is not a right distributor")


def verify_check_relations(s: StarBraceStructure, z: int) -> list[Check]:
    """``rcheck_z`` is a solution and r_z, rcheck_{z*} satisfy the three
    regular-pair relations as exact table equalities."""
    _require_distributor(s, z)
    zs = int(s.star.table[z])
    r = deform_r(s, z)
    rc = deform_r_check(s, z)
    rcs = deform_r_check(s, zs)
    rep = is_ybe_solution(rc)
    return [
        Check(f"z={z}: rcheck_z solution", rep.is_solution, rep.witness),
        Check.of(f"z={z}: r rcheck* r = r", first_difference("r rc r = r", r @ rcs @ r, r)),
        Check.of(f"z={z}: rcheck* r rcheck* = rcheck*", first_difference("rc r rc = rc", rcs @ r @ rcs, rcs)),
        Check.of(f"z={z}: r rcheck* = rcheck* r", first_difference("r rc = rc r", r @ rcs, rcs @ r)),
    ]


def verify_sigma_tau(s: StarBraceStructure, z: int) -> list[Check]:
    """Sandwich identities of sigma^z and tau^z, the anti-homomorphism of tau^z,
    and the homomorphism criterion for sigma^z (quantified over all of S)."""
    _require_distributor(s, z)
    A, _, M, St = _parts(s)
    n = s.n
    zs = int(St[z])
    sz = sigma(s, z)  # sz[a, b] = sigma^z_a(b)
    szs = sigma(s, zs)
    tz = deform_r(s, z).rho_table  # tz[b, a] = tau^z_b(a)
    a = np.arange(n)[:, None]
    b = np.arange(n)[None, :]
    sa = St[a]
    checks = [
        Check.of(f"z={z}: sigma_a sigma*_a* sigma_a = sigma_a",
                 first_mismatch("s s* s = s", sz[a, szs[sa, sz[a, b]]], sz[a, b])),
        Check.of(f"z={z}: sigma*_a* sigma_a sigma*_a* = sigma*_a*",
                 first_mismatch("s* s s* = s*", szs[sa, sz[a, szs[sa, b]]], szs[sa, b])),
        Check.of(f"z={z}: tau_a* tau_a tau_a* = tau_a*",
                 first_mismatch("t* t t* = t*", tz[sa, tz[a, tz[sa, b]]], tz[sa, b])),
        Check.of(f"z={z}: tau_a tau_a* = tau_a* tau_a",
                 first_mismatch("t t* = t* t", tz[a, tz[sa, b]], tz[sa, tz[a, b]])),
        Check.of(f"z={z}: tau_a tau_a* tau_a = tau_a (companion, reported)",
                 first_mismatch("t t* t = t", tz[a, tz[sa, tz[a, b]]], tz[a, b]), asserted=False),
        Check.of(f"z={z}: sigma_a sigma*_a* = sigma*_a* sigma_a (not expected in general, reported)",
                 first_mismatch("s s* = s* s", sz[a, szs[sa, b]], szs[sa, sz[a, b]]), asserted=False),
    ]
    x = np.arange(n)[:, None, None]
    y = np.arange(n)[None, :, None]
    c = np.arange(n)[None, None, :]
    checks.append(Check.of(f"z={z}: tau anti-homomorphism",
                           first_mismatch("tau_xy = tau_y tau_x", tz[M[x, y], c], tz[y, tz[x, c]])))
    hom = bool(np.array_equal(sz[M[x, y], c], sz[x, sz[y, c]]))
    commutes = bool(np.array_equal(M[:, z], A[z, :]))
    checks.append(Check(f"z={z}: sigma homomorphism iff cz = z + c", hom == commutes,
                        detail={"homomorphism": hom, "cz = z + c": commutes}))
    return checks


# the "not equal in general" relations among barred and unbarred maps, by pairing
def _bar_relations(s: StarBraceStructure, z: int) -> dict[str, tuple[PairMap, PairMap]]:
    zs = int(s.star.table[z])
    maps = {
        "r": deform_r(s, z),
        "rbar": deform_bar(s, z, "hat"),
        "rc*": deform_r_check(s, zs),
        "rcbar*": deform_bar(s, zs, "check"),
    }
    out = {}
    for x in ("r", "rbar"):
        for y in ("rc*", "rcbar*"):
            X, Y = maps[x], maps[y]
            out[f"{x} {y} {x} = {x}"] = (X @ Y @ X, X)
            out[f"{y} {x} {y} = {y}"] = (Y @ X @ Y, Y)
            out[f"{x} {y} = {y} {x}"] = (X @ Y, Y @ X)
    out["r rcbar* = rc* rbar"] = (maps["r"] @ maps["rcbar*"], maps["rc*"] @ maps["rbar"])
    return out


BAR_CLAIMS = (
    "rbar rcbar* rbar = rbar",
    "rbar rcbar* = rcbar* rbar",
    "rbar rc* rbar = rbar",
    "r rcbar* = rc* rbar",
    "rbar rc* = rc* rbar",
)


def verify_bar_solutions(s: StarBraceStructure, z: int) -> list[Check]:
    _require_distributor(s, z)
    out = []
    for variant in ("hat", "check"):
        rep = is_ybe_solution(deform_bar(s, z, variant))
        out.append(Check(f"z={z}: bar {variant} solution", rep.is_solution, rep.witness))
    return out


def search_bar_relations(corpus) -> tuple[list[dict], dict[str, Optional[dict]]]:
    """Over ``(name, structure)`` pairs and every distributor z: bar maps must be
    solutions (asserted), and for each pairing relation the first counterexample
    is collected.

    Returns the first counterexample per relation in a flat list restricted to
    the stated claims, plus the full per-pairing table (``None`` = held everywhere).
    """
    per_pairing: dict[str, Optional[dict]] = {}
    for name, s in corpus:
        for z in right_distributors(s).members:
            for label, (lhs, rhs) in _bar_relations(s, z).items():
                if per_pairing.get(label) is not None:
                    continue
                res = first_difference(label, lhs, rhs)
                per_pairing.setdefault(label, None)
                if not res:
                    per_pairing[label] = {"claim": label, "structure": name, "z": int(z),
                                          "inputs": list(res.inputs),
                                          "expected": list(res.expected), "actual": list(res.actual)}
    witnesses = [per_pairing[c] for c in BAR_CLAIMS if per_pairing.get(c) is not None]
    return witnesses, per_pairing
