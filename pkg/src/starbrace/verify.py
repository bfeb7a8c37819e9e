"""Check stacks and theorem-level verifiers over single structures and corpora."""
from __future__ import annotations

from typing import Iterable

from .deform import (
    BAR_CLAIMS,
    distributor_checks,
    right_distributors,
    search_bar_relations,
    verify_bar_solutions,
    verify_check_relations,
    verify_distributor_equivalence,
    verify_sigma_tau,
)
from .report import Check, RunReport
from .semigroup import check_regular_star, classify
from .skew import SkewBrace, check_skew_brace, verify_skew_deformation
from .star import (
    build_square_brace,
    check_dual,
    check_weak_star_brace,
    decompose,
    is_square,
    square_to_components,
    weak_star_identity_checks,
)
from .tables import NotDual, StarBraceStructure, StarSemigroup, Witness, check_homomorphism

LEVELS = ("semigroup", "weakstar", "dual", "square")
THEOREMS = ("4.6", "4.7", "4.9", "2.9", "remark4.8")


def classify_checks(sg: StarSemigroup, label: str = "mul") -> list[Check]:
    """Class flags (reported) and identity/definition agreement (asserted)."""
    rep = classify(sg)
    out = [Check(f"{label}: class {flag}", value, asserted=False)
           for flag, value in rep.flags().items()]
    for crit, (ident, defn) in rep.agreement.items():
        out.append(Check(f"{label}: {crit} identity = definition", ident == defn,
                         detail={"identity": ident, "definition": defn}))
    return out


def axiom_checks(s: StarBraceStructure, level: str) -> list[Check]:
    """The axiom stack up to ``level`` plus the classification report."""
    if level not in LEVELS:
        raise ValueError(f"unknown level {level!r}")
    upto = LEVELS.index(level)
    checks = [Check.of("mul: regular *-semigroup", check_regular_star(s.multiplicative))]
    checks += classify_checks(s.multiplicative, "mul")
    if upto >= 1:
        if not s.has_add:
            checks.append(Check.of("weak left *-brace", Witness("has additive structure", (), "add/neg", "missing")))
            return checks
        checks.append(Check.of("add: regular *-semigroup", check_regular_star(s.additive)))
        weak = check_weak_star_brace(s)
        checks.append(Check.of("weak left *-brace", weak))
        if weak is not True:
            return checks
        checks += classify_checks(s.additive, "add")
        checks += weak_star_identity_checks(s)
    if upto >= 2:
        dual = check_dual(s)
        checks.append(Check.of("dual: x - x = x* x and consequences", dual))
        if dual is not True:
            return checks
    if upto >= 3:
        checks.append(Check("square: multiplicative reduct completely simple", is_square(s)))
    return checks


def require_dual(s: StarBraceStructure) -> None:
    res = check_weak_star_brace(s) if s.has_add else Witness("has additive structure", (), "add/neg", "missing")
    if res is True:
        res = check_dual(s)
    if res is not True:
        raise NotDual(f"not a dual weak left *-brace: {res}")


def structure_theorem_checks(s: StarBraceStructure):
    """Decompose and rebuild; for square structures also coordinatise and rebuild."""
    d = decompose(s)
    checks = [Check(f"decompose: {c.name}", c.passed, c.witness, c.asserted, c.detail) for c in d.checks]
    if is_square(s):
        spec, psi = square_to_components(s)
        rebuilt = build_square_brace(spec)
        res = check_homomorphism(psi, rebuilt, s) if psi.is_bijective() else Witness(
            "coordinate map bijective", (), True, False)
        checks.append(Check.of("square: rebuilt from coordinates is isomorphic", res,
                               index_set=spec.index_set_size, group_order=spec.group.n))
    return checks, d


def as_skew_brace(s: StarBraceStructure):
    """The structure as a skew brace, or ``None`` when it is not one."""
    try:
        g = SkewBrace.from_star_brace(s)
    except ValueError:
        return None
    return g if check_skew_brace(g) is True else None


def skew_deformation_checks(g: SkewBrace) -> list[Check]:
    res = check_skew_brace(g)
    checks = [Check.of("skew left brace", res)]
    if res is not True:
        return checks
    for t in range(g.n):
        checks += [Check(f"t={t}: {c.name}", c.passed, c.witness, c.asserted, c.detail)
                   for c in verify_skew_deformation(g, t)]
    return checks


def theorem_checks(s: StarBraceStructure, theorem: str, name: str = "input") -> tuple[list[Check], list[dict]]:
    """Run one named verifier over every applicable parameter of ``s``."""
    if theorem == "2.9":
        try:
            g = SkewBrace.from_star_brace(s)
        except ValueError:
            return [Check.of("skew left brace", Witness("multiplicative identity", (), "exists", "none"))], []
        return skew_deformation_checks(g), []
    require_dual(s)
    members = right_distributors(s).members
    if theorem == "4.6":
        return verify_distributor_equivalence(s) + distributor_checks(s), []
    if theorem == "4.7":
        return [c for z in members for c in verify_check_relations(s, z)], []
    if theorem == "4.9":
        return [c for z in members for c in verify_sigma_tau(s, z)], []
    if theorem == "remark4.8":
        checks = [c for z in members for c in verify_bar_solutions(s, z)]
        witnesses, per_pairing = search_bar_relations([(name, s)])
        records = []
        for label in sorted(per_pairing):
            w = per_pairing[label]
            records.append({"pairing": label, "stated_inequality": label in BAR_CLAIMS and
                            label != "rbar rc* = rc* rbar", "counterexample": w})
        equal = per_pairing.get("rbar rc* = rc* rbar")
        checks.append(Check("rbar rc* = rc* rbar", equal is None, asserted=True,
                            detail={} if equal is None else {"counterexample": equal}))
        return checks, records
    raise ValueError(f"unknown theorem {theorem!r}")


def run_suite(corpus: Iterable[tuple[str, StarBraceStructure]]) -> list[RunReport]:
    """Every verifier over every corpus structure, in corpus order."""
    from .formats import structure_digest

    reports = []
    for name, s in corpus:
        digest = structure_digest(s)
        rep = RunReport(f"suite {name} structure", digest)
        rep.add(axiom_checks(s, "dual"))
        checks, _ = structure_theorem_checks(s)
        rep.add(checks)
        reports.append(rep)
        for theorem in THEOREMS:
            if theorem == "2.9" and as_skew_brace(s) is None:
                continue
            checks, records = theorem_checks(s, theorem, name)
            rep = RunReport(f"suite {name} {theorem}", digest, checks, extra=records)
            reports.append(rep)
    return reports
