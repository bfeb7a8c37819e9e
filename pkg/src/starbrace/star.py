"""Weak and dual weak left *-braces: axiom checks, square braces over I x G x I,
strong semilattices of square braces, and the decomposition of a dual weak
*-brace into such a semilattice."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .report import Check
from .semigroup import (
    check_regular_star,
    classify,
    green_relations,
    projections,
)
from .skew import SkewBrace, brace_axiom
from .tables import (
    ElementMap,
    InvalidSpec,
    NotDual,
    NotSquare,
    OpTable,
    StarBraceStructure,
    Witness,
    check_homomorphism,
    first_false,
    first_mismatch,
    is_associative,
    make_binary_op,
)

DualWeakStarBrace = StarBraceStructure


def check_weak_star_brace(s: StarBraceStructure) -> bool | Witness:
    if not s.has_add:
        return Witness("has additive structure", (), "add/neg tables", "missing")
    for part, sg in (("add", s.additive), ("mul", s.multiplicative)):
        res = check_regular_star(sg)
        if not res:
            return Witness(f"{part}: {res.check_name}", res.inputs, res.expected, res.actual)
    res = brace_axiom(s.add.table, s.neg.table, s.mul.table)
    if not res:
        return res
    A, N, M, St = s.add.table, s.neg.table, s.mul.table, s.star.table
    idx = np.arange(s.n)
    return first_mismatch("-x + x = x x*", A[N, idx], M[idx, St])


def check_dual(s: StarBraceStructure) -> bool | Witness:
    """``x - x = x* x`` for all x, plus the consequences that must follow from it.

    Assumes ``check_weak_star_brace`` has passed.
    """
    A, N, M, St = s.add.table, s.neg.table, s.mul.table, s.star.table
    idx = np.arange(s.n)
    res = first_mismatch("x - x = x* x", A[idx, N], M[St, idx])
    if not res:
        return res
    report = classify(s.multiplicative)
    for flag in ("is_completely_regular", "is_orthodox", "is_locally_inverse"):
        if not getattr(report, flag):
            return Witness(f"dual consequence: mul {flag[3:]}", (), True, False)
    p = np.array(projections(s.multiplicative), dtype=np.intp)
    res = first_mismatch("x e = e + x", M[idx[:, None], p[None, :]], A[p[None, :], idx[:, None]])
    if not res:
        x, k = res.inputs
        return Witness(res.check_name, (x, int(p[k])), res.expected, res.actual)
    return True


def is_square(s: StarBraceStructure) -> bool:
    return classify(s.multiplicative).is_completely_simple


# identity suite for weak *-braces

def _set_check(name: str, sets: dict[str, set]) -> Check:
    values = list(sets.values())
    ok = all(v == values[0] for v in values)
    return Check(name, ok, detail={} if ok else {k: sorted(v) for k, v in sets.items()})


def weak_star_identity_checks(s: StarBraceStructure) -> list[Check]:
    """All-element scans of the identities every weak left *-brace satisfies."""
    A, N, M, St = s.add.table, s.neg.table, s.mul.table, s.star.table
    n = s.n
    idx = np.arange(n)
    a = idx[:, None]
    b = idx[None, :]
    p = np.array(projections(s.multiplicative), dtype=np.intp)
    checks = [
        _set_check("projection sets coincide", {
            "x - x": set(A[idx, N].tolist()),
            "-x + x": set(A[N, idx].tolist()),
            "x x*": set(M[idx, St].tolist()),
            "x* x": set(M[St, idx].tolist()),
            "P(S,+)": set(projections(s.additive)),
            "P(S,.)": set(p.tolist()),
        }),
        Check.of("a** = a", first_mismatch("a** = a", St[St], idx)),
        Check.of("a a* a = a", first_mismatch("a a* a = a", M[M[idx, St], idx], idx)),
        Check.of("(ab)* = b* a*", first_mismatch("(ab)* = b* a*", St[M], M[St[b], St[a]])),
        Check.of("a* a a* = a*", first_mismatch("a* a a* = a*", M[M[St, idx], St], St)),
        Check.of("-(-a) = a", first_mismatch("-(-a) = a", N[N], idx)),
        Check.of("a - a + a = a", first_mismatch("a - a + a = a", A[A[idx, N], idx], idx)),
        Check.of("-(a + b) = -b - a", first_mismatch("-(a+b) = -b - a", N[A], A[N[b], N[a]])),
        Check.of("-a + a - a = -a", first_mismatch("-a + a - a = -a", A[A[N, idx], N], N)),
    ]
    proj_forms = {
        "e*": St[p], "-e": N[p], "ee": M[p, p], "e+e": A[p, p], "e-e": A[p, N[p]],
        "ee*": M[p, St[p]], "e*e": M[St[p], p], "-e+e": A[N[p], p],
    }
    for label, vals in proj_forms.items():
        checks.append(Check.of(f"projection: {label} = e", first_mismatch(f"{label} = e", vals, p)))
    e = p[None, :]
    x = idx[:, None]
    y = idx[None, :]
    checks += [
        Check.of("-x + xe = -xe + x", first_mismatch("-x + xe = -xe + x", A[N[x], M[x, e]], A[N[M[x, e]], x])),
        Check.of("ex = x + e", first_mismatch("ex = x + e", M[e, x], A[x, e])),
        Check.of("x(y - y)y = xy", first_mismatch("x(y-y)y = xy", M[M[x, A[y, N[y]]], y], M[x, y])),
    ]
    ee = p[:, None, None]
    xx = idx[None, :, None]
    yy = idx[None, None, :]
    checks.append(Check.of("e + x + y = e + x + e + y",
                           first_mismatch("e+x+y = e+x+e+y", A[A[ee, xx], yy], A[A[A[ee, xx], ee], yy])))
    add_rep = classify(s.additive)
    mul_rep = classify(s.multiplicative)
    checks += [
        Check("(S,+) completely regular, orthodox, locally inverse",
              add_rep.is_completely_regular and add_rep.is_orthodox and add_rep.is_locally_inverse),
        Check("(S,.) orthodox and locally inverse", mul_rep.is_orthodox and mul_rep.is_locally_inverse),
    ]
    checks += regular_star_invariant_checks(s.additive, "(S,+)")
    checks += regular_star_invariant_checks(s.multiplicative, "(S,.)")
    return checks


def regular_star_invariant_checks(sg, label: str = "") -> list[Check]:
    """Projection and Green's facts of regular *-semigroups, plus the sandwich identities
    that hold when the semigroup is completely simple and orthodox."""
    from .semigroup import idempotents

    t, st = sg.op.table, sg.star.table
    n = sg.n
    idx = np.arange(n)
    p = np.array(projections(sg), dtype=np.intp)
    pset = np.zeros(n, dtype=bool)
    pset[p] = True
    g = green_relations(sg)
    prods = {int(v) for v in t[p[:, None], p[None, :]].ravel()}
    pre = f"{label} " if label else ""
    checks = [
        Check(f"{pre}P = {{x x*}} = {{x* x}}",
              set(p.tolist()) == set(t[idx, st].tolist()) == set(t[st, idx].tolist())),
        Check(f"{pre}E = P P", set(idempotents(sg)) == prods),
        Check.of(f"{pre}a e a* is a projection",
                 first_false("a e a* in P", pset[t[t[idx[:, None], p[None, :]], st[:, None]]])),
        Check.of(f"{pre}f e f is a projection",
                 first_false("f e f in P", pset[t[t[p[:, None], p[None, :]], p[:, None]]])),
        Check.of(f"{pre}a D a*", first_mismatch("a D a*", g.d_class[st], g.d_class)),
        Check.of(f"{pre}a R b iff a a* = b b*", first_mismatch(
            "R vs aa*", g.r_class[:, None] == g.r_class[None, :],
            t[idx, st][:, None] == t[idx, st][None, :])),
        Check.of(f"{pre}a L b iff a* a = b* b", first_mismatch(
            "L vs a*a", g.l_class[:, None] == g.l_class[None, :],
            t[st, idx][:, None] == t[st, idx][None, :])),
    ]
    rep = classify(sg)
    if rep.is_completely_regular:
        checks.append(Check.of(f"{pre}D = J", first_mismatch("D = J", g.d_class, g.j_class)))
    if rep.is_completely_simple and rep.is_orthodox:
        a = idx[:, None, None, None]
        f = p[None, :, None, None]
        gg = p[None, None, :, None]
        b = idx[None, None, None, :]
        checks.append(Check.of(f"{pre}a f g b = a b", first_mismatch(
            "afgb = ab", t[t[t[a, f], gg], b], np.broadcast_to(t[a, b], (n, len(p), len(p), n)))))
        checks.append(Check.of(f"{pre}f g f = f", first_mismatch(
            "fgf = f", t[t[p[:, None], p[None, :]], p[:, None]], np.broadcast_to(p[:, None], (len(p), len(p))))))
    return checks


# square braces

@dataclass(frozen=True)
class SquareBraceSpec:
    index_set_size: int
    group: SkewBrace

    def __post_init__(self):
        if self.index_set_size < 1:
            raise InvalidSpec(f"index set must be non-empty, got |I| = {self.index_set_size}")


def square_coords(spec: SquareBraceSpec) -> np.ndarray:
    """Rows ``(i, g, j)`` in element order: element ``i*|G|*|I| + g*|I| + j``."""
    k, m = spec.index_set_size, spec.group.n
    i, g, j = np.meshgrid(np.arange(k), np.arange(m), np.arange(k), indexing="ij")
    return np.stack([i.ravel(), g.ravel(), j.ravel()], axis=1)


def build_square_brace(spec: SquareBraceSpec) -> DualWeakStarBrace:
    """``(i,g,j)(k,h,l) = (i,gh,l)``, ``(i,g,j)+(k,h,l) = (k,g+h,j)``,
    ``(i,g,j)* = (j,g^-1,i)``, ``-(i,g,j) = (j,-g,i)``."""
    k, m = spec.index_set_size, spec.group.n
    G = spec.group

    def enc(i, g, j):
        return i * (m * k) + g * k + j

    c = square_coords(spec)
    i, g, j = c[:, 0], c[:, 1], c[:, 2]
    I1, G1, J1 = i[:, None], g[:, None], j[:, None]
    I2, G2, J2 = i[None, :], g[None, :], j[None, :]
    mul = enc(I1, G.mul.table[G1, G2], J2)
    add = enc(I2, G.add.table[G1, G2], J1)
    star = enc(j, G.mul_inv.table[g], i)
    neg = enc(j, G.add_inv.table[g], i)
    return StarBraceStructure.from_arrays(mul, star, add, neg)


def square_to_components(s: DualWeakStarBrace, e: Optional[int] = None) -> tuple[SquareBraceSpec, ElementMap]:
    """Coordinatise a square brace as ``P(S) x H x P(S)``.

    ``H = {h : h h* = h* h = e}`` for the chosen projection ``e`` (least by
    default).  Returns the spec and the isomorphism ``(i, g, j) -> i g j``
    from the rebuilt structure onto ``s``.
    """
    if not is_square(s):
        raise NotSquare("multiplicative reduct is not completely simple")
    M, St = s.mul.table, s.star.table
    proj = projections(s.multiplicative)
    if e is None:
        e = proj[0]
    elif e not in proj:
        raise InvalidSpec(f"{e} is not a projection")
    idx = np.arange(s.n)
    h = np.flatnonzero((M[idx, St] == e) & (M[St, idx] == e))
    sub = s.substructure(h)
    group = SkewBrace(sub.add, sub.mul, int(np.flatnonzero(h == e)[0]), sub.neg, sub.star)
    spec = SquareBraceSpec(len(proj), group)
    c = square_coords(spec)
    P = np.array(proj, dtype=np.intp)
    psi = M[M[P[c[:, 0]], h[c[:, 1]]], P[c[:, 2]]]
    return spec, ElementMap.make(psi, s.n)


# strong semilattices

Component = Union[StarBraceStructure, SquareBraceSpec]


def component_structure(c: Component) -> StarBraceStructure:
    return build_square_brace(c) if isinstance(c, SquareBraceSpec) else c


@dataclass
class SemilatticeSpec:
    meet: OpTable
    components: list
    homs: dict = field(default_factory=dict)  # (alpha, beta) -> ElementMap, alpha > beta

    @property
    def y_size(self) -> int:
        return self.meet.n

    def leq(self, a: int, b: int) -> bool:
        """``a <= b`` in the semilattice order."""
        return self.meet(a, b) == a


def check_semilattice(meet: OpTable) -> bool | Witness:
    t = meet.table
    idx = np.arange(meet.n)
    res = first_mismatch("meet idempotent", t[idx, idx], idx)
    if not res:
        return res
    res = first_mismatch("meet commutative", t, t.T)
    if not res:
        return res
    return is_associative(meet)


def all_homs(spec: SemilatticeSpec) -> dict[tuple[int, int], ElementMap]:
    """Every ``phi_{alpha,beta}`` for ``alpha >= beta``, composing given maps where missing,
    and validating identity, composition and homomorphism conditions."""
    res = check_semilattice(spec.meet)
    if not res:
        raise InvalidSpec(f"meet table is not a semilattice: {res}")
    k = spec.y_size
    if len(spec.components) != k:
        raise InvalidSpec(f"expected {k} components, got {len(spec.components)}")
    comps = [component_structure(c) for c in spec.components]
    for (a, b), f in spec.homs.items():
        if not spec.leq(b, a):
            raise InvalidSpec(f"hom given for incomparable pair ({a}, {b})")
        if f.dom_n != comps[a].n or f.cod_n != comps[b].n:
            raise InvalidSpec(f"hom ({a}, {b}) has wrong size")
    full: dict[tuple[int, int], ElementMap] = {}

    def get(a, b):
        if (a, b) in full:
            return full[(a, b)]
        if a == b:
            f = spec.homs.get((a, a), ElementMap.identity(comps[a].n))
            if f != ElementMap.identity(comps[a].n):
                raise InvalidSpec(f"phi_({a},{a}) is not the identity")
        elif (a, b) in spec.homs:
            f = spec.homs[(a, b)]
        else:
            mids = [c for c in range(k) if c not in (a, b) and (a, c) in spec.homs and spec.leq(b, c)]
            if not mids:
                raise InvalidSpec(f"no hom given or derivable for ({a}, {b})")
            f = spec.homs[(a, mids[0])].then(get(mids[0], b))
        full[(a, b)] = f
        return f

    for a in range(k):
        for b in range(k):
            if spec.leq(b, a):
                get(a, b)
    for (a, b), f in sorted(full.items()):
        res = check_homomorphism(f, comps[a], comps[b])
        if not res:
            raise InvalidSpec(f"phi_({a},{b}) is not a homomorphism: {res}")
    for (a, b) in full:
        for c in range(k):
            if (b, c) in full and full[(a, b)].then(full[(b, c)]) != full[(a, c)]:
                raise InvalidSpec(f"phi_({b},{c}) phi_({a},{b}) != phi_({a},{c})")
    return full


def build_strong_semilattice(spec: SemilatticeSpec) -> DualWeakStarBrace:
    """Disjoint union of the components; products and sums are taken in the
    component of the meet after pushing both arguments down."""
    homs = all_homs(spec)
    comps = [component_structure(c) for c in spec.components]
    sizes = [c.n for c in comps]
    offsets = np.concatenate([[0], np.cumsum(sizes)]).astype(np.intp)
    n = int(offsets[-1])
    k = spec.y_size
    tables = {name: np.empty((n, n), dtype=np.intp) for name in ("mul", "add")}
    star = np.empty(n, dtype=np.intp)
    neg = np.empty(n, dtype=np.intp)
    for a in range(k):
        sa = slice(offsets[a], offsets[a + 1])
        star[sa] = offsets[a] + comps[a].star.table
        neg[sa] = offsets[a] + comps[a].neg.table
        for b in range(k):
            sb = slice(offsets[b], offsets[b + 1])
            c = spec.meet(a, b)
            fa, fb = homs[(a, c)].table, homs[(b, c)].table
            tables["mul"][sa, sb] = offsets[c] + comps[c].mul.table[np.ix_(fa, fb)]
            tables["add"][sa, sb] = offsets[c] + comps[c].add.table[np.ix_(fa, fb)]
    return StarBraceStructure.from_arrays(tables["mul"], star, tables["add"], neg)


@dataclass
class SemilatticeDecomposition:
    spec: SemilatticeSpec
    class_of: np.ndarray
    coords: np.ndarray
    members: list  # members[alpha] = element indices of S in that component, ascending
    iso_certificate: ElementMap  # rebuilt structure -> original
    checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)


def decompose(s: DualWeakStarBrace) -> SemilatticeDecomposition:
    """Split a dual weak *-brace into its D-classes glued by ``a -> a a* e a``."""
    res = check_weak_star_brace(s)
    if res:
        res = check_dual(s)
    if not res:
        raise NotDual(str(res))
    M, St = s.mul.table, s.star.table
    gm = green_relations(s.multiplicative)
    ga = green_relations(s.additive)
    class_of = gm.d_class
    k = int(class_of.max()) + 1
    members = [np.flatnonzero(class_of == a) for a in range(k)]
    coords = np.empty(s.n, dtype=np.intp)
    for mem in members:
        coords[mem] = np.arange(len(mem))
    checks = [Check.of("additive and multiplicative D-classes agree",
                       first_mismatch("D+ = D.", ga.d_class, gm.d_class))]

    meet_blocks = class_of[M]
    meet = np.empty((k, k), dtype=np.intp)
    well_defined = True
    for a in range(k):
        for b in range(k):
            vals = np.unique(meet_blocks[np.ix_(members[a], members[b])])
            well_defined &= len(vals) == 1
            meet[a, b] = vals[0]
    checks.append(Check("meet of D-classes well defined", bool(well_defined)))
    meet_op = make_binary_op(k, meet)
    checks.append(Check.of("D-classes form a semilattice", check_semilattice(meet_op)))
    comps = [s.substructure(mem) for mem in members]
    proj = projections(s.multiplicative)

    homs = {}
    independent = True
    for a in range(k):
        for b in range(k):
            if a == b or meet[a, b] != b:
                continue
            targets = [e for e in proj if class_of[e] == b]
            src = members[a]
            images = [M[M[M[src, St[src]], e], src] for e in targets]
            independent &= all(np.array_equal(images[0], im) for im in images[1:])
            if (class_of[images[0]] != b).any():
                raise NotDual(f"hom image for ({a}, {b}) leaves the target class")
            homs[(a, b)] = ElementMap.make(coords[images[0]], len(members[b]))
    checks.append(Check("hom independent of the chosen projection", bool(independent)))
    spec = SemilatticeSpec(meet_op, comps, homs)
    rebuilt = build_strong_semilattice(spec)
    cert = ElementMap.make(np.concatenate(members), s.n)
    checks.append(Check.of("rebuilt structure isomorphic via certificate",
                           check_homomorphism(cert, rebuilt, s) if cert.is_bijective() else
                           Witness("certificate bijective", (), True, False)))
    checks.append(Check("components are square", all(is_square(c) for c in comps)))
    return SemilatticeDecomposition(spec, class_of, coords, members, cert, checks)
