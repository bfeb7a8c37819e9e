"""Deterministic test corpora.

``star_brace_corpus`` collects dual weak *-braces: skew braces, square braces
over small groups and strong semilattices of them.  ``semigroup_corpus``
collects regular *-semigroups of order at most 8 used to cross-check the
class predicates.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import product

import numpy as np

from .groups import group_catalog, group_inverses
from .semigroup import check_regular_star
from .skew import SkewBrace, enumerate_skew_braces, right_distributors_group
from .star import (
    SemilatticeSpec,
    SquareBraceSpec,
    build_square_brace,
    build_strong_semilattice,
    square_coords,
)
from .tables import (
    ElementMap,
    StarBraceStructure,
    StarSemigroup,
    check_homomorphism,
    make_binary_op,
    make_unary_op,
)

CHAIN2 = [[0, 1], [1, 1]]  # node 0 above node 1
CHAIN3 = [[0, 1, 2], [1, 1, 2], [2, 2, 2]]
VEE = [[0, 2, 2], [2, 1, 2], [2, 2, 2]]  # nodes 0 and 1 meet in 2


@lru_cache(maxsize=None)
def skew_braces(max_order: int = 6) -> tuple[tuple[str, SkewBrace], ...]:
    out = []
    for n in range(1, max_order + 1):
        for k, g in enumerate(enumerate_skew_braces(n)):
            out.append((f"brace{n}.{k}", g))
    return tuple(out)


def brace(name: str) -> SkewBrace:
    return dict(skew_braces(8 if name.startswith(("brace7", "brace8")) else 6))[name]


def brace_homs(g: SkewBrace, h: SkewBrace) -> list[np.ndarray]:
    """Every skew brace homomorphism ``g -> h`` as an image array (brute force)."""
    gs, hs = g.as_star_brace(), h.as_star_brace()
    out = []
    rest = [x for x in range(g.n) if x != g.identity]
    for images in product(range(h.n), repeat=len(rest)):
        f = np.empty(g.n, dtype=np.intp)
        f[g.identity] = h.identity
        f[rest] = images
        if check_homomorphism(ElementMap.make(f, h.n), gs, hs) is True:
            out.append(f)
    return out


def square_hom(src: SquareBraceSpec, dst: SquareBraceSpec, index_map, group_map) -> ElementMap:
    """``(i, g, j) -> (pi(i), f(g), pi(j))`` between square braces."""
    pi = np.asarray(index_map, dtype=np.intp)
    f = np.asarray(group_map, dtype=np.intp)
    c = square_coords(src)
    k, m = dst.index_set_size, dst.group.n
    img = pi[c[:, 0]] * (m * k) + f[c[:, 1]] * k + pi[c[:, 2]]
    return ElementMap.make(img, k * m * k)


def constant_hom(src: SquareBraceSpec, dst: SquareBraceSpec, target: int = 0) -> ElementMap:
    """Everything to the projection ``(target, 1, target)``."""
    return square_hom(src, dst, [target] * src.index_set_size, [dst.group.identity] * src.group.n)


def _sq(k: int, name: str) -> SquareBraceSpec:
    return SquareBraceSpec(k, brace(name))


def _first_hom(g: SkewBrace, h: SkewBrace, surjective: bool = True) -> np.ndarray:
    homs = brace_homs(g, h)
    onto = [f for f in homs if len(set(f.tolist())) == h.n]
    return (onto if surjective and onto else homs)[-1]


def _spec(meet, comps, homs) -> SemilatticeSpec:
    return SemilatticeSpec(make_binary_op(len(meet), meet), comps, homs)


def semilattice_specs() -> list[tuple[str, SemilatticeSpec]]:
    """Strong semilattices over the 2-chain, 3-chain and V semilattices."""
    one, z2, z4 = _sq(1, "brace1.0"), _sq(1, "brace2.0"), _sq(1, "brace4.3")
    rb2, sq2z2 = _sq(2, "brace1.0"), _sq(2, "brace2.0")
    v4 = _sq(1, "brace4.0")
    g6, sq2g6 = _sq(1, "brace6.1"), _sq(2, "brace6.1")
    z4_z2 = _first_hom(z4.group, z2.group)
    v4_z2 = _first_hom(v4.group, z2.group)
    g6_z2 = _first_hom(g6.group, z2.group)
    ident = lambda spec: list(range(spec.group.n))  # noqa: E731
    specs = [
        ("min-semilattice", _spec(CHAIN2, [one, one], {(0, 1): constant_hom(one, one)})),
        ("chain:1>B2", _spec(CHAIN2, [one, z2], {(0, 1): constant_hom(one, z2)})),
        ("chain:RB2>B2", _spec(CHAIN2, [rb2, z2], {(0, 1): constant_hom(rb2, z2)})),
        ("chain:B2>RB2", _spec(CHAIN2, [z2, rb2], {(0, 1): constant_hom(z2, rb2, 1)})),
        ("chain:sq2(Z2)>B2", _spec(CHAIN2, [sq2z2, z2],
                                    {(0, 1): square_hom(sq2z2, z2, [0, 0], ident(z2))})),
        ("chain:sq2(Z2)>RB2", _spec(CHAIN2, [sq2z2, rb2],
                                     {(0, 1): square_hom(sq2z2, rb2, [0, 1], [0, 0])})),
        ("chain:Z4>Z2", _spec(CHAIN2, [z4, z2], {(0, 1): square_hom(z4, z2, [0], z4_z2)})),
        ("chain:G6>Z2", _spec(CHAIN2, [g6, z2], {(0, 1): square_hom(g6, z2, [0], g6_z2)})),
        ("chain:sq2(G6)>G6", _spec(CHAIN2, [sq2g6, g6],
                                    {(0, 1): square_hom(sq2g6, g6, [0, 0], ident(g6))})),
        ("chain3:B2>RB2>1", _spec(CHAIN3, [z2, rb2, one],
                                   {(0, 1): constant_hom(z2, rb2), (1, 2): constant_hom(rb2, one)})),
        ("chain3:sq2(Z2)>B2>1", _spec(CHAIN3, [sq2z2, z2, one],
                                       {(0, 1): square_hom(sq2z2, z2, [0, 0], ident(z2)),
                                        (1, 2): constant_hom(z2, one)})),
        ("chain3:V4>Z2>RB2", _spec(CHAIN3, [v4, z2, rb2],
                                    {(0, 1): square_hom(v4, z2, [0], v4_z2),
                                     (1, 2): constant_hom(z2, rb2, 1)})),
        ("vee:B2,RB2>sq2(Z2)", _spec(VEE, [z2, rb2, sq2z2],
                                      {(0, 2): square_hom(z2, sq2z2, [0], ident(z2)),
                                       (1, 2): square_hom(rb2, sq2z2, [0, 1], [0])})),
        ("vee:Z4,V4>Z2", _spec(VEE, [z4, v4, z2],
                                {(0, 2): square_hom(z4, z2, [0], z4_z2),
                                 (1, 2): square_hom(v4, z2, [0], v4_z2)})),
        ("vee:1,1>B2", _spec(VEE, [one, one, z2],
                              {(0, 2): constant_hom(one, z2), (1, 2): constant_hom(one, z2)})),
        ("vee:B2,B2>RB2", _spec(VEE, [z2, z2, rb2],
                                 {(0, 2): square_hom(z2, rb2, [0], [0, 0]),
                                  (1, 2): square_hom(z2, rb2, [1], [0, 0])})),
    ]
    return specs


def square_specs(max_index: int = 2, max_group: int = 4) -> list[tuple[str, SquareBraceSpec]]:
    out = []
    for k in range(1, max_index + 1):
        for name, g in skew_braces(max_group):
            out.append((f"sq{k}({name})", SquareBraceSpec(k, g)))
    # a component with a proper distributor set
    out.append(("sq2(brace6.1)", SquareBraceSpec(2, brace("brace6.1"))))
    return out


@lru_cache(maxsize=None)
def star_brace_corpus() -> tuple[tuple[str, StarBraceStructure], ...]:
    """Square braces (|I| <= 2, |G| <= 4, plus one over an order-6 brace with a
    proper distributor set) and strong semilattices, in a fixed order."""
    out = [(name, build_square_brace(spec)) for name, spec in square_specs()]
    out += [(name, build_strong_semilattice(spec)) for name, spec in semilattice_specs()]
    return tuple(out)


@lru_cache(maxsize=None)
def full_corpus() -> tuple[tuple[str, StarBraceStructure], ...]:
    """Skew braces of order <= 6 followed by ``star_brace_corpus``."""
    braces = [(name, g.as_star_brace()) for name, g in skew_braces(6)]
    return tuple(braces) + star_brace_corpus()


def proper_distributor_braces(max_order: int = 8) -> list[str]:
    return [name for name, g in skew_braces(max_order) if len(right_distributors_group(g)) < g.n]


# regular *-semigroups

def _sg(mul, star) -> StarSemigroup:
    mul = np.asarray(mul, dtype=np.intp)
    n = len(mul)
    return StarSemigroup(make_binary_op(n, mul), make_unary_op(n, np.asarray(star, dtype=np.intp)))


def _semilattice_from_order(leq: np.ndarray) -> np.ndarray:
    """Meet table of a finite meet-semilattice given by its order matrix."""
    n = len(leq)
    meet = np.empty((n, n), dtype=np.intp)
    for a in range(n):
        for b in range(n):
            lower = [c for c in range(n) if leq[c, a] and leq[c, b]]
            top = [c for c in lower if all(leq[d, c] for d in lower)]
            meet[a, b] = top[0]
    return meet


def adjoin_identity(s: StarSemigroup) -> StarSemigroup:
    n = s.n
    t = np.empty((n + 1, n + 1), dtype=np.intp)
    t[:n, :n] = s.op.table
    t[n, :] = np.arange(n + 1)
    t[:, n] = np.arange(n + 1)
    return _sg(t, np.append(s.star.table, n))


def adjoin_zero(s: StarSemigroup) -> StarSemigroup:
    n = s.n
    t = np.full((n + 1, n + 1), n, dtype=np.intp)
    t[:n, :n] = s.op.table
    return _sg(t, np.append(s.star.table, n))


def direct_product(a: StarSemigroup, b: StarSemigroup) -> StarSemigroup:
    m = b.n
    x = np.arange(a.n * m)
    i, j = x // m, x % m
    t = a.op.table[i[:, None], i[None, :]] * m + b.op.table[j[:, None], j[None, :]]
    return _sg(t, a.star.table[i] * m + b.star.table[j])


def relabel(s: StarSemigroup, perm) -> StarSemigroup:
    r = StarBraceStructure(s.op, s.star).relabel(perm)
    return r.multiplicative


def rb2_with_units(swap: bool) -> StarSemigroup:
    """RB2 together with a group of units {1, g}; ``g`` acts trivially or by
    flipping the row (from the left) and the column (from the right)."""
    # 0..3 = (i, j) as 2i + j, 4 = 1, 5 = g
    t = np.empty((6, 6), dtype=np.intp)
    flip = (lambda i: 1 - i) if swap else (lambda i: i)
    for a in range(4):
        i, j = divmod(a, 2)
        for b in range(4):
            t[a, b] = 2 * i + b % 2
        t[a, 4] = a
        t[4, a] = a
        t[a, 5] = 2 * i + flip(j)
        t[5, a] = 2 * flip(i) + j
    t[4, 4:] = [4, 5]
    t[5, 4:] = [5, 4]
    return _sg(t, [0, 2, 1, 3, 4, 5])


def brandt_b2() -> StarSemigroup:
    # e11, e12, e21, e22, 0 with e_ij e_kl = e_il if j == k else 0; star is transpose
    units = [(0, 0), (0, 1), (1, 0), (1, 1)]
    t = np.full((5, 5), 4, dtype=np.intp)
    for a, (i, j) in enumerate(units):
        for b, (k, l) in enumerate(units):
            if j == k:
                t[a, b] = units.index((i, l))
    return _sg(t, [0, 2, 1, 3, 4])


def clifford(meet, groups, pairs) -> StarSemigroup:
    """Strong semilattice of groups, glued along a surjective homomorphism (when
    one exists) for each listed covering pair."""
    comps = [SquareBraceSpec(1, SkewBrace.trivial(g)) for g in groups]
    homs = {(a, b): ElementMap.make(_first_hom(comps[a].group, comps[b].group), len(groups[b]))
            for a, b in pairs}
    return build_strong_semilattice(_spec(meet, comps, homs)).multiplicative


def semigroup_tables(n: int):
    """Every associative table on ``{0..n-1}`` (labelled), by backtracking."""
    from .groups import _assoc_ok

    t = [[-1] * n for _ in range(n)]
    cells = [(x, y) for x in range(n) for y in range(n)]

    def rec(k):
        if k == len(cells):
            yield np.array(t, dtype=np.intp)
            return
        x, y = cells[k]
        for v in range(n):
            t[x][y] = v
            if _assoc_ok(t, n, x, y):
                yield from rec(k + 1)
        t[x][y] = -1

    yield from rec(0)


def regular_star_semigroups(n: int) -> list[StarSemigroup]:
    """One regular *-semigroup per isomorphism class of order ``n`` (small n only)."""
    from itertools import permutations

    from .tables import find_isomorphism

    invols = [np.array(p) for p in permutations(range(n)) if all(p[p[i]] == i for i in range(n))]
    reps: list[StarBraceStructure] = []
    for t in semigroup_tables(n):
        for st in invols:
            s = StarBraceStructure.from_arrays(t, st)
            if check_regular_star(s.multiplicative) is not True:
                continue
            if any(find_isomorphism(s, r) is not None for r in reps):
                continue
            reps.append(s)
    return [r.multiplicative for r in reps]


def _order_matrices() -> list[tuple[str, np.ndarray]]:
    out = []
    for n in range(1, 9):
        out.append((f"chain{n}", np.tril(np.ones((n, n), dtype=bool)).T))
    # V: 0 and 1 above 2; diamond: 0 top, 1 and 2 middle, 3 bottom
    vee = np.eye(3, dtype=bool)
    vee[2, :] = True
    diamond = np.eye(4, dtype=bool)
    diamond[3, :] = True
    diamond[1, 0] = diamond[2, 0] = True
    claw = np.eye(4, dtype=bool)
    claw[3, :] = True
    out += [("vee", vee), ("diamond", diamond), ("claw", claw)]
    return out


@lru_cache(maxsize=None)
def semigroup_corpus(seed: int = 20241018) -> tuple[tuple[str, StarSemigroup], ...]:
    """At least 50 regular *-semigroups of order <= 8, constructed and random."""
    out: list[tuple[str, StarSemigroup]] = []
    for n in range(1, 9):
        for k, g in enumerate(group_catalog(n)):
            out.append((f"group{n}.{k}", _sg(g, group_inverses(g))))
    for name, leq in _order_matrices():
        meet = _semilattice_from_order(leq)
        out.append((f"semilattice:{name}", _sg(meet, np.arange(len(meet)))))
    rb2 = build_square_brace(SquareBraceSpec(2, brace("brace1.0"))).multiplicative
    sq2z2 = build_square_brace(SquareBraceSpec(2, brace("brace2.0"))).multiplicative
    z2 = _sg([[0, 1], [1, 0]], [0, 1])
    z3 = _sg(group_catalog(3)[0], group_inverses(group_catalog(3)[0]))
    out += [
        ("RB2", rb2),
        ("rees2(Z2)", sq2z2),
        ("RB2+1", adjoin_identity(rb2)),
        ("RB2+Z2 trivial", rb2_with_units(False)),
        ("RB2+Z2 flip", rb2_with_units(True)),
        ("RB2+1+1", adjoin_identity(adjoin_identity(rb2))),
        ("RB2+1+0", adjoin_zero(adjoin_identity(rb2))),
        ("RB2+0", adjoin_zero(rb2)),
        ("RB2+0+1", adjoin_identity(adjoin_zero(rb2))),
        ("brandt2", brandt_b2()),
        ("brandt2+1", adjoin_identity(brandt_b2())),
        ("Z2+0", adjoin_zero(z2)),
        ("Z3+0", adjoin_zero(z3)),
        ("Z2+0+1", adjoin_identity(adjoin_zero(z2))),
        ("RB2xZ2", direct_product(rb2, z2)),
        ("chain2xZ2", direct_product(_sg([[0, 1], [1, 1]], [0, 1]), z2)),
        ("chain2xRB2", direct_product(_sg([[0, 1], [1, 1]], [0, 1]), rb2)),
        ("chain2xZ3", direct_product(_sg([[0, 1], [1, 1]], [0, 1]), z3)),
        ("chain2xchain2xZ2", direct_product(direct_product(_sg([[0, 1], [1, 1]], [0, 1]),
                                                           _sg([[0, 1], [1, 1]], [0, 1])), z2)),
        ("clifford:Z2>Z2", clifford(CHAIN2, [group_catalog(2)[0]] * 2, [(0, 1)])),
        ("clifford:V4>Z2", clifford(CHAIN2, [group_catalog(4)[0], group_catalog(2)[0]], [(0, 1)])),
        ("clifford:Z4>Z2", clifford(CHAIN2, [group_catalog(4)[1], group_catalog(2)[0]], [(0, 1)])),
        ("clifford:S3>Z2", clifford(CHAIN2, [group_catalog(6)[1], group_catalog(2)[0]], [(0, 1)])),
        ("clifford:Z2>Z2>1", clifford(CHAIN3, [group_catalog(2)[0]] * 2 + [group_catalog(1)[0]],
                                      [(0, 1), (1, 2)])),
        ("clifford:vee", clifford(VEE, [group_catalog(2)[0], group_catalog(3)[0], group_catalog(1)[0]],
                                  [(0, 2), (1, 2)])),
    ]
    for name, s in list(star_brace_corpus()) + [(n, g.as_star_brace()) for n, g in skew_braces(4)]:
        if s.n <= 8:
            out.append((f"{name}:mul", s.multiplicative))
            out.append((f"{name}:add", s.additive))
    for n in range(1, 5):
        for k, s in enumerate(regular_star_semigroups(n)):
            out.append((f"exhaustive{n}.{k}", s))
    rng = np.random.default_rng(seed)
    base = list(out)
    for k in range(20):
        name, s = base[int(rng.integers(len(base)))]
        out.append((f"{name}~relabel{k}", relabel(s, rng.permutation(s.n))))
    for name, s in base:
        if name.startswith("RB2+"):
            out.append((f"{name}~relabel", relabel(s, rng.permutation(s.n))))
    assert all(check_regular_star(s) is True for _, s in out)
    return tuple(out)

