"""Green's relations and structural class predicates of regular *-semigroups."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .tables import StarSemigroup, Witness, first_false, first_mismatch, is_associative


def idempotents(s: StarSemigroup) -> list[int]:
    t = s.op.table
    idx = np.arange(s.n)
    return np.flatnonzero(t[idx, idx] == idx).tolist()


def projections(s: StarSemigroup) -> list[int]:
    t = s.op.table
    idx = np.arange(s.n)
    return np.flatnonzero((t[idx, idx] == idx) & (s.star.table == idx)).tolist()


def check_regular_star(s: StarSemigroup) -> bool | Witness:
    """Associativity plus ``x x* x = x``, ``x** = x`` and ``(xy)* = y* x*``."""
    res = is_associative(s.op)
    if not res:
        return res
    t, st = s.op.table, s.star.table
    idx = np.arange(s.n)
    res = first_mismatch("x x* x = x", t[t[idx, st], idx], idx)
    if not res:
        return res
    res = first_mismatch("x** = x", st[st], idx)
    if not res:
        return res
    return first_mismatch("(xy)* = y* x*", st[t], t[st[None, :], st[:, None]])


def _labels(keys) -> np.ndarray:
    """Contiguous class ids, numbered by first appearance."""
    ids: dict = {}
    return np.array([ids.setdefault(k, len(ids)) for k in keys], dtype=np.intp)


def _join(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # smallest equivalence containing both partitions (union-find)
    parent = list(range(len(a)))

    def root(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for labels in (a, b):
        first = {}
        for x, c in enumerate(labels.tolist()):
            if c in first:
                rx, ry = root(x), root(first[c])
                if rx != ry:
                    parent[max(rx, ry)] = min(rx, ry)
            else:
                first[c] = x
    return _labels([root(x) for x in range(len(a))])


@dataclass(frozen=True)
class GreensData:
    l_class: np.ndarray
    r_class: np.ndarray
    d_class: np.ndarray
    j_class: np.ndarray
    h_class: np.ndarray


def principal_ideals(s: StarSemigroup) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Boolean membership matrices of ``S^1 a``, ``a S^1`` and ``S^1 a S^1`` (row ``a``)."""
    n, t = s.n, s.op.table
    eye = np.eye(n, dtype=bool)
    left = eye.copy()
    right = eye.copy()
    rows = np.arange(n)[:, None]
    left[rows, t.T] = True  # left[a, s*a]
    right[rows, t] = True  # right[a, a*s]
    two = left | right
    tt = t[t[:, :, None], np.arange(n)[None, None, :]]  # (s a) u
    for a in range(n):
        two[a, tt[:, a, :].ravel()] = True
    return left, right, two


def green_relations(s: StarSemigroup) -> GreensData:
    left, right, two = principal_ideals(s)
    l_ = _labels(row.tobytes() for row in left)
    r_ = _labels(row.tobytes() for row in right)
    j_ = _labels(row.tobytes() for row in two)
    d_ = _join(l_, r_)
    h_ = _labels(zip(l_.tolist(), r_.tolist()))
    return GreensData(l_, r_, d_, j_, h_)


@dataclass
class ClassReport:
    is_regular_star: bool
    is_inverse: bool = False
    is_completely_simple: bool = False
    is_locally_inverse: bool = False
    is_orthodox: bool = False
    is_completely_regular: bool = False
    is_orthodox_and_locally_inverse: bool = False
    witnesses: list[Witness] = field(default_factory=list)
    # criterion -> (identity-based value, definition-based value)
    agreement: dict[str, tuple[bool, bool]] = field(default_factory=dict)

    def flags(self) -> dict[str, bool]:
        return {
            "regular_star": self.is_regular_star,
            "inverse": self.is_inverse,
            "completely_simple": self.is_completely_simple,
            "locally_inverse": self.is_locally_inverse,
            "orthodox": self.is_orthodox,
            "completely_regular": self.is_completely_regular,
            "orthodox_and_locally_inverse": self.is_orthodox_and_locally_inverse,
        }

    def disagreements(self) -> list[str]:
        return [k for k, (a, b) in self.agreement.items() if a != b]


# identity-based criteria (valid for regular *-semigroups)

def completely_simple_identity(s: StarSemigroup) -> bool | Witness:
    """``x x* = x y y* x*`` for all x, y."""
    t, st = s.op.table, s.star.table
    idx = np.arange(s.n)
    xx = t[idx, st]
    yy = t[idx, st]
    lhs = np.broadcast_to(xx[:, None], (s.n, s.n))
    rhs = t[t[idx[:, None], yy[None, :]], st[:, None]]
    return first_mismatch("x x* = x y y* x*", lhs, rhs)


def _conj(s: StarSemigroup) -> np.ndarray:
    # c[x, y] = x y y* x*
    t, st = s.op.table, s.star.table
    idx = np.arange(s.n)
    yy = t[idx, st]
    return t[t[idx[:, None], yy[None, :]], st[:, None]]


def locally_inverse_identity(s: StarSemigroup) -> bool | Witness:
    """``(x y y* x*)(x z z* x*) = (x z z* x*)(x y y* x*)`` for all x, y, z."""
    t = s.op.table
    c = _conj(s)
    lhs = t[c[:, :, None], c[:, None, :]]
    rhs = t[c[:, None, :], c[:, :, None]]
    return first_mismatch("xyy*x* xzz*x* = xzz*x* xyy*x*", lhs, rhs)


def orthodox_locally_inverse_identity(s: StarSemigroup) -> bool | Witness:
    """``a f g b = a g f b`` for all a, b and projections f, g."""
    t = s.op.table
    p = np.array(projections(s), dtype=np.intp)
    fg = t[p[:, None], p[None, :]]
    gf = fg.T
    # (a fg) b  with axes a, f, g, b
    idx = np.arange(s.n)
    lhs = t[t[idx[:, None, None], fg[None]][..., None], idx]
    rhs = t[t[idx[:, None, None], gf[None]][..., None], idx]
    res = first_mismatch("a f g b = a g f b", lhs, rhs)
    if res:
        return True
    a, i, j, b = res.inputs
    return Witness(res.check_name, (a, int(p[i]), int(p[j]), b), res.expected, res.actual)


def completely_regular_orthodox_li_identity(s: StarSemigroup) -> bool | Witness:
    """``x y = x y* y y`` for all x, y."""
    t, st = s.op.table, s.star.table
    idx = np.arange(s.n)
    yyy = t[t[st, idx], idx]
    return first_mismatch("x y = x y* y y", t, t[:, yyy])


# definition-based criteria

def _inverse_counts(t: np.ndarray, elems: np.ndarray) -> np.ndarray:
    # number of b in elems with a b a = a and b a b = b, for each a in elems
    a = elems[:, None]
    b = elems[None, :]
    ab = t[a, b]
    ok = (t[ab, a] == a) & (t[t[b, a], b] == b)
    return ok.sum(axis=1)


def inverse_definition(s: StarSemigroup) -> bool | Witness:
    counts = _inverse_counts(s.op.table, np.arange(s.n))
    bad = np.flatnonzero(counts != 1)
    if len(bad) == 0:
        return True
    return Witness("unique inverse", (int(bad[0]),), 1, int(counts[bad[0]]))


def orthodox_definition(s: StarSemigroup) -> bool | Witness:
    t = s.op.table
    e = np.array(idempotents(s), dtype=np.intp)
    prod = t[e[:, None], e[None, :]]
    ok = t[prod, prod] == prod
    res = first_false("E(S) closed under product", ok, "idempotent", "not idempotent")
    if res:
        return True
    i, j = res.inputs
    return Witness(res.check_name, (int(e[i]), int(e[j])), res.expected, res.actual)


def completely_regular_definition(s: StarSemigroup, greens: GreensData | None = None) -> bool | Witness:
    g = greens or green_relations(s)
    t = s.op.table
    idx = np.arange(s.n)
    sq = t[idx, idx]
    return first_mismatch("x H x^2", g.h_class[sq], g.h_class)


def simple_definition(s: StarSemigroup, greens: GreensData | None = None) -> bool | Witness:
    g = greens or green_relations(s)
    return first_mismatch("J = S x S", g.j_class, np.zeros(s.n, dtype=np.intp))


def locally_inverse_definition(s: StarSemigroup) -> bool | Witness:
    """Every local submonoid ``eSe`` (e idempotent) is an inverse semigroup."""
    t = s.op.table
    for e in idempotents(s):
        local = np.unique(t[t[e, :], e])
        counts = _inverse_counts(t, local)
        bad = np.flatnonzero(counts != 1)
        if len(bad):
            return Witness("eSe inverse", (e, int(local[bad[0]])), 1, int(counts[bad[0]]))
    return True


def classify(s: StarSemigroup) -> ClassReport:
    reg = check_regular_star(s)
    if not reg:
        return ClassReport(is_regular_star=False, witnesses=[reg])
    greens = green_relations(s)
    results: dict[str, bool | Witness] = {
        "inverse": inverse_definition(s),
        "completely_simple": completely_simple_identity(s),
        "locally_inverse": locally_inverse_identity(s),
        "orthodox": orthodox_definition(s),
        "completely_regular": completely_regular_definition(s, greens),
        "orthodox_and_locally_inverse": orthodox_locally_inverse_identity(s),
    }
    cs_def = bool(simple_definition(s, greens)) and bool(results["completely_regular"])
    li_def = bool(locally_inverse_definition(s))
    oli_def = bool(results["orthodox"]) and li_def
    croli_id = bool(completely_regular_orthodox_li_identity(s))
    croli_def = bool(results["completely_regular"]) and oli_def
    report = ClassReport(
        is_regular_star=True,
        is_inverse=bool(results["inverse"]),
        is_completely_simple=bool(results["completely_simple"]),
        is_locally_inverse=bool(results["locally_inverse"]),
        is_orthodox=bool(results["orthodox"]),
        is_completely_regular=bool(results["completely_regular"]),
        is_orthodox_and_locally_inverse=bool(results["orthodox_and_locally_inverse"]),
        witnesses=[w for w in results.values() if not w],
        agreement={
            "completely_simple": (bool(results["completely_simple"]), cs_def),
            "locally_inverse": (bool(results["locally_inverse"]), li_def),
            "orthodox_and_locally_inverse": (bool(results["orthodox_and_locally_inverse"]), oli_def),
            "completely_regular_orthodox_locally_inverse": (croli_id, croli_def),
        },
    )
    return report
