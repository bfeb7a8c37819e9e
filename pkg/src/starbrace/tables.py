"""Finite carriers, operation tables and structure-preserving maps.

Every structure lives on the dense carrier ``{0, ..., n-1}``.  Binary
operations are ``n x n`` integer tables, unary operations length-``n``
tables.  All arrays are made read-only on construction.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Optional

import numpy as np


class StarBraceError(Exception):
    """Base class for every error raised by this package."""


class IndexOutOfRange(StarBraceError):
    pass


class ShapeMismatch(StarBraceError):
    pass


class SizeMismatch(StarBraceError):
    pass


class InvalidSpec(StarBraceError):
    pass


class NotSquare(StarBraceError):
    pass


class NotDual(StarBraceError):
    pass


class NotDistributor(StarBraceError):
    pass


class BoundExceeded(StarBraceError):
    pass


def _frozen(arr) -> np.ndarray:
    out = np.array(arr, dtype=np.intp)
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class Witness:
    """A recorded counterexample.

    A witness is falsy so that checks can return ``True`` or a witness and be
    used directly in boolean context.
    """

    check_name: str
    inputs: tuple
    expected: Any
    actual: Any

    def __bool__(self) -> bool:
        return False

    def as_dict(self) -> dict:
        return {
            "check": self.check_name,
            "inputs": [int(i) for i in self.inputs],
            "expected": plain(self.expected),
            "actual": plain(self.actual),
        }


def plain(value):
    """Convert numpy scalars and containers to JSON-friendly Python values."""
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.ndarray):
        return plain(value.tolist())
    if isinstance(value, (tuple, list)):
        return [plain(v) for v in value]
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    return value


def first_mismatch(name: str, lhs: np.ndarray, rhs: np.ndarray) -> bool | Witness:
    """Compare two equally shaped arrays; report the lexicographically first difference."""
    bad = np.argwhere(lhs != rhs)
    if len(bad) == 0:
        return True
    idx = tuple(int(i) for i in bad[0])
    return Witness(name, idx, int(lhs[idx]), int(rhs[idx]))


def first_false(name: str, ok: np.ndarray, expected="true", actual="false") -> bool | Witness:
    bad = np.argwhere(~ok)
    if len(bad) == 0:
        return True
    return Witness(name, tuple(int(i) for i in bad[0]), expected, actual)


@dataclass(frozen=True, eq=False)
class OpTable:
    table: np.ndarray

    @property
    def n(self) -> int:
        return self.table.shape[0]

    def __call__(self, x: int, y: int) -> int:
        return int(self.table[x, y])

    def __eq__(self, other) -> bool:
        return isinstance(other, OpTable) and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash(self.table.tobytes())


@dataclass(frozen=True, eq=False)
class UnaryTable:
    table: np.ndarray

    @property
    def n(self) -> int:
        return self.table.shape[0]

    def __call__(self, x: int) -> int:
        return int(self.table[x])

    def __eq__(self, other) -> bool:
        return isinstance(other, UnaryTable) and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash(self.table.tobytes())


def make_binary_op(n: int, entries) -> OpTable:
    if n < 1:
        raise ShapeMismatch(f"carrier size must be positive, got {n}")
    arr = np.asarray(entries)
    if arr.shape != (n, n):
        raise ShapeMismatch(f"expected a {n}x{n} table, got shape {arr.shape}")
    if arr.size and (arr.min() < 0 or arr.max() >= n):
        bad = np.argwhere((arr < 0) | (arr >= n))[0]
        raise IndexOutOfRange(f"entry {tuple(int(b) for b in bad)} = {arr[tuple(bad)]} not in [0, {n})")
    return OpTable(_frozen(arr))


def make_unary_op(n: int, entries) -> UnaryTable:
    if n < 1:
        raise ShapeMismatch(f"carrier size must be positive, got {n}")
    arr = np.asarray(entries)
    if arr.shape != (n,):
        raise ShapeMismatch(f"expected {n} entries, got shape {arr.shape}")
    if arr.min() < 0 or arr.max() >= n:
        bad = int(np.argwhere((arr < 0) | (arr >= n))[0][0])
        raise IndexOutOfRange(f"entry {bad} = {arr[bad]} not in [0, {n})")
    return UnaryTable(_frozen(arr))


@dataclass(frozen=True)
class StarSemigroup:
    op: OpTable
    star: UnaryTable

    def __post_init__(self):
        if self.op.n != self.star.n:
            raise SizeMismatch("operation and involution live on different carriers")

    @property
    def n(self) -> int:
        return self.op.n


@dataclass(frozen=True)
class StarBraceStructure:
    """Two binary and two unary tables on one carrier.

    ``add``/``neg`` may be ``None`` for semigroup-only structures.
    """

    mul: OpTable
    star: UnaryTable
    add: Optional[OpTable] = None
    neg: Optional[UnaryTable] = None

    def __post_init__(self):
        n = self.mul.n
        for t in (self.star, self.add, self.neg):
            if t is not None and t.n != n:
                raise SizeMismatch("tables have different carrier sizes")
        if (self.add is None) != (self.neg is None):
            raise ShapeMismatch("add and neg must be given together")

    @property
    def n(self) -> int:
        return self.mul.n

    @property
    def has_add(self) -> bool:
        return self.add is not None

    @property
    def multiplicative(self) -> StarSemigroup:
        return StarSemigroup(self.mul, self.star)

    @property
    def additive(self) -> StarSemigroup:
        if self.add is None:
            raise ShapeMismatch("structure has no additive part")
        return StarSemigroup(self.add, self.neg)

    @classmethod
    def from_arrays(cls, mul, star, add=None, neg=None) -> "StarBraceStructure":
        mul = np.asarray(mul)
        n = mul.shape[0]
        return cls(
            mul=make_binary_op(n, mul),
            star=make_unary_op(n, star),
            add=None if add is None else make_binary_op(n, add),
            neg=None if neg is None else make_unary_op(n, neg),
        )

    def relabel(self, perm) -> "StarBraceStructure":
        """Copy of the structure transported along the bijection ``x -> perm[x]``."""
        p = np.asarray(perm, dtype=np.intp)
        inv = np.empty_like(p)
        inv[p] = np.arange(len(p))

        def bin_(t):
            return None if t is None else p[t.table[np.ix_(inv, inv)]]

        def un_(t):
            return None if t is None else p[t.table[inv]]

        return StarBraceStructure.from_arrays(bin_(self.mul), un_(self.star), bin_(self.add), un_(self.neg))

    def substructure(self, elements) -> "StarBraceStructure":
        """Restriction to a subset closed under every operation, relabelled in the given order."""
        elems = np.asarray(elements, dtype=np.intp)
        local = np.full(self.n, -1, dtype=np.intp)
        local[elems] = np.arange(len(elems))

        def bin_(t):
            if t is None:
                return None
            out = local[t.table[np.ix_(elems, elems)]]
            if (out < 0).any():
                raise InvalidSpec("subset is not closed under a binary operation")
            return out

        def un_(t):
            if t is None:
                return None
            out = local[t.table[elems]]
            if (out < 0).any():
                raise InvalidSpec("subset is not closed under a unary operation")
            return out

        return StarBraceStructure.from_arrays(bin_(self.mul), un_(self.star), bin_(self.add), un_(self.neg))


@dataclass(frozen=True, eq=False)
class ElementMap:
    table: np.ndarray
    cod_n: int

    @property
    def dom_n(self) -> int:
        return len(self.table)

    def __call__(self, x: int) -> int:
        return int(self.table[x])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ElementMap)
            and self.cod_n == other.cod_n
            and np.array_equal(self.table, other.table)
        )

    def is_bijective(self) -> bool:
        return self.dom_n == self.cod_n and len(set(self.table.tolist())) == self.dom_n

    def inverse(self) -> "ElementMap":
        if not self.is_bijective():
            raise InvalidSpec("map is not bijective")
        inv = np.empty(self.dom_n, dtype=np.intp)
        inv[self.table] = np.arange(self.dom_n)
        return ElementMap(_frozen(inv), self.dom_n)

    def then(self, other: "ElementMap") -> "ElementMap":
        """``other`` applied after ``self``."""
        if self.cod_n != other.dom_n:
            raise SizeMismatch("maps do not compose")
        return ElementMap(_frozen(other.table[self.table]), other.cod_n)

    @classmethod
    def identity(cls, n: int) -> "ElementMap":
        return cls(_frozen(np.arange(n)), n)

    @classmethod
    def make(cls, table, cod_n: int) -> "ElementMap":
        arr = np.asarray(table, dtype=np.intp)
        if arr.ndim != 1:
            raise ShapeMismatch("element map must be one-dimensional")
        if len(arr) and (arr.min() < 0 or arr.max() >= cod_n):
            raise IndexOutOfRange(f"map value outside [0, {cod_n})")
        return cls(_frozen(arr), cod_n)


def is_associative(op: OpTable) -> bool | Witness:
    t = op.table
    idx = np.arange(op.n)
    lhs = t[t[:, :, None], idx[None, None, :]]
    rhs = t[idx[:, None, None], t[None, :, :]]
    return first_mismatch("associativity", lhs, rhs)


def check_homomorphism(f: ElementMap, a: StarBraceStructure, b: StarBraceStructure) -> bool | Witness:
    if f.dom_n != a.n or f.cod_n != b.n:
        raise SizeMismatch(f"map {f.dom_n}->{f.cod_n} does not fit structures {a.n}->{b.n}")
    m = f.table
    pairs = [("mul", a.mul, b.mul)]
    if a.has_add and b.has_add:
        pairs.append(("add", a.add, b.add))
    for name, ta, tb in pairs:
        res = first_mismatch(f"preserves_{name}", tb.table[np.ix_(m, m)], m[ta.table])
        if not res:
            return res
    unary = [("star", a.star, b.star)]
    if a.has_add and b.has_add:
        unary.append(("neg", a.neg, b.neg))
    for name, ua, ub in unary:
        res = first_mismatch(f"preserves_{name}", ub.table[m], m[ua.table])
        if not res:
            return res
    return True


def _cyclic_signature(t: np.ndarray, x: int) -> tuple[int, int]:
    # (index, period) of the monogenic subsemigroup generated by x
    seen = {}
    p, k = x, 1
    while p not in seen:
        seen[p] = k
        p = int(t[p, x])
        k += 1
    return seen[p], k - seen[p]


def _class_sizes(labels: np.ndarray) -> np.ndarray:
    counts = np.bincount(labels)
    return counts[labels]


def element_signatures(s: StarBraceStructure) -> list[tuple]:
    """Isomorphism invariants of each element, used to prune the bijection search."""
    from .semigroup import green_relations  # local: semigroup imports this module

    mt = s.mul.table
    gm = green_relations(s.multiplicative)
    cols = [
        [_cyclic_signature(mt, x) for x in range(s.n)],
        (mt[np.arange(s.n), np.arange(s.n)] == np.arange(s.n)).tolist(),
        (s.star.table == np.arange(s.n)).tolist(),
        _class_sizes(gm.l_class).tolist(),
        _class_sizes(gm.r_class).tolist(),
        _class_sizes(gm.d_class).tolist(),
    ]
    if s.has_add:
        at = s.add.table
        ga = green_relations(s.additive)
        cols += [
            [_cyclic_signature(at, x) for x in range(s.n)],
            (at[np.arange(s.n), np.arange(s.n)] == np.arange(s.n)).tolist(),
            _class_sizes(ga.l_class).tolist(),
            _class_sizes(ga.r_class).tolist(),
        ]
    return [tuple(c[x] for c in cols) for x in range(s.n)]


def find_isomorphism(a: StarBraceStructure, b: StarBraceStructure) -> Optional[ElementMap]:
    """Exhaustive backtracking search for an isomorphism ``a -> b``.

    Candidates are restricted to elements with equal invariant signatures and
    every assignment is propagated through all operation tables.
    """
    if a.n != b.n or a.has_add != b.has_add:
        return None
    n = a.n
    sig_a, sig_b = element_signatures(a), element_signatures(b)
    if sorted(sig_a) != sorted(sig_b):
        return None
    candidates = [[y for y in range(n) if sig_b[y] == sig_a[x]] for x in range(n)]

    bins = [(a.mul.table, b.mul.table)]
    uns = [(a.star.table, b.star.table)]
    if a.has_add:
        bins.append((a.add.table, b.add.table))
        uns.append((a.neg.table, b.neg.table))

    def propagate(fwd, bwd, x, y):
        # assigns x -> y and closes under the operations; False on conflict
        stack = [(x, y)]
        while stack:
            x, y = stack.pop()
            if fwd[x] >= 0:
                if fwd[x] != y:
                    return False
                continue
            if bwd[y] >= 0 or sig_a[x] != sig_b[y]:
                return False
            fwd[x], bwd[y] = y, x
            for ua, ub in uns:
                stack.append((int(ua[x]), int(ub[y])))
            assigned = np.flatnonzero(fwd >= 0)
            imgs = fwd[assigned]
            for ta, tb in bins:
                for u, v in zip(ta[x, assigned].tolist(), tb[y, imgs].tolist()):
                    stack.append((u, v))
                for u, v in zip(ta[assigned, x].tolist(), tb[imgs, y].tolist()):
                    stack.append((u, v))
        return True

    def search(fwd, bwd):
        free = [x for x in range(n) if fwd[x] < 0]
        if not free:
            return fwd
        x = min(free, key=lambda e: (len(candidates[e]), e))
        for y in candidates[x]:
            if bwd[y] >= 0:
                continue
            f2, b2 = fwd.copy(), bwd.copy()
            if propagate(f2, b2, x, y):
                found = search(f2, b2)
                if found is not None:
                    return found
        return None

    start = np.full(n, -1, dtype=np.intp)
    found = search(start, start.copy())
    if found is None:
        return None
    m = ElementMap.make(found, n)
    assert check_homomorphism(m, a, b) is True
    return m
