"""Exhaustive search for finite groups and skew left braces of small order.

Groups are searched as normalised Cayley tables (identity ``0``) with
associativity propagation.  Skew braces on a fixed additive group ``A`` are
found as maps ``x -> lambda_x`` into ``Aut(A)`` satisfying
``lambda_{x + lambda_x(y)} = lambda_x lambda_y``; the multiplication is then
``x y = x + lambda_x(y)``.
"""
from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources
from itertools import permutations
from typing import Iterator

import numpy as np

from .tables import BoundExceeded

MAX_ORDER = 8


def _assoc_ok(t: list[list[int]], n: int, x: int, y: int) -> bool:
    # checks every associativity instance that involves the cell (x, y)
    v = t[x][y]
    row_x, row_v = t[x], t[v]
    for z in range(n):
        yz = t[y][z]
        if yz >= 0 and row_v[z] >= 0 and row_x[yz] >= 0 and row_v[z] != row_x[yz]:
            return False
    for w in range(n):
        wx = t[w][x]
        if wx >= 0 and t[wx][y] >= 0 and t[w][v] >= 0 and t[wx][y] != t[w][v]:
            return False
    for a in range(n):
        for b in range(n):
            ab = t[a][b]
            if ab == x:
                by = t[b][y]
                if by >= 0 and t[a][by] >= 0 and t[a][by] != v:
                    return False
            if ab >= 0 and t[b][x] == y:
                # a (b x) = (a b) x where b x = y
                if t[ab][x] >= 0 and t[ab][x] != t[a][y] and t[a][y] >= 0:
                    return False
    return True


def search_group_tables(n: int) -> Iterator[np.ndarray]:
    """Every group table on ``{0..n-1}`` with identity ``0`` (labelled, not up to isomorphism)."""
    t = [[-1] * n for _ in range(n)]
    for i in range(n):
        t[0][i] = i
        t[i][0] = i
    cells = [(x, y) for x in range(1, n) for y in range(1, n)]
    row_used = [set(t[x][c] for c in range(n) if t[x][c] >= 0) for x in range(n)]
    col_used = [set(t[r][y] for r in range(n) if t[r][y] >= 0) for y in range(n)]

    def rec(k: int):
        if k == len(cells):
            yield np.array(t, dtype=np.intp)
            return
        x, y = cells[k]
        for v in range(n):
            if v in row_used[x] or v in col_used[y]:
                continue
            t[x][y] = v
            row_used[x].add(v)
            col_used[y].add(v)
            if _assoc_ok(t, n, x, y):
                yield from rec(k + 1)
            row_used[x].discard(v)
            col_used[y].discard(v)
            t[x][y] = -1

    yield from rec(0)


def relabel_table(t: np.ndarray, perm) -> np.ndarray:
    p = np.asarray(perm, dtype=np.intp)
    inv = np.empty_like(p)
    inv[p] = np.arange(len(p))
    return p[t[np.ix_(inv, inv)]]


def group_inverses(t: np.ndarray) -> np.ndarray:
    return np.argmax(t == 0, axis=1)


def _as_structure(t: np.ndarray):
    from .tables import StarBraceStructure

    return StarBraceStructure.from_arrays(t, group_inverses(t))


def search_groups(n: int) -> list[np.ndarray]:
    """One group table per isomorphism class: the lexicographically least labelled table."""
    from .tables import find_isomorphism

    reps: list[np.ndarray] = []
    structs = []
    # the search yields tables in lexicographic order, so the first hit of a class is its least member
    for t in search_group_tables(n):
        s = _as_structure(t)
        if any(find_isomorphism(s, r) is not None for r in structs):
            continue
        reps.append(t)
        structs.append(s)
    return reps


def _catalog_path():
    return resources.files("starbrace") / "data" / "groups.json"


@lru_cache(maxsize=None)
def _load_catalog() -> dict[int, tuple]:
    raw = json.loads(_catalog_path().read_text())
    return {int(k): tuple(tuple(map(tuple, t)) for t in v) for k, v in raw.items()}


def write_catalog(path, max_order: int = MAX_ORDER) -> None:
    """Regenerate the shipped catalog (slow for order 8: a few minutes)."""
    data = {str(n): [t.tolist() for t in search_groups(n)] for n in range(1, max_order + 1)}
    with open(path, "w") as fh:
        json.dump(data, fh, indent=None)
        fh.write("\n")


def group_catalog(n: int) -> list[np.ndarray]:
    if n < 1 or n > MAX_ORDER:
        raise BoundExceeded(f"group catalog covers orders 1..{MAX_ORDER}, got {n}")
    return [np.array(t, dtype=np.intp) for t in _load_catalog()[n]]


def automorphisms(t: np.ndarray) -> list[tuple[int, ...]]:
    """All automorphisms of a group table, as image tuples, in lexicographic order."""
    n = len(t)
    out = []
    for rest in permutations(range(1, n)):
        p = np.array((0,) + rest, dtype=np.intp)
        if np.array_equal(p[t], t[np.ix_(p, p)]):
            out.append(tuple(p.tolist()))
    return out


def brace_lambda_maps(add: np.ndarray) -> Iterator[np.ndarray]:
    """Multiplication tables of every skew brace with additive table ``add`` (labelled).

    Backtracking over ``x -> lambda_x in Aut(A)`` with closure under
    ``lambda_{x + lambda_x(y)} = lambda_x lambda_y``.
    """
    n = len(add)
    auts = automorphisms(add)
    index = {a: i for i, a in enumerate(auts)}
    arr = np.array(auts, dtype=np.intp)
    # comp[i, j] = index of auts[i] o auts[j]
    comp = np.array([[index[tuple(arr[i][arr[j]].tolist())] for j in range(len(auts))] for i in range(len(auts))])
    ident = index[tuple(range(n))]

    def close(lam: list[int]) -> bool:
        changed = True
        while changed:
            changed = False
            done = [x for x in range(n) if lam[x] >= 0]
            for x in done:
                ax = arr[lam[x]]
                for y in done:
                    p = int(add[x, ax[y]])
                    want = int(comp[lam[x], lam[y]])
                    if lam[p] < 0:
                        lam[p] = want
                        changed = True
                    elif lam[p] != want:
                        return False
        return True

    def rec(lam: list[int]):
        free = [x for x in range(n) if lam[x] < 0]
        if not free:
            yield lam
            return
        x = free[0]
        for a in range(len(auts)):
            trial = list(lam)
            trial[x] = a
            if close(trial):
                yield from rec(trial)

    start = [-1] * n
    start[0] = ident
    if not close(start):
        return
    for lam in rec(start):
        la = arr[lam]  # la[x, y] = lambda_x(y)
        yield add[np.arange(n)[:, None], la]
