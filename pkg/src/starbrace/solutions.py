"""Maps ``S x S -> S x S`` and the set-theoretic Yang-Baxter check."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .tables import ShapeMismatch, SizeMismatch, Witness, _frozen, first_mismatch


@dataclass(frozen=True, eq=False)
class PairMap:
    """``r(a, b) = (lambda_table[a, b], rho_table[b, a])``.

    ``lambda_table[a]`` is the map lambda_a and ``rho_table[b]`` is rho_b.
    """

    lambda_table: np.ndarray
    rho_table: np.ndarray

    def __post_init__(self):
        if self.lambda_table.shape != self.rho_table.shape or self.lambda_table.ndim != 2:
            raise ShapeMismatch("lambda and rho tables must both be n x n")

    @property
    def n(self) -> int:
        return self.lambda_table.shape[0]

    @classmethod
    def make(cls, lam, rho) -> "PairMap":
        return cls(_frozen(lam), _frozen(rho))

    @classmethod
    def from_components(cls, first, second) -> "PairMap":
        """Build from ``r(a, b) = (first[a, b], second[a, b])``."""
        return cls.make(np.asarray(first), np.asarray(second).T)

    @classmethod
    def identity(cls, n: int) -> "PairMap":
        a, b = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
        return cls.from_components(a, b)

    @classmethod
    def swap(cls, n: int) -> "PairMap":
        a, b = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
        return cls.from_components(b, a)

    @property
    def first(self) -> np.ndarray:
        return self.lambda_table

    @property
    def second(self) -> np.ndarray:
        return self.rho_table.T

    def __call__(self, a: int, b: int) -> tuple[int, int]:
        return int(self.lambda_table[a, b]), int(self.rho_table[b, a])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PairMap)
            and np.array_equal(self.lambda_table, other.lambda_table)
            and np.array_equal(self.rho_table, other.rho_table)
        )

    def __matmul__(self, other: "PairMap") -> "PairMap":
        """``(self @ other)(a, b) = self(other(a, b))``."""
        return compose(self, other)


def compose(outer: PairMap, inner: PairMap) -> PairMap:
    if outer.n != inner.n:
        raise SizeMismatch("pair maps on different carriers")
    u, v = inner.first, inner.second
    return PairMap.from_components(outer.first[u, v], outer.second[u, v])


def first_difference(name: str, f: PairMap, g: PairMap) -> bool | Witness:
    """Compare two pair maps entrywise on ``(a, b)``."""
    res = first_mismatch(name, np.stack([f.first, f.second], -1), np.stack([g.first, g.second], -1))
    if res:
        return True
    a, b, _ = res.inputs
    return Witness(name, (a, b), g(a, b), f(a, b))


def is_bijective(r: PairMap) -> bool:
    codes = r.first * r.n + r.second
    return len(np.unique(codes)) == r.n * r.n


def inverse_map(r: PairMap) -> Optional[PairMap]:
    if not is_bijective(r):
        return None
    n = r.n
    first = np.empty((n, n), dtype=np.intp)
    second = np.empty((n, n), dtype=np.intp)
    a, b = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    first[r.first, r.second] = a
    second[r.first, r.second] = b
    return PairMap.from_components(first, second)


def _rows_bijective(t: np.ndarray) -> bool:
    return all(len(np.unique(row)) == len(row) for row in t)


@dataclass(frozen=True)
class SolutionReport:
    is_solution: bool
    failed_condition: Optional[str]
    witness: Optional[Witness]
    left_nondegenerate: bool
    right_nondegenerate: bool
    bijective: bool
    involutive: bool

    def as_dict(self) -> dict:
        return {
            "is_solution": self.is_solution,
            "failed_condition": self.failed_condition,
            "witness": None if self.witness is None else self.witness.as_dict(),
            "left_nondegenerate": self.left_nondegenerate,
            "right_nondegenerate": self.right_nondegenerate,
            "bijective": self.bijective,
            "involutive": self.involutive,
        }


def ybe_conditions(r: PairMap) -> list[tuple[str, np.ndarray, np.ndarray]]:
    """Both sides of the three lambda/rho conditions, indexed by ``(x, y, z)``."""
    L, R = r.lambda_table, r.rho_table
    n = r.n
    x = np.arange(n)[:, None, None]
    y = np.arange(n)[None, :, None]
    z = np.arange(n)[None, None, :]
    lam_xy = L[x, y]
    rho_yx = R[y, x]
    lam_yz = L[y, z]
    rho_zy = R[z, y]
    return [
        (
            "lambda_x lambda_y = lambda_{lambda_x(y)} lambda_{rho_y(x)}",
            L[x, lam_yz],
            L[lam_xy, L[rho_yx, z]],
        ),
        (
            "rho_z rho_y = rho_{rho_z(y)} rho_{lambda_y(z)}",
            R[z, rho_yx],
            R[rho_zy, R[lam_yz, x]],
        ),
        (
            "lambda_{rho_{lambda_y(z)}(x)} rho_z(y) = rho_{lambda_{rho_y(x)}(z)} lambda_x(y)",
            L[R[lam_yz, x], rho_zy],
            R[L[rho_yx, z], lam_xy],
        ),
    ]


def is_ybe_solution(r: PairMap) -> SolutionReport:
    failed, witness = None, None
    for name, lhs, rhs in ybe_conditions(r):
        res = first_mismatch(name, lhs, rhs)
        if not res:
            failed, witness = name, res
            break
    bij = is_bijective(r)
    return SolutionReport(
        is_solution=failed is None,
        failed_condition=failed,
        witness=witness,
        left_nondegenerate=_rows_bijective(r.lambda_table),
        right_nondegenerate=_rows_bijective(r.rho_table),
        bijective=bij,
        involutive=compose(r, r) == PairMap.identity(r.n),
    )


def braid_relation_holds(r: PairMap) -> bool | Witness:
    """``(r x id)(id x r)(r x id) = (id x r)(r x id)(id x r)`` by direct triple evaluation."""
    F, G = r.first, r.second
    n = r.n
    x, y, z = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")

    def r12(a, b, c):
        return F[a, b], G[a, b], c

    def r23(a, b, c):
        return a, F[b, c], G[b, c]

    left = r12(*r23(*r12(x, y, z)))
    right = r23(*r12(*r23(x, y, z)))
    for k in range(3):
        res = first_mismatch(f"braid component {k}", left[k], right[k])
        if not res:
            return res
    return True
