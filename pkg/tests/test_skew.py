import itertools
import json

import numpy as np
import pytest

from starbrace import (
    BoundExceeded,
    PairMap,
    SkewBrace,
    Witness,
    associated_solution,
    check_skew_brace,
    deformed_check,
    deformed_hat,
    enumerate_skew_braces,
    is_ybe_solution,
    right_distributors_group,
    verify_skew_deformation,
)
from starbrace.corpus import skew_braces
from starbrace.groups import _catalog_path, group_catalog, search_group_tables, search_groups
from starbrace.skew import enumerate_skew_braces_by_tables, three_term_distributor_mask

from conftest import braid_oracle

BRACES = [g for _, g in skew_braces(6)]


class Ops:
    """Per-element arithmetic of a skew brace, straight from its tables."""

    def __init__(self, g: SkewBrace):
        self.g = g
        self.add = lambda x, y: int(g.add.table[x, y])
        self.mul = lambda x, y: int(g.mul.table[x, y])
        self.neg = lambda x: int(g.add_inv.table[x])
        self.inv = lambda x: int(g.mul_inv.table[x])

    def hat(self, t, x, y):
        s = self.add(self.neg(self.mul(x, t)), self.mul(self.mul(x, y), t))
        return s, self.mul(self.inv(s), self.mul(x, y))

    def check(self, t, x, y):
        s = self.add(self.add(self.mul(x, y), self.neg(self.mul(x, t))), t)
        return s, self.mul(self.inv(s), self.mul(x, y))

    def associated(self, x, y):
        u = self.add(self.inv(x), y)
        return self.mul(x, u), self.mul(self.inv(u), y)


def test_check_skew_brace_examples(b2_brace, z4_radical):
    assert check_skew_brace(b2_brace) is True
    assert check_skew_brace(z4_radical) is True
    z4 = [[(x + y) % 4 for y in range(4)] for x in range(4)]
    bad = SkewBrace.from_tables(z4, z4, identity=1, add_inv=[0, 3, 2, 1], mul_inv=[0, 3, 2, 1])
    assert isinstance(check_skew_brace(bad), Witness)


def test_associated_solution_b2_is_swap(b2_brace):
    assert associated_solution(b2_brace) == PairMap.swap(2)


def test_associated_solution_trivial_braces():
    for g in BRACES:
        if not np.array_equal(g.add.table, g.mul.table):
            continue
        o = Ops(g)
        r = associated_solution(g)
        for x, y in itertools.product(range(g.n), repeat=2):
            assert r(x, y) == (y, o.mul(o.mul(o.inv(y), x), y))


def test_associated_solution_one_element():
    g = SkewBrace.from_tables([[0]], [[0]])
    assert associated_solution(g) == PairMap.identity(1)


def test_associated_solution_properties():
    for g in BRACES:
        o = Ops(g)
        r = associated_solution(g)
        for x, y in itertools.product(range(g.n), repeat=2):
            assert r(x, y) == o.associated(x, y)
        rep = is_ybe_solution(r)
        assert rep.is_solution and rep.bijective
        assert rep.left_nondegenerate and rep.right_nondegenerate
        abelian = np.array_equal(g.add.table, g.add.table.T)
        assert rep.involutive == abelian


def test_right_distributors_examples(b2_brace, z4_radical):
    assert right_distributors_group(b2_brace) == [0, 1]
    assert right_distributors_group(z4_radical) == [0, 1, 2, 3]


def test_distributors_form_subgroup_and_match_three_term():
    for g in BRACES:
        d = right_distributors_group(g)
        assert g.identity in d
        mask = np.zeros(g.n, dtype=bool)
        mask[d] = True
        assert np.array_equal(mask, three_term_distributor_mask(g))
        for a, b in itertools.product(d, repeat=2):
            assert g.mul.table[a, b] in d
        assert all(g.mul_inv.table[a] in d for a in d)


def test_proper_distributor_set_exists():
    # not every t is a distributor: the iff below is not vacuous
    assert any(len(right_distributors_group(g)) < g.n for g in BRACES)


def test_deformed_maps_per_element():
    for g in BRACES:
        o = Ops(g)
        for t in range(g.n):
            h, c = deformed_hat(g, t), deformed_check(g, t)
            for x, y in itertools.product(range(g.n), repeat=2):
                assert h(x, y) == o.hat(t, x, y)
                assert c(x, y) == o.check(t, x, y)


def test_deformed_at_identity_is_associated():
    for g in BRACES:
        r = associated_solution(g)
        assert deformed_hat(g, g.identity) == r


def test_check_at_identity_is_inverse_of_associated():
    # xy - x and -x + xy agree only for abelian (G, +); in general the check
    # map at the identity is the inverse of the associated solution
    for g in BRACES:
        r = associated_solution(g)
        c = deformed_check(g, g.identity)
        assert c @ r == PairMap.identity(g.n) == r @ c
        abelian = np.array_equal(g.add.table, g.add.table.T)
        assert (c == r) == abelian


def test_deformed_b2(b2_brace):
    assert deformed_hat(b2_brace, 1) == PairMap.swap(2)
    assert deformed_check(b2_brace, 0) == PairMap.swap(2)
    g1 = SkewBrace.from_tables([[0]], [[0]])
    assert deformed_hat(g1, 0) == PairMap.identity(1)
    assert deformed_check(g1, 0) == PairMap.identity(1)


def test_hat_solution_iff_distributor_by_braid_oracle():
    for g in BRACES:
        d = set(right_distributors_group(g))
        for t in range(g.n):
            r = deformed_hat(g, t)
            assert braid_oracle(r, g.n) == (t in d) == is_ybe_solution(r).is_solution


@pytest.mark.parametrize("t", [0, 1])
def test_verify_b2(b2_brace, t):
    checks = verify_skew_deformation(b2_brace, t)
    assert all(c.passed for c in checks)


def test_verify_one_element():
    g = SkewBrace.from_tables([[0]], [[0]])
    assert all(c.passed for c in verify_skew_deformation(g, 0))


def test_verify_all_braces_up_to_order_six():
    for g in BRACES:
        for t in range(g.n):
            checks = verify_skew_deformation(g, t)
            assert not [c.name for c in checks if c.failed]


def test_tau_inverse_as_printed_fails_on_some_brace():
    # "(tau_x)^-1 = sigma_{x^-1}" is reported only; it does fail in the corpus
    names = [c.name for g in BRACES for t in right_distributors_group(g)
             for c in verify_skew_deformation(g, t) if not c.passed]
    assert "hat tau^t_x inverse is hat sigma^t_{x^-1}" in names


def test_enumeration_counts():
    assert [len(list(enumerate_skew_braces(n))) for n in range(1, 7)] == [1, 1, 1, 4, 1, 6]


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_enumeration_matches_independent_search(n):
    from starbrace import find_isomorphism

    a = list(enumerate_skew_braces(n))
    b = enumerate_skew_braces_by_tables(n)
    assert len(a) == len(b)
    for g in b:
        assert sum(find_isomorphism(g.as_star_brace(), h.as_star_brace()) is not None for h in a) == 1


def test_enumeration_order_and_validity():
    for n in range(1, 7):
        gs = list(enumerate_skew_braces(n))
        keys = [(tuple(g.add.table.ravel()), tuple(g.mul.table.ravel())) for g in gs]
        assert keys == sorted(keys)
        assert all(check_skew_brace(g) is True for g in gs)


def test_enumeration_bounds():
    with pytest.raises(BoundExceeded):
        list(enumerate_skew_braces(9))
    with pytest.raises(BoundExceeded):
        list(enumerate_skew_braces(0))


def test_group_search_labelled_counts():
    # labelled groups with identity 0: (n-1)! / |Aut| summed over classes
    assert [sum(1 for _ in search_group_tables(n)) for n in range(1, 7)] == [1, 1, 1, 4, 6, 80]


@pytest.mark.parametrize("n", range(1, 8))
def test_catalog_regenerates(n):
    fresh = search_groups(n)
    assert [t.tolist() for t in fresh] == [t.tolist() for t in group_catalog(n)]


def test_catalog_file_covers_orders_one_to_eight():
    data = json.loads(_catalog_path().read_text())
    assert [len(data[str(n)]) for n in range(1, 9)] == [1, 1, 1, 2, 1, 2, 1, 5]
