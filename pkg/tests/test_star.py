import numpy as np
import pytest

from starbrace import (
    ElementMap,
    InvalidSpec,
    NotDual,
    NotSquare,
    SemilatticeSpec,
    SquareBraceSpec,
    StarBraceStructure,
    Witness,
    build_square_brace,
    build_strong_semilattice,
    check_dual,
    check_homomorphism,
    check_weak_star_brace,
    decompose,
    find_isomorphism,
    is_square,
    make_binary_op,
    projections,
    square_to_components,
)
from starbrace.corpus import CHAIN2, constant_hom, full_corpus, skew_braces, star_brace_corpus
from starbrace.star import all_homs, weak_star_identity_checks

from conftest import rb2_tables

BRACES = [g for _, g in skew_braces(4)]


def test_weak_star_examples(b2, min_semilattice):
    for g in BRACES:
        assert check_weak_star_brace(g.as_star_brace()) is True
    assert check_weak_star_brace(min_semilattice) is True
    bad = StarBraceStructure.from_arrays(b2.mul.table, [1, 0], b2.add.table, b2.neg.table)
    w = check_weak_star_brace(bad)
    assert isinstance(w, Witness) and w.inputs == (0,)


def test_dual_examples(min_semilattice):
    for g in BRACES:
        assert check_dual(g.as_star_brace()) is True
    assert check_dual(min_semilattice) is True


def test_square_of_b2_with_one_index_is_b2(b2, b2_brace):
    s = build_square_brace(SquareBraceSpec(1, b2_brace))
    assert find_isomorphism(s, b2) is not None


def test_square_rb2_tables(rb2):
    g1 = [g for _, g in skew_braces(1)][0]
    s = build_square_brace(SquareBraceSpec(2, g1))
    _, _, mul, add, star = rb2_tables()
    assert s.mul.table.tolist() == mul
    assert s.add.table.tolist() == add
    assert s.star.table.tolist() == star == s.neg.table.tolist()


def test_square_coordinates_formula(b2_brace):
    s = build_square_brace(SquareBraceSpec(2, b2_brace))
    enc = lambda i, g, j: i * 4 + g * 2 + j  # noqa: E731
    for i, g, j, k, h, l in np.ndindex(2, 2, 2, 2, 2, 2):
        a, b = enc(i, g, j), enc(k, h, l)
        assert s.mul(a, b) == enc(i, g ^ h, l)
        assert s.add(a, b) == enc(k, g ^ h, j)
        assert s.star(a) == enc(j, g, i) == s.neg(a)
    assert s.n == 8
    assert projections(s.multiplicative) == [enc(0, 0, 0), enc(1, 0, 1)]
    assert check_dual(s) is True and is_square(s)


def test_square_spec_rejects_empty_index_set(b2_brace):
    with pytest.raises(InvalidSpec):
        SquareBraceSpec(0, b2_brace)


def test_is_square_examples(rb2, min_semilattice):
    assert all(is_square(g.as_star_brace()) for g in BRACES)
    assert is_square(rb2)
    assert not is_square(min_semilattice)


def test_square_to_components_rb2(rb2):
    spec, psi = square_to_components(rb2)
    assert spec.index_set_size == 2 and spec.group.n == 1
    assert psi == ElementMap.identity(4)


def test_square_to_components_b2(b2):
    spec, psi = square_to_components(b2)
    assert spec.index_set_size == 1
    assert find_isomorphism(spec.group.as_star_brace(), b2) is not None


def test_square_to_components_rejects_non_square(min_semilattice):
    with pytest.raises(NotSquare):
        square_to_components(min_semilattice)


def test_square_round_trip_every_projection():
    # the group recovered does not depend on the chosen projection
    for name, s in star_brace_corpus():
        if not is_square(s):
            continue
        groups = []
        for e in projections(s.multiplicative):
            spec, psi = square_to_components(s, e)
            assert psi.is_bijective(), name
            assert check_homomorphism(psi, build_square_brace(spec), s) is True, name
            groups.append(spec.group.as_star_brace())
        assert all(find_isomorphism(groups[0], h) is not None for h in groups[1:]), name


def test_square_round_trip_recovers_b2(b2_brace, b2):
    s = build_square_brace(SquareBraceSpec(2, b2_brace))
    spec, _ = square_to_components(s)
    assert spec.index_set_size == 2
    assert find_isomorphism(spec.group.as_star_brace(), b2) is not None


def _chain(top, bottom, hom):
    return SemilatticeSpec(make_binary_op(2, CHAIN2), [top, bottom], {(0, 1): hom})


def test_strong_semilattice_single_node(b2_brace, b2):
    spec = SemilatticeSpec(make_binary_op(1, [[0]]), [SquareBraceSpec(1, b2_brace)], {})
    s = build_strong_semilattice(spec)
    assert np.array_equal(s.mul.table, b2.mul.table) and np.array_equal(s.add.table, b2.add.table)


def test_strong_semilattice_three_elements(one, b2):
    s = build_strong_semilattice(_chain(one, b2, ElementMap.make([0], 2)))
    # the top element maps to the identity of B2 and acts as an identity
    table = [[0, 1, 2], [1, 1, 2], [2, 2, 1]]
    assert s.mul.table.tolist() == table == s.add.table.tolist()
    assert s.star.table.tolist() == [0, 1, 2] == s.neg.table.tolist()
    assert check_dual(s) is True


def test_strong_semilattice_six_elements(rb2, b2):
    s = build_strong_semilattice(_chain(rb2, b2, ElementMap.make([0, 0, 0, 0], 2)))
    assert s.n == 6
    assert check_weak_star_brace(s) is True and check_dual(s) is True
    assert not is_square(s)


def test_strong_semilattice_rejects_bad_specs(rb2, b2, b2_brace):
    with pytest.raises(InvalidSpec):  # swap does not fix the identity
        all_homs(_chain(b2, b2, ElementMap.make([1, 0], 2)))
    with pytest.raises(InvalidSpec):  # not a semilattice
        all_homs(SemilatticeSpec(make_binary_op(2, [[0, 1], [0, 1]]), [b2, b2], {(0, 1): ElementMap.identity(2)}))
    with pytest.raises(InvalidSpec):  # missing hom
        all_homs(SemilatticeSpec(make_binary_op(2, CHAIN2), [b2, b2], {}))
    with pytest.raises(InvalidSpec):  # identity at a node must be the identity map
        all_homs(SemilatticeSpec(make_binary_op(1, [[0]]), [b2], {(0, 0): ElementMap.make([0, 0], 2)}))


def test_composite_homs_are_derived():
    from starbrace.corpus import CHAIN3

    one = SquareBraceSpec(1, skew_braces(1)[0][1])
    z2 = SquareBraceSpec(1, skew_braces(2)[1][1])
    rb2 = SquareBraceSpec(2, skew_braces(1)[0][1])
    spec = SemilatticeSpec(make_binary_op(3, CHAIN3), [z2, rb2, one],
                           {(0, 1): constant_hom(z2, rb2), (1, 2): constant_hom(rb2, one)})
    homs = all_homs(spec)
    assert homs[(0, 2)] == ElementMap.make([0, 0], 1)
    assert homs[(1, 1)] == ElementMap.identity(4)


def test_decompose_square(rb2):
    d = decompose(rb2)
    assert d.spec.y_size == 1 and d.ok


def test_decompose_three_element_chain(one, b2):
    s = build_strong_semilattice(_chain(one, b2, ElementMap.make([0], 2)))
    d = decompose(s)
    assert d.ok and d.spec.y_size == 2
    assert sorted(len(m) for m in d.members) == [1, 2]
    top = [a for a in range(2) if len(d.members[a]) == 1][0]
    bottom = 1 - top
    assert d.spec.homs[(top, bottom)] == ElementMap.make([0], 2)


def test_decompose_six_element(rb2, b2):
    s = build_strong_semilattice(_chain(rb2, b2, ElementMap.make([0, 0, 0, 0], 2)))
    d = decompose(s)
    assert d.ok
    comps = sorted(d.spec.components, key=lambda c: c.n)
    assert find_isomorphism(comps[0], b2) is not None
    assert find_isomorphism(comps[1], rb2) is not None


def test_decompose_min_semilattice(min_semilattice):
    d = decompose(min_semilattice)
    assert d.spec.y_size == 2 and [len(m) for m in d.members] == [1, 1]


def test_decompose_rejects_non_dual():
    # a semigroup-only structure has no additive part
    s = StarBraceStructure.from_arrays([[0, 1], [1, 0]], [0, 1])
    with pytest.raises(NotDual):
        decompose(s)


def test_decompose_round_trip_on_corpus():
    for name, s in full_corpus():
        d = decompose(s)
        assert d.ok, (name, [c.name for c in d.checks if not c.passed])
        assert sorted(np.concatenate(d.members).tolist()) == list(range(s.n))


def test_decompose_is_relabelling_invariant():
    rng = np.random.default_rng(3)
    for name, s in star_brace_corpus():
        t = s.relabel(rng.permutation(s.n))
        a, b = decompose(s), decompose(t)
        assert b.ok
        assert sorted(len(m) for m in a.members) == sorted(len(m) for m in b.members), name


def test_weak_star_identities_on_corpus():
    for name, s in full_corpus():
        failed = [c.name for c in weak_star_identity_checks(s) if c.failed]
        assert failed == [], (name, failed)


def test_corpus_shape():
    corpus = star_brace_corpus()
    assert len(corpus) >= 20
    for name, s in corpus:
        assert check_dual(s) is True, name


def _labelled_regular_star(n):
    import itertools

    from starbrace.corpus import semigroup_tables

    idx = np.arange(n)
    invols = [np.array(p) for p in itertools.permutations(range(n)) if all(p[p[i]] == i for i in range(n))]
    return [(t, s) for t in semigroup_tables(n) for s in invols
            if (t[t[idx, s], idx] == idx).all() and (s[t] == t.T[s][:, s]).all()]


@pytest.mark.parametrize("n", [1, 2, 3])
def test_no_small_weak_star_brace_is_non_dual(n):
    # exhaustive over labelled tables; the same search at n = 4 also finds none
    rs = _labelled_regular_star(n)
    assert rs
    for a, na in rs:
        for m, st in rs:
            s = StarBraceStructure.from_arrays(m, st, a, na)
            if check_weak_star_brace(s) is True:
                assert check_dual(s) is True
