import numpy as np
import pytest

from starbrace import (
    ParseError,
    PairMap,
    dump_pairmap,
    dump_skew_brace,
    dump_structure,
    find_isomorphism,
    parse_pairmap,
    parse_semilattice_spec,
    parse_skew_brace,
    parse_structure,
    structure_digest,
)
from starbrace.corpus import full_corpus, semilattice_specs, skew_braces
from starbrace.formats import load_any, write_semilattice_spec
from starbrace.star import build_strong_semilattice


def test_structure_round_trip():
    for name, s in full_corpus():
        text = dump_structure(s)
        t = parse_structure(text)
        assert dump_structure(t) == text, name
        assert structure_digest(t) == structure_digest(s)


def test_semigroup_only_structure_round_trip():
    text = "n 2\nmul 0 1 1 0\nstar 0 1\n"
    s = parse_structure(text)
    assert not s.has_add and dump_structure(s) == text


def test_skew_brace_round_trip():
    for _, g in skew_braces(6):
        text = dump_skew_brace(g)
        h = parse_skew_brace(text)
        assert dump_skew_brace(h) == text


def test_pairmap_round_trip(rb2):
    r = PairMap.swap(3)
    assert parse_pairmap(dump_pairmap(r)) == r


def test_comments_and_blank_lines():
    s = parse_structure("# B2\n\nn 2  # size\nmul 0 1 1 0\n   \nstar 0 1\n")
    assert s.mul.table.tolist() == [[0, 1], [1, 0]]


@pytest.mark.parametrize("text, line", [
    ("n 2\nmul 0 1 1\nstar 0 1\n", 2),
    ("n 2\nmul 0 1 1 5\nstar 0 1\n", 2),
    ("n 2\nmul 0 1 1 0\nstar 0 x\n", 3),
    ("n 2\nmul 0 1 1 0\nfoo 1\n", 3),
    ("n 2\nmul 0 1 1 0\nmul 0 1 1 0\n", 3),
    ("n 0\n", 1),
])
def test_parse_errors_carry_line_numbers(text, line):
    with pytest.raises(ParseError) as exc:
        parse_structure(text, "t.sb")
    assert exc.value.line == line
    assert str(exc.value).startswith(f"t.sb:{line}:")


def test_missing_lines():
    with pytest.raises(ParseError):
        parse_structure("n 2\nmul 0 1 1 0\n")
    with pytest.raises(ParseError):
        parse_structure("mul 0\nstar 0\n")


def test_load_any_accepts_both_formats(tmp_path, b2):
    g = dict(skew_braces(2))["brace2.0"]
    (tmp_path / "g.brace").write_text(dump_skew_brace(g))
    (tmp_path / "b2.sb").write_text(dump_structure(b2))
    assert find_isomorphism(load_any(tmp_path / "g.brace"), b2) is not None
    assert dump_structure(load_any(tmp_path / "b2.sb")) == dump_structure(b2)


def test_semilattice_spec_file_round_trip(tmp_path):
    for name, spec in semilattice_specs():
        out = tmp_path / "spec.txt"
        written = write_semilattice_spec(spec, out)
        assert len(written) == spec.y_size + 1
        again = parse_semilattice_spec(out.read_text(), tmp_path, str(out))
        a, b = build_strong_semilattice(spec), build_strong_semilattice(again)
        assert np.array_equal(a.mul.table, b.mul.table) and np.array_equal(a.add.table, b.add.table), name


def test_semilattice_spec_square_component(tmp_path, b2):
    g = dict(skew_braces(2))["brace2.0"]
    (tmp_path / "g.brace").write_text(dump_skew_brace(g))
    (tmp_path / "one.sb").write_text("n 1\nadd 0\nneg 0\nmul 0\nstar 0\n")
    text = "ysize 2\nmeet 0 1 1 1\ncomponent 0 file one.sb\ncomponent 1 square 2 g.brace\nhom 0 1 0\n"
    s = build_strong_semilattice(parse_semilattice_spec(text, tmp_path))
    assert s.n == 9


@pytest.mark.parametrize("text, line", [
    ("ysize 2\nmeet 0 1 1\n", 2),
    ("ysize 1\nmeet 0\ncomponent 0 file missing.sb\n", 3),
    ("ysize 1\nmeet 0\ncomponent 0 file one.sb\nhom 0 0 0 0\n", 4),
    ("ysize 1\nmeet 0\nbogus\n", 3),
])
def test_semilattice_spec_errors(tmp_path, text, line):
    (tmp_path / "one.sb").write_text("n 1\nadd 0\nneg 0\nmul 0\nstar 0\n")
    with pytest.raises(ParseError) as exc:
        parse_semilattice_spec(text, tmp_path, "spec")
    assert exc.value.line == line
