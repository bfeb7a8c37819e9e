"""Text formats for structures, skew braces, pair maps and semilattice specs.

Every format is line oriented: a keyword followed by whitespace-separated
decimal indices.  Blank lines and ``#`` comments are ignored.  Serialisation
is canonical (fixed key order, single spaces) so the sha256 of the text is a
stable content digest.
"""
from __future__ import annotations

import hashlib
from pathlib import Path
from typing import Union

import numpy as np

from .skew import SkewBrace
from .solutions import PairMap
from .star import SemilatticeSpec, SquareBraceSpec, component_structure
from .tables import (
    ElementMap,
    StarBraceError,
    StarBraceStructure,
    make_binary_op,
)

PathLike = Union[str, Path]


class ParseError(StarBraceError):
    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        where = ""
        if source:
            where += f"{source}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)
        self.line = line
        self.source = source


def _records(text: str, source: str | None = None) -> list[tuple[int, str, list[str]]]:
    out = []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, *rest = line.split()
        out.append((no, key, rest))
    return out


def _ints(fields: list[str], no: int, source: str | None) -> list[int]:
    try:
        return [int(f) for f in fields]
    except ValueError:
        bad = next(f for f in fields if not f.lstrip("-").isdigit())
        raise ParseError(f"expected an integer, got {bad!r}", no, source) from None


def _keyed(text: str, allowed: set[str], source: str | None) -> dict[str, tuple[int, list[int]]]:
    seen: dict[str, tuple[int, list[int]]] = {}
    for no, key, rest in _records(text, source):
        if key not in allowed:
            raise ParseError(f"unknown keyword {key!r}", no, source)
        if key in seen:
            raise ParseError(f"duplicate keyword {key!r}", no, source)
        seen[key] = (no, _ints(rest, no, source))
    if "n" not in seen:
        raise ParseError("missing 'n' line", None, source)
    no, vals = seen["n"]
    if len(vals) != 1 or vals[0] < 1:
        raise ParseError("'n' takes one positive integer", no, source)
    return seen


def _field(seen, key: str, length: int, source, square: bool = False):
    if key not in seen:
        raise ParseError(f"missing {key!r} line", None, source)
    no, vals = seen[key]
    if len(vals) != length:
        raise ParseError(f"{key!r} needs {length} entries, got {len(vals)}", no, source)
    n = seen["n"][1][0]
    bad = [v for v in vals if v < 0 or v >= n]
    if bad:
        raise ParseError(f"{key!r} entry {bad[0]} not in [0, {n})", no, source)
    arr = np.array(vals, dtype=np.intp)
    return arr.reshape(n, n) if square else arr


def parse_structure(text: str, source: str | None = None) -> StarBraceStructure:
    seen = _keyed(text, {"n", "add", "neg", "mul", "star"}, source)
    n = seen["n"][1][0]
    mul = _field(seen, "mul", n * n, source, square=True)
    star = _field(seen, "star", n, source)
    add = neg = None
    if "add" in seen or "neg" in seen:
        add = _field(seen, "add", n * n, source, square=True)
        neg = _field(seen, "neg", n, source)
    return StarBraceStructure.from_arrays(mul, star, add, neg)


def parse_skew_brace(text: str, source: str | None = None) -> SkewBrace:
    seen = _keyed(text, {"n", "add", "addinv", "mul", "mulinv", "id"}, source)
    n = seen["n"][1][0]
    ident = _field(seen, "id", 1, source)[0]
    return SkewBrace.from_tables(
        _field(seen, "add", n * n, source, square=True),
        _field(seen, "mul", n * n, source, square=True),
        int(ident),
        _field(seen, "addinv", n, source),
        _field(seen, "mulinv", n, source),
    )


def parse_pairmap(text: str, source: str | None = None) -> PairMap:
    seen = _keyed(text, {"n", "lambda", "rho"}, source)
    n = seen["n"][1][0]
    return PairMap.make(_field(seen, "lambda", n * n, source, square=True),
                        _field(seen, "rho", n * n, source, square=True))


def _row(key: str, arr) -> str:
    return key + " " + " ".join(str(int(v)) for v in np.asarray(arr).ravel())


def dump_structure(s: StarBraceStructure) -> str:
    lines = [f"n {s.n}"]
    if s.has_add:
        lines += [_row("add", s.add.table), _row("neg", s.neg.table)]
    lines += [_row("mul", s.mul.table), _row("star", s.star.table)]
    return "\n".join(lines) + "\n"


def dump_skew_brace(g: SkewBrace) -> str:
    return "\n".join([
        f"n {g.n}",
        _row("add", g.add.table),
        _row("addinv", g.add_inv.table),
        _row("mul", g.mul.table),
        _row("mulinv", g.mul_inv.table),
        f"id {g.identity}",
    ]) + "\n"


def dump_pairmap(r: PairMap) -> str:
    return "\n".join([f"n {r.n}", _row("lambda", r.lambda_table), _row("rho", r.rho_table)]) + "\n"


def digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


def structure_digest(s: StarBraceStructure) -> str:
    return digest(dump_structure(s))


def looks_like_skew_brace(text: str) -> bool:
    return any(key in ("addinv", "mulinv", "id") for _, key, _ in _records(text))


def load_any(path: PathLike) -> StarBraceStructure:
    """Read a structure file, accepting the skew-brace format as well."""
    p = Path(path)
    text = p.read_text()
    if looks_like_skew_brace(text):
        return parse_skew_brace(text, str(p)).as_star_brace()
    return parse_structure(text, str(p))


# semilattice specs

def parse_semilattice_spec(text: str, base: PathLike = ".", source: str | None = None) -> SemilatticeSpec:
    """``ysize``, ``meet``, one ``component`` per node and ``hom`` lines.

    Component paths are resolved relative to ``base``.
    """
    base = Path(base)
    k = None
    meet = None
    comps: dict[int, object] = {}
    homs: dict[tuple[int, int], tuple[int, list[int]]] = {}
    for no, key, rest in _records(text, source):
        if key == "ysize":
            vals = _ints(rest, no, source)
            if len(vals) != 1 or vals[0] < 1:
                raise ParseError("'ysize' takes one positive integer", no, source)
            k = vals[0]
        elif key == "meet":
            if k is None:
                raise ParseError("'meet' before 'ysize'", no, source)
            vals = _ints(rest, no, source)
            if len(vals) != k * k:
                raise ParseError(f"'meet' needs {k * k} entries, got {len(vals)}", no, source)
            if any(v < 0 or v >= k for v in vals):
                raise ParseError(f"'meet' entry not in [0, {k})", no, source)
            meet = np.array(vals, dtype=np.intp).reshape(k, k)
        elif key == "component":
            if len(rest) < 3:
                raise ParseError("'component <node> file <path>' or 'component <node> square <k> <path>'",
                                 no, source)
            node = _ints(rest[:1], no, source)[0]
            if k is not None and not 0 <= node < k:
                raise ParseError(f"component node {node} not in [0, {k})", no, source)
            if node in comps:
                raise ParseError(f"duplicate component for node {node}", no, source)
            kind = rest[1]
            try:
                if kind == "file" and len(rest) == 3:
                    comps[node] = load_any(base / rest[2])
                elif kind == "square" and len(rest) == 4:
                    size = _ints(rest[2:3], no, source)[0]
                    p = base / rest[3]
                    comps[node] = SquareBraceSpec(size, parse_skew_brace(p.read_text(), str(p)))
                else:
                    raise ParseError("bad component line", no, source)
            except OSError as exc:
                raise ParseError(f"cannot read component: {exc}", no, source) from None
        elif key == "hom":
            vals = _ints(rest, no, source)
            if len(vals) < 2:
                raise ParseError("'hom <alpha> <beta> <indices>'", no, source)
            pair = (vals[0], vals[1])
            if pair in homs:
                raise ParseError(f"duplicate hom {pair}", no, source)
            homs[pair] = (no, vals[2:])
        else:
            raise ParseError(f"unknown keyword {key!r}", no, source)
    if k is None or meet is None:
        raise ParseError("missing 'ysize' or 'meet'", None, source)
    missing = [a for a in range(k) if a not in comps]
    if missing:
        raise ParseError(f"no component for node {missing[0]}", None, source)
    sizes = [component_structure(comps[a]).n for a in range(k)]
    maps = {}
    for (a, b), (no, vals) in homs.items():
        if not (0 <= a < k and 0 <= b < k):
            raise ParseError(f"hom nodes ({a}, {b}) not in [0, {k})", no, source)
        if len(vals) != sizes[a]:
            raise ParseError(f"hom ({a}, {b}) needs {sizes[a]} entries, got {len(vals)}", no, source)
        if any(v < 0 or v >= sizes[b] for v in vals):
            raise ParseError(f"hom ({a}, {b}) entry not in [0, {sizes[b]})", no, source)
        maps[(a, b)] = ElementMap.make(vals, sizes[b])
    return SemilatticeSpec(make_binary_op(k, meet), [comps[a] for a in range(k)], maps)


def write_semilattice_spec(spec: SemilatticeSpec, path: PathLike) -> list[Path]:
    """Write the spec and one structure file per component next to it.

    Components are written as ``<stem>.node<k>.sb`` and referenced by name.
    Returns every path written, spec first.
    """
    path = Path(path)
    written = [path]
    lines = [f"ysize {spec.y_size}", _row("meet", spec.meet.table)]
    for a, comp in enumerate(spec.components):
        name = f"{path.stem}.node{a}.sb"
        (path.parent / name).write_text(dump_structure(component_structure(comp)))
        written.append(path.parent / name)
        lines.append(f"component {a} file {name}")
    for (a, b) in sorted(spec.homs):
        lines.append(_row(f"hom {a} {b}", spec.homs[(a, b)].table))
    path.write_text("\n".join(lines) + "\n")
    return written
