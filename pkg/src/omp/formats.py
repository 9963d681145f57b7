"""Line-oriented text formats for oriented matroids, programs and digraphs.

OM / program file::

    OM rank=<r> n=<n> labels=<a,b,...>
    matrix:                  # or  cocircuits:  /  chirotope: <signs>
    1 0 1/2
    0 1 -3
    program: f=<label> g=<label>      # program files only

Digraph file::

    digraph name=<name> dim=<d>
    node <label> [<x> <y>]
    arc <u> <v>
    source <label>
    sink <label>
    facet <name> <label> <label> ...

Blank lines and ``#`` comments are ignored. ``serialize`` writes the canonical form,
so ``serialize(parse(text)) == text`` whenever ``text`` is canonical.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .digraph import Digraph, DigraphError, node_label
from .matroid import OMError, OrientedMatroid
from .signs import to_str


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message, self.line, self.column = message, line, column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


@dataclass
class _Line:
    no: int
    text: str  # comment stripped, right-stripped, original indentation kept

    def tokens(self):
        """(token, 1-based column) pairs."""
        out, col, cur = [], None, []
        for i, ch in enumerate(self.text + " ", start=1):
            if ch.isspace():
                if cur:
                    out.append(("".join(cur), col))
                    cur = []
            else:
                if not cur:
                    col = i
                cur.append(ch)
        return out


def _lines(text: str) -> list:
    out = []
    for no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].rstrip()
        if body.strip():
            out.append(_Line(no, body))
    return out


def _keyvals(line: _Line, tokens, allowed) -> dict:
    out = {}
    for tok, col in tokens:
        if "=" not in tok:
            raise FormatError(f"expected key=value, got {tok!r}", line.no, col)
        key, val = tok.split("=", 1)
        if key not in allowed:
            raise FormatError(f"unknown key {key!r}; expected one of {', '.join(allowed)}", line.no, col)
        if key in out:
            raise FormatError(f"repeated key {key!r}", line.no, col)
        out[key] = (val, col + len(key) + 1)
    return out


def _int(val, line, col, what) -> int:
    try:
        v = int(val)
    except ValueError:
        raise FormatError(f"{what} must be an integer, got {val!r}", line, col) from None
    if v < 0:
        raise FormatError(f"{what} must be nonnegative", line, col)
    return v


def _signs(tok: str, n: int, line: int, col: int) -> tuple:
    out = []
    for i, ch in enumerate(tok):
        if ch not in "+-0":
            raise FormatError(f"bad sign character {ch!r} at position {i + 1}", line, col + i)
        out.append({"+": 1, "-": -1, "0": 0}[ch])
    if n is not None and len(out) != n:
        raise FormatError(f"sign string has length {len(out)}, expected {n}", line, col)
    return tuple(out)


def _rational(tok: str, line: int, col: int) -> Fraction:
    try:
        if any(c in tok for c in ".eE"):
            raise ValueError
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise FormatError(f"expected a rational p/q, got {tok!r}", line, col) from None


# oriented matroids and programs --------------------------------------------

@dataclass
class OMFile:
    labels: list
    rank: int
    kind: str  # "matrix" | "cocircuits" | "chirotope"
    data: object
    program: tuple | None = None  # (f, g)

    def build(self) -> OrientedMatroid:
        try:
            if self.kind == "matrix":
                return OrientedMatroid.from_matrix(self.data, self.labels)
            if self.kind == "chirotope":
                return OrientedMatroid.from_chirotope(self.labels, self.rank, self.data)
            return OrientedMatroid.from_cocircuits(self.labels, self.rank, self.data)
        except OMError as exc:
            raise FormatError(str(exc)) from None

    def build_program(self, name: str = ""):
        from .program import OMProgram

        if self.program is None:
            raise FormatError("not a program file: missing 'program: f=<label> g=<label>'")
        f, g = self.program
        return OMProgram(self.build(), f, g, name=name)


def parse_om(text: str) -> OMFile:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty file", 1, 1)
    head = lines[0]
    toks = head.tokens()
    if toks[0][0] != "OM":
        raise FormatError("expected header 'OM rank=<r> n=<n> labels=<...>'", head.no, toks[0][1])
    kv = _keyvals(head, toks[1:], ("rank", "n", "labels"))
    for key in ("rank", "n", "labels"):
        if key not in kv:
            raise FormatError(f"header is missing {key}=", head.no, len(head.text) + 1)
    rank = _int(kv["rank"][0], head.no, kv["rank"][1], "rank")
    n = _int(kv["n"][0], head.no, kv["n"][1], "n")
    labels = kv["labels"][0].split(",")
    if len(labels) != n or any(not lab for lab in labels):
        raise FormatError(f"labels list has {len(labels)} entries, expected n = {n}", head.no, kv["labels"][1])
    if len(set(labels)) != n:
        raise FormatError("duplicate label", head.no, kv["labels"][1])
    if rank > n:
        raise FormatError(f"rank {rank} exceeds n = {n}", head.no, kv["rank"][1])

    kind = data = None
    program = None
    i = 1
    while i < len(lines):
        ln = lines[i]
        toks = ln.tokens()
        word, col = toks[0]
        if word == "program:":
            if program is not None:
                raise FormatError("repeated program line", ln.no, col)
            pk = _keyvals(ln, toks[1:], ("f", "g"))
            if set(pk) != {"f", "g"}:
                raise FormatError("program line needs f=<label> and g=<label>", ln.no, col)
            for key in ("f", "g"):
                if pk[key][0] not in labels:
                    raise FormatError(f"{key}={pk[key][0]} is not a label", ln.no, pk[key][1])
            program = (pk["f"][0], pk["g"][0])
            i += 1
            continue
        if kind is not None:
            raise FormatError(f"unexpected {word!r} after the {kind} block", ln.no, col)
        if word == "chirotope:":
            if len(toks) != 2:
                raise FormatError("expected 'chirotope: <signs>'", ln.no, col)
            want = len(list(itertools.combinations(range(n), rank)))
            stok, scol = toks[1]
            _signs(stok, None, ln.no, scol)
            if len(stok) != want:
                raise FormatError(f"chirotope has {len(stok)} signs, expected C({n},{rank}) = {want}", ln.no, scol)
            kind, data = "chirotope", stok
            i += 1
        elif word in ("cocircuits:", "matrix:"):
            if len(toks) != 1:
                raise FormatError(f"{word} takes no arguments", ln.no, toks[1][1])
            kind = word[:-1]
            rows = []
            i += 1
            while i < len(lines) and lines[i].tokens()[0][0] != "program:":
                body = lines[i]
                btoks = body.tokens()
                if kind == "cocircuits":
                    if len(btoks) != 1:
                        raise FormatError("one sign string per line", body.no, btoks[-1][1])
                    rows.append(_signs(btoks[0][0], n, body.no, btoks[0][1]))
                else:
                    if len(btoks) != n:
                        raise FormatError(f"matrix row has {len(btoks)} entries, expected {n}", body.no, btoks[0][1])
                    rows.append([_rational(t, body.no, c) for t, c in btoks])
                i += 1
            if kind == "matrix" and len(rows) != rank:
                raise FormatError(f"matrix has {len(rows)} rows, expected rank = {rank}", ln.no, col)
            if kind == "cocircuits" and not rows:
                raise FormatError("empty cocircuit list", ln.no, col)
            data = rows
        else:
            raise FormatError(f"unknown section {word!r}; expected matrix:, cocircuits: or chirotope:", ln.no, col)
    if kind is None:
        raise FormatError("missing matrix:, cocircuits: or chirotope: section", lines[-1].no + 1, 1)
    return OMFile(labels, rank, kind, data, program)


def serialize_om(om: OMFile) -> str:
    out = [f"OM rank={om.rank} n={len(om.labels)} labels={','.join(om.labels)}"]
    if om.kind == "matrix":
        out.append("matrix:")
        out.extend(" ".join(str(Fraction(x)) for x in row) for row in om.data)
    elif om.kind == "chirotope":
        out.append(f"chirotope: {om.data}")
    else:
        out.append("cocircuits:")
        out.extend(to_str(y) for y in om.data)
    if om.program is not None:
        out.append(f"program: f={om.program[0]} g={om.program[1]}")
    return "\n".join(out) + "\n"


def om_file_from(m: OrientedMatroid, program: tuple | None = None) -> OMFile:
    """Canonical file record: the realization if present, else sorted canonical cocircuits."""
    if m.realization is not None and m.realization:
        return OMFile(list(m.labels), m.rank, "matrix", [list(r) for r in m.realization], program)
    return OMFile(list(m.labels), m.rank, "cocircuits", m.sorted_cocircuits(), program)


def program_file_from(p) -> OMFile:
    return om_file_from(p.M, (p.f, p.g))


# digraphs ----------------------------------------------------------------

def parse_digraph(text: str) -> Digraph:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty file", 1, 1)
    head = lines[0]
    toks = head.tokens()
    if toks[0][0] != "digraph":
        raise FormatError("expected header 'digraph name=<name> [dim=<d>]'", head.no, toks[0][1])
    kv = _keyvals(head, toks[1:], ("name", "dim"))
    name = kv.get("name", ("", 0))[0]
    dim = _int(kv["dim"][0], head.no, kv["dim"][1], "dim") if "dim" in kv else None
    nodes, arcs, positions, facets = [], [], {}, {}
    source = sink = None
    known = set()

    def need(tok, col, no):
        if tok not in known:
            raise FormatError(f"undeclared node {tok!r}", no, col)
        return tok

    for ln in lines[1:]:
        toks = ln.tokens()
        word, col = toks[0]
        args = toks[1:]
        if word == "node":
            if len(args) not in (1, 3):
                raise FormatError("expected 'node <label> [<x> <y>]'", ln.no, col)
            lab = args[0][0]
            if lab in known:
                raise FormatError(f"node {lab!r} declared twice", ln.no, args[0][1])
            known.add(lab)
            nodes.append(lab)
            if len(args) == 3:
                positions[lab] = tuple(_rational(t, ln.no, c) for t, c in args[1:])
        elif word == "arc":
            if len(args) != 2:
                raise FormatError("expected 'arc <u> <v>'", ln.no, col)
            arcs.append(tuple(need(t, c, ln.no) for t, c in args))
        elif word in ("source", "sink"):
            if len(args) != 1:
                raise FormatError(f"expected '{word} <label>'", ln.no, col)
            lab = need(*args[0], ln.no)
            if word == "source":
                if source is not None:
                    raise FormatError("source declared twice", ln.no, col)
                source = lab
            else:
                if sink is not None:
                    raise FormatError("sink declared twice", ln.no, col)
                sink = lab
        elif word == "facet":
            if len(args) < 2:
                raise FormatError("expected 'facet <name> <label> ...'", ln.no, col)
            fname = args[0][0]
            if fname in facets:
                raise FormatError(f"facet {fname!r} declared twice", ln.no, args[0][1])
            facets[fname] = frozenset(need(t, c, ln.no) for t, c in args[1:])
        else:
            raise FormatError(f"unknown directive {word!r}", ln.no, col)
    try:
        dg = Digraph(nodes, arcs, dim=dim, name=name, facets=facets, positions=positions)
    except DigraphError as exc:
        raise FormatError(str(exc)) from None
    if source is None or sink is None:
        try:
            s, t = dg.unique_source_sink()
        except DigraphError as exc:
            raise FormatError(str(exc)) from None
        source = s if source is None else source
        sink = t if sink is None else sink
    dg.source, dg.sink = source, sink
    return dg


def _num(x) -> str:
    return str(Fraction(x))


def serialize_digraph(dg: Digraph) -> str:
    head = "digraph"
    if dg.name:
        head += f" name={dg.name}"
    if dg.dim is not None:
        head += f" dim={dg.dim}"
    lab = {v: _token(v) for v in dg.nodes}
    out = [head]
    for v in dg.nodes:
        pos = dg.positions.get(v)
        out.append(f"node {lab[v]}" + (f" {_num(pos[0])} {_num(pos[1])}" if pos else ""))
    out.extend(f"arc {lab[u]} {lab[v]}" for u, v in dg.arcs)
    if dg.source is not None:
        out.append(f"source {lab[dg.source]}")
    if dg.sink is not None:
        out.append(f"sink {lab[dg.sink]}")
    for fname in sorted(dg.facets):
        members = [lab[v] for v in dg.nodes if v in dg.facets[fname]]
        out.append(f"facet {fname} " + " ".join(members))
    return "\n".join(out) + "\n"


def _token(v) -> str:
    s = node_label(v)
    if not s or any(c.isspace() or c == "#" for c in s):
        raise FormatError(f"node label {s!r} cannot be written as a single token")
    return s


# files -----------------------------------------------------------------

def detect_kind(text: str) -> str:
    lines = _lines(text)
    if not lines:
        raise FormatError("empty file", 1, 1)
    first = lines[0].tokens()[0][0]
    if first == "digraph":
        return "digraph"
    if first == "OM":
        return "program" if any(ln.tokens()[0][0] == "program:" for ln in lines) else "om"
    raise FormatError(f"unrecognized file header {first!r}", lines[0].no, 1)


def load(path) -> tuple:
    """``(kind, object)`` with kind in om | program | digraph."""
    text = Path(path).read_text()
    kind = detect_kind(text)
    if kind == "digraph":
        return kind, parse_digraph(text)
    om = parse_om(text)
    if kind == "program":
        return kind, om.build_program(name=Path(path).stem)
    return kind, om.build()


def canonicalize(text: str) -> str:
    kind = detect_kind(text)
    if kind == "digraph":
        return serialize_digraph(parse_digraph(text))
    return serialize_om(parse_om(text))
