"""Plain-text file formats, DOT export and the workspace registry.

One file holds one or more sections.  Each section starts with a header
line ``ring``, ``monoid``, ``meadow`` or ``diagram`` followed by a name.
Tokens are whitespace-separated and ``#`` starts a comment.  A diagram may
refer to rings defined earlier in the same file, to rings already in the
workspace, or to ``@path`` (relative to the diagram file).
"""

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .diagram import DiagramCandidate, RingDiagram, build_diagram, diagram_from_meadow
from .errors import (DuplicateNameError, FormatError, MeadowError, ParseError,
                     StructuralError, ValidationError)
from .lattice import CommutativeMonoid, ZeroLattice, monoid_from_table
from .meadow import Meadow, check_premeadow
from .rings import FiniteRing, RingHom, check_ring_axioms

KINDS = ("ring", "monoid", "meadow", "diagram")


@dataclass
class _Line:
    no: int
    tokens: list
    cols: list


def _lex(text):
    out = []
    for no, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        toks, cols = [], []
        i = 0
        while i < len(body):
            if body[i].isspace():
                i += 1
                continue
            j = i
            while j < len(body) and not body[j].isspace():
                j += 1
            toks.append(body[i:j])
            cols.append(i + 1)
            i = j
        if toks:
            out.append(_Line(no, toks, cols))
    return out


class _Reader:
    def __init__(self, lines, path):
        self.lines = lines
        self.pos = 0
        self.path = path

    def error(self, msg, line=None, col=None):
        if line is None and self.pos < len(self.lines):
            line = self.lines[self.pos].no
        elif line is None and self.lines:
            line = self.lines[-1].no
        return ParseError(msg, self.path, line, col)

    def peek(self):
        return self.lines[self.pos] if self.pos < len(self.lines) else None

    def next(self, keyword=None, nargs=None):
        ln = self.peek()
        if ln is None:
            raise self.error(f"unexpected end of file; expected {keyword or 'more input'}")
        if keyword is not None and ln.tokens[0] != keyword:
            raise self.error(f"expected '{keyword}', found '{ln.tokens[0]}'", ln.no, ln.cols[0])
        if nargs is not None and len(ln.tokens) - 1 != nargs:
            raise self.error(f"'{ln.tokens[0]}' takes {nargs} argument(s), got "
                             f"{len(ln.tokens) - 1}", ln.no,
                             ln.cols[min(len(ln.cols) - 1, nargs + 1)])
        self.pos += 1
        return ln

    def index(self, ln, k, pos):
        tok = ln.tokens[k]
        if tok not in pos:
            raise self.error(f"unknown element '{tok}'", ln.no, ln.cols[k])
        return pos[tok]

    def table(self, n, pos, what):
        rows = []
        for _ in range(n):
            ln = self.peek()
            if ln is None:
                raise self.error(f"{what} table ends after {len(rows)} of {n} rows")
            if ln.tokens[0] in _KEYWORDS:
                raise self.error(f"{what} table has {len(rows)} rows, expected {n}",
                                 ln.no, ln.cols[0])
            if len(ln.tokens) != n:
                col = ln.cols[n] if len(ln.tokens) > n else ln.cols[-1] + len(ln.tokens[-1])
                raise self.error(f"{what} row has {len(ln.tokens)} entries, expected {n}",
                                 ln.no, col)
            self.pos += 1
            rows.append([self.index(ln, k, pos) for k in range(n)])
        return rows

    def vector(self, ln, n, pos, what):
        if len(ln.tokens) - 1 != n:
            raise self.error(f"{what} needs {n} entries, got {len(ln.tokens) - 1}", ln.no,
                             ln.cols[0])
        return [self.index(ln, k, pos) for k in range(1, n + 1)]


_KEYWORDS = {"ring", "monoid", "meadow", "diagram", "elements", "zero", "one", "add",
             "mul", "neg", "inv", "identity", "absorber", "node", "bottom", "edge", "map"}


def _elements(r):
    ln = r.next("elements")
    elems = ln.tokens[1:]
    if not elems:
        raise r.error("empty element list", ln.no, ln.cols[0])
    seen = {}
    for k, e in enumerate(elems):
        if e in seen:
            raise r.error(f"duplicate element '{e}'", ln.no, ln.cols[k + 1])
        seen[e] = k
    return elems, seen


def _parse_ring(r, name):
    elems, pos = _elements(r)
    n = len(elems)
    zero = r.index(r.next("zero", 1), 1, pos)
    one = r.index(r.next("one", 1), 1, pos)
    r.next("add", 0)
    add = r.table(n, pos, "add")
    r.next("mul", 0)
    mul = r.table(n, pos, "mul")
    return FiniteRing(name, elems, zero, one, add, mul)


def _parse_monoid(r, name):
    elems, pos = _elements(r)
    n = len(elems)
    ident = r.index(r.next("identity", 1), 1, pos)
    absorb = r.index(r.next("absorber", 1), 1, pos)
    r.next("mul", 0)
    mul = r.table(n, pos, "mul")
    return monoid_from_table(elems, mul, ident, absorb, name=name)


def _parse_meadow(r, name):
    elems, pos = _elements(r)
    n = len(elems)
    zero = r.index(r.next("zero", 1), 1, pos)
    one = r.index(r.next("one", 1), 1, pos)
    r.next("add", 0)
    add = r.table(n, pos, "add")
    neg = r.vector(r.next("neg"), n, pos, "neg")
    r.next("mul", 0)
    mul = r.table(n, pos, "mul")
    inv = None
    ln = r.peek()
    if ln is not None and ln.tokens[0] == "inv":
        inv = r.vector(r.next("inv"), n, pos, "inv")
    return Meadow(name, elems, zero, one, add, neg, mul, inv)


def _parse_diagram(r, name, resolve_ring):
    nodes = {}
    bottom = None
    edges = {}
    while r.peek() is not None and r.peek().tokens[0] in ("node", "bottom", "edge"):
        ln = r.next()
        kw = ln.tokens[0]
        if kw == "node":
            if len(ln.tokens) != 4 or ln.tokens[2] != "ring":
                raise r.error("expected 'node <id> ring <ring-name|@file>'", ln.no, ln.cols[0])
            nid = ln.tokens[1]
            if nid in nodes:
                raise r.error(f"duplicate node '{nid}'", ln.no, ln.cols[1])
            nodes[nid] = resolve_ring(ln.tokens[3], ln)
        elif kw == "bottom":
            if len(ln.tokens) not in (2, 4) or (len(ln.tokens) == 4 and ln.tokens[2] != "ring"):
                raise r.error("expected 'bottom <id> [ring <ring-name>]'", ln.no, ln.cols[0])
            if bottom is not None:
                raise r.error("second 'bottom' line", ln.no, ln.cols[0])
            bottom = ln.tokens[1]
            nodes[bottom] = resolve_ring(ln.tokens[3], ln) if len(ln.tokens) == 4 else None
        else:
            if len(ln.tokens) != 3:
                raise r.error("expected 'edge <hi> <lo>'", ln.no, ln.cols[0])
            hi, lo = ln.tokens[1], ln.tokens[2]
            for k, nid in ((1, hi), (2, lo)):
                if nid not in nodes:
                    raise r.error(f"edge mentions undeclared node '{nid}'", ln.no, ln.cols[k])
            if (hi, lo) in edges:
                raise r.error(f"duplicate edge {hi} -> {lo}", ln.no, ln.cols[0])
            src, dst = nodes[hi], nodes[lo]
            pairs = {}
            while r.peek() is not None and r.peek().tokens[0] == "map":
                m = r.next("map", 2)
                if src is None or dst is None:
                    raise r.error("map lines on an edge touching the implied bottom ring",
                                  m.no, m.cols[0])
                s = r.index(m, 1, src._index)
                d = r.index(m, 2, dst._index)
                if s in pairs:
                    raise r.error(f"second map line for '{m.tokens[1]}'", m.no, m.cols[1])
                pairs[s] = d
            if not pairs and (lo == bottom or (dst is not None and dst.size == 1)):
                edges[(hi, lo)] = None
                continue
            if src is None or len(pairs) != src.size:
                missing = [src.elems[i] for i in range(src.size) if i not in pairs]
                raise r.error(f"edge {hi} -> {lo} has no map line for {', '.join(missing)}",
                              ln.no, ln.cols[0])
            edges[(hi, lo)] = [pairs[i] for i in range(src.size)]
    if bottom is None:
        raise StructuralError(f"diagram {name}: no 'bottom' line")
    return DiagramCandidate(name, nodes, bottom, edges)


def parse_text(text, path=None, rings=None, validate=True):
    """Parse every section of ``text``; returns a list of (kind, value).

    ``rings`` maps names of rings available to diagrams.  With ``validate``
    each value passes its checker before it is returned.
    """
    r = _Reader(_lex(text), path)
    known = dict(rings or {})
    base = Path(path).parent if path is not None else Path(".")
    out = []

    def resolve_ring(ref, ln):
        if ref.startswith("@"):
            sub = base / ref[1:]
            try:
                vals = parse_file(sub, validate=validate)
            except OSError as exc:
                raise r.error(f"cannot read ring file {sub}: {exc.strerror}", ln.no,
                              ln.cols[3]) from None
            found = [v for k, v in vals if k == "ring"]
            if not found:
                raise r.error(f"{sub} holds no ring", ln.no, ln.cols[3])
            return found[-1]
        if ref not in known:
            raise r.error(f"unknown ring '{ref}'", ln.no, ln.cols[-1])
        return known[ref]

    while r.peek() is not None:
        head = r.next()
        kind = head.tokens[0]
        if kind not in KINDS:
            raise r.error(f"expected a section header ({', '.join(KINDS)}), found '{kind}'",
                          head.no, head.cols[0])
        if len(head.tokens) != 2:
            raise r.error(f"expected '{kind} <name>'", head.no, head.cols[0])
        name = head.tokens[1]
        try:
            if kind == "ring":
                val = _parse_ring(r, name)
                if validate:
                    rep = check_ring_axioms(val)
                    if not rep.ok:
                        raise ValidationError(rep)
                known[name] = val
            elif kind == "monoid":
                val = _parse_monoid(r, name)
            elif kind == "meadow":
                val = _parse_meadow(r, name)
                if validate:
                    rep = check_premeadow(val)
                    if not rep.ok:
                        raise ValidationError(rep)
            else:
                cand = _parse_diagram(r, name, resolve_ring)
                val = build_diagram(cand)
        except FormatError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(str(exc), path, head.no) from None
        out.append((kind, val))
    if not out:
        raise ParseError("empty file", path)
    return out


def parse_file(path, rings=None, validate=True):
    text = Path(path).read_text(encoding="utf-8")
    return parse_text(text, path=path, rings=rings, validate=validate)


def loads(text, kind=None, validate=True):
    """The last section of ``text`` (of ``kind``, when given)."""
    vals = parse_text(text, validate=validate)
    if kind is not None:
        vals = [(k, v) for k, v in vals if k == kind]
        if not vals:
            raise ParseError(f"no {kind} section")
    return vals[-1][1]


def load(path, kind=None, validate=True):
    vals = parse_file(path, validate=validate)
    if kind is not None:
        vals = [(k, v) for k, v in vals if k == kind]
        if not vals:
            raise ParseError(f"no {kind} section", path)
    return vals[-1][1]


# -- serialization -----------------------------------------------------------

def _rows(table, elems):
    width = max(len(e) for e in elems)
    return [" ".join(elems[v].ljust(width) for v in row).rstrip() for row in table]


def dumps_ring(R):
    lines = [f"ring {R.name}", "elements " + " ".join(R.elems),
             f"zero {R.elems[R.zero]}", f"one {R.elems[R.one]}", "add"]
    lines += _rows(R.add, R.elems)
    lines.append("mul")
    lines += _rows(R.mul, R.elems)
    return "\n".join(lines) + "\n"


def dumps_monoid(S):
    lines = [f"monoid {S.name}", "elements " + " ".join(S.elems),
             f"identity {S.elems[S.identity]}", f"absorber {S.elems[S.absorber]}", "mul"]
    lines += _rows(S.mul, S.elems)
    return "\n".join(lines) + "\n"


def dumps_meadow(M):
    e = M.elems
    lines = [f"meadow {M.name}", "elements " + " ".join(e),
             f"zero {e[M.zero]}", f"one {e[M.one]}", "add"]
    lines += _rows(M.add, e)
    lines.append("neg " + " ".join(e[v] for v in M.neg))
    lines.append("mul")
    lines += _rows(M.mul, e)
    if M.inv is not None:
        lines.append("inv " + " ".join(e[v] for v in M.inv))
    return "\n".join(lines) + "\n"


def _is_default_trivial(R):
    return R.size == 1 and R.name == "trivial" and R.elems == ("0",)


def dumps_diagram(D):
    """Rings first (each name once), then the diagram with its generating
    edges; edges into the bottom are left implicit."""
    L = D.lattice
    bottom = L.elems[L.a]
    names = {}
    chunks = []
    ring_name = []
    for R in D.rings:
        nm = R.name
        k = 2
        while nm in names and names[nm] != R:
            nm = f"{R.name}_{k}"
            k += 1
        if nm not in names:
            names[nm] = R
            if not (R is D.rings[L.a] and _is_default_trivial(R)):
                Rn = R if nm == R.name else FiniteRing(nm, R.elems, R.zero, R.one, R.add, R.mul)
                chunks.append(dumps_ring(Rn))
        ring_name.append(nm)
    lines = [f"diagram {D.name}"]
    for i, nid in enumerate(L.elems):
        if i == L.a:
            continue
        lines.append(f"node {nid} ring {ring_name[i]}")
    if _is_default_trivial(D.rings[L.a]):
        lines.append(f"bottom {bottom}")
    else:
        lines.append(f"bottom {bottom} ring {ring_name[L.a]}")
    for hi, lo in D.edges:
        if lo == bottom:
            continue
        h = D.hom(hi, lo)
        lines.append(f"edge {hi} {lo}")
        for x, y in enumerate(h.map):
            lines.append(f"map {h.src.elems[x]} {h.dst.elems[y]}")
    chunks.append("\n".join(lines) + "\n")
    return "\n".join(chunks)


def dumps(value):
    if isinstance(value, FiniteRing):
        return dumps_ring(value)
    if isinstance(value, CommutativeMonoid):
        return dumps_monoid(value)
    if isinstance(value, Meadow):
        return dumps_meadow(value)
    if isinstance(value, RingDiagram):
        return dumps_diagram(value)
    if hasattr(value, "diagram") and isinstance(value.diagram, RingDiagram):
        return dumps_diagram(value.diagram)
    raise TypeError(f"cannot serialize {type(value).__name__}")


def dump(value, path):
    Path(path).write_text(dumps(value), encoding="utf-8")


def diagrams_equal(D, E):
    """Same name, lattice, node rings and homs (generating edges ignored)."""
    return (D.name == E.name and D.lattice == E.lattice and D.rings == E.rings
            and D.homs.keys() == E.homs.keys()
            and all(np.array_equal(D.homs[k].map, E.homs[k].map) for k in D.homs))


# -- DOT ---------------------------------------------------------------------

def _q(s):
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(value):
    """Hasse diagram: one node per lattice element, one edge per covering
    pair, top first.  Output depends only on the value."""
    if isinstance(value, Meadow):
        D = diagram_from_meadow(value)
    elif isinstance(value, RingDiagram):
        D = value
    elif hasattr(value, "diagram"):
        D = value.diagram
    else:
        raise TypeError(f"cannot draw {type(value).__name__}")
    L = D.lattice
    order = L.top_down_order()
    rank = {z: k for k, z in enumerate(order)}
    lines = [f"digraph {_q(D.name)} {{", "  rankdir=TB;", "  node [shape=box];"]
    for z in order:
        R = D.rings[z]
        lines.append(f"  {_q(L.elems[z])} [label={_q(f'{L.elems[z]}: {R.name} (n={R.size})')}];")
    for w, z in sorted(L.covers(), key=lambda e: (rank[e[0]], rank[e[1]])):
        lines.append(f"  {_q(L.elems[w])} -> {_q(L.elems[z])};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- workspace ---------------------------------------------------------------

class Workspace:
    """Named registry of parsed values, one namespace per kind."""

    def __init__(self):
        self.entries = {k: {} for k in KINDS}
        self.sources = {k: {} for k in KINDS}

    def register(self, kind, value, source=None):
        table = self.entries[kind]
        name = value.name
        if name in table:
            old = table[name]
            same = diagrams_equal(old, value) if kind == "diagram" else old == value
            if not same:
                raise DuplicateNameError(f"a different {kind} named {name!r} is already "
                                         f"registered (from {self.sources[kind][name]})")
            return old
        table[name] = value
        self.sources[kind][name] = source
        return value

    def parse(self, kind, path):
        """Parse ``path`` and register every section; return the last
        section of ``kind`` (any kind when None)."""
        vals = parse_file(path, rings=self.entries["ring"])
        last = None
        for k, v in vals:
            v = self.register(k, v, str(path))
            if kind is None or k == kind:
                last = (k, v)
        if last is None:
            raise ParseError(f"no {kind} section", path)
        return last[1] if kind is not None else last

    def get(self, kind, name):
        return self.entries[kind][name]

    def __contains__(self, key):
        kind, name = key
        return name in self.entries[kind]


__all__ = ["parse_text", "parse_file", "load", "loads", "dumps", "dump", "emit_dot",
           "Workspace", "diagrams_equal", "MeadowError", "ZeroLattice"]
