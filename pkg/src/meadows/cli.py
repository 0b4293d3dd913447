"""Command-line entry point: ``meadows <command> ...``.

Exit status for classifying commands is 0 for a common meadow, 1 for a
pre-meadow with a, 2 for a plain pre-meadow and 3 for anything invalid.
Usage errors exit 64 and unreadable files 66.
"""

import argparse
import json
import sys
from pathlib import Path

from . import fixtures as fx
from .diagram import meadow_from_diagram, ring_meadow_diagram
from .errors import DomainError, MeadowError
from .flasque import decomposition_iso, flasque_closure, is_flasque, is_flasque_via_top
from .formats import dumps, emit_dot, parse_file
from .meadow import (Level, classify, compute_J, fibers, greatest_node, invert_at,
                     maximal_nodes, node_name, ref, resolve, zero_monoid)
from .mr import MAX_MR_CARRIER, build_MR
from .rings import check_ring_axioms

EX_USAGE = 64
EX_NOINPUT = 66
EX_INVALID = 3
EX_SOFTWARE = 70

EXIT_FOR_LEVEL = {
    Level.COMMON_MEADOW: 0,
    Level.PRE_MEADOW_WITH_A: 1,
    Level.PRE_MEADOW: 2,
    Level.NOT_PRE_MEADOW: 3,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EX_USAGE, f"{self.prog}: error: {message}\n")


# -- loading ------------------------------------------------------------------

class Loaded:
    def __init__(self, kind, value, meadow):
        self.kind = kind
        self.value = value
        self.meadow = meadow


def load_input(path, max_carrier):
    """Last section of ``path`` as a meadow.  Meadow tables are not
    rejected for failing axioms; that is what classification reports."""
    vals = parse_file(path, validate=False)
    kind, value = vals[-1]
    if kind == "ring":
        rep = check_ring_axioms(value)
        if not rep.ok:
            raise MeadowError(f"{value.name} is not a ring: {rep.first}")
        M = meadow_from_diagram(ring_meadow_diagram(value))
    elif kind == "diagram":
        M = meadow_from_diagram(value)
    elif kind == "meadow":
        M = value
    else:
        raise MeadowError(f"{path}: a {kind} file has no meadow to work on")
    if M.size > max_carrier:
        raise MeadowError(f"{M.name} has {M.size} elements, cap is {max_carrier}")
    return Loaded(kind, value, M)


# -- reports ------------------------------------------------------------------

def lattice_json(M):
    try:
        L = zero_monoid(M)
    except MeadowError:
        return None
    nodes = M.nodes
    order = L.top_down_order()
    rank = {z: k for k, z in enumerate(order)}
    names = [node_name(M, nodes[z]) for z in range(L.size)]
    return {
        "nodes": [names[z] for z in order],
        "edges": [[names[w], names[z]]
                  for w, z in sorted(L.covers(), key=lambda e: (rank[e[0]], rank[e[1]]))],
    }


def base_report(loaded, cls, fr=None):
    M = loaded.meadow
    flasque = None
    if fr is not None:
        flasque = fr.flasque
    elif cls.level >= Level.PRE_MEADOW_WITH_A:
        flasque = is_flasque(M).flasque
    return {
        "kind": loaded.kind,
        "name": M.name,
        "level": cls.label,
        "flasque": flasque,
        "witnesses": [{"law": v.law, "witness": list(v.witness), "detail": v.detail}
                      for v in cls.witnesses],
        "lattice": lattice_json(M) if cls.level >= Level.PRE_MEADOW else None,
    }


class Out:
    def __init__(self, args):
        self.json = args.json
        self.quiet = args.quiet

    def text(self, *lines):
        if not self.quiet and not self.json:
            for ln in lines:
                print(ln)

    def report(self, data):
        if self.json and not self.quiet:
            print(json.dumps(data, indent=2, ensure_ascii=False))


def _fmt_nodes(M, S):
    return ", ".join(node_name(M, z) for z in S) or "(none)"


def _fiber_lines(M):
    out = []
    for z, xs in fibers(M).items():
        toks = ", ".join(ref(M, x) for x in xs)
        out.append(f"  P_{node_name(M, z)} = {{{toks}}}")
    return out


# -- commands -----------------------------------------------------------------

def cmd_check(args, out):
    ld = load_input(args.file, args.max_carrier)
    M = ld.meadow
    cls = classify(M)
    rep = base_report(ld, cls)
    lines = [cls.label]
    if cls.level >= Level.PRE_MEADOW:
        lines.append(f"elements: {M.size}")
        lines.append("fibers:")
        lines += _fiber_lines(M)
    if cls.a_node is not None:
        lines.append(f"a: {ref(M, M.index(cls.a_node))}")
    if rep["flasque"] is not None:
        lines.append(f"flasque: {str(rep['flasque']).lower()}")
    if cls.inverse is not None:
        rep["inverse_route"] = cls.route
        rep["inverse"] = {ref(M, x): ref(M, y) for x, y in enumerate(cls.inverse)}
        lines.append(f"inverse ({cls.route}): " +
                     ", ".join(f"{k} -> {v}" for k, v in rep["inverse"].items()))
    for v in cls.witnesses:
        lines.append(f"witness: {v}")
    out.text(*lines)
    out.report(rep)
    return EXIT_FOR_LEVEL[cls.level]


def cmd_flasque(args, out):
    ld = load_input(args.file, args.max_carrier)
    M = ld.meadow
    cls = classify(M)
    if cls.level < Level.PRE_MEADOW:
        out.text("flasque: n/a; common: false", f"level: {cls.label}")
        out.report(base_report(ld, cls))
        return EXIT_FOR_LEVEL[cls.level]
    a = is_flasque(M)
    b = is_flasque_via_top(M)
    common = cls.level == Level.COMMON_MEADOW
    rep = base_report(ld, cls, a)
    rep["routes"] = {
        r.route: {"flasque": r.flasque, "failing_pair": list(r.failing_pair or []),
                  "witness": r.witness}
        for r in (a, b)
    }
    lines = [f"flasque: {str(a.flasque).lower()}; common: {str(common).lower()}"]
    for r in (a, b):
        if not r.flasque:
            w, z = r.failing_pair
            lines.append(f"  {r.route}: {w} -> {z} misses {ref(M, M.index(r.witness))}")
    out.text(*lines)
    out.report(rep)
    if a.flasque != b.flasque:
        print(f"error: flasque routes disagree on {M.name}", file=sys.stderr)
        return EX_SOFTWARE
    return EXIT_FOR_LEVEL[cls.level]


def cmd_mr(args, out):
    vals = parse_file(args.ringfile)
    rings = [v for k, v in vals if k == "ring"]
    if not rings:
        raise MeadowError(f"{args.ringfile} holds no ring")
    mr = build_MR(rings[-1], max_carrier=args.max_carrier)
    text = dumps(mr)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        out.text(text.rstrip("\n"))
    if args.dot:
        Path(args.dot).write_text(emit_dot(mr), encoding="utf-8")
    if args.meadow:
        Path(args.meadow).write_text(dumps(mr.meadow()), encoding="utf-8")
    out.report({"kind": "diagram", "name": mr.diagram.name,
                "nodes": list(mr.labels),
                "sizes": [Q.size for Q in mr.quotients],
                "carrier": mr.meadow().size})
    return 0


def cmd_closure(args, out):
    ld = load_input(args.file, args.max_carrier)
    M = ld.meadow
    cls = classify(M)
    if cls.level < Level.PRE_MEADOW_WITH_A:
        out.text(f"closure: not defined ({cls.label})")
        out.report(base_report(ld, cls))
        return EXIT_FOR_LEVEL[cls.level]
    C = flasque_closure(M)
    ccls = classify(C)
    cl = Loaded("meadow", C, C)
    rep = base_report(cl, ccls)
    rep["size"] = C.size
    rep["unchanged"] = C is M
    text = dumps(C)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    lines = [f"closure: {C.name}, {C.size} elements (input {M.size})",
             f"level: {ccls.label}", f"flasque: {str(rep['flasque']).lower()}"]
    lines += _fiber_lines(C)
    if not args.output:
        lines.append(text.rstrip("\n"))
    out.text(*lines)
    out.report(rep)
    return EXIT_FOR_LEVEL[ccls.level]


def cmd_decompose(args, out):
    ld = load_input(args.file, args.max_carrier)
    M = ld.meadow
    cls = classify(M)
    res = decomposition_iso(M)
    rep = base_report(ld, cls)
    rep["isomorphic"] = bool(res)
    rep["reasons"] = list(res.reasons)
    rep["map"] = None
    if res:
        P = res.product
        rep["map"] = {P.elems[i]: ref(M, y) for i, y in enumerate(res.iso)}
        out.text("isomorphic: true", f"product: {P.name} ({P.size} elements)",
                 *(f"  Phi({k}) = {v}" for k, v in rep["map"].items()))
    else:
        out.text("isomorphic: false", *(f"  reason: {r}" for r in res.reasons))
    out.report(rep)
    return EXIT_FOR_LEVEL[cls.level]


def cmd_invert(args, out):
    ld = load_input(args.file, args.max_carrier)
    M = ld.meadow
    cls = classify(M)
    if cls.level < Level.PRE_MEADOW_WITH_A:
        out.text(f"invert: not defined ({cls.label})")
        out.report(base_report(ld, cls))
        return EXIT_FOR_LEVEL[cls.level]
    try:
        x = resolve(M, args.elem)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    J = compute_J(M, x)
    g = greatest_node(M, J)
    rep = base_report(ld, cls)
    rep["element"] = ref(M, x)
    rep["J"] = [node_name(M, z) for z in J]
    rep["greatest"] = None if g is None else node_name(M, g)
    rep["maximal"] = [node_name(M, z) for z in maximal_nodes(M, J)]
    rep["inverse"] = None if g is None else ref(M, invert_at(M, x, g))
    lines = [f"element: {rep['element']}", f"J_x: {_fmt_nodes(M, J)}"]
    if g is None:
        lines += [f"greatest: none (maximal: {', '.join(rep['maximal'])})",
                  "inverse: undefined"]
    else:
        lines += [f"greatest: {rep['greatest']}", f"inverse: {rep['inverse']}"]
    out.text(*lines)
    out.report(rep)
    return EXIT_FOR_LEVEL[cls.level]


def cmd_dot(args, out):
    vals = parse_file(args.file, validate=False)
    kind, value = vals[-1]
    if kind == "ring":
        value = ring_meadow_diagram(value)
    elif kind == "monoid":
        raise MeadowError(f"{args.file}: a monoid file has nothing to draw")
    text = emit_dot(value)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        out.text(text.rstrip("\n"))
    return 0


def fixture_files():
    """File name -> text for every named example and counterexample."""
    from .flasque import product_meadow
    from .lattice import chain, diamond
    from .rings import cyclic_ring, finite_field, ring_power, ring_product

    files = {
        "example1.meadow": dumps(fx.example1()),
        "example2.meadow": dumps(fx.example2()),
        "example2-inv.meadow": dumps(fx.example2(with_inverse=True)),
    }
    for name, D in fx.named_diagrams().items():
        files[f"{name}.diagram"] = dumps(D)
    files["product-z2z2-diamond.meadow"] = dumps(product_meadow(fx.z2z2(), diamond()))
    files["product-gf4-chain3.meadow"] = dumps(product_meadow(finite_field(2, 2), chain(3)))
    files["diamond.monoid"] = dumps(diamond())
    files["defect-s3.monoid"] = dumps(fx.defect_monoid())
    for name, R in fx.mr_fixture_rings().items():
        files[f"{name.lower().replace('^', 'p')}.ring"] = dumps(R)
    z235 = ring_product(cyclic_ring(2), cyclic_ring(3), cyclic_ring(5))
    files["z2xz3xz5.ring"] = dumps(z235)
    files["gf4.ring"] = dumps(finite_field(2, 2))
    for label, R in (("z6", cyclic_ring(6)), ("z2p3", ring_power(cyclic_ring(2), 3)),
                     ("z2xz3xz5", z235)):
        mr = build_MR(R)
        files[f"mr-{label}.diagram"] = dumps(mr)
        files[f"mr-{label}.meadow"] = dumps(mr.meadow())
    return files


def cmd_fixtures(args, out):
    d = Path(args.dir)
    d.mkdir(parents=True, exist_ok=True)
    files = fixture_files()
    for name, text in files.items():
        (d / name).write_text(text, encoding="utf-8")
    out.text(*(str(d / n) for n in files))
    out.report({"kind": "fixtures", "dir": str(d), "files": list(files)})
    return 0


# -- argument parsing ---------------------------------------------------------

def _globals(p, suppress):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--max-carrier", type=int, default=d(MAX_MR_CARRIER), metavar="N",
                   help="refuse meadows with more than N elements (default %d)"
                   % MAX_MR_CARRIER)
    p.add_argument("--quiet", action="store_true", default=d(False),
                   help="print nothing; only the exit status")
    p.add_argument("--json", action="store_true", default=d(False),
                   help="machine-readable report on standard output")


def build_parser():
    p = _Parser(prog="meadows", description="Finite common meadows and pre-meadows.")
    _globals(p, False)
    sub = p.add_subparsers(dest="command", metavar="command", parser_class=_Parser)
    sub.required = True

    def add(name, help):
        sp = sub.add_parser(name, help=help)
        _globals(sp, True)
        return sp

    sp = add("check", "validate and classify a meadow, diagram or ring file")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_check)
    sp = add("flasque", "decide flasqueness by both routes")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_flasque)
    sp = add("mr", "build the diagram M(R) of all quotients of a ring")
    sp.add_argument("ringfile")
    sp.add_argument("-o", "--output", help="write the diagram here instead of stdout")
    sp.add_argument("--dot", help="also write DOT to this file")
    sp.add_argument("--meadow", help="also write the meadow tables to this file")
    sp.set_defaults(func=cmd_mr)
    sp = add("closure", "flasque closure P_0 + 0*P")
    sp.add_argument("file")
    sp.add_argument("-o", "--output", help="write the closure meadow here")
    sp.set_defaults(func=cmd_closure)
    sp = add("decompose", "compare with the product P_0 x (0*M minus a) plus a")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_decompose)
    sp = add("invert", "J_x, its greatest node and the inverse of one element")
    sp.add_argument("file")
    sp.add_argument("elem", help="token or <elem>@<node>; node may be top or bottom")
    sp.set_defaults(func=cmd_invert)
    sp = add("dot", "Hasse diagram in DOT")
    sp.add_argument("file")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_dot)
    sp = add("fixtures", "write the named examples to a directory")
    sp.add_argument("dir")
    sp.set_defaults(func=cmd_fixtures)
    return p


def main(argv=None):
    p = build_parser()
    try:
        args = p.parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return exc.code if isinstance(exc.code, int) else EX_USAGE
    out = Out(args)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"meadows: {exc}", file=sys.stderr)
        return EX_USAGE
    except OSError as exc:
        print(f"meadows: {exc.filename or ''}: {exc.strerror}", file=sys.stderr)
        return EX_NOINPUT
    except (MeadowError, ValueError) as exc:
        print(f"meadows: {exc}", file=sys.stderr)
        if out.json and not out.quiet:
            print(json.dumps({"kind": "error", "level": "invalid", "flasque": None,
                              "witnesses": [{"law": type(exc).__name__, "witness": [],
                                             "detail": str(exc)}],
                              "lattice": None}, indent=2))
        return EX_INVALID


if __name__ == "__main__":
    sys.exit(main())
