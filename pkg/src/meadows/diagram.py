"""Directed lattices of rings and the meadows they define.

A diagram is given by its nodes (each labelled with a ring), a bottom node
carrying the trivial ring, and downward edges labelled with ring
homomorphisms.  Homs for non-adjacent comparable pairs are composed along
edge paths, and every path between the same two nodes has to give the same
map.
"""

from dataclasses import dataclass, field

import numpy as np

from . import lattice as _lattice
from .errors import FormatError, FunctorialityError, StructuralError, ValidationError
from .meadow import Meadow, fiber_ring, fibers, node_name, transition_map, zero_monoid
from .report import Report, Violation
from .rings import RingHom, check_hom, constant_hom, identity_hom, trivial_ring


@dataclass
class DiagramCandidate:
    """Unvalidated diagram data.

    ``nodes`` maps node id -> FiniteRing in declaration order (None for a
    bottom whose trivial ring is implied).  ``edges`` maps (upper, lower) ->
    RingHom, a sequence of target indices, or None for the unique map into
    the bottom.
    """

    name: str
    nodes: dict
    bottom: str = None
    edges: dict = field(default_factory=dict)


class RingDiagram:
    """A validated directed lattice of rings.

    ``rings[i]`` labels lattice node i; ``homs[(w, z)]`` is the map
    rings[w] -> rings[z] for every z <= w (identity on the diagonal);
    ``edges`` are the generating pairs the diagram was built from.
    """

    def __init__(self, name, lattice, rings, homs, edges):
        self.name = name
        self.lattice = lattice
        self.rings = tuple(rings)
        self.homs = dict(homs)
        self.edges = tuple(edges)

    @property
    def nodes(self):
        return self.lattice.elems

    def node(self, token):
        return self.lattice.index(token)

    def ring(self, node):
        if isinstance(node, str):
            node = self.node(node)
        return self.rings[node]

    def hom(self, w, z):
        if isinstance(w, str):
            w = self.node(w)
        if isinstance(z, str):
            z = self.node(z)
        return self.homs[(w, z)]

    def __repr__(self):
        return f"RingDiagram({self.name!r}, nodes={list(self.nodes)})"


def _check_node_id(nid):
    if not nid or any(c.isspace() for c in nid) or "." in nid or "#" in nid or "@" in nid:
        raise FormatError(f"bad node id {nid!r}: no whitespace, '.', '#' or '@' allowed")


def _assemble(cand):
    """Return (report, RingDiagram or None)."""
    rep = Report(f"diagram {cand.name}")
    nodes = dict(cand.nodes)
    for nid in nodes:
        _check_node_id(str(nid))

    rep.checked.append("bottom")
    if cand.bottom is None:
        rep.violations.append(Violation("bottom", (), "no bottom node declared"))
        return rep, None
    bottom = cand.bottom
    if nodes.get(bottom) is None:
        nodes[bottom] = trivial_ring()
    rep.checked.append("bottom trivial")
    if nodes[bottom].size != 1:
        rep.violations.append(Violation("bottom trivial", (bottom,),
                                        f"bottom ring {nodes[bottom].name} has "
                                        f"{nodes[bottom].size} elements"))
        return rep, None
    for nid, R in nodes.items():
        if R is None:
            rep.violations.append(Violation("ring", (nid,), "node has no ring"))
            return rep, None

    rep.checked.append("edges")
    edges = dict(cand.edges)
    for hi, lo in edges:
        for e in (hi, lo):
            if e not in nodes:
                rep.violations.append(Violation("edges", (hi, lo), f"unknown node {e}"))
                return rep, None
        if hi == lo:
            rep.violations.append(Violation("edges", (hi, lo), "loop edge"))
            return rep, None
    # the map into the trivial bottom is unique and may be left out
    sinks = [nid for nid in nodes if nid != bottom and not any(h == nid for h, _ in edges)]
    for nid in sinks:
        edges[(nid, bottom)] = None

    rep.checked.append("lattice")
    order = list(nodes)
    try:
        L = _lattice.from_order(cand.name, order, list(edges), bottom=bottom)
    except StructuralError as exc:
        rep.violations.append(Violation("lattice", exc.witness or (), str(exc)))
        return rep, None
    rings = [nodes[t] for t in L.elems]

    rep.checked.append("hom")
    given = {}
    for (hi, lo), m in edges.items():
        w, z = L.index(hi), L.index(lo)
        src, dst = rings[w], rings[z]
        if m is None:
            if dst.size != 1:
                rep.violations.append(Violation("hom", (hi, lo), "edge without a map"))
                return rep, None
            h = constant_hom(src, dst)
        elif isinstance(m, RingHom):
            h = m
        else:
            h = RingHom(src, dst, m)
        hr = check_hom(h)
        if not hr.ok:
            v = hr.first
            rep.violations.append(Violation("hom", (hi, lo) + v.witness, f"{v.law}: {v.detail}"))
            return rep, None
        given[(w, z)] = h

    rep.checked.append("functoriality")
    out = {}
    for w, z in given:
        out.setdefault(w, []).append(z)
    homs = {}
    n = L.size
    for z in range(n):
        homs[(z, z)] = identity_hom(rings[z])
        above = [w for w in range(n) if L.lt(z, w)]
        above.sort(key=lambda w: int(L.leq[:, w].sum()))
        for w in above:
            cands = []
            for c in out.get(w, []):
                if L.le(z, c):
                    cands.append((c, given[(w, c)].then(homs[(c, z)])))
            ref_c, ref_h = cands[0]
            for c, h in cands[1:]:
                diff = np.flatnonzero(h.map != ref_h.map)
                if len(diff):
                    x = int(diff[0])
                    t = rings[w].elems[x]
                    rep.violations.append(Violation(
                        "functoriality", (L.elems[w], L.elems[z], t),
                        f"{t} reaches {L.elems[z]} as {rings[z].elems[ref_h.map[x]]} via "
                        f"{L.elems[ref_c]} but as {rings[z].elems[h.map[x]]} via {L.elems[c]}"))
                    return rep, None
            homs[(w, z)] = ref_h
    gen = [(L.elems[w], L.elems[z]) for w, z in given]
    return rep, RingDiagram(cand.name, L, rings, homs, gen)


def validate_diagram(cand):
    """Validation report for a DiagramCandidate."""
    return _assemble(cand)[0]


def build_diagram(cand):
    """Validated RingDiagram; raises StructuralError / FunctorialityError."""
    rep, D = _assemble(cand)
    if D is None:
        v = rep.first
        if v.law == "functoriality":
            raise FunctorialityError(str(v), v.witness)
        if v.law == "hom":
            raise ValidationError(rep)
        raise StructuralError(str(v), v.witness)
    return D


def diagram(name, nodes, edges=None, bottom="a"):
    """Shorthand: ``nodes`` is a list of (id, ring) pairs, ``edges`` maps
    (upper, lower) to a map sequence or RingHom."""
    return build_diagram(DiagramCandidate(name, dict(nodes), bottom, dict(edges or {})))


def ring_meadow_diagram(R, top="top", bottom="a"):
    """R over the 2-chain: the single-ring diagram R -> {a}."""
    return diagram(R.name, [(top, R)], {}, bottom)


def meadow_from_diagram(D, name=None):
    """The meadow on the disjoint union of the node rings.

    Sums and products are computed at the meet of the operands' nodes after
    pushing both operands down along the transition homs.  Element tokens
    are ``<node>.<element>``.  No inverse is attached.
    """
    L = D.lattice
    n_nodes = L.size
    offsets = np.zeros(n_nodes + 1, dtype=np.int64)
    for i, R in enumerate(D.rings):
        offsets[i + 1] = offsets[i] + R.size
    N = int(offsets[-1])
    add = np.zeros((N, N), dtype=np.int64)
    mul = np.zeros((N, N), dtype=np.int64)
    neg = np.zeros(N, dtype=np.int64)
    elems = []
    for i, R in enumerate(D.rings):
        elems.extend(f"{L.elems[i]}.{t}" for t in R.elems)
        neg[offsets[i]:offsets[i + 1]] = offsets[i] + R.neg
    for i in range(n_nodes):
        for j in range(n_nodes):
            m = L.meet(i, j)
            u = D.homs[(i, m)].map
            v = D.homs[(j, m)].map
            Rm = D.rings[m]
            add[offsets[i]:offsets[i + 1], offsets[j]:offsets[j + 1]] = \
                offsets[m] + Rm.add[np.ix_(u, v)]
            mul[offsets[i]:offsets[i + 1], offsets[j]:offsets[j + 1]] = \
                offsets[m] + Rm.mul[np.ix_(u, v)]
    top = L.zero
    R0 = D.rings[top]
    return Meadow(name or D.name, elems, offsets[top] + R0.zero, offsets[top] + R0.one,
                  add, neg, mul)


def diagram_from_meadow(M, name=None):
    """Recover the directed lattice of a pre-meadow: fibers, 0*M and the
    transition maps.  Node ids are the node names of the zero elements."""
    L0 = zero_monoid(M)
    ids = [node_name(M, z) for z in M.nodes]
    if len(set(ids)) != len(ids):
        ids = list(L0.elems)
    L = _lattice.ZeroLattice(name or M.name, ids, L0.mul, L0.zero, L0.a)
    rings = [fiber_ring(M, z) for z in M.nodes]
    homs = {}
    nodes = M.nodes
    for w in range(L.size):
        for z in L.below(w):
            homs[(w, z)] = transition_map(M, nodes[z], nodes[w])
    edges = [(L.elems[w], L.elems[z]) for w, z in L.covers()]
    return RingDiagram(name or M.name, L, rings, homs, edges)


def fiber_sizes(M):
    return sorted((len(xs) for xs in fibers(M).values()), reverse=True)
