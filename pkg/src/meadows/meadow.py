"""Finite meadows as operation tables, and everything derived from them.

A carrier element ``z`` with ``0*z == z`` is a *node*: it indexes the fiber
``P_z = {x : 0*x == z}``.  Nodes are passed around as carrier indices.
"""

from dataclasses import dataclass, field
from enum import IntEnum

import numpy as np

from . import _tables
from .errors import DomainError, FormatError, StructuralError
from .lattice import ZeroLattice
from .report import Report, Violation
from .rings import FiniteRing, RingHom, inverse as ring_inverse, is_field, units


class Level(IntEnum):
    NOT_PRE_MEADOW = 0
    PRE_MEADOW = 1
    PRE_MEADOW_WITH_A = 2
    COMMON_MEADOW = 3

    @property
    def label(self):
        return self.name.lower().replace("_with_a", "-with-a").replace("_", "-")

    def __str__(self):
        return self.label


class Meadow:
    def __init__(self, name, elems, zero, one, add, neg, mul, inv=None):
        elems = tuple(str(e) for e in elems)
        n = len(elems)
        if n < 1:
            raise FormatError("a meadow needs at least one element")
        if len(set(elems)) != n:
            dup = next(e for e in elems if elems.count(e) > 1)
            raise FormatError(f"duplicate element token {dup!r}")
        self.name = str(name)
        self.elems = elems
        self.zero = int(zero)
        self.one = int(one)
        if not (0 <= self.zero < n and 0 <= self.one < n):
            raise FormatError("zero/one index out of range")
        self.add = _tables.as_table(add, n, f"{name}: add")
        self.mul = _tables.as_table(mul, n, f"{name}: mul")
        self.neg = _tables.as_vector(neg, n, f"{name}: neg")
        self.inv = None if inv is None else _tables.as_vector(inv, n, f"{name}: inv")
        self._index = {e: i for i, e in enumerate(elems)}
        self._cache = {}

    @property
    def size(self):
        return len(self.elems)

    def __len__(self):
        return len(self.elems)

    def index(self, token):
        try:
            return self._index[str(token)]
        except KeyError:
            raise DomainError(f"{token!r} is not an element of {self.name}") from None

    @property
    def zero_of(self):
        """0*x for every x."""
        return self.mul[self.zero]

    @property
    def nodes(self):
        if "nodes" not in self._cache:
            self._cache["nodes"] = sorted(set(self.zero_of.tolist()))
        return self._cache["nodes"]

    def with_inverse(self, inv, name=None):
        return Meadow(name or self.name, self.elems, self.zero, self.one,
                      self.add, self.neg, self.mul, inv)

    def without_inverse(self):
        return Meadow(self.name, self.elems, self.zero, self.one, self.add, self.neg, self.mul)

    def __eq__(self, other):
        if not isinstance(other, Meadow):
            return NotImplemented
        same_inv = (self.inv is None and other.inv is None) or (
            self.inv is not None and other.inv is not None
            and np.array_equal(self.inv, other.inv))
        return (self.name == other.name and self.elems == other.elems
                and self.zero == other.zero and self.one == other.one
                and np.array_equal(self.add, other.add)
                and np.array_equal(self.mul, other.mul)
                and np.array_equal(self.neg, other.neg) and same_inv)

    def __hash__(self):
        return hash((self.name, self.elems, self.add.tobytes(), self.mul.tobytes()))

    def __repr__(self):
        return f"Meadow({self.name!r}, n={self.size})"


def ref(M, x):
    """Printable reference for element x: ``elem@node`` for ``node.elem`` tokens."""
    t = M.elems[x]
    if "." in t:
        node, elem = t.split(".", 1)
        return f"{elem}@{node}"
    return t


def node_name(M, z):
    """Name of node z: the node id for ``node.elem`` tokens, else the token."""
    return M.elems[z].split(".", 1)[0]


def resolve(M, token):
    """Element index for a token or an ``elem@node`` reference.

    ``top`` names the node of 0 and ``bottom`` the node of **a**.
    """
    token = str(token)
    if token in M._index:
        return M._index[token]
    if "@" in token:
        elem, node = token.rsplit("@", 1)
        if node == "top":
            node = node_name(M, M.zero)
        elif node == "bottom":
            a = a_element(M)
            if a is None:
                raise DomainError(f"{M.name} has no a element")
            node = node_name(M, a)
        tok = f"{node}.{elem}"
        if tok in M._index:
            return M._index[tok]
    raise DomainError(f"{token!r} does not name an element of {M.name}")


# -- axioms -----------------------------------------------------------------

PREMEADOW_LAWS = ("P1", "P2", "P3", "P4", "P5", "P6", "P7", "P8", "P9", "P10")


def check_premeadow(M):
    """Scan P1-P10, plus the derived idempotence of 0*x.

    Every law is examined; each failure carries its first witness in
    index order.
    """
    rep = Report(f"pre-meadow {M.name}")
    n = M.size
    idx = np.arange(n)
    add, mul, neg = M.add, M.mul, M.neg
    zo = M.zero_of
    t = M.elems
    found = {
        "P1": _tables.associativity_witness(add),
        "P2": _tables.commutativity_witness(add),
        "P3": _tables.first_true(add[:, M.zero] != idx),
        "P4": _tables.first_true(add[idx, neg] != zo),
        "P5": _tables.associativity_witness(mul),
        "P6": _tables.commutativity_witness(mul),
        "P7": _tables.first_true(mul[M.one] != idx),
        "P8": _tables.distributivity_witness(mul, add),
        "P9": _tables.first_true(neg[neg] != idx),
        "P10": _tables.first_true(zo[add] != mul[zo]),
    }
    for law in PREMEADOW_LAWS:
        rep.checked.append(law)
        if found[law] is not None:
            rep.violations.append(Violation(law, tuple(t[i] for i in found[law])))
    rep.checked.append("zero idempotence")
    w = _tables.first_true((mul[zo, zo] != zo) | (zo[zo] != zo))
    if w is not None:
        x = w[0]
        rep.violations.append(Violation("zero idempotence", (t[x],),
                                        f"0*{t[x]} = {t[zo[x]]} is not idempotent"))
    return rep


def is_premeadow(M):
    return check_premeadow(M).ok


def fibers(M):
    """Mapping node -> list of element indices with that 0*x."""
    if "fibers" not in M._cache:
        out = {z: [] for z in M.nodes}
        for x, z in enumerate(M.zero_of.tolist()):
            out[z].append(x)
        M._cache["fibers"] = out
    return M._cache["fibers"]


def singleton_fibers(M):
    return [z for z, xs in fibers(M).items() if len(xs) == 1]


def a_element(M):
    """Index of **a**: the element of the unique singleton fiber, provided it
    absorbs addition.  None when there is no such element."""
    if "a" not in M._cache:
        single = singleton_fibers(M)
        a = None
        if len(single) == 1:
            s = fibers(M)[single[0]][0]
            if (M.add[:, s] == s).all():
                a = s
        M._cache["a"] = a
    return M._cache["a"]


def with_a_violation(M):
    single = singleton_fibers(M)
    fb = fibers(M)
    if not single:
        return Violation("with-a", (), "no fiber has exactly one element")
    if len(single) > 1:
        names = ", ".join(f"P_{M.elems[z]}" for z in single)
        return Violation("with-a", tuple(M.elems[z] for z in single),
                         f"singleton fibers {names}; a must be unique")
    s = fb[single[0]][0]
    x = int(np.flatnonzero(M.add[:, s] != s)[0])
    return Violation("with-a", (M.elems[x], M.elems[s]),
                     f"{M.elems[x]}+{M.elems[s]} = {M.elems[M.add[x, s]]}, "
                     f"so {M.elems[s]} does not absorb addition")


def zero_monoid(M):
    """The nodes 0*M with multiplication restricted, as a ZeroLattice.

    Works for any pre-meadow; the absorbing node is found from the table.
    """
    if "zero_monoid" in M._cache:
        return M._cache["zero_monoid"]
    nodes = M.nodes
    pos = {z: i for i, z in enumerate(nodes)}
    sub = M.mul[np.ix_(nodes, nodes)]
    try:
        table = np.vectorize(pos.__getitem__, otypes=[np.int64])(sub)
    except KeyError:
        raise StructuralError("0*M is not closed under multiplication") from None
    if M.zero not in pos:
        raise StructuralError("0*0 != 0")
    absorbers = [i for i in range(len(nodes)) if (table[i] == i).all()]
    if not absorbers:
        raise StructuralError("0*M has no absorbing node")
    L = ZeroLattice(f"0*{M.name}", [M.elems[z] for z in nodes], table,
                    pos[M.zero], absorbers[0])
    M._cache["zero_monoid"] = L
    return L


def _lattice_pos(M):
    return {z: i for i, z in enumerate(M.nodes)}


def node_le(M, z, w):
    return int(M.mul[z, w]) == z


def fiber_ring(M, z):
    """P_z with the restricted operations; zero is z and one is 1+z."""
    key = ("fiber", z)
    if key in M._cache:
        return M._cache[key]
    if int(M.zero_of[z]) != z:
        raise DomainError(f"{M.elems[z]} is not a node (0*{M.elems[z]} != {M.elems[z]})")
    xs = fibers(M)[z]
    pos = {x: i for i, x in enumerate(xs)}
    sub_a = M.add[np.ix_(xs, xs)]
    sub_m = M.mul[np.ix_(xs, xs)]
    try:
        look = np.vectorize(pos.__getitem__, otypes=[np.int64])
        add, mul = look(sub_a), look(sub_m)
        one = pos[int(M.add[M.one, z])]
    except KeyError:
        raise StructuralError(f"fiber P_{M.elems[z]} is not closed under the operations") \
            from None
    R = FiniteRing(f"P_{node_name(M, z)}", [M.elems[x] for x in xs], pos[z], one, add, mul)
    M._cache[key] = R
    return R


def fiber_units(M, z):
    """Carrier indices of the units of P_z."""
    key = ("units", z)
    if key not in M._cache:
        xs = fibers(M)[z]
        M._cache[key] = frozenset(xs[i] for i in units(fiber_ring(M, z)))
    return M._cache[key]


def transition_map(M, z, w):
    """The hom P_w -> P_z, x -> x + z, for nodes z <= w."""
    if not node_le(M, z, w):
        raise DomainError(f"{M.elems[z]} is not below {M.elems[w]}")
    src, dst = fiber_ring(M, w), fiber_ring(M, z)
    xs = fibers(M)[w]
    dpos = {y: i for i, y in enumerate(fibers(M)[z])}
    return RingHom(src, dst, [dpos[int(M.add[x, z])] for x in xs])


def compute_J(M, x):
    """Nodes z <= 0*x at which x + z is a unit of P_z, in index order."""
    zx = int(M.zero_of[x])
    return [z for z in M.nodes
            if int(M.mul[z, zx]) == z and int(M.add[x, z]) in fiber_units(M, z)]


def greatest_node(M, S):
    L = zero_monoid(M)
    pos = _lattice_pos(M)
    g = L.greatest([pos[z] for z in S])
    return None if g is None else M.nodes[g]


def maximal_nodes(M, S):
    L = zero_monoid(M)
    pos = _lattice_pos(M)
    return [M.nodes[i] for i in L.maximal_elements([pos[z] for z in S])]


# -- inverses ---------------------------------------------------------------

def check_common_axioms(M, inv):
    """M1-M4 for the given inverse vector."""
    rep = Report(f"common-meadow axioms {M.name}")
    n = M.size
    inv = _tables.as_vector(inv, n, "inv")
    idx = np.arange(n)
    zo = M.zero_of
    t = M.elems
    a = a_element(M)
    u = M.add[M.one, zo]  # 1 + 0*x
    found = {
        "M1": _tables.first_true(M.mul[idx, inv] != M.add[M.one, zo[inv]]),
        "M2": _tables.first_true(inv[M.mul] != M.mul[np.ix_(inv, inv)]),
        "M3": _tables.first_true(inv[u] != u),
    }
    for law in ("M1", "M2", "M3"):
        rep.checked.append(law)
        if found[law] is not None:
            rep.violations.append(Violation(law, tuple(t[i] for i in found[law])))
    rep.checked.append("M4")
    if a is None:
        rep.violations.append(Violation("M4", (t[M.zero],), "there is no a element"))
    elif inv[M.zero] != a:
        rep.violations.append(Violation("M4", (t[M.zero],),
                                        f"0^-1 = {t[inv[M.zero]]}, expected {t[a]}"))
    return rep


@dataclass
class InverseResult:
    """Outcome of :func:`synthesize_inverse`.

    ``inverse`` is the full vector when every J_x has a greatest node;
    ``failures`` lists (x, maximal nodes of J_x) otherwise.
    """

    inverse: tuple = None
    failures: list = field(default_factory=list)
    greatest: dict = field(default_factory=dict)
    axioms: Report = None

    @property
    def ok(self):
        return self.inverse is not None and (self.axioms is None or self.axioms.ok)

    def __bool__(self):
        return self.ok


def invert_at(M, x, g):
    """Inverse of the image x + g inside P_g, as a carrier index."""
    R = fiber_ring(M, g)
    xs = fibers(M)[g]
    img = xs.index(int(M.add[x, g]))
    return xs[ring_inverse(R, img)]


def synthesize_inverse(M):
    res = InverseResult()
    inv = []
    for x in range(M.size):
        J = compute_J(M, x)
        g = greatest_node(M, J) if J else None
        if g is None:
            res.failures.append((x, tuple(maximal_nodes(M, J)) if J else ()))
            inv.append(-1)
            continue
        res.greatest[x] = g
        inv.append(invert_at(M, x, g))
    if not res.failures:
        res.inverse = tuple(inv)
        res.axioms = check_common_axioms(M, inv)
    return res


# -- classification ---------------------------------------------------------

@dataclass
class ClassificationReport:
    level: Level
    witnesses: list = field(default_factory=list)
    a_node: str = None
    inverse: tuple = None
    route: str = None
    fibers_are_fields: bool = False

    @property
    def label(self):
        return self.level.label


def all_fibers_fields(M):
    a = a_element(M)
    return all(is_field(fiber_ring(M, z)) for z in M.nodes if z != a)


def classify(M):
    """Highest of not-pre-meadow < pre-meadow < pre-meadow-with-a < common-meadow.

    When every non-**a** fiber is a field the verdict is common-meadow
    without looking at a supplied inverse; the inverse is then synthesized.
    Otherwise a supplied inverse passing M1-M4 is accepted, and failing
    that the inverse is synthesized from greatest elements of J_x.
    """
    pre = check_premeadow(M)
    if not pre.ok:
        return ClassificationReport(Level.NOT_PRE_MEADOW, list(pre.violations))
    try:
        zero_monoid(M)
    except StructuralError as exc:
        return ClassificationReport(Level.NOT_PRE_MEADOW,
                                    [Violation("zero monoid", (), str(exc))])
    a = a_element(M)
    if a is None:
        return ClassificationReport(Level.PRE_MEADOW, [with_a_violation(M)])
    a_tok = M.elems[a]
    fields = all_fibers_fields(M)
    witnesses = []
    if fields:
        res = synthesize_inverse(M)
        if res.ok:
            return ClassificationReport(Level.COMMON_MEADOW, [], a_tok, res.inverse,
                                        "all-fibers-fields", True)
        # cannot happen for a genuine pre-meadow with a; reported, not hidden
        witnesses.append(Violation("all-fibers-fields", (), "synthesis failed"))
    if M.inv is not None:
        sup = check_common_axioms(M, M.inv)
        if sup.ok:
            return ClassificationReport(Level.COMMON_MEADOW, [], a_tok,
                                        tuple(int(i) for i in M.inv), "supplied", fields)
        witnesses.extend(sup.violations)
    res = synthesize_inverse(M)
    if res.ok:
        return ClassificationReport(Level.COMMON_MEADOW, witnesses, a_tok, res.inverse,
                                    "synthesized", fields)
    for x, maxima in res.failures:
        witnesses.append(Violation(
            "J greatest", (ref(M, x),),
            "J_x has maximal nodes " + ", ".join(node_name(M, z) for z in maxima)))
    if res.axioms is not None:
        witnesses.extend(res.axioms.violations)
    return ClassificationReport(Level.PRE_MEADOW_WITH_A, witnesses, a_tok, None, None, fields)
