"""Commutative monoids with an absorbing element, and the meet-semilattices
they become when every element is idempotent.

Order convention: ``z <= w`` iff ``z * w == z``.  The identity is the top,
the absorbing element the bottom, and the product of two nodes is their meet.
"""

import numpy as np

from . import _tables
from .errors import DomainError, FormatError, StructuralError


class CommutativeMonoid:
    """Commutative monoid on ``elems`` with identity and absorbing element."""

    def __init__(self, name, elems, mul, identity, absorber):
        elems = tuple(str(e) for e in elems)
        n = len(elems)
        if n < 1:
            raise FormatError("a monoid needs at least one element")
        if len(set(elems)) != n:
            raise FormatError("duplicate element tokens")
        self.name = str(name)
        self.elems = elems
        self.mul = _tables.as_table(mul, n, f"{name}: mul")
        self.identity = int(identity)
        self.absorber = int(absorber)
        if not (0 <= self.identity < n and 0 <= self.absorber < n):
            raise FormatError("identity/absorber index out of range")
        self._index = {e: i for i, e in enumerate(elems)}
        self._check_monoid()

    def _check_monoid(self):
        t, m = self.elems, self.mul
        idx = np.arange(len(t))
        w = _tables.first_true((m[self.identity] != idx) | (m[:, self.identity] != idx))
        if w is not None:
            raise StructuralError(f"{t[self.identity]} is not an identity (fails at {t[w[0]]})",
                                  (t[w[0]],))
        w = _tables.first_true((m[self.absorber] != self.absorber)
                               | (m[:, self.absorber] != self.absorber))
        if w is not None:
            raise StructuralError(f"{t[self.absorber]} is not absorbing (fails at {t[w[0]]})",
                                  (t[w[0]],))
        w = _tables.commutativity_witness(m)
        if w is not None:
            raise StructuralError("not commutative", tuple(t[i] for i in w))
        w = _tables.associativity_witness(m)
        if w is not None:
            raise StructuralError("not associative", tuple(t[i] for i in w))

    def __len__(self):
        return len(self.elems)

    @property
    def size(self):
        return len(self.elems)

    def index(self, token):
        try:
            return self._index[str(token)]
        except KeyError:
            raise DomainError(f"{token!r} is not a node of {self.name}") from None

    def is_idempotent(self):
        return bool((np.diag(self.mul) == np.arange(self.size)).all())

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return (self.name == other.name and self.elems == other.elems
                and self.identity == other.identity and self.absorber == other.absorber
                and np.array_equal(self.mul, other.mul))

    def __hash__(self):
        return hash((self.name, self.elems, self.mul.tobytes()))

    def __repr__(self):
        return f"{type(self).__name__}({self.name!r}, {list(self.elems)})"


class ZeroLattice(CommutativeMonoid):
    """Idempotent commutative monoid with identity ``zero`` (top) and
    absorbing ``a`` (bottom), read as a bounded meet-semilattice."""

    def __init__(self, name, elems, mul, zero, a):
        super().__init__(name, elems, mul, zero, a)
        diag = np.diag(self.mul)
        bad = np.flatnonzero(diag != np.arange(self.size))
        if len(bad):
            s = self.elems[bad[0]]
            raise StructuralError(f"not idempotent: {s}*{s} = {self.elems[diag[bad[0]]]}", (s,))
        self.leq = self.mul == np.arange(self.size)[:, None]
        self.leq.setflags(write=False)
        # antisymmetry is implied by commutativity; kept as a guard on the table
        w = _tables.first_true(self.leq & self.leq.T & ~np.eye(self.size, dtype=bool))
        if w is not None:
            raise StructuralError("order is not antisymmetric", tuple(self.elems[i] for i in w))

    @property
    def zero(self):
        return self.identity

    @property
    def a(self):
        return self.absorber

    def le(self, z, w):
        return bool(self.leq[z, w])

    def lt(self, z, w):
        return z != w and bool(self.leq[z, w])

    def meet(self, z, w):
        return int(self.mul[z, w])

    def below(self, z):
        """Nodes <= z, in index order."""
        return [int(w) for w in np.flatnonzero(self.leq[:, z])]

    def above(self, z):
        return [int(w) for w in np.flatnonzero(self.leq[z, :])]

    def greatest(self, S):
        S = _nonempty(S)
        for g in S:
            if all(self.leq[s, g] for s in S):
                return g
        return None

    def maximal_elements(self, S):
        S = _nonempty(S)
        return [s for s in S if not any(t != s and self.leq[s, t] for t in S)]

    def covers(self):
        """Hasse edges (upper, lower), sorted by index."""
        out = []
        for w in range(self.size):
            for z in range(self.size):
                if self.lt(z, w) and not any(
                        self.lt(z, v) and self.lt(v, w) for v in range(self.size)):
                    out.append((w, z))
        return out

    def depth(self):
        """Length of the longest chain from the top down to each node."""
        d = [0] * self.size
        for z in sorted(range(self.size), key=lambda z: int(self.leq[z].sum())):
            ups = [w for w in range(self.size) if self.lt(z, w)]
            d[z] = max((d[w] + 1 for w in ups), default=0)
        return d

    def top_down_order(self):
        d = self.depth()
        return sorted(range(self.size), key=lambda z: (d[z], z))


def _nonempty(S):
    S = sorted({int(s) for s in S})
    if not S:
        raise DomainError("node subset must be nonempty")
    return S


def from_mul_table(elems, mul, zero, a, name="L"):
    """Validated ZeroLattice; ``zero`` and ``a`` may be indices or tokens."""
    elems = [str(e) for e in elems]
    zero = elems.index(zero) if isinstance(zero, str) else zero
    a = elems.index(a) if isinstance(a, str) else a
    return ZeroLattice(name, elems, mul, zero, a)


def monoid_from_table(elems, mul, identity, absorber, name="S"):
    """ZeroLattice when idempotent, otherwise a plain CommutativeMonoid."""
    elems = [str(e) for e in elems]
    identity = elems.index(identity) if isinstance(identity, str) else identity
    absorber = elems.index(absorber) if isinstance(absorber, str) else absorber
    M = CommutativeMonoid(name, elems, mul, identity, absorber)
    if M.is_idempotent():
        return ZeroLattice(name, elems, mul, identity, absorber)
    return M


def from_order(name, elems, covers, top=None, bottom=None):
    """ZeroLattice from Hasse edges ``(upper, lower)`` given as tokens.

    Raises StructuralError when the order has a cycle, no single top or
    bottom, or a pair without a greatest lower bound.
    """
    elems = [str(e) for e in elems]
    pos = {e: i for i, e in enumerate(elems)}
    n = len(elems)
    le = np.eye(n, dtype=bool)
    for hi, lo in covers:
        le[pos[lo], pos[hi]] = True
    for k in range(n):  # transitive closure
        le |= le[:, [k]] & le[[k], :]
    off = le & le.T & ~np.eye(n, dtype=bool)
    if off.any():
        i, j = np.argwhere(off)[0]
        raise StructuralError(f"cycle through {elems[i]} and {elems[j]}", (elems[i], elems[j]))
    tops = [z for z in range(n) if le[:, z].all()]
    bots = [z for z in range(n) if le[z, :].all()]
    if not tops:
        raise StructuralError("no top node")
    if not bots:
        raise StructuralError("no bottom node")
    if top is not None and elems[tops[0]] != top:
        raise StructuralError(f"{top} is not the top node")
    if bottom is not None and elems[bots[0]] != bottom:
        raise StructuralError(f"{bottom} is not below every node", (bottom,))
    mul = np.zeros((n, n), dtype=np.int64)
    for z in range(n):
        for w in range(n):
            lower = np.flatnonzero(le[:, z] & le[:, w])
            glb = [g for g in lower if le[lower, g].all()]
            if not glb:
                raise StructuralError(f"{elems[z]} and {elems[w]} have no meet",
                                      (elems[z], elems[w]))
            mul[z, w] = glb[0]
    return ZeroLattice(name, elems, mul, tops[0], bots[0])


def chain(k, name=None):
    """The k-element chain with nodes "0", "1", ..., "a" (top first)."""
    if k < 2:
        raise DomainError("a chain needs at least two nodes")
    elems = [str(i) for i in range(k - 1)] + ["a"]
    i = np.arange(k)
    return ZeroLattice(name or f"chain{k}", elems, np.maximum(i[:, None], i[None, :]), 0, k - 1)


def diamond(name="diamond"):
    """S = {0, x, y, a} with 0 the identity and x*y = a."""
    elems = ["0", "x", "y", "a"]
    mul = [[0, 1, 2, 3],
           [1, 1, 3, 3],
           [2, 3, 2, 3],
           [3, 3, 3, 3]]
    return ZeroLattice(name, elems, mul, 0, 3)


def boolean_lattice(k, name=None):
    """Subsets of a k-set ordered by inclusion; product is intersection."""
    n = 2 ** k
    full = n - 1
    # index i holds the subset full ^ i so that the full set (top) comes first
    sets = [full ^ i for i in range(n)]
    pos = {s: i for i, s in enumerate(sets)}
    mul = [[pos[sets[i] & sets[j]] for j in range(n)] for i in range(n)]
    elems = ["{" + ",".join(str(b + 1) for b in range(k) if s >> b & 1) + "}" for s in sets]
    return ZeroLattice(name or f"B{k}", elems, mul, pos[full], pos[0])


def find_lattice_isomorphism(L, K):
    """Order isomorphism L -> K as a list of indices, or None."""
    if L.size != K.size:
        return None
    return _tables.find_table_isomorphism([L.mul], [K.mul],
                                          fixed=[(L.zero, K.zero), (L.a, K.a)])
