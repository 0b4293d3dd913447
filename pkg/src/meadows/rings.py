"""Finite commutative rings with unity, stored as dense operation tables.

Elements are addressed by index; ``elems`` carries the printable token of
each index.  Everything here is exhaustive: rings are small enough that
O(n^3) table scans are the intended algorithm.
"""

import itertools
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import _tables
from .errors import DomainError, FormatError, SizeError, StructuralError
from .report import Report, Violation

DEFAULT_MAX_CARRIER = 256


class FiniteRing:
    """A unital commutative ring given by its addition and multiplication tables.

    Construction only checks shapes and index ranges; use
    :func:`check_ring_axioms` to validate the ring laws.
    """

    def __init__(self, name, elems, zero, one, add, mul, factors=None, coords=None):
        elems = tuple(str(e) for e in elems)
        n = len(elems)
        if n < 1:
            raise FormatError("a ring needs at least one element")
        if len(set(elems)) != n:
            dup = next(e for e in elems if elems.count(e) > 1)
            raise FormatError(f"duplicate element token {dup!r}")
        self.name = str(name)
        self.elems = elems
        self.zero = _index_in_range(zero, n, "zero")
        self.one = _index_in_range(one, n, "one")
        self.add = _tables.as_table(add, n, f"{name}: add")
        self.mul = _tables.as_table(mul, n, f"{name}: mul")
        # product rings remember their factors; not part of equality
        self.factors = factors
        self.coords = coords
        self._index = {e: i for i, e in enumerate(elems)}

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

    def token(self, i):
        return self.elems[i]

    @cached_property
    def neg(self):
        zs = self.add == self.zero
        if not zs.any(axis=1).all():
            x = int(np.argwhere(~zs.any(axis=1))[0][0])
            raise StructuralError(f"{self.elems[x]} has no additive inverse", (x,))
        v = np.argmax(zs, axis=1)
        v.setflags(write=False)
        return v

    def __eq__(self, other):
        if not isinstance(other, FiniteRing):
            return NotImplemented
        return (self.name == other.name and self.elems == other.elems
                and self.zero == other.zero and self.one == other.one
                and np.array_equal(self.add, other.add)
                and np.array_equal(self.mul, other.mul))

    def __hash__(self):
        return hash((self.name, self.elems, self.zero, self.one,
                     self.add.tobytes(), self.mul.tobytes()))

    def __repr__(self):
        return f"FiniteRing({self.name!r}, n={self.size})"


def _index_in_range(i, n, what):
    i = int(i)
    if not 0 <= i < n:
        raise FormatError(f"{what} index {i} out of range 0..{n - 1}")
    return i


def check_ring_axioms(R):
    """Check every commutative-ring law; stop at the first violated one."""
    rep = Report(f"ring {R.name}")
    t = R.elems
    n = R.size
    add, mul, zero, one = R.add, R.mul, R.zero, R.one
    idx = np.arange(n)

    def fail(law, witness, detail=""):
        rep.violations.append(Violation(law, tuple(t[i] for i in witness), detail))
        return rep

    rep.checked.append("additive identity")
    w = _tables.first_true((add[zero] != idx) | (add[:, zero] != idx))
    if w is not None:
        return fail("additive identity", w)
    rep.checked.append("additive commutativity")
    w = _tables.commutativity_witness(add)
    if w is not None:
        return fail("additive commutativity", w)
    rep.checked.append("additive associativity")
    w = _tables.associativity_witness(add)
    if w is not None:
        return fail("additive associativity", w)
    rep.checked.append("additive inverse")
    w = _tables.first_true(~(add == zero).any(axis=1))
    if w is not None:
        return fail("additive inverse", w)
    rep.checked.append("multiplicative identity")
    w = _tables.first_true((mul[one] != idx) | (mul[:, one] != idx))
    if w is not None:
        return fail("multiplicative identity", w)
    rep.checked.append("multiplicative commutativity")
    w = _tables.commutativity_witness(mul)
    if w is not None:
        return fail("multiplicative commutativity", w)
    rep.checked.append("multiplicative associativity")
    w = _tables.associativity_witness(mul)
    if w is not None:
        return fail("multiplicative associativity", w)
    rep.checked.append("distributivity")
    w = _tables.distributivity_witness(mul, add)
    if w is not None:
        return fail("distributivity", w)
    return rep


def cyclic_ring(n):
    """The ring Z/nZ; ``n = 1`` gives the trivial ring."""
    if int(n) != n or n < 1:
        raise DomainError(f"cyclic_ring needs a positive integer, got {n!r}")
    n = int(n)
    i = np.arange(n)
    return FiniteRing(f"Z{n}", [str(k) for k in range(n)], 0, 1 % n,
                      (i[:, None] + i[None, :]) % n, (i[:, None] * i[None, :]) % n)


def trivial_ring(name="trivial"):
    return FiniteRing(name, ["0"], 0, 0, [[0]], [[0]])


def ring_product(*rings, name=None):
    """Direct product with componentwise operations.

    Elements are ordered lexicographically by component index and printed as
    ``(t1,t2,...)``.  The factors and each element's component indices are
    kept on the result as ``factors`` and ``coords``.
    """
    if len(rings) < 2:
        raise DomainError("ring_product needs at least two rings")
    sizes = [R.size for R in rings]
    coords = list(itertools.product(*[range(s) for s in sizes]))
    C = np.array(coords, dtype=np.int64).reshape(len(coords), len(rings))
    strides = np.ones(len(rings), dtype=np.int64)
    for k in range(len(rings) - 2, -1, -1):
        strides[k] = strides[k + 1] * sizes[k + 1]
    N = len(coords)
    add = np.zeros((N, N), dtype=np.int64)
    mul = np.zeros((N, N), dtype=np.int64)
    for k, R in enumerate(rings):
        c = C[:, k]
        add += R.add[c[:, None], c[None, :]] * strides[k]
        mul += R.mul[c[:, None], c[None, :]] * strides[k]
    elems = ["(" + ",".join(R.elems[i] for R, i in zip(rings, cs)) + ")" for cs in coords]
    zero = int(sum(R.zero * s for R, s in zip(rings, strides)))
    one = int(sum(R.one * s for R, s in zip(rings, strides)))
    return FiniteRing(name or "x".join(R.name for R in rings), elems, zero, one, add, mul,
                      factors=tuple(rings), coords=tuple(coords))


def ring_power(R, k, name=None):
    if k == 1:
        return R
    return ring_product(*([R] * k), name=name or f"{R.name}^{k}")


def is_prime(p):
    if p < 2:
        return False
    return all(p % d for d in range(2, int(p ** 0.5) + 1))


def _polymod(a, m, p):
    """Remainder of a modulo the monic polynomial m (coefficient lists, low first)."""
    a = list(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        c = a[-1] % p
        if c:
            shift = len(a) - 1 - dm
            for i, mi in enumerate(m):
                a[shift + i] = (a[shift + i] - c * mi) % p
        a.pop()
    return [c % p for c in a]


def _decode(code, p, k):
    return [(code // p ** i) % p for i in range(k)]


def _is_irreducible(m, p):
    k = len(m) - 1
    for d in range(1, k // 2 + 1):
        for code in range(p ** d):
            f = _decode(code, p, d) + [1]
            if not any(_polymod(m, f, p)):
                return False
    return True


def irreducible_modulus(p, k):
    """Least monic irreducible polynomial of degree k over Z_p.

    Coefficients are returned lowest degree first; "least" compares the
    coefficient vectors from the highest non-leading degree down.
    """
    for code in range(p ** k):
        m = _decode(code, p, k) + [1]
        if _is_irreducible(m, p):
            return m
    raise AssertionError("unreachable: irreducible polynomials exist in every degree")


def finite_field(p, k=1, max_carrier=DEFAULT_MAX_CARRIER):
    """GF(p^k) as polynomials over Z_p modulo :func:`irreducible_modulus`.

    The element with token ``str(c)`` is the polynomial whose coefficients
    are the base-p digits of c (constant term first), so k = 1 gives Z_p.
    """
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if int(k) != k or k < 1:
        raise DomainError(f"degree must be a positive integer, got {k!r}")
    q = p ** k
    if q > max_carrier:
        raise SizeError(f"GF({p}^{k}) has {q} elements, cap is {max_carrier}")
    if k == 1:
        return cyclic_ring(p)
    m = irreducible_modulus(p, k)
    polys = [_decode(c, p, k) for c in range(q)]
    weights = [p ** i for i in range(k)]
    add = np.zeros((q, q), dtype=np.int64)
    mul = np.zeros((q, q), dtype=np.int64)
    for a in range(q):
        for b in range(a, q):
            s = sum(((x + y) % p) * w for x, y, w in zip(polys[a], polys[b], weights))
            prod = [0] * (2 * k - 1)
            for i, x in enumerate(polys[a]):
                if x:
                    for j, y in enumerate(polys[b]):
                        prod[i + j] += x * y
            r = _polymod(prod, m, p) if len(prod) > k else [c % p for c in prod]
            r = r + [0] * (k - len(r))
            v = sum(c * w for c, w in zip(r, weights))
            add[a, b] = add[b, a] = s
            mul[a, b] = mul[b, a] = v
    return FiniteRing(f"GF{q}", [str(c) for c in range(q)], 0, 1, add, mul)


def units(R):
    """Indices of invertible elements; the trivial ring's element counts (0 = 1)."""
    return frozenset(int(x) for x in np.flatnonzero((R.mul == R.one).any(axis=1)))


def inverse(R, x):
    hits = np.flatnonzero(R.mul[x] == R.one)
    if len(hits) == 0:
        raise DomainError(f"{R.elems[x]} is not a unit of {R.name}")
    return int(hits[0])


def is_field(R):
    return R.size >= 2 and len(units(R)) == R.size - 1 and R.zero not in units(R)


# -- homomorphisms ---------------------------------------------------------

class RingHom:
    """An element-wise map between rings; ``map[i]`` is the image index of i."""

    def __init__(self, src, dst, map):
        self.src = src
        self.dst = dst
        self.map = _hom_vector(map, src.size, dst.size)

    def __call__(self, x):
        return int(self.map[x])

    def then(self, other):
        """``other ∘ self``."""
        if other.src is not self.dst and other.src != self.dst:
            raise DomainError("composition of homs with mismatched rings")
        return RingHom(self.src, other.dst, other.map[self.map])

    def image(self):
        return frozenset(int(y) for y in self.map)

    def is_surjective(self):
        return len(self.image()) == self.dst.size

    def __eq__(self, other):
        if not isinstance(other, RingHom):
            return NotImplemented
        return self.src == other.src and self.dst == other.dst and \
            np.array_equal(self.map, other.map)

    def __hash__(self):
        return hash((self.src.name, self.dst.name, self.map.tobytes()))

    def __repr__(self):
        return f"RingHom({self.src.name} -> {self.dst.name}, {self.map.tolist()})"


def _hom_vector(map, n, m):
    try:
        v = np.array(map, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"hom map is not an integer vector ({exc})") from None
    if v.shape != (n,):
        raise FormatError(f"hom map needs {n} entries, got shape {v.shape}")
    if n and (v.min() < 0 or v.max() >= m):
        bad = int(np.argwhere((v < 0) | (v >= m))[0][0])
        raise FormatError(f"hom map entry {bad} -> {int(v[bad])} out of range 0..{m - 1}")
    v.setflags(write=False)
    return v


def identity_hom(R):
    return RingHom(R, R, np.arange(R.size))


def constant_hom(R, T):
    """The unique map into a trivial ring."""
    if T.size != 1:
        raise DomainError(f"{T.name} is not trivial")
    return RingHom(R, T, np.zeros(R.size, dtype=np.int64))


def check_hom(h):
    src, dst, f = h.src, h.dst, h.map
    rep = Report(f"hom {src.name}->{dst.name}")
    st, dt = src.elems, dst.elems

    rep.checked.append("zero")
    if f[src.zero] != dst.zero:
        rep.violations.append(Violation("zero", (st[src.zero],),
                                        f"maps to {dt[f[src.zero]]}, not {dt[dst.zero]}"))
        return rep
    rep.checked.append("one")
    if f[src.one] != dst.one:
        rep.violations.append(Violation("one", (st[src.one],),
                                        f"maps to {dt[f[src.one]]}, not {dt[dst.one]}"))
        return rep
    for law, s_op, d_op in (("additive", src.add, dst.add),
                            ("multiplicative", src.mul, dst.mul)):
        rep.checked.append(law)
        w = _tables.first_true(f[s_op] != d_op[np.ix_(f, f)])
        if w is not None:
            x, y = w
            rep.violations.append(Violation(
                law, (st[x], st[y]),
                f"image of the result is {dt[f[s_op[x, y]]]}, "
                f"result of the images is {dt[d_op[f[x], f[y]]]}"))
            return rep
    return rep


def enumerate_homs(R, S):
    """All unital ring homomorphisms R -> S, in lexicographic order of maps."""
    n, m = R.size, S.size
    out = []
    f = [-1] * n

    def consistent(x):
        for y in range(x + 1):
            for s_op, d_op in ((R.add, S.add), (R.mul, S.mul)):
                z = s_op[x, y]
                if z <= x and f[z] != d_op[f[x], f[y]]:
                    return False
        return True

    def go(x):
        if x == n:
            out.append(RingHom(R, S, f))
            return
        if x == R.zero:
            choices = [S.zero]
        elif x == R.one:
            choices = [S.one]
        else:
            choices = range(m)
        for y in choices:
            f[x] = y
            if consistent(x):
                go(x + 1)
        f[x] = -1

    if R.zero == R.one and S.zero != S.one:
        return out
    go(0)
    return out


def find_isomorphism(R, S):
    """A ring isomorphism R -> S as a RingHom, or None.  Exhaustive search."""
    if R.size != S.size:
        return None
    f = _tables.find_table_isomorphism([R.add, R.mul], [S.add, S.mul],
                                       fixed=[(R.zero, S.zero), (R.one, S.one)])
    return None if f is None else RingHom(R, S, f)


# -- ideals and quotients --------------------------------------------------

@dataclass(frozen=True)
class Ideal:
    ring: FiniteRing = field(compare=False, repr=False, hash=False)
    members: tuple

    def __len__(self):
        return len(self.members)

    def __contains__(self, x):
        return x in self._set

    @cached_property
    def _set(self):
        return frozenset(self.members)

    def issubset(self, other):
        return self._set <= other._set

    @property
    def label(self):
        return ideal_label(self)

    def tokens(self):
        return [self.ring.elems[i] for i in self.members]


def _ideal_sort_key(I):
    return (len(I), I.members)


def make_ideal(R, members):
    """Validate ``members`` (indices) as an ideal of R."""
    ms = frozenset(int(x) for x in members)
    if any(not 0 <= x < R.size for x in ms):
        raise DomainError("ideal member out of range")
    if R.zero not in ms:
        raise DomainError("an ideal must contain zero")
    L = np.array(sorted(ms), dtype=np.int64)
    if not set(R.add[np.ix_(L, L)].ravel().tolist()) <= ms:
        raise DomainError("not closed under addition")
    if not set(R.neg[L].tolist()) <= ms:
        raise DomainError("not closed under negation")
    if not set(R.mul[:, L].ravel().tolist()) <= ms:
        raise DomainError("not closed under multiplication by ring elements")
    return Ideal(R, tuple(sorted(ms)))


def principal_ideal(R, g):
    return Ideal(R, tuple(sorted(set(R.mul[:, g].tolist()))))


def ideal_sum(I, J):
    R = I.ring
    return Ideal(R, tuple(sorted(set(R.add[np.ix_(I.members, J.members)].ravel().tolist()))))


def ideal_intersection(I, J):
    return Ideal(I.ring, tuple(sorted(I._set & J._set)))


def enumerate_ideals(R, max_carrier=DEFAULT_MAX_CARRIER):
    """All ideals of R, smallest first (a linear extension of inclusion).

    Every ideal of a finite commutative ring is a finite sum of principal
    ideals, so closing the principal ideals under pairwise sums is enough.
    """
    if R.size > max_carrier:
        raise SizeError(f"{R.name} has {R.size} elements, cap is {max_carrier}")
    principals = {}
    for g in range(R.size):
        I = principal_ideal(R, g)
        principals.setdefault(I.members, I)
    found = dict(principals)
    zero = Ideal(R, (R.zero,))
    found.setdefault(zero.members, zero)
    work = list(found.values())
    gens = list(principals.values())
    while work:
        I = work.pop()
        for P in gens:
            S = ideal_sum(I, P)
            if S.members not in found:
                found[S.members] = S
                work.append(S)
    return sorted(found.values(), key=_ideal_sort_key)


def ideal_generators(I):
    """A smallest generating set, least in index order among those."""
    R = I.ring
    cands = list(I.members)
    for k in range(1, len(cands) + 1):
        for gs in itertools.combinations(cands, k):
            S = principal_ideal(R, gs[0])
            for g in gs[1:]:
                S = ideal_sum(S, principal_ideal(R, g))
            if S.members == I.members:
                return gs
    raise AssertionError("unreachable: an ideal generates itself")


def ideal_label(I):
    return "(" + ",".join(I.ring.elems[g] for g in ideal_generators(I)) + ")"


def quotient(R, I):
    """The ring R/I and its projection.

    Cosets are represented by their least-index member, whose token names
    the coset; cosets are ordered by that index.
    """
    if not isinstance(I, Ideal):
        I = make_ideal(R, I)
    else:
        I = make_ideal(R, I.members)
    rep = R.add[:, list(I.members)].min(axis=1)
    reps = sorted(set(rep.tolist()))
    pos = {r: k for k, r in enumerate(reps)}
    proj = np.array([pos[int(r)] for r in rep], dtype=np.int64)
    r = np.array(reps, dtype=np.int64)
    add = proj[R.add[np.ix_(r, r)]]
    mul = proj[R.mul[np.ix_(r, r)]]
    Q = FiniteRing(f"{R.name}/{ideal_label(I)}", [R.elems[k] for k in reps],
                   proj[R.zero], proj[R.one], add, mul)
    return Q, RingHom(R, Q, proj)


def kernel(h):
    return make_ideal(h.src, np.flatnonzero(h.map == h.dst.zero))
