"""Flasqueness, the flasque closure, product meadows and decompositions."""

from dataclasses import dataclass, field

import numpy as np

from . import _tables
from .errors import DomainError, PreconditionError, StructuralError
from .lattice import CommutativeMonoid, ZeroLattice
from .meadow import (Level, Meadow, a_element, classify, compute_J, fiber_ring, fibers,
                     greatest_node, maximal_nodes, node_le, node_name, ref, zero_monoid)
from .report import Report, Violation
from .rings import is_field, units
from .rings import inverse as ring_inverse


@dataclass
class FlasqueReport:
    flasque: bool
    route: str
    failing_pair: tuple = None     # (upper node, lower node)
    witness: str = None            # first target outside the image
    missing: tuple = ()            # every target outside the image

    def __bool__(self):
        return self.flasque


def _image_gap(M, w, z):
    """Elements of P_z outside the image of P_w under x -> x + z."""
    img = set(M.add[fibers(M)[w], z].tolist())
    return [y for y in fibers(M)[z] if y not in img]


def _scan(M, uppers, route):
    for w in uppers:
        for z in M.nodes:
            if z == w or not node_le(M, z, w):
                continue
            gap = _image_gap(M, w, z)
            if gap:
                return FlasqueReport(False, route, (node_name(M, w), node_name(M, z)),
                                     M.elems[gap[0]], tuple(M.elems[y] for y in gap))
    return FlasqueReport(True, route)


def is_flasque(M):
    """Surjectivity of every transition map between comparable nodes."""
    return _scan(M, M.nodes, "all-pairs")


def is_flasque_via_top(M):
    """Surjectivity of the transition maps out of P_0 only."""
    return _scan(M, [int(M.zero_of[M.zero])], "from-top")


def restrict(M, keep, name=None):
    """Sub-structure on the element indices ``keep`` (must be closed)."""
    keep = sorted(set(int(k) for k in keep))
    if M.zero not in keep or M.one not in keep:
        raise StructuralError("a sub-structure has to contain 0 and 1")
    pos = {x: i for i, x in enumerate(keep)}
    look = np.vectorize(lambda v: pos.get(int(v), -1), otypes=[np.int64])
    k = np.array(keep)
    add = look(M.add[np.ix_(k, k)])
    mul = look(M.mul[np.ix_(k, k)])
    neg = look(M.neg[k])
    if (add < 0).any() or (mul < 0).any() or (neg < 0).any():
        raise StructuralError("subset is not closed under the operations")
    inv = None
    if M.inv is not None:
        iv = look(M.inv[k])
        if not (iv < 0).any():
            inv = iv
    return Meadow(name or M.name, [M.elems[x] for x in keep], pos[M.zero], pos[M.one],
                  add, neg, mul, inv)


def flasque_closure(M):
    """P_0 + 0*P: the fiber at z becomes the image of P_0 in P_z.

    A flasque input is returned unchanged (the same object).
    """
    if is_flasque(M):
        return M
    top = int(M.zero_of[M.zero])
    keep = {int(M.add[y, z]) for y in fibers(M)[top] for z in M.nodes}
    return restrict(M, keep, f"{M.name}-closure")


# -- products of a ring with a monoid ----------------------------------------

def _product_tables(R, S):
    """Carrier R x (S minus a) plus a, with (x,s) op (y,t) = (x op y, s*t)."""
    a = S.absorber
    svals = [s for s in range(S.size) if s != a]
    n, k = R.size, len(svals)
    N = n * k + 1
    A = N - 1

    def idx(s_pos, r):
        return s_pos * n + r

    spos = {s: i for i, s in enumerate(svals)}
    elems = [f"{S.elems[s]}.{R.elems[r]}" for s in svals for r in range(n)] + [S.elems[a]]
    add = np.full((N, N), A, dtype=np.int64)
    mul = np.full((N, N), A, dtype=np.int64)
    neg = np.full(N, A, dtype=np.int64)
    for s in svals:
        neg[idx(spos[s], 0):idx(spos[s], 0) + n] = idx(spos[s], 0) + R.neg
        for t in svals:
            st = int(S.mul[s, t])
            if st == a:
                continue
            base = idx(spos[st], 0)
            rows = slice(idx(spos[s], 0), idx(spos[s], 0) + n)
            cols = slice(idx(spos[t], 0), idx(spos[t], 0) + n)
            add[rows, cols] = base + R.add
            mul[rows, cols] = base + R.mul
    zero = idx(spos[S.identity], R.zero)
    one = idx(spos[S.identity], R.one)
    return elems, zero, one, add, neg, mul, svals, spos


def product_meadow(R, S, name=None):
    """R x (S minus a) plus a, for an idempotent monoid S with absorbing a.

    Elements print as ``<s>.<r>``, **a** as S's absorbing token.  The
    inverse (x, s) -> (x^-1, s) for units x, **a** otherwise, is attached.
    """
    if not isinstance(S, ZeroLattice):
        raise DomainError(f"{S.name} is not idempotent; see check_defect_identity")
    elems, zero, one, add, neg, mul, svals, spos = _product_tables(R, S)
    n = R.size
    U = units(R)
    A = len(elems) - 1
    inv = np.full(len(elems), A, dtype=np.int64)
    for s in svals:
        for r in U:
            inv[spos[s] * n + r] = spos[s] * n + ring_inverse(R, r)
    return Meadow(name or f"{R.name}*{S.name}", elems, zero, one, add, neg, mul, inv)


@dataclass
class DefectReport:
    identity_holds: bool
    identity_witness: tuple = None
    distributivity_witness: tuple = None
    checked_triples: int = 0

    @property
    def ok(self):
        return self.identity_holds and self.distributivity_witness is not None


def check_defect_identity(R, S):
    """Over a non-idempotent S the product structure satisfies
    x*y + x*z = x*(y + z) + (0, s_x) for every triple, where s_x is the
    monoid part of x (and the correction is **a** when x is **a**).  Plain
    distributivity is also scanned for a counterexample."""
    if not isinstance(S, CommutativeMonoid) or S.is_idempotent():
        raise DomainError(f"{S.name} is idempotent; use product_meadow")
    elems, zero, one, add, neg, mul, svals, spos = _product_tables(R, S)
    N = len(elems)
    A = N - 1
    n = R.size
    corr = np.array([spos_s * n + R.zero for spos_s in range(len(svals)) for _ in range(n)]
                    + [A], dtype=np.int64)
    ident = None
    for x in range(N):
        row = mul[x]
        lhs = add[np.ix_(row, row)]
        rhs = add[:, corr[x]][row[add]]
        w = _tables.first_true(lhs != rhs)
        if w is not None:
            ident = tuple(elems[i] for i in (x,) + w)
            break
    dist = _tables.distributivity_witness(mul, add)
    return DefectReport(ident is None, ident,
                        None if dist is None else tuple(elems[i] for i in dist), N ** 3)


def product_structure(R, S, name=None):
    """The product built over any commutative monoid with absorber, as a
    Meadow-shaped table (no axioms checked)."""
    elems, zero, one, add, neg, mul, _, _ = _product_tables(R, S)
    return Meadow(name or f"{R.name}*{S.name}", elems, zero, one, add, neg, mul)


# -- decomposition -----------------------------------------------------------

def check_meadow_hom(src, dst, f):
    """Operation preservation of the element map f: src -> dst."""
    f = np.asarray(f, dtype=np.int64)
    rep = Report(f"map {src.name}->{dst.name}")
    t = src.elems
    laws = [("add", _tables.first_true(f[src.add] != dst.add[np.ix_(f, f)])),
            ("mul", _tables.first_true(f[src.mul] != dst.mul[np.ix_(f, f)])),
            ("neg", _tables.first_true(f[src.neg] != dst.neg[f]))]
    if src.inv is not None and dst.inv is not None:
        laws.append(("inv", _tables.first_true(f[src.inv] != dst.inv[f])))
    for law, w in laws:
        rep.checked.append(law)
        if w is not None:
            rep.violations.append(Violation(law, tuple(t[i] for i in w)))
    rep.checked.append("one")
    if f[src.one] != dst.one:
        rep.violations.append(Violation("one", (t[src.one],)))
    return rep


@dataclass
class DecompositionResult:
    """``iso[i]`` is the image in M of element i of ``product``; None with
    ``reasons`` when M is not isomorphic to the product through Phi."""

    product: Meadow = None
    iso: list = None
    reasons: list = field(default_factory=list)
    report: Report = None

    def __bool__(self):
        return self.iso is not None


def decomposition_iso(M):
    """Compare M with M' = P_0 x (0*M minus a) plus a through
    Phi(x, z) = x + z."""
    res = DecompositionResult()
    cls = classify(M)
    if cls.level < Level.PRE_MEADOW_WITH_A:
        res.reasons.append(f"not a pre-meadow with a ({cls.level})")
        return res
    if cls.level < Level.COMMON_MEADOW:
        res.reasons.append("not a common meadow")
    Mi = M if M.inv is not None or cls.inverse is None else M.with_inverse(cls.inverse)
    top = int(M.zero_of[M.zero])
    P0 = fiber_ring(M, top)
    L = zero_monoid(M)
    Mp = product_meadow(P0, L, name=f"{M.name}'")
    res.product = Mp
    if not is_flasque(M):
        res.reasons.append("not flasque")
    if not is_field(P0):
        res.reasons.append(f"P_0 ({P0.name}) is not a field")
    xs = fibers(M)[top]
    phi = []
    a = a_element(M)
    for s in range(L.size):
        if s == L.a:
            continue
        z = M.nodes[s]
        phi.extend(int(M.add[x, z]) for x in xs)
    phi.append(a)
    if len(set(phi)) != M.size or Mp.size != M.size:
        res.reasons.append(f"Phi is not bijective (|M'| = {Mp.size}, |M| = {M.size}, "
                           f"|image| = {len(set(phi))})")
    rep = check_meadow_hom(Mp, Mi, phi)
    res.report = rep
    if not rep.ok:
        res.reasons.append(f"Phi does not preserve {', '.join(v.law for v in rep.violations)}")
    if not res.reasons:
        res.iso = phi
    return res


# -- inverse existence for flasque meadows ------------------------------------

@dataclass
class FlasqueInverseResult:
    exists: bool
    failures: list = field(default_factory=list)   # (x, maximal nodes) for x in P_0
    greatest: dict = field(default_factory=dict)   # x in P_0 -> greatest node of J_x
    predicted: dict = field(default_factory=dict)  # every x -> meet(greatest(J_y), 0*x)
    mismatches: list = field(default_factory=list)

    def __bool__(self):
        return self.exists


def flasque_inverse_exists(M):
    """Decide whether every J_x has a greatest node by scanning P_0 alone.

    Sound only for flasque meadows, so a non-flasque input is refused.  On
    success every x = y + 0*x (y in P_0) gets the prediction
    greatest(J_x) = greatest(J_y) * 0*x, cross-checked against a direct
    scan of J_x.
    """
    fr = is_flasque(M)
    if not fr:
        raise PreconditionError(
            f"{M.name} is not flasque ({fr.failing_pair[0]} -> {fr.failing_pair[1]} misses "
            f"{fr.witness}); every element has to be checked")
    top = int(M.zero_of[M.zero])
    P0 = fibers(M)[top]
    res = FlasqueInverseResult(True)
    for y in P0:
        J = compute_J(M, y)
        g = greatest_node(M, J)
        if g is None:
            res.exists = False
            res.failures.append((y, tuple(maximal_nodes(M, J))))
        else:
            res.greatest[y] = g
    if not res.exists:
        return res
    lift = {}
    for y in P0:
        for z in M.nodes:
            lift.setdefault(int(M.add[y, z]), y)
    for x in range(M.size):
        y = lift[x]
        zx = int(M.zero_of[x])
        g = int(M.mul[res.greatest[y], zx])
        res.predicted[x] = g
        direct = greatest_node(M, compute_J(M, x))
        if direct != g:
            res.mismatches.append((ref(M, x), g, direct))
    return res
