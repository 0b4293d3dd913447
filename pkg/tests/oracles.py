"""Brute-force reference computations.

Everything here works from raw operation tables with plain loops and
does not call into the library's algorithms.
"""

import itertools

import numpy as np


def tables(M):
    return (np.asarray(M.add).tolist(), np.asarray(M.mul).tolist(),
            np.asarray(M.neg).tolist(), M.zero, M.one)


def ring_units(add, mul, zero, one):
    n = len(add)
    return [x for x in range(n) if any(mul[x][y] == one for y in range(n))]


def ideals_by_subsets(R):
    """Every subset closed under + and under multiplication by R, found by
    testing all 2^n bitmasks at once."""
    n = R.size
    assert n <= 16
    masks = np.arange(1 << n, dtype=np.int64)
    has = [(masks >> i) & 1 == 1 for i in range(n)]
    ok = has[R.zero].copy()
    add = np.asarray(R.add)
    mul = np.asarray(R.mul)
    for i in range(n):
        for j in range(i, n):
            ok &= ~(has[i] & has[j]) | has[int(add[i, j])]
        for r in range(n):
            ok &= ~has[i] | has[int(mul[r, i])]
    out = []
    for m in np.flatnonzero(ok):
        out.append(frozenset(i for i in range(n) if (m >> i) & 1))
    return out


def premeadow_laws(M):
    """Names of the failing pre-meadow laws, via plain triple loops."""
    add, mul, neg, zero, one = tables(M)
    n = len(add)
    R = range(n)
    bad = set()
    for x in R:
        if add[x][zero] != x:
            bad.add("additive zero")
        if mul[x][one] != x:
            bad.add("multiplicative one")
        if neg[neg[x]] != x:
            bad.add("double negation")
        if add[x][neg[x]] != mul[zero][x]:
            bad.add("x + (-x) = 0x")
        for y in R:
            if add[x][y] != add[y][x]:
                bad.add("additive commutativity")
            if mul[x][y] != mul[y][x]:
                bad.add("multiplicative commutativity")
            if mul[zero][add[x][y]] != mul[mul[zero][x]][y]:
                bad.add("0(x+y) = 0x.y")
            for z in R:
                if add[x][add[y][z]] != add[add[x][y]][z]:
                    bad.add("additive associativity")
                if mul[x][mul[y][z]] != mul[mul[x][y]][z]:
                    bad.add("multiplicative associativity")
                if mul[x][add[y][z]] != add[mul[x][y]][mul[x][z]]:
                    bad.add("distributivity")
    return bad


def distributive(M):
    return "distributivity" not in premeadow_laws(M)


def zero_nodes(M):
    add, mul, neg, zero, one = tables(M)
    return sorted({mul[zero][x] for x in range(len(add))})


def fiber_sets(M):
    add, mul, neg, zero, one = tables(M)
    out = {}
    for x in range(len(add)):
        out.setdefault(mul[zero][x], set()).add(x)
    return out


def leq(M, z, w):
    return int(M.mul[z][w]) == z


def J_set(M, x):
    """Nodes z <= 0*x where x + z has an inverse inside P_z."""
    add, mul, neg, zero, one = tables(M)
    fb = fiber_sets(M)
    zx = mul[zero][x]
    out = []
    for z in zero_nodes(M):
        if mul[z][zx] != z:
            continue
        y = add[x][z]
        one_z = add[one][z]
        if any(mul[y][u] == one_z for u in fb[z]):
            out.append(z)
    return out


def greatest(M, S):
    for g in S:
        if all(leq(M, s, g) for s in S):
            return g
    return None


def brute_inverse(M):
    """Inverse vector from greatest elements of J_x, or None."""
    add, mul, neg, zero, one = tables(M)
    fb = fiber_sets(M)
    inv = []
    for x in range(len(add)):
        g = greatest(M, J_set(M, x))
        if g is None:
            return None
        y = add[x][g]
        one_g = add[one][g]
        inv.append(next(u for u in sorted(fb[g]) if mul[y][u] == one_g))
    return inv


def common_laws_hold(M, inv):
    add, mul, neg, zero, one = tables(M)
    n = len(add)
    a = inv[zero]
    for x in range(n):
        if mul[x][inv[x]] != add[one][mul[zero][inv[x]]]:
            return False
        t = add[one][mul[zero][x]]
        if inv[t] != t:
            return False
        for y in range(n):
            if inv[mul[x][y]] != mul[inv[x]][inv[y]]:
                return False
    return all(add[x][a] == a and mul[x][a] == a for x in range(n))


def brute_flasque(M):
    add, mul, neg, zero, one = tables(M)
    fb = fiber_sets(M)
    for w in fb:
        for z in fb:
            if mul[z][w] == z and {add[x][z] for x in fb[w]} != fb[z]:
                return False
    return True


def order_isomorphic(leq_a, leq_b):
    """Permutation search between two small partial orders given as
    boolean matrices."""
    n = len(leq_a)
    if n != len(leq_b):
        return None
    for p in itertools.permutations(range(n)):
        if all(leq_a[i][j] == leq_b[p[i]][p[j]] for i in range(n) for j in range(n)):
            return p
    return None


def subset_order(sets):
    return [[a <= b for b in sets] for a in sets]
