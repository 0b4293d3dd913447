"""Exhaustive scans over dense operation tables.

Every scan walks its index space in C order and reports the first
failing tuple, so witnesses are deterministic.
"""

import numpy as np

from .errors import FormatError


def as_table(table, n, what="table"):
    try:
        t = np.array(table, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"{what}: not an integer table ({exc})") from None
    if t.shape != (n, n):
        raise FormatError(f"{what}: expected {n}x{n} table, got shape {t.shape}")
    if n and (t.min() < 0 or t.max() >= n):
        bad = tuple(int(i) for i in np.argwhere((t < 0) | (t >= n))[0])
        raise FormatError(f"{what}: entry at {bad} out of range 0..{n - 1}")
    t.setflags(write=False)
    return t


def as_vector(vec, n, what="vector"):
    try:
        v = np.array(vec, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"{what}: not an integer vector ({exc})") from None
    if v.shape != (n,):
        raise FormatError(f"{what}: expected length {n}, got shape {v.shape}")
    if n and (v.min() < 0 or v.max() >= n):
        bad = int(np.argwhere((v < 0) | (v >= n))[0][0])
        raise FormatError(f"{what}: entry {bad} out of range 0..{n - 1}")
    v.setflags(write=False)
    return v


def first_true(mask):
    idx = np.argwhere(mask)
    if len(idx) == 0:
        return None
    return tuple(int(i) for i in idx[0])


def commutativity_witness(op):
    return first_true(op != op.T)


def associativity_witness(op):
    for x in range(len(op)):
        lhs = op[op[x]]          # (x*y)*z
        rhs = op[x][op]          # x*(y*z)
        w = first_true(lhs != rhs)
        if w is not None:
            return (x,) + w
    return None


def distributivity_witness(mul, add):
    """First (x, y, z) with x*(y+z) != x*y + x*z."""
    for x in range(len(mul)):
        row = mul[x]
        lhs = row[add]
        rhs = add[np.ix_(row, row)]
        w = first_true(lhs != rhs)
        if w is not None:
            return (x,) + w
    return None


def _signature(tables, x):
    sig = []
    for op in tables:
        row = op[x]
        sig.append((bool(op[x, x] == x), int(np.count_nonzero(row == x)),
                    len(set(row.tolist()))))
    return tuple(sig)


def find_table_isomorphism(src, dst, fixed=()):
    """Bijection f with f(op(x, y)) = op'(f(x), f(y)) for every paired table.

    ``src`` and ``dst`` are equal-length sequences of square tables (binary
    operations; 1-d arrays are treated as unary operations).  ``fixed`` pins
    pairs (i, j) in advance.  Returns a list or None.  Backtracking with
    closure propagation, meant for small carriers.
    """
    binary_s = [t for t in src if t.ndim == 2]
    binary_d = [t for t in dst if t.ndim == 2]
    unary_s = [t for t in src if t.ndim == 1]
    unary_d = [t for t in dst if t.ndim == 1]
    n = len(binary_s[0]) if binary_s else len(unary_s[0])
    m = len(binary_d[0]) if binary_d else len(unary_d[0])
    if n != m or len(binary_s) != len(binary_d) or len(unary_s) != len(unary_d):
        return None
    sig_s = [_signature(binary_s, x) for x in range(n)]
    sig_d = [_signature(binary_d, y) for y in range(n)]
    if sorted(sig_s) != sorted(sig_d):
        return None

    def extend(f, used, todo):
        # assign todo pairs and close under all operations; None on conflict
        stack = list(todo)
        while stack:
            x, y = stack.pop()
            if f[x] == y:
                continue
            if f[x] != -1 or used[y] or sig_s[x] != sig_d[y]:
                return None
            f[x] = y
            used[y] = True
            for u, v in zip(unary_s, unary_d):
                stack.append((int(u[x]), int(v[y])))
            assigned = [a for a in range(n) if f[a] != -1]
            for a in assigned:
                b = f[a]
                for s, d in zip(binary_s, binary_d):
                    stack.append((int(s[x, a]), int(d[y, b])))
                    stack.append((int(s[a, x]), int(d[b, y])))
        return f

    def search(f, used):
        try:
            x = f.index(-1)
        except ValueError:
            return f
        for y in range(n):
            if used[y] or sig_s[x] != sig_d[y]:
                continue
            g = extend(list(f), list(used), [(x, y)])
            if g is not None:
                r = search(g, _used(g, n))
                if r is not None:
                    return r
        return None

    f = extend([-1] * n, [False] * n, list(fixed))
    if f is None:
        return None
    return search(f, _used(f, n))


def _used(f, n):
    used = [False] * n
    for y in f:
        if y != -1:
            used[y] = True
    return used
