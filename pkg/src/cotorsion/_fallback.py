"""Pure-Python/numpy twins of the compiled kernels in ``_kernels.pyx``."""
import itertools

import numpy as np


def rref(mat, p):
    a = np.array(mat, dtype=np.int64, ndmin=2) % p
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        lead = int(a[r, c])
        if lead != 1:
            a[r] = (a[r] * pow(lead, p - 2, p)) % p
        col = a[:, c].copy()
        col[r] = 0
        if col.any():
            a = (a - np.outer(col, a[r])) % p
        pivots.append(c)
        r += 1
    return a, tuple(pivots)


def enumerate_extensions(c, rho_n, rho_m, unit, p, order, constraints, unit_level,
                         limit=1_000_000):
    c = np.asarray(c, dtype=np.int64)
    d = c.shape[0]
    rho_n = np.asarray(rho_n, dtype=np.int64)
    rho_m = np.asarray(rho_m, dtype=np.int64)
    n = rho_n.shape[1] if rho_n.ndim == 3 else 0
    m = rho_m.shape[1] if rho_m.ndim == 3 else 0
    unit = np.asarray(unit, dtype=np.int64)
    if n == 0 or m == 0:
        return np.zeros((1, d, n, m), dtype=np.int64)
    candidates = np.array(list(itertools.product(range(p), repeat=n * m)), dtype=np.int64)
    candidates = candidates[:, ::-1].reshape(-1, n, m)
    partial = [np.zeros((d, n, m), dtype=np.int64)]
    for level in range(d):
        b = order[level]
        survivors = []
        for base in partial:
            trial = np.repeat(base[None], len(candidates), axis=0)
            trial[:, b] = candidates
            ok = np.ones(len(trial), dtype=bool)
            for i, j in constraints[level]:
                lhs = np.einsum("k,tkrs->trs", c[i, j], trial)
                lhs = lhs - np.einsum("rq,tqs->trs", rho_n[i], trial[:, j])
                lhs = lhs - np.einsum("trq,qs->trs", trial[:, i], rho_m[j])
                ok &= ~((lhs % p).reshape(len(trial), -1).any(axis=1))
            if unit_level == level:
                u = np.einsum("k,tkrs->trs", unit, trial) % p
                ok &= ~u.reshape(len(trial), -1).any(axis=1)
            survivors.extend(trial[ok])
            if len(survivors) > limit:
                raise OverflowError("extension enumeration exceeded limit")
        partial = survivors
        if not partial:
            return np.zeros((0, d, n, m), dtype=np.int64)
    return np.stack(partial)
