"""Brute-force oracles for tiny instances.

These enumerate instead of solving, and deliberately share nothing with
:mod:`cotorsion.homological` beyond the module type and row reduction.
"""
import itertools

import numpy as np

from . import kernels, linalg
from .modules import Module, NotAModule, find_isomorphism


class NotHomogeneous(ValueError):
    """The algebra basis is not adapted to its idempotents."""


def homogeneous_type(algebra):
    """For each basis element ``b``, the pair ``(s, t)`` with ``b = e_s b e_t``."""
    idem = algebra.idempotents
    if idem is None:
        raise NotHomogeneous("algebra has no idempotents")
    out = []
    for i in range(algebra.dim):
        b = algebra.basis_vector(i)
        found = None
        for s, es in enumerate(idem):
            for t, et in enumerate(idem):
                if np.array_equal(algebra.product(algebra.product(es, b), et), b):
                    found = (s, t)
        if found is None:
            raise NotHomogeneous(f"basis element {algebra.basis[i]} is not in some e_s A e_t")
        out.append(found)
    return out


def _dimension_vectors(r, total):
    for combo in itertools.product(range(total + 1), repeat=r):
        if sum(combo) == total:
            yield combo


def modules_of_dim(algebra, dim, limit=1 << 20):
    """All modules of the given dimension up to isomorphism.

    Bases are adapted to the idempotents, so each idempotent acts as a block
    projection and every other basis element as an arbitrary block; candidate
    tuples are filtered by the module axioms and deduplicated by isomorphism.
    """
    p = algebra.p
    types = homogeneous_type(algebra)
    idem = algebra.idempotents
    r = len(idem)
    idem_index = {}
    for i in range(algebra.dim):
        for s, e in enumerate(idem):
            if np.array_equal(algebra.basis_vector(i), e):
                idem_index[i] = s
    reps = []
    for dv in _dimension_vectors(r, dim):
        offs = np.concatenate([[0], np.cumsum(dv)])
        free = [i for i in range(algebra.dim) if i not in idem_index]
        shapes = [(dv[types[i][0]], dv[types[i][1]]) for i in free]
        sizes = [a * b for a, b in shapes]
        if p ** sum(sizes) > limit:
            raise OverflowError("module enumeration too large")
        base = np.zeros((algebra.dim, dim, dim), dtype=np.int64)
        for i, s in idem_index.items():
            base[i, offs[s]:offs[s + 1], offs[s]:offs[s + 1]] = np.eye(dv[s], dtype=np.int64)
        # basis elements that are neither idempotent nor off-diagonal: combinations of the rest
        found = []
        for flat in itertools.product(range(p), repeat=sum(sizes)):
            action = base.copy()
            pos = 0
            for i, (a, b) in zip(free, shapes):
                s, t = types[i]
                block = np.array(flat[pos:pos + a * b], dtype=np.int64).reshape(a, b)
                action[i, offs[s]:offs[s + 1], offs[t]:offs[t + 1]] = block
                pos += a * b
            try:
                M = Module(algebra, action)
            except NotAModule:
                continue
            if not any(find_isomorphism(M, R) is not None for R in found):
                found.append(M)
        reps.extend(found)
    return reps


def modules_up_to(algebra, max_dim, min_dim=1):
    out = []
    for n in range(min_dim, max_dim + 1):
        out.extend(modules_of_dim(algebra, n))
    return out


def _search_plan(algebra):
    """Basis order (idempotents first) and, per level, the axioms that become checkable."""
    c = algebra.mul
    d = algebra.dim
    idem = algebra.idempotents or ()
    first = [i for i in range(d) if any(np.array_equal(algebra.basis_vector(i), e) for e in idem)]
    order = first + [i for i in range(d) if i not in first]
    pos = {b: level for level, b in enumerate(order)}
    constraints = [[] for _ in range(d)]
    for i in range(d):
        for j in range(d):
            involved = [i, j] + [k for k in range(d) if c[i, j, k]]
            constraints[max(pos[t] for t in involved)].append((i, j))
    unit_level = max(pos[k] for k in range(d) if algebra.unit[k])
    return order, constraints, unit_level


def extension_cocycles(M, N, limit=1_000_000):
    """Every ``delta`` making ``[[rho_N, delta], [0, rho_M]]`` a module structure."""
    alg = M.algebra
    order, constraints, unit_level = _search_plan(alg)
    return kernels.enumerate_extensions(
        alg.mul, N.action, M.action, alg.unit, alg.p, order, constraints, unit_level, limit
    )


def coboundaries(M, N):
    """All ``delta_h(e) = rho_N(e) h - h rho_M(e)`` for ``h`` ranging over every matrix."""
    p = M.p
    n, m = N.dim, M.dim
    hs = linalg.all_vectors(n * m, p).reshape(-1, n, m)
    out = np.einsum("iab,hbc->hiac", N.action, hs) - np.einsum("hab,ibc->hiac", hs, M.action)
    return np.unique(out.reshape(len(hs), -1) % p, axis=0)


def count_extension_classes(M, N, limit=1_000_000):
    """Number of equivalence classes of extensions ``0 -> N -> E -> M -> 0``.

    Two block structures are equivalent exactly when a unipotent change of
    basis ``[[I, h], [0, I]]`` carries one to the other, i.e. they differ by
    a coboundary. Orbits are counted by explicit sweeping, not by division.
    """
    p = M.p
    cocycles = extension_cocycles(M, N, limit)
    if N.dim == 0 or M.dim == 0:
        return 1
    flat = cocycles.reshape(len(cocycles), -1) % p
    weights = np.array([p] * flat.shape[1], dtype=object) ** np.arange(flat.shape[1])
    key = lambda rows: {int(x) for x in (rows.astype(object) @ weights)}  # noqa: E731
    unseen = key(flat)
    bounds = coboundaries(M, N)
    classes = 0
    for row in flat:
        k = int(row.astype(object) @ weights)
        if k not in unseen:
            continue
        classes += 1
        unseen -= key((row[None, :] + bounds) % p)
    return classes


def equivalent_extensions(M, N, delta1, delta2):
    """Is there an ``h`` with ``delta2 - delta1 = rho_N h - h rho_M`` (exhaustive)?"""
    p = M.p
    diff = (np.asarray(delta2) - np.asarray(delta1)) % p
    bounds = coboundaries(M, N)
    return bool((bounds == diff.reshape(-1)).all(axis=1).any())


def brute_hom_count(M, N):
    """Count module maps by trying every matrix."""
    p = M.p
    n, m = N.dim, M.dim
    fs = linalg.all_vectors(n * m, p).reshape(-1, n, m)
    lhs = np.einsum("iab,hbc->hiac", N.action, fs) % p
    rhs = np.einsum("hab,ibc->hiac", fs, M.action) % p
    return int((lhs == rhs).reshape(len(fs), -1).all(axis=1).sum())


def brute_tensor_dim(Mop, N):
    """Dimension of ``Mop ⊗ N`` from the span of the elementary relations."""
    p = N.p
    m, n = Mop.dim, N.dim
    rows = []
    for i in range(N.algebra.dim):
        for a in range(m):
            for b in range(n):
                v = np.zeros((m, n), dtype=np.int64)
                v[:, b] += Mop.action[i][:, a]       # (x e_i) ⊗ y
                v[a, :] -= N.action[i][:, b]         # x ⊗ (e_i y)
                rows.append(v.ravel() % p)
    if not rows:
        return m * n
    return m * n - linalg.rank(np.array(rows), p)
