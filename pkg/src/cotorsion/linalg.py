"""Exact linear algebra over prime fields.

Matrices are plain ``numpy.int64`` arrays with entries reduced mod ``p``.
Subspaces are stored as matrices whose *rows* form a basis in reduced row
echelon form, so two subspaces are equal iff their basis matrices are equal.
"""
from dataclasses import dataclass

import numpy as np

from . import kernels

MAX_DIM = 64


class DimensionMismatch(ValueError):
    pass


class Inconsistent(ValueError):
    """A linear system has no solution."""


def is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")

    def inv(self, a):
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, self.p - 2, self.p)

    def elements(self):
        return range(self.p)


def mat(entries, p, shape=None):
    """Coerce ``entries`` to a reduced int64 matrix."""
    a = np.array(entries, dtype=np.int64)
    if shape is not None:
        a = a.reshape(shape)
    return a % p


def as_rows(x, width):
    """``x`` as an int64 array of row vectors of the given width (empty input allowed)."""
    a = np.asarray(x, dtype=np.int64)
    if a.size == 0:
        return np.zeros((0, width), dtype=np.int64)
    return a.reshape(-1, width)


def zeros(rows, cols):
    return np.zeros((rows, cols), dtype=np.int64)


def identity(n):
    return np.eye(n, dtype=np.int64)


def mul(a, b, p):
    if a.shape[-1] != b.shape[0]:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    return (a @ b) % p


def rref(m, p):
    """Return ``(R, pivots)``; pivots are the leftmost nonzero columns."""
    m = np.asarray(m, dtype=np.int64)
    if m.ndim != 2:
        raise DimensionMismatch(f"expected a matrix, got shape {m.shape}")
    if m.shape[0] == 0 or m.shape[1] == 0:
        return m.reshape(m.shape) % p, ()
    return kernels.rref(m, p)


def rank(m, p):
    return len(rref(m, p)[1])


def row_basis(vectors, p, width=None):
    """Canonical basis (RREF rows) of the span of the rows of ``vectors``."""
    v = np.asarray(vectors, dtype=np.int64)
    if v.size == 0:
        w = width if width is not None else (v.shape[1] if v.ndim == 2 else 0)
        return np.zeros((0, w), dtype=np.int64)
    if v.ndim == 1:
        v = v[None, :]
    r, piv = rref(v, p)
    return r[: len(piv)].copy()


def kernel_basis(m, p):
    """Rows spanning ``{x : m @ x = 0}`` in canonical form."""
    m = np.asarray(m, dtype=np.int64)
    rows, cols = m.shape
    if cols == 0:
        return np.zeros((0, 0), dtype=np.int64)
    if rows == 0:
        return identity(cols)
    r, piv = rref(m, p)
    free = [c for c in range(cols) if c not in piv]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for t, fc in enumerate(free):
        basis[t, fc] = 1
        for i, pc in enumerate(piv):
            basis[t, pc] = (-r[i, fc]) % p
    return row_basis(basis, p, cols)


def image_basis(m, p):
    """Rows spanning the column space of ``m``."""
    m = np.asarray(m, dtype=np.int64)
    return row_basis(m.T, p, m.shape[0])


def solve(a, b, p):
    """Solve ``a @ x = b``.

    ``b`` may be a vector or a matrix of right-hand sides. Returns
    ``(x, kernel)`` where ``x`` is the particular solution with all free
    variables set to zero, and ``kernel`` the canonical null-space basis.
    Raises ``Inconsistent`` if there is no solution.
    """
    a = np.asarray(a, dtype=np.int64) % p
    b = np.asarray(b, dtype=np.int64) % p
    vector = b.ndim == 1
    if vector:
        b = b[:, None]
    rows, cols = a.shape
    if b.shape[0] != rows:
        raise DimensionMismatch(f"rhs has {b.shape[0]} rows, system has {rows}")
    k = b.shape[1]
    if cols == 0:
        if b.any():
            raise Inconsistent("no unknowns but nonzero right-hand side")
        x = np.zeros((0, k), dtype=np.int64)
        return (x[:, 0] if vector else x), np.zeros((0, 0), dtype=np.int64)
    aug = np.concatenate([a, b], axis=1)
    r, piv = rref(aug, p)
    if any(c >= cols for c in piv):
        raise Inconsistent("linear system is inconsistent")
    x = np.zeros((cols, k), dtype=np.int64)
    for i, c in enumerate(piv):
        x[c] = r[i, cols:]
    kern = kernel_basis(a, p)
    return (x[:, 0] if vector else x), kern


def try_solve(a, b, p):
    try:
        return solve(a, b, p)[0]
    except Inconsistent:
        return None


def in_span(basis, v, p):
    """Is every row of ``v`` in the row span of ``basis``?"""
    v = np.atleast_2d(np.asarray(v, dtype=np.int64))
    if basis.shape[0] == 0:
        return not (v % p).any()
    return rank(np.concatenate([basis, v]), p) == rank(basis, p)


def span_sum(a, b, p):
    width = a.shape[1] if a.ndim == 2 else b.shape[1]
    return row_basis(np.concatenate([as_rows(a, width), as_rows(b, width)]), p, width)


def intersect(a, b, p):
    """Intersection of two row spaces."""
    width = a.shape[1]
    if a.shape[0] == 0 or b.shape[0] == 0:
        return np.zeros((0, width), dtype=np.int64)
    # x a = y b  <=>  [a; -b]^T [x; y] = 0
    stacked = np.concatenate([a, (-b) % p]).T
    kern = kernel_basis(stacked, p)
    if kern.shape[0] == 0:
        return np.zeros((0, width), dtype=np.int64)
    return row_basis(kern[:, : a.shape[0]] @ a % p, p, width)


def coordinates(basis, v, p):
    """Coordinates ``c`` with ``c @ basis = v`` (rows of ``v`` each)."""
    v = np.atleast_2d(np.asarray(v, dtype=np.int64))
    x = solve(basis.T, v.T, p)[0]
    return x.T % p


def reduce_mod(basis, v, p):
    """Normal form of the rows of ``v`` modulo the canonical (RREF) row space ``basis``.

    Two vectors have the same normal form exactly when they differ by an
    element of the span; normal forms vanish on the pivot columns.
    """
    out = np.array(np.atleast_2d(v), dtype=np.int64) % p
    for row in np.asarray(basis, dtype=np.int64):
        c = int(np.flatnonzero(row)[0])
        out = (out - np.outer(out[:, c], row)) % p
    return out


def complement(basis, p, width=None):
    """Standard basis rows completing ``basis`` to the whole space.

    Uses the non-pivot columns of the canonical form, so the result only
    depends on the subspace.
    """
    n = basis.shape[1] if width is None else width
    if basis.shape[0] == 0:
        return identity(n)
    _, piv = rref(basis, p)
    free = [c for c in range(n) if c not in piv]
    comp = np.zeros((len(free), n), dtype=np.int64)
    for t, c in enumerate(free):
        comp[t, c] = 1
    return comp


def inverse(m, p):
    m = np.asarray(m, dtype=np.int64)
    n = m.shape[0]
    if m.shape != (n, n):
        raise DimensionMismatch("inverse of a non-square matrix")
    if n == 0:
        return zeros(0, 0)
    r, piv = rref(np.concatenate([m, identity(n)], axis=1), p)
    if piv[n - 1] != n - 1:
        raise ValueError("matrix is singular")
    return r[:, n:].copy()


def is_invertible(m, p):
    m = np.asarray(m)
    return m.shape[0] == m.shape[1] and rank(m, p) == m.shape[0]


def all_vectors(dim, p):
    """Every vector of ``GF(p)^dim`` (use only for tiny ``dim``)."""
    if dim == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.indices((p,) * dim).reshape(dim, -1).T
    return grids[:, ::-1].astype(np.int64)


def combinations(basis, p, limit=1 << 16):
    """All linear combinations of the rows of ``basis``."""
    k = basis.shape[0]
    if p**k > limit:
        raise OverflowError(f"{p}^{k} combinations exceed the enumeration limit {limit}")
    coeffs = all_vectors(k, p)
    if k == 0:
        return np.zeros((1, basis.shape[1]), dtype=np.int64)
    return coeffs @ basis % p
