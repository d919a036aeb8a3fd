# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot loops: modular row reduction and the brute-force extension search.

Both functions have drop-in pure-Python twins in ``_fallback.py``.
"""
import numpy as np

cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()


cdef inline int64_t _modinv(int64_t a, int64_t p) nogil:
    cdef int64_t result = 1
    cdef int64_t base = a % p
    cdef int64_t e = p - 2
    while e > 0:
        if e & 1:
            result = (result * base) % p
        base = (base * base) % p
        e >>= 1
    return result


def rref(object mat, long long p):
    """Reduced row echelon form of ``mat`` over GF(p).

    Pivot choice is the topmost nonzero entry of the leftmost remaining column.
    Returns ``(R, pivots)`` with ``pivots`` a tuple of pivot columns.
    """
    cdef cnp.ndarray[cnp.int64_t, ndim=2] arr = np.array(mat, dtype=np.int64, order="C", ndmin=2) % p
    cdef int64_t[:, ::1] a = arr
    cdef Py_ssize_t rows = a.shape[0]
    cdef Py_ssize_t cols = a.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef int64_t inv, f, tmp
    pivots = []
    for c in range(cols):
        if r >= rows:
            break
        piv = -1
        for i in range(r, rows):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(c, cols):
                tmp = a[piv, j]
                a[piv, j] = a[r, j]
                a[r, j] = tmp
        if a[r, c] != 1:
            inv = _modinv(a[r, c], p)
            for j in range(c, cols):
                a[r, j] = (a[r, j] * inv) % p
        for i in range(rows):
            if i != r and a[i, c] != 0:
                f = p - a[i, c]
                for j in range(c, cols):
                    if a[r, j] != 0:
                        a[i, j] = (a[i, j] + f * a[r, j]) % p
        pivots.append(c)
        r += 1
    return arr, tuple(pivots)


cdef int _check_pair(int64_t[:, :, ::1] c, int64_t[:, :, ::1] rn, int64_t[:, :, ::1] rm,
                     int64_t[:, :, ::1] delta, Py_ssize_t i, Py_ssize_t j, int64_t p) nogil:
    cdef Py_ssize_t d = c.shape[0]
    cdef Py_ssize_t n = delta.shape[1]
    cdef Py_ssize_t m = delta.shape[2]
    cdef Py_ssize_t r, s, k, t
    cdef int64_t acc
    for r in range(n):
        for s in range(m):
            acc = 0
            for k in range(d):
                if c[i, j, k] != 0:
                    acc += c[i, j, k] * delta[k, r, s]
            for t in range(n):
                acc -= rn[i, r, t] * delta[j, t, s]
            for t in range(m):
                acc -= delta[i, r, t] * rm[j, t, s]
            if acc % p != 0:
                return 0
    return 1


cdef int _check_unit(int64_t[::1] unit, int64_t[:, :, ::1] delta, int64_t p) nogil:
    cdef Py_ssize_t d = delta.shape[0]
    cdef Py_ssize_t n = delta.shape[1]
    cdef Py_ssize_t m = delta.shape[2]
    cdef Py_ssize_t r, s, k
    cdef int64_t acc
    for r in range(n):
        for s in range(m):
            acc = 0
            for k in range(d):
                acc += unit[k] * delta[k, r, s]
            if acc % p != 0:
                return 0
    return 1


cdef class _Search:
    cdef int64_t[:, :, ::1] c
    cdef int64_t[:, :, ::1] rn
    cdef int64_t[:, :, ::1] rm
    cdef int64_t[::1] unit
    cdef int64_t[:, :, ::1] delta
    cdef int64_t[::1] order
    cdef int64_t[::1] cons_ptr
    cdef int64_t[:, ::1] cons
    cdef int64_t unit_level
    cdef int64_t p
    cdef Py_ssize_t limit
    cdef list out

    cdef int run(self, Py_ssize_t level) except -1:
        cdef Py_ssize_t d = self.c.shape[0]
        cdef Py_ssize_t n = self.delta.shape[1]
        cdef Py_ssize_t m = self.delta.shape[2]
        cdef Py_ssize_t b, q, r, s, pos
        cdef int ok
        cdef int64_t total, idx
        if level == d:
            if len(self.out) >= self.limit:
                raise OverflowError("extension enumeration exceeded limit")
            self.out.append(np.asarray(self.delta).copy())
            return 0
        b = self.order[level]
        total = 1
        for q in range(n * m):
            total *= self.p
        for r in range(n):
            for s in range(m):
                self.delta[b, r, s] = 0
        for idx in range(total):
            ok = 1
            for q in range(self.cons_ptr[level], self.cons_ptr[level + 1]):
                if not _check_pair(self.c, self.rn, self.rm, self.delta,
                                   self.cons[q, 0], self.cons[q, 1], self.p):
                    ok = 0
                    break
            if ok and self.unit_level == level:
                ok = _check_unit(self.unit, self.delta, self.p)
            if ok:
                self.run(level + 1)
            # advance the base-p counter stored in delta[b]
            pos = 0
            while pos < n * m:
                r = pos // m
                s = pos % m
                self.delta[b, r, s] += 1
                if self.delta[b, r, s] < self.p:
                    break
                self.delta[b, r, s] = 0
                pos += 1
        for r in range(n):
            for s in range(m):
                self.delta[b, r, s] = 0
        return 0


def enumerate_extensions(object c, object rho_n, object rho_m, object unit, long long p,
                         object order, object constraints, long long unit_level,
                         Py_ssize_t limit=1_000_000):
    """All block cocycles ``delta`` making ``[[rho_n, delta], [0, rho_m]]`` a module.

    ``constraints[L]`` lists the product pairs ``(i, j)`` whose module axiom
    becomes decidable once ``order[:L + 1]`` is assigned.
    """
    cdef _Search s = _Search()
    d = np.asarray(c).shape[0]
    n = np.asarray(rho_n).shape[1]
    m = np.asarray(rho_m).shape[1]
    s.c = np.array(c, dtype=np.int64, order="C")
    s.rn = np.array(rho_n, dtype=np.int64, order="C").reshape(d, n, n)
    s.rm = np.array(rho_m, dtype=np.int64, order="C").reshape(d, m, m)
    s.unit = np.array(unit, dtype=np.int64, order="C")
    s.delta = np.zeros((d, n, m), dtype=np.int64)
    s.order = np.array(order, dtype=np.int64, order="C")
    ptr = [0]
    flat = []
    for level in range(d):
        flat.extend(constraints[level])
        ptr.append(len(flat))
    s.cons_ptr = np.asarray(ptr, dtype=np.int64)
    s.cons = np.asarray(flat, dtype=np.int64).reshape(len(flat), 2) if flat else np.zeros((0, 2), dtype=np.int64)
    s.unit_level = unit_level
    s.p = p
    s.limit = limit
    s.out = []
    if n == 0 or m == 0:
        return np.zeros((1, d, n, m), dtype=np.int64)
    s.run(0)
    if not s.out:
        return np.zeros((0, d, n, m), dtype=np.int64)
    return np.stack(s.out)
