"""Left modules over a finite-dimensional algebra, given by action matrices.

Vectors are columns: ``rho[i] @ v`` is ``e_i . v``. Submodules are passed
around as canonical row bases (see :mod:`cotorsion.linalg`).
"""
import itertools

import numpy as np

from . import linalg


class ModuleError(ValueError):
    pass


class AlgebraMismatch(ModuleError):
    pass


class NotAModule(ModuleError):
    pass


class NotAModuleMap(ModuleError):
    pass


class NotActionStable(ModuleError):
    pass


class NotExactSequence(ModuleError):
    pass


def _frozen(a):
    a = np.array(a, dtype=np.int64)
    a.setflags(write=False)
    return a


def same_algebra(*objs):
    first = objs[0].algebra
    for o in objs[1:]:
        if o.algebra is not first and o.algebra != first:
            raise AlgebraMismatch("objects live over different algebras")
    return first


class Module:
    """A left module ``M`` with ``action[i]`` the matrix of basis element ``e_i``."""

    def __init__(self, algebra, action, name="", check=True):
        self.algebra = algebra
        self.p = algebra.p
        d = algebra.dim
        action = np.asarray(action, dtype=np.int64)
        if action.size == 0:
            m = action.shape[-1] if action.ndim == 3 else 0
            action = np.zeros((d, m, m), dtype=np.int64)
        if action.ndim != 3 or action.shape[0] != d or action.shape[1] != action.shape[2]:
            raise NotAModule(f"action must be {d} square matrices, got shape {action.shape}")
        if action.shape[1] > linalg.MAX_DIM:
            raise NotAModule(f"module dimension {action.shape[1]} exceeds cap {linalg.MAX_DIM}")
        self.dim = action.shape[1]
        self.action = _frozen(action % self.p)
        self.name = name
        if check:
            self._check()

    def _check(self):
        p = self.p
        rho = self.action
        lhs = np.einsum("iab,jbc->ijac", rho, rho) % p
        rhs = np.einsum("ijk,kac->ijac", self.algebra.mul, rho) % p
        bad = np.argwhere((lhs != rhs).reshape(lhs.shape[0], lhs.shape[1], -1).any(axis=2))
        if bad.size:
            i, j = (int(t) for t in bad[0])
            b = self.algebra.basis
            raise NotAModule(f"rho({b[i]}) rho({b[j]}) != rho({b[i]}*{b[j]})")
        if not np.array_equal(self.rho(self.algebra.unit), linalg.identity(self.dim)):
            raise NotAModule("unit does not act as the identity")

    def rho(self, x):
        """Action matrix of the algebra element with coordinates ``x``."""
        return np.einsum("i,iab->ab", np.asarray(x, dtype=np.int64), self.action) % self.p

    def act(self, x, v):
        return self.rho(x) @ np.asarray(v, dtype=np.int64) % self.p

    def identity(self):
        return ModuleMap(self, self, linalg.identity(self.dim), check=False)

    def zero_map(self, other):
        return ModuleMap(self, other, linalg.zeros(other.dim, self.dim), check=False)

    def is_zero(self):
        return self.dim == 0

    def __eq__(self, other):
        if not isinstance(other, Module):
            return NotImplemented
        return self.algebra == other.algebra and np.array_equal(self.action, other.action)

    def __hash__(self):
        return hash((self.dim, self.action.tobytes()))

    def __repr__(self):
        label = self.name or "Module"
        return f"<{label}: dim {self.dim}>"

    def to_dict(self):
        return {"dim": self.dim, "action": self.action.tolist()}


class ModuleMap:
    """A morphism; ``matrix`` has shape ``(target.dim, source.dim)``."""

    def __init__(self, source, target, matrix, check=True):
        same_algebra(source, target)
        self.source = source
        self.target = target
        self.p = source.p
        matrix = np.asarray(matrix, dtype=np.int64)
        if matrix.size == 0:
            matrix = np.zeros((target.dim, source.dim), dtype=np.int64)
        if matrix.shape != (target.dim, source.dim):
            raise linalg.DimensionMismatch(
                f"map matrix is {matrix.shape}, expected {(target.dim, source.dim)}"
            )
        self.matrix = _frozen(matrix % self.p)
        if check:
            bad = intertwining_defect(source, target, self.matrix)
            if bad is not None:
                raise NotAModuleMap(f"fails to commute with {source.algebra.basis[bad]}")

    def __call__(self, v):
        return self.matrix @ np.asarray(v, dtype=np.int64) % self.p

    def compose(self, other):
        """``self o other``."""
        if other.target.dim != self.source.dim:
            raise linalg.DimensionMismatch("maps are not composable")
        return ModuleMap(other.source, self.target, self.matrix @ other.matrix % self.p, check=False)

    def __matmul__(self, other):
        return self.compose(other)

    def __add__(self, other):
        return ModuleMap(self.source, self.target, self.matrix + other.matrix, check=False)

    def scale(self, c):
        return ModuleMap(self.source, self.target, self.matrix * c, check=False)

    def rank(self):
        return linalg.rank(self.matrix, self.p)

    def is_injective(self):
        return self.rank() == self.source.dim

    def is_surjective(self):
        return self.rank() == self.target.dim

    def is_zero(self):
        return not self.matrix.any()

    def kernel_basis(self):
        return linalg.kernel_basis(self.matrix, self.p) if self.source.dim else linalg.zeros(0, 0)

    def image_basis(self):
        if self.source.dim == 0:
            return linalg.zeros(0, self.target.dim)
        return linalg.image_basis(self.matrix, self.p)

    def __repr__(self):
        return f"<ModuleMap {self.source.dim} -> {self.target.dim}>"


def intertwining_defect(source, target, matrix):
    """Index of the first basis element the matrix fails to commute with, or None."""
    p = source.p
    lhs = np.einsum("iab,bc->iac", target.action, matrix) % p
    rhs = np.einsum("ab,ibc->iac", matrix, source.action) % p
    bad = np.nonzero((lhs != rhs).reshape(lhs.shape[0], -1).any(axis=1))[0]
    return int(bad[0]) if bad.size else None


# -- constructions ---------------------------------------------------------

def zero_module(algebra):
    return Module(algebra, np.zeros((algebra.dim, 0, 0), dtype=np.int64), name="0", check=False)


def regular_module(algebra):
    return Module(algebra, algebra.regular_action(), name="A")


def free_module(algebra, k):
    return direct_sum(*[regular_module(algebra)] * k)[0] if k else zero_module(algebra)


def block_diag(mats, p):
    n = sum(m.shape[0] for m in mats)
    out = np.zeros((n, n), dtype=np.int64)
    o = 0
    for m in mats:
        k = m.shape[0]
        out[o:o + k, o:o + k] = m
        o += k
    return out % p


def direct_sum(*modules):
    """Return ``(S, inclusions, projections)`` for the external direct sum."""
    if not modules:
        raise ModuleError("direct_sum of nothing; use zero_module")
    alg = same_algebra(*modules)
    p = alg.p
    action = np.stack([block_diag([m.action[i] for m in modules], p) for i in range(alg.dim)])
    total = Module(alg, action, check=False)
    incs, projs = [], []
    o = 0
    for m in modules:
        inc = linalg.zeros(total.dim, m.dim)
        inc[o:o + m.dim, :] = linalg.identity(m.dim)
        incs.append(ModuleMap(m, total, inc, check=False))
        projs.append(ModuleMap(total, m, inc.T.copy(), check=False))
        o += m.dim
    return total, incs, projs


def submodule_generated(M, vectors):
    """Canonical basis of the submodule generated by the given vectors (rows)."""
    v = linalg.as_rows(vectors, M.dim)
    if v.shape[0] == 0 or M.dim == 0:
        return linalg.zeros(0, M.dim)
    # A.v is spanned by e_i . v, one step suffices since the unit is in the span
    moved = linalg.as_rows(np.einsum("iab,tb->ita", M.action, v), M.dim) % M.p
    return linalg.row_basis(moved, M.p, M.dim)


def is_action_stable(M, basis):
    basis = linalg.as_rows(basis, M.dim)
    if basis.shape[0] == 0:
        return True
    moved = linalg.as_rows(np.einsum("iab,tb->ita", M.action, basis), M.dim) % M.p
    return linalg.in_span(basis, moved, M.p)


def submodule(M, basis):
    """Module structure on an action-stable subspace; returns ``(S, inclusion)``."""
    basis = linalg.row_basis(linalg.as_rows(basis, M.dim), M.p, M.dim)
    if not is_action_stable(M, basis):
        raise NotActionStable("subspace is not closed under the action")
    k = basis.shape[0]
    alg = M.algebra
    if k == 0:
        S = zero_module(alg)
    else:
        moved = np.einsum("iab,tb->ita", M.action, basis) % M.p  # (d, k, m) images of basis rows
        action = np.stack([linalg.coordinates(basis, moved[i], M.p).T for i in range(alg.dim)])
        S = Module(alg, action, check=False)
    return S, ModuleMap(S, M, basis.T.copy(), check=False)


def quotient(M, basis, complement=None):
    """``M / U`` for ``U`` spanned by ``basis``; returns ``(Q, projection)``.

    Coordinates on ``Q`` come from ``complement`` (rows completing ``basis``),
    by default the standard vectors on the non-pivot columns.
    """
    p = M.p
    basis = linalg.row_basis(linalg.as_rows(basis, M.dim), p, M.dim)
    if not is_action_stable(M, basis):
        raise NotActionStable("subspace is not closed under the action")
    comp = linalg.complement(basis, p, M.dim) if complement is None else np.asarray(complement) % p
    k = basis.shape[0]
    full = np.concatenate([basis, comp]) if k else comp
    if full.shape[0] != M.dim or not linalg.is_invertible(full, p):
        raise ModuleError("complement does not complete the subspace basis")
    # v = full^T c, so c = (full^T)^{-1} v and the quotient coordinates are c[k:]
    proj = linalg.inverse(full.T, p)[k:]
    q = M.dim - k
    if q == 0:
        Q = zero_module(M.algebra)
    else:
        action = np.stack([proj @ M.action[i] @ comp.T % p for i in range(M.algebra.dim)])
        Q = Module(M.algebra, action, check=False)
    return Q, ModuleMap(M, Q, proj, check=False)


def kernel(f):
    return submodule(f.source, f.kernel_basis())


def image(f):
    return submodule(f.target, f.image_basis())


def cokernel(f):
    return quotient(f.target, f.image_basis())


def restrict(f, sub_inclusion, target_inclusion=None):
    """Restrict ``f`` along an inclusion of its source (and optionally corestrict)."""
    g = f.compose(sub_inclusion)
    if target_inclusion is None:
        return g
    inc = target_inclusion.matrix
    coords = linalg.coordinates(inc.T, g.matrix.T, f.p).T if g.source.dim else linalg.zeros(inc.shape[1], 0)
    return ModuleMap(g.source, target_inclusion.source, coords, check=False)


# -- Hom -------------------------------------------------------------------

def hom_equations(M, N):
    """Matrix whose kernel is ``Hom(M, N)``, unknowns the row-major entries of ``X``."""
    same_algebra(M, N)
    n, m = N.dim, M.dim
    eye_n, eye_m = linalg.identity(n), linalg.identity(m)
    blocks = [np.kron(N.action[i], eye_m) - np.kron(eye_n, M.action[i].T) for i in range(M.algebra.dim)]
    return np.concatenate(blocks) % M.p


def hom_space(M, N):
    """List of matrices forming a basis of ``Hom_A(M, N)``."""
    same_algebra(M, N)
    n, m = N.dim, M.dim
    if n == 0 or m == 0:
        return []
    kern = linalg.kernel_basis(hom_equations(M, N), M.p)
    return [row.reshape(n, m) for row in kern]


def hom_maps(M, N):
    return [ModuleMap(M, N, f, check=False) for f in hom_space(M, N)]


def find_isomorphism(M, N, limit=1 << 14):
    """An invertible module map ``M -> N`` or None (exhaustive over Hom for small cases)."""
    if M.dim != N.dim:
        return None
    if M.dim == 0:
        return linalg.zeros(0, 0)
    basis = hom_space(M, N)
    if not basis:
        return None
    stack = np.stack(basis)
    p = M.p
    k = len(basis)
    # try basis elements and pairwise sums first, they usually suffice
    for c in itertools.chain(
        (np.eye(k, dtype=np.int64)[i] for i in range(k)),
        linalg.all_vectors(k, p) if p**k <= limit else _random_coeffs(k, p, limit),
    ):
        f = np.einsum("t,tab->ab", c, stack) % p
        if linalg.is_invertible(f, p):
            return f
    return None


def _random_coeffs(k, p, count):
    rng = np.random.default_rng(0)
    for _ in range(count):
        yield rng.integers(0, p, size=k)


def is_isomorphic(M, N):
    return find_isomorphism(M, N) is not None


# -- short exact sequences -------------------------------------------------

class ShortExactSequence:
    """``0 -> B --i--> E --q--> C -> 0``."""

    def __init__(self, i, q, check=True):
        if i.target is not q.source and i.target != q.source:
            raise NotExactSequence("middle terms differ")
        self.i = i
        self.q = q
        if check:
            problem = self.defect()
            if problem:
                raise NotExactSequence(problem)

    @property
    def sub(self):
        return self.i.source

    @property
    def middle(self):
        return self.i.target

    @property
    def quotient(self):
        return self.q.target

    def defect(self):
        if not self.i.is_injective():
            return "left map is not injective"
        if not self.q.is_surjective():
            return "right map is not surjective"
        if (self.q.matrix @ self.i.matrix % self.i.p).any():
            return "composite is nonzero"
        if self.i.rank() + self.q.rank() != self.middle.dim:
            return "image differs from kernel"
        return None

    def splitting(self):
        """A retraction ``r`` of ``i`` (module map with ``r i = id``) or None."""
        return retraction(self.i)


def retraction(i):
    """Module map ``r`` with ``r o i = id`` if one exists."""
    B, E = i.source, i.target
    if B.dim == 0:
        return linalg.zeros(0, E.dim)
    basis = hom_space(E, B)
    if not basis:
        return None
    p = i.p
    # solve sum_t c_t (R_t i) = I
    cols = np.stack([(r @ i.matrix % p).ravel() for r in basis], axis=1)
    c = linalg.try_solve(cols, linalg.identity(B.dim).ravel(), p)
    if c is None:
        return None
    return np.einsum("t,tab->ab", c, np.stack(basis)) % p


def section(q):
    """Module map ``s`` with ``q o s = id`` if one exists."""
    E, C = q.source, q.target
    if C.dim == 0:
        return linalg.zeros(E.dim, 0)
    basis = hom_space(C, E)
    if not basis:
        return None
    p = q.p
    cols = np.stack([(q.matrix @ s % p).ravel() for s in basis], axis=1)
    c = linalg.try_solve(cols, linalg.identity(C.dim).ravel(), p)
    if c is None:
        return None
    return np.einsum("t,tab->ab", c, np.stack(basis)) % p


def module_from_dict(algebra, doc):
    try:
        dim = int(doc["dim"])
        action = np.asarray(doc["action"], dtype=np.int64)
    except (KeyError, TypeError, ValueError) as exc:
        raise ModuleError(f"malformed module document: {exc}") from None
    if dim == 0:
        action = np.zeros((algebra.dim, 0, 0), dtype=np.int64)
    if action.shape != (algebra.dim, dim, dim):
        raise ModuleError(f"action has shape {action.shape}, expected {(algebra.dim, dim, dim)}")
    return Module(algebra, action, name=doc.get("name", ""))
