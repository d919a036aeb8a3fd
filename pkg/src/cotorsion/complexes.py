"""Bounded chain complexes of modules (homological grading, ``d: X_m -> X_{m-1}``)."""
import numpy as np

from . import linalg
from .modules import (
    ModuleError,
    ModuleMap,
    direct_sum,
    hom_space,
    is_action_stable,
    quotient,
    same_algebra,
    submodule,
    zero_module,
)


class ComplexError(ModuleError):
    pass


class NotAComplex(ComplexError):
    pass


class NotAChainMap(ComplexError):
    pass


class NotSubcomplex(ComplexError):
    pass


class ChainComplex:
    """Complex supported on ``[lo, hi]``.

    ``modules[k]`` is ``X_{lo + k}`` and ``boundaries[m]`` is ``d_m: X_m -> X_{m-1}``
    for ``lo < m <= hi`` (given as matrices or module maps). The boundaries
    out of ``X_lo`` and into ``X_hi`` are zero.
    """

    def __init__(self, algebra, lo, modules, boundaries=None, check=True, name=""):
        self.algebra = algebra
        self.p = algebra.p
        self.lo = int(lo)
        self.modules = list(modules)
        self.hi = self.lo + len(self.modules) - 1
        self.name = name
        for X in self.modules:
            if X.algebra != algebra:
                raise ComplexError("terms live over a different algebra")
        boundaries = boundaries or {}
        self._d = {}
        for m in range(self.lo + 1, self.hi + 1):
            src, dst = self.module(m), self.module(m - 1)
            b = boundaries.get(m)
            if b is None:
                mat = linalg.zeros(dst.dim, src.dim)
            else:
                mat = b.matrix if isinstance(b, ModuleMap) else np.asarray(b, dtype=np.int64)
            self._d[m] = ModuleMap(src, dst, mat, check=check)
        if check:
            for m in range(self.lo + 2, self.hi + 1):
                if (self._d[m - 1].matrix @ self._d[m].matrix % self.p).any():
                    raise NotAComplex(f"d_{m - 1} d_{m} != 0")

    # -- access -----------------------------------------------------------
    @property
    def degrees(self):
        return range(self.lo, self.hi + 1)

    def module(self, m):
        if self.lo <= m <= self.hi:
            return self.modules[m - self.lo]
        return zero_module(self.algebra)

    def dim(self, m):
        return self.module(m).dim

    def d(self, m):
        """The boundary ``X_m -> X_{m-1}`` (a zero map outside the support)."""
        if m in self._d:
            return self._d[m]
        return ModuleMap(self.module(m), self.module(m - 1), linalg.zeros(self.dim(m - 1), self.dim(m)), check=False)

    def boundaries(self):
        return dict(self._d)

    def card(self):
        return sum(X.dim for X in self.modules)

    def is_zero(self):
        return self.card() == 0

    def __repr__(self):
        dims = ", ".join(str(X.dim) for X in self.modules)
        return f"<ChainComplex [{self.lo}..{self.hi}] dims ({dims})>"

    # -- homology ---------------------------------------------------------
    def cycles_basis(self, m):
        if self.dim(m) == 0:
            return linalg.zeros(0, 0)
        if self.dim(m - 1) == 0:
            return linalg.identity(self.dim(m))
        return linalg.kernel_basis(self.d(m).matrix, self.p)

    def boundaries_basis(self, m):
        """Rows spanning ``d_{m+1}(X_{m+1})`` inside ``X_m``."""
        if self.dim(m + 1) == 0:
            return linalg.zeros(0, self.dim(m))
        return linalg.image_basis(self.d(m + 1).matrix, self.p)

    def homology_dim(self, m):
        return self.dim(m) - self.d(m).rank() - self.d(m + 1).rank()

    def to_dict(self):
        return {
            "lo": self.lo,
            "hi": self.hi,
            "modules": [X.to_dict() for X in self.modules],
            "boundaries": {str(m): f.matrix.tolist() for m, f in self._d.items()},
        }


def cycles(X, m):
    """``Z_m(X)`` as a module with its inclusion."""
    return submodule(X.module(m), X.cycles_basis(m))


def card(X):
    return X.card()


def is_exact(X):
    """Exactness by rank counting: ``rank d_m + rank d_{m+1} = dim X_m``."""
    return all(X.d(m).rank() + X.d(m + 1).rank() == X.dim(m) for m in X.degrees)


def is_exact_by_subspaces(X):
    """Exactness by comparing canonical bases of ``Z_m`` and ``B_m``."""
    for m in X.degrees:
        z = X.cycles_basis(m)
        b = X.boundaries_basis(m)
        if X.dim(m) == 0:
            continue
        if z.shape != b.shape or not np.array_equal(z, b):
            return False
    return True


def non_exact_degrees(X):
    return [m for m in X.degrees if X.homology_dim(m) != 0]


class ChainMap:
    """Degreewise module maps commuting with the boundaries."""

    def __init__(self, source, target, components, check=True):
        same_algebra(source, target)
        self.source = source
        self.target = target
        self.p = source.p
        self.components = {}
        for m in _union(source, target):
            c = components.get(m)
            S, T = source.module(m), target.module(m)
            if c is None:
                mat = linalg.zeros(T.dim, S.dim)
            else:
                mat = c.matrix if isinstance(c, ModuleMap) else np.asarray(c, dtype=np.int64)
            self.components[m] = ModuleMap(S, T, mat, check=check)
        if check:
            bad = self.commutation_defect()
            if bad is not None:
                raise NotAChainMap(f"fails to commute with the boundary in degree {bad}")

    def __getitem__(self, m):
        if m in self.components:
            return self.components[m]
        S, T = self.source.module(m), self.target.module(m)
        return ModuleMap(S, T, linalg.zeros(T.dim, S.dim), check=False)

    def commutation_defect(self):
        p = self.p
        for m in _union(self.source, self.target):
            lhs = self.target.d(m).matrix @ self[m].matrix % p
            rhs = self[m - 1].matrix @ self.source.d(m).matrix % p
            if not np.array_equal(lhs, rhs):
                return m
        return None

    def compose(self, other):
        """``self o other``."""
        comps = {m: self[m].compose(other[m]) for m in _union(other.source, self.target)}
        return ChainMap(other.source, self.target, comps, check=False)

    def __matmul__(self, other):
        return self.compose(other)

    def is_injective(self):
        return all(self[m].is_injective() for m in self.source.degrees)

    def is_surjective(self):
        return all(self[m].is_surjective() for m in self.target.degrees)

    def is_zero(self):
        return all(self[m].is_zero() for m in self.components)

    def flat(self):
        """All component matrices flattened into one vector (over the union of supports)."""
        parts = [self[m].matrix.ravel() for m in sorted(self.components)]
        return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)

    def to_dict(self):
        return {str(m): f.matrix.tolist() for m, f in self.components.items()}


def _union(*complexes):
    cs = [c for c in complexes if c.modules]
    if not cs:
        return range(0)
    return range(min(c.lo for c in cs), max(c.hi for c in cs) + 1)


def identity_map(X):
    return ChainMap(X, X, {m: X.module(m).identity() for m in X.degrees}, check=False)


def zero_complex(algebra):
    return ChainComplex(algebra, 0, [])


def zero_map(X, Y):
    return ChainMap(X, Y, {}, check=False)


# -- constructions -----------------------------------------------------------

def disk(P, m):
    """``D^m(P)``: ``P --id--> P`` in degrees ``m`` and ``m - 1``."""
    return ChainComplex(P.algebra, m - 1, [P, P], {m: linalg.identity(P.dim)}, check=False,
                        name=f"D^{m}")


def sphere(M, m):
    """``S^m(M)``: ``M`` concentrated in degree ``m``."""
    return ChainComplex(M.algebra, m, [M], check=False, name=f"S^{m}")


def complex_direct_sum(*complexes):
    """Return ``(S, inclusions, projections)``."""
    alg = complexes[0].algebra
    for c in complexes[1:]:
        same_algebra(complexes[0], c)
    nonempty = [c for c in complexes if c.modules]
    if not nonempty:
        Z = zero_complex(alg)
        return Z, [zero_map(c, Z) for c in complexes], [zero_map(Z, c) for c in complexes]
    lo = min(c.lo for c in nonempty)
    hi = max(c.hi for c in nonempty)
    sums = {m: direct_sum(*[c.module(m) for c in complexes]) for m in range(lo, hi + 1)}
    mods = [sums[m][0] for m in range(lo, hi + 1)]
    bounds = {}
    p = alg.p
    for m in range(lo + 1, hi + 1):
        S, incs, projs = sums[m]
        T, tincs, _ = sums[m - 1]
        mat = linalg.zeros(T.dim, S.dim)
        for k, c in enumerate(complexes):
            mat = mat + tincs[k].matrix @ c.d(m).matrix @ projs[k].matrix
        bounds[m] = mat % p
    S = ChainComplex(alg, lo, mods, bounds, check=False)
    incs, projs = [], []
    for k, c in enumerate(complexes):
        incs.append(ChainMap(c, S, {m: sums[m][1][k] for m in range(lo, hi + 1)}, check=False))
        projs.append(ChainMap(S, c, {m: sums[m][2][k] for m in range(lo, hi + 1)}, check=False))
    return S, incs, projs


def shift(X, k):
    """``X[k]`` with ``X[k]_m = X_{m-k}``; boundaries keep their sign (char-free convention)."""
    return ChainComplex(X.algebra, X.lo + k, X.modules, {m + k: f for m, f in X.boundaries().items()},
                        check=False)


def trim(X):
    """Drop zero terms at both ends of the support."""
    mods = X.modules
    a, b = 0, len(mods)
    while a < b and mods[a].dim == 0:
        a += 1
    while b > a and mods[b - 1].dim == 0:
        b -= 1
    if a == b:
        return zero_complex(X.algebra)
    lo = X.lo + a
    bounds = {m: f for m, f in X.boundaries().items() if lo < m <= X.lo + b - 1}
    return ChainComplex(X.algebra, lo, mods[a:b], bounds, check=False)


def is_subcomplex(X, bases):
    p = X.p
    for m in X.degrees:
        B = _basis(X, bases, m)
        if not is_action_stable(X.module(m), B):
            return False
        if B.shape[0] and X.dim(m - 1):
            img = (X.d(m).matrix @ B.T % p).T
            if not linalg.in_span(_basis(X, bases, m - 1), img, p):
                return False
    return True


def _basis(X, bases, m):
    b = bases.get(m)
    if b is None:
        return linalg.zeros(0, X.dim(m))
    b = linalg.as_rows(b, X.dim(m))
    return linalg.row_basis(b, X.p, X.dim(m))


def subcomplex(X, bases):
    """Subcomplex on degreewise subspaces ``bases[m]``; returns ``(Y, inclusion)``."""
    p = X.p
    for m in X.degrees:
        if not is_action_stable(X.module(m), _basis(X, bases, m)):
            raise NotSubcomplex(f"degree {m} is not action-stable")
    subs = {m: submodule(X.module(m), _basis(X, bases, m)) for m in X.degrees}
    bounds = {}
    for m in range(X.lo + 1, X.hi + 1):
        S, inc = subs[m]
        T, tinc = subs[m - 1]
        img = X.d(m).matrix @ inc.matrix % p
        if S.dim == 0:
            bounds[m] = linalg.zeros(T.dim, 0)
            continue
        if T.dim == 0:
            if img.any():
                raise NotSubcomplex(f"boundary leaves the subcomplex in degree {m}")
            bounds[m] = linalg.zeros(0, S.dim)
            continue
        sol = linalg.try_solve(tinc.matrix, img, p)
        if sol is None:
            raise NotSubcomplex(f"boundary leaves the subcomplex in degree {m}")
        bounds[m] = sol
    if not X.modules:
        return X, identity_map(X)
    Y = ChainComplex(X.algebra, X.lo, [subs[m][0] for m in X.degrees], bounds, check=False)
    return Y, ChainMap(Y, X, {m: subs[m][1] for m in X.degrees}, check=False)


def quotient_complex(X, bases, complements=None):
    """``X / Y`` for the subcomplex on ``bases``; returns ``(Q, projection)``."""
    p = X.p
    if not is_subcomplex(X, bases):
        raise NotSubcomplex("subspaces do not form a subcomplex")
    complements = complements or {}
    quots = {m: quotient(X.module(m), _basis(X, bases, m), complements.get(m)) for m in X.degrees}
    if not X.modules:
        return X, identity_map(X)
    bounds = {}
    for m in range(X.lo + 1, X.hi + 1):
        Q, q = quots[m]
        T, tq = quots[m - 1]
        lift = linalg.solve(q.matrix, linalg.identity(Q.dim), p)[0] if Q.dim else linalg.zeros(X.dim(m), 0)
        bounds[m] = tq.matrix @ X.d(m).matrix @ lift % p
    Q = ChainComplex(X.algebra, X.lo, [quots[m][0] for m in X.degrees], bounds, check=False)
    return Q, ChainMap(X, Q, {m: quots[m][1] for m in X.degrees}, check=False)


def image_bases(f):
    return {m: f[m].image_basis() for m in f.target.degrees}


def kernel_bases(f):
    return {m: f[m].kernel_basis() for m in f.source.degrees}


def cokernel_complex(f):
    return quotient_complex(f.target, image_bases(f))


def kernel_complex(f):
    return subcomplex(f.source, kernel_bases(f))


# -- Hom in the complex category -----------------------------------------

def chain_hom_space(X, Y):
    """Basis of chain maps ``X -> Y`` as lists of per-degree matrices (dicts)."""
    same_algebra(X, Y)
    p = X.p
    degrees = [m for m in X.degrees if X.dim(m) and Y.dim(m)]
    # parametrize each component by a basis of module maps, then impose d f = f d
    bases = {m: hom_space(X.module(m), Y.module(m)) for m in degrees}
    owners = [(m, t) for m in degrees for t in range(len(bases[m]))]
    if not owners:
        return []
    rows_per_m = {}
    eqs = []
    for m in _union(X, Y):
        # equation in degree m: d^Y_m f_m - f_{m-1} d^X_m = 0, an (Y_{m-1} x X_m) matrix
        shape = (Y.dim(m - 1), X.dim(m))
        if shape[0] == 0 or shape[1] == 0:
            continue
        rows_per_m[m] = shape
        eqs.append(m)
    if not eqs:
        return [_expand(X, Y, bases, owners, c) for c in linalg.identity(len(owners))]
    cols = []
    for m_own, t in owners:
        h = bases[m_own][t]
        parts = []
        for m in eqs:
            block = linalg.zeros(*rows_per_m[m])
            if m == m_own:
                block = block + Y.d(m).matrix @ h
            if m - 1 == m_own:
                block = block - h @ X.d(m).matrix
            parts.append(block.ravel() % p)
        cols.append(np.concatenate(parts))
    system = np.stack(cols, axis=1)
    kern = linalg.kernel_basis(system, p)
    return [_expand(X, Y, bases, owners, c) for c in kern]


def _expand(X, Y, bases, owners, coeffs):
    out = {}
    p = X.p
    for (m, t), c in zip(owners, coeffs):
        if c:
            out[m] = (out.get(m, linalg.zeros(Y.dim(m), X.dim(m))) + c * bases[m][t]) % p
    return out


def chain_maps(X, Y):
    return [ChainMap(X, Y, comps, check=False) for comps in chain_hom_space(X, Y)]


def nullhomotopy(f):
    """Maps ``s_m: X_m -> Y_{m+1}`` with ``f_m = d s_m + s_{m-1} d``, or None."""
    X, Y = f.source, f.target
    p = f.p
    owners = []
    bases = {}
    for m in X.degrees:
        if X.dim(m) and Y.dim(m + 1):
            bases[m] = hom_space(X.module(m), Y.module(m + 1))
            owners.extend((m, t) for t in range(len(bases[m])))
    degrees = [m for m in X.degrees if X.dim(m) and Y.dim(m)]
    rhs = np.concatenate([f[m].matrix.ravel() for m in degrees]) if degrees else np.zeros(0, dtype=np.int64)
    if not owners:
        return {} if not rhs.any() else None
    cols = []
    for m_own, t in owners:
        s = bases[m_own][t]
        parts = []
        for m in degrees:
            block = linalg.zeros(Y.dim(m), X.dim(m))
            if m == m_own:
                block = block + Y.d(m + 1).matrix @ s
            if m - 1 == m_own:
                block = block + s @ X.d(m).matrix
            parts.append(block.ravel() % p)
        cols.append(np.concatenate(parts))
    system = np.stack(cols, axis=1)
    coeffs = linalg.try_solve(system, rhs, p)
    if coeffs is None:
        return None
    out = {}
    for (m, t), c in zip(owners, coeffs):
        if c:
            out[m] = (out.get(m, linalg.zeros(Y.dim(m + 1), X.dim(m))) + c * bases[m][t]) % p
    return out


def check_homotopy(f, s):
    X, Y = f.source, f.target
    p = f.p
    for m in X.degrees:
        sm = s.get(m, linalg.zeros(Y.dim(m + 1), X.dim(m)))
        sm1 = s.get(m - 1, linalg.zeros(Y.dim(m), X.dim(m - 1)))
        total = (Y.d(m + 1).matrix @ sm + sm1 @ X.d(m).matrix) % p
        if not np.array_equal(total, f[m].matrix):
            return False
    return True



# -- projective presentations and Ext^1 in Ch ------------------------------

class DiskCover:
    """``C = ⊕_m D^m(P_m) -> X`` with ``P_m -> X_m`` an epimorphism from an indexed projective."""

    def __init__(self, X, strategy="projective"):
        from .resolution import _cover
        self.target = X
        alg = X.algebra
        p = X.p
        self.covers = {m: _cover(X.module(m), strategy, m) for m in X.degrees if X.dim(m)}
        if not self.covers:
            self.source = zero_complex(alg)
            self.epi = zero_map(self.source, X)
            return
        lo = min(self.covers) - 1
        hi = max(self.covers)
        # C_m = P_m ⊕ P_{m+1}; d(a, b) = (0, a)
        parts = {}
        for m in range(lo, hi + 1):
            left = self.covers[m][0].total if m in self.covers else zero_module(alg)
            right = self.covers[m + 1][0].total if m + 1 in self.covers else zero_module(alg)
            parts[m] = (left, right)
        mods = [direct_sum(*parts[m])[0] for m in range(lo, hi + 1)]
        bounds = {}
        for m in range(lo + 1, hi + 1):
            a_dim = parts[m][0].dim
            tgt_left, tgt_right = parts[m - 1]
            mat = linalg.zeros(tgt_left.dim + tgt_right.dim, a_dim + parts[m][1].dim)
            mat[tgt_left.dim:, :a_dim] = linalg.identity(a_dim)
            bounds[m] = mat
        self.source = ChainComplex(alg, lo, mods, bounds, check=False)
        comps = {}
        for m in range(lo, hi + 1):
            blocks = []
            left, right = parts[m]
            if left.dim:
                blocks.append(self.covers[m][1].matrix)
            else:
                blocks.append(linalg.zeros(X.dim(m), 0))
            if right.dim:
                blocks.append(X.d(m + 1).matrix @ self.covers[m + 1][1].matrix % p)
            else:
                blocks.append(linalg.zeros(X.dim(m), 0))
            comps[m] = np.concatenate(blocks, axis=1)
        self.epi = ChainMap(self.source, X, comps, check=False)
        self.parts = parts

    def hom_generators(self, Y):
        """Chain maps ``C -> Y`` spanning ``Hom(C, Y)``, one per ``(m, label, x in e_j Y_m)``."""
        from .projectives import map_from_indexed
        p = Y.p
        C = self.source
        idem = C.algebra.primitive_idempotents()
        out = []
        for m, (P, _) in self.covers.items():
            Ym = Y.module(m)
            if Ym.dim == 0:
                continue
            for lab in P.labels:
                for x in linalg.image_basis(Ym.rho(idem[P.kind_of(lab)]), p):
                    images = {l2: (x if l2 == lab else np.zeros(Ym.dim, dtype=np.int64)) for l2 in P.labels}
                    g = map_from_indexed(P, Ym, images).matrix
                    comps = {}
                    left, right = self.parts[m]
                    # degree m: g on the P_m block of C_m
                    top = linalg.zeros(Ym.dim, C.dim(m))
                    top[:, :left.dim] = g
                    comps[m] = top
                    # degree m-1: d^Y g on the P_m block of C_{m-1}
                    low = linalg.zeros(Y.dim(m - 1), C.dim(m - 1))
                    lleft, _ = self.parts[m - 1]
                    low[:, lleft.dim:] = Y.d(m).matrix @ g % p
                    comps[m - 1] = low
                    out.append(ChainMap(C, Y, comps, check=False))
        return out


def disk_cover(X, strategy="projective"):
    """Surjective chain map from a sum of disks on projectives onto ``X``."""
    return DiskCover(X, strategy)


def _flatten(comps, X, Y, degrees):
    parts = []
    for m in degrees:
        mat = comps.get(m)
        if mat is None:
            mat = linalg.zeros(Y.dim(m), X.dim(m))
        parts.append(np.asarray(mat).ravel())
    return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)


class Ext1Ch:
    def __init__(self, dim, cocycles, cover, kernel, kernel_inclusion, source, coefficient, coboundaries):
        self.dim = dim
        self.cocycles = cocycles          # per-degree dicts K -> Y
        self.cover = cover
        self.kernel = kernel
        self.kernel_inclusion = kernel_inclusion
        self.source = source
        self.coefficient = coefficient
        self.coboundaries = coboundaries

    def degrees(self):
        return list(_union(self.kernel, self.coefficient))

    def class_of(self, cocycle):
        p = self.source.p
        degs = self.degrees()
        c = _flatten(cocycle, self.kernel, self.coefficient, degs) % p
        if self.dim == 0:
            return np.zeros(0, dtype=np.int64)
        rows = [_flatten(z, self.kernel, self.coefficient, degs) for z in self.cocycles]
        basis = np.concatenate([np.stack(rows), self.coboundaries.reshape(-1, len(c))])
        return linalg.coordinates(basis, c, p)[0][: self.dim]


def ext1_ch(X, Y, strategy="projective"):
    """``Ext^1(X, Y)`` in the category of complexes, from a disk presentation of ``X``."""
    same_algebra(X, Y)
    from .homological import complement_in
    p = X.p
    cover = disk_cover(X, strategy)
    K, kinc = kernel_complex(cover.epi)
    degs = list(_union(K, Y))
    homs = chain_hom_space(K, Y)
    width = sum(Y.dim(m) * K.dim(m) for m in degs)
    if not homs:
        return Ext1Ch(0, [], cover, K, kinc, X, Y, linalg.zeros(0, width))
    hom_rows = np.stack([_flatten(h, K, Y, degs) for h in homs])
    restr = [g.compose(kinc) for g in cover.hom_generators(Y)]
    if restr:
        image = linalg.row_basis(np.stack([_flatten({m: r[m].matrix for m in r.components}, K, Y, degs)
                                           for r in restr]), p, width)
    else:
        image = linalg.zeros(0, width)
    comp = complement_in(image, hom_rows, p)
    cocycles = [_unflatten(row, K, Y, degs) for row in comp]
    return Ext1Ch(len(cocycles), cocycles, cover, K, kinc, X, Y, image)


def _unflatten(row, X, Y, degrees):
    out = {}
    o = 0
    for m in degrees:
        n = Y.dim(m) * X.dim(m)
        if n:
            out[m] = row[o:o + n].reshape(Y.dim(m), X.dim(m))
        o += n
    return out


def extension_from_cocycle_ch(X, Y, cocycle, ext=None):
    """Pushout ``0 -> Y -> E -> X -> 0`` of the disk presentation along a cocycle."""
    if ext is None:
        ext = ext1_ch(X, Y)
    p = X.p
    K, kinc = ext.kernel, ext.kernel_inclusion
    C = ext.cover.source
    c = ChainMap(K, Y, cocycle)
    S, (inY, inC), (prY, prC) = complex_direct_sum(Y, C)
    bases = {}
    for m in S.degrees:
        if K.dim(m) == 0:
            continue
        graph = np.concatenate([c[m].matrix, (-kinc[m].matrix) % p]).T % p
        bases[m] = graph
    E, q = quotient_complex(S, bases)
    i = q.compose(inY)
    proj_comps = {}
    for m in E.degrees:
        lift = linalg.solve(q[m].matrix, linalg.identity(E.dim(m)), p)[0] if E.dim(m) else linalg.zeros(S.dim(m), 0)
        proj_comps[m] = ext.cover.epi[m].matrix @ prC[m].matrix @ lift % p
    return ChainMap(Y, E, {m: i[m].matrix for m in i.components}), ChainMap(E, X, proj_comps)


def is_short_exact(i, q):
    """Degreewise exactness of ``0 -> A -i-> B -q-> C -> 0`` of complexes."""
    p = i.p
    for m in i.target.degrees:
        a, b = i[m], q[m]
        if not a.is_injective() or not b.is_surjective():
            return False
        if (b.matrix @ a.matrix % p).any():
            return False
        if a.rank() + b.rank() != i.target.dim(m):
            return False
    return True


def complex_from_dict(algebra, doc):
    """Inverse of :meth:`ChainComplex.to_dict`; ``boundaries`` may be a list from degree ``lo + 1``."""
    from .modules import module_from_dict
    try:
        lo = int(doc.get("lo", 0))
        mods = [module_from_dict(algebra, m) for m in doc["modules"]]
        raw = doc.get("boundaries", {})
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise ComplexError(f"malformed complex document: {exc}") from None
    if "hi" in doc and int(doc["hi"]) != lo + len(mods) - 1:
        raise ComplexError("hi does not match the number of modules")
    if isinstance(raw, list):
        raw = {lo + 1 + k: b for k, b in enumerate(raw)}
    bounds = {int(m): np.asarray(b, dtype=np.int64) % algebra.p for m, b in raw.items()}
    return ChainComplex(algebra, lo, mods, bounds, name=doc.get("name", ""))
