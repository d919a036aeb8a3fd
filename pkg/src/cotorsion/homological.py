"""Ext, Tor and tensor products, plus flat dimension via Tor vanishing."""
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .modules import (
    Module,
    ModuleError,
    ModuleMap,
    ShortExactSequence,
    hom_space,
    kernel,
    quotient,
    regular_module,
    same_algebra,
    submodule,
    submodule_generated,
)
from .projectives import map_from_indexed, projective_cover_map
from .resolution import ExceedsCutoff, projective_resolution, _cover


class BadCocycle(ModuleError):
    pass


def complement_in(sub, ambient, p):
    """Rows of ``ambient``'s span completing the row space ``sub`` (greedy, canonical)."""
    width = ambient.shape[1]
    span = linalg.row_basis(sub, p, width) if sub.shape[0] else linalg.zeros(0, width)
    out = []
    for row in linalg.row_basis(ambient, p, width):
        if not linalg.in_span(span, row, p):
            out.append(row)
            span = linalg.span_sum(span, row[None], p)
    return linalg.as_rows(out, width)


@dataclass
class Presentation:
    """``0 -> K -> P_0 -> M -> 0`` with ``K`` a submodule of ``P_0``."""
    target: Module
    cover: object          # IndexedProjective
    epi: ModuleMap         # P_0 -> M
    syzygy: Module         # K
    inclusion: ModuleMap   # K -> P_0


def presentation(M, strategy="projective"):
    P, f = _cover(M, strategy, 0)
    K, inc = kernel(f)
    return Presentation(M, P, f, K, inc)


@dataclass
class Ext1:
    dim: int
    cocycles: list                      # matrices K -> N
    presentation: Presentation
    source: Module
    coefficient: Module
    coboundaries: np.ndarray = field(repr=False)   # flattened rows spanning the image

    def class_of(self, cocycle):
        """Coordinates of a cocycle in the basis of Ext^1 (modulo coboundaries)."""
        p = self.source.p
        c = np.asarray(cocycle, dtype=np.int64).ravel() % p
        if self.dim == 0:
            return np.zeros(0, dtype=np.int64)
        basis = np.concatenate([np.stack([z.ravel() for z in self.cocycles]), self.coboundaries])
        coords = linalg.coordinates(basis, c, p)[0]
        return coords[: self.dim]

    def is_coboundary(self, cocycle):
        return not self.class_of(cocycle).any()


def restriction_image(pres, N):
    """Flattened rows spanning ``{phi o i : phi in Hom(P_0, N)}`` inside ``Hom(K, N)``."""
    p = N.p
    P = pres.cover
    alg = N.algebra
    idem = alg.primitive_idempotents()
    rows = []
    for lab in P.labels:
        eN = linalg.image_basis(N.rho(idem[P.kind_of(lab)]), p) if N.dim else linalg.zeros(0, 0)
        for x in eN:
            images = {l2: (x if l2 == lab else np.zeros(N.dim, dtype=np.int64)) for l2 in P.labels}
            phi = map_from_indexed(P, N, images)
            rows.append((phi.matrix @ pres.inclusion.matrix % p).ravel())
    width = N.dim * pres.syzygy.dim
    if not rows:
        return linalg.zeros(0, width)
    return linalg.row_basis(np.array(rows), p, width)


def ext1(M, N, strategy="projective"):
    """``Ext^1(M, N) = Hom(K, N) / (restrictions of Hom(P_0, N))``."""
    same_algebra(M, N)
    p = M.p
    pres = presentation(M, strategy)
    K = pres.syzygy
    width = N.dim * K.dim
    homs = hom_space(K, N)
    if not homs:
        return Ext1(0, [], pres, M, N, linalg.zeros(0, width))
    hom_rows = np.stack([h.ravel() for h in homs])
    image = restriction_image(pres, N)
    comp = complement_in(image, hom_rows, p)
    cocycles = [row.reshape(N.dim, K.dim) for row in comp]
    return Ext1(len(cocycles), cocycles, pres, M, N, image)


def extension_from_cocycle(M, N, cocycle, ext=None):
    """Pushout ``E = (N ⊕ P_0) / {(c(k), -k)}``; returns ``0 -> N -> E -> M -> 0``."""
    if ext is None:
        ext = ext1(M, N)
    pres = ext.presentation
    p = M.p
    K = pres.syzygy
    c = np.asarray(cocycle, dtype=np.int64).reshape(N.dim, K.dim) % p
    try:
        ModuleMap(K, N, c)
    except ModuleError as exc:
        raise BadCocycle(f"cocycle is not a module map K -> N: {exc}") from None
    from .modules import direct_sum
    S, (inN, inP), (prN, prP) = direct_sum(N, pres.cover.total)
    graph = np.concatenate([c, (-pres.inclusion.matrix) % p]).T % p   # rows (c(k), -k)
    E, q = quotient(S, graph)
    i = q.compose(inN)
    # E -> M induced by (0, f_0): solve on the complement coordinates
    proj = ModuleMap(S, M, (pres.epi.matrix @ prP.matrix) % p, check=False)
    lift = linalg.solve(q.matrix, linalg.identity(E.dim), p)[0]   # section of q on coordinates
    qm = ModuleMap(E, M, proj.matrix @ lift % p)
    return ShortExactSequence(ModuleMap(N, E, i.matrix), qm)


def ext(n, M, N, cutoff=None):
    """Dimension of ``Ext^n(M, N)`` by dimension shifting."""
    if n < 1:
        raise ValueError("use hom_space for degree 0")
    X = M
    for _ in range(n - 1):
        X = presentation(X).syzygy
        if X.dim == 0:
            return 0
    return ext1(X, N).dim


# -- tensor and Tor ----------------------------------------------------------

@dataclass
class Tensor:
    dim: int
    relations: np.ndarray     # rows spanning the relation subspace of M ⊗_F N
    projection: np.ndarray    # (dim, m * n) quotient map


def tensor_relations(Mop, N):
    m, n = Mop.dim, N.dim
    p = N.p
    if m == 0 or n == 0:
        return linalg.zeros(0, m * n)
    eye_m, eye_n = linalg.identity(m), linalg.identity(n)
    cols = [np.kron(Mop.action[i], eye_n) - np.kron(eye_m, N.action[i]) for i in range(N.algebra.dim)]
    return linalg.image_basis(np.concatenate(cols, axis=1) % p, p)


def tensor(Mop, N):
    """``Mop ⊗_A N`` for ``Mop`` a left module over the opposite algebra."""
    if Mop.algebra != N.algebra.opposite():
        raise ModuleError("first factor must be a module over the opposite algebra")
    p = N.p
    width = Mop.dim * N.dim
    rel = tensor_relations(Mop, N)
    comp = linalg.complement(rel, p, width)
    full = np.concatenate([rel, comp]) if rel.shape[0] else comp
    if width == 0:
        return Tensor(0, rel, linalg.zeros(0, 0))
    proj = linalg.inverse(full.T, p)[rel.shape[0]:]
    return Tensor(comp.shape[0], rel, proj)


def tensor_map(Mop, f):
    """``id ⊗ f`` on the quotient coordinates of the tensor products."""
    src = tensor(Mop, f.source)
    dst = tensor(Mop, f.target)
    p = f.p
    big = np.kron(linalg.identity(Mop.dim), f.matrix) % p
    if src.dim == 0:
        return linalg.zeros(dst.dim, 0)
    lift = linalg.solve(src.projection, linalg.identity(src.dim), p)[0]
    return dst.projection @ big @ lift % p


def tor1(Mop, N):
    """``Tor_1(Mop, N)`` as the kernel of ``Mop ⊗ K -> Mop ⊗ P_0``."""
    pres = presentation(N)
    t = tensor_map(Mop, pres.inclusion)
    src_dim = tensor(Mop, pres.syzygy).dim
    return src_dim - (linalg.rank(t, N.p) if t.size else 0)


def tor(n, Mop, N):
    if n < 1:
        return tensor(Mop, N).dim
    X = N
    for _ in range(n - 1):
        X = presentation(X).syzygy
        if X.dim == 0:
            return 0
    return tor1(Mop, X)


def default_test_set(algebra):
    """Right modules ``A / b_i A`` for every basis element, plus ``A`` (as modules over A^op)."""
    op = algebra.opposite()
    A = regular_module(op)
    out, seen = [A], {A.action.tobytes()}
    for i in range(algebra.dim):
        ideal = submodule_generated(A, algebra.basis_vector(i))
        Q, _ = quotient(A, ideal)
        key = (Q.dim, Q.action.tobytes())
        if Q.dim and key not in seen:
            seen.add(key)
            out.append(Q)
    return out


def flat_dim(N, cutoff, test_set=None):
    """Least ``n <= cutoff`` with ``Tor_{n+1}(T, N) = 0`` for all test modules, else None."""
    if test_set is None:
        test_set = default_test_set(N.algebra)
    X = N
    for n in range(cutoff + 1):
        if X.dim == 0 or all(tor1(T, X) == 0 for T in test_set):
            return n
        X = presentation(X).syzygy
    return None


def is_flat(N, test_set=None):
    return flat_dim(N, 0, test_set) == 0


def tor_table(N, n, test_set=None):
    if test_set is None:
        test_set = default_test_set(N.algebra)
    return [tor(n, T, N) for T in test_set]


__all__ = [
    "BadCocycle",
    "Ext1",
    "Presentation",
    "Tensor",
    "default_test_set",
    "ext",
    "ext1",
    "extension_from_cocycle",
    "flat_dim",
    "is_flat",
    "presentation",
    "tensor",
    "tensor_map",
    "tor",
    "tor1",
    "tor_table",
]
