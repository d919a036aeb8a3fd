"""Projective modules with explicit direct-sum decompositions.

Summands are the standard left ideals ``A e_j`` for the declared idempotents
``e_j`` (or ``A`` itself when the algebra carries none). An
:class:`IndexedProjective` is a finite labelled direct sum of such summands;
labels are opaque hashables, so sub- and quotient sums keep their names.
"""
from functools import lru_cache

import numpy as np

from . import linalg
from .modules import (
    Module,
    ModuleError,
    ModuleMap,
    direct_sum,
    free_module,
    quotient,
    retraction,
    section,
    submodule_generated,
    zero_module,
)


class NotProjective(ModuleError):
    pass


class NotGenerating(ModuleError):
    pass


class DecompositionFailed(ModuleError):
    """No decomposition into the declared summand types was found."""


@lru_cache(maxsize=None)
def _ideal(algebra, j):
    e = algebra.primitive_idempotents()[j]
    basis = algebra.left_ideal_basis(e)
    moved = np.einsum("ikj,tj->itk", algebra.mul.transpose(0, 2, 1), basis) % algebra.p
    action = np.stack([linalg.coordinates(basis, moved[i], algebra.p).T for i in range(algebra.dim)])
    mod = Module(algebra, action, name=f"A{algebra.basis[j] if algebra.idempotents else ''}")
    gen = linalg.coordinates(basis, e, algebra.p)[0]
    return basis, mod, gen


def summand(algebra, j):
    """The standard module ``A e_j``."""
    return _ideal(algebra, j)[1]


def summand_generator(algebra, j):
    """Coordinates of ``e_j`` inside ``A e_j``."""
    return _ideal(algebra, j)[2]


def summand_types(algebra):
    return range(len(algebra.primitive_idempotents()))


def map_from_summand(algebra, j, Q, x):
    """Matrix of ``a e_j -> a x`` from ``A e_j`` to ``Q``; needs ``e_j x = x``."""
    basis = _ideal(algebra, j)[0]
    return np.einsum("ta,abc,c->bt", basis, Q.action, np.asarray(x) % Q.p) % Q.p


class IndexedProjective:
    """Direct sum ``⊕_{i in I} P^i`` with ``P^i = A e_{kinds[i]}``."""

    def __init__(self, algebra, labels, kinds):
        labels = tuple(labels)
        kinds = tuple(int(k) for k in kinds)
        if len(labels) != len(kinds):
            raise ValueError("labels and kinds differ in length")
        if len(set(labels)) != len(labels):
            raise ValueError("labels must be unique")
        self.algebra = algebra
        self.p = algebra.p
        self.labels = labels
        self.kinds = kinds
        self.offsets = {}
        o = 0
        for lab, k in zip(labels, kinds):
            n = summand(algebra, k).dim
            self.offsets[lab] = (o, o + n)
            o += n
        self.dim = o
        if labels:
            self.total = direct_sum(*[summand(algebra, k) for k in kinds])[0]
        else:
            self.total = zero_module(algebra)

    def __len__(self):
        return len(self.labels)

    def __repr__(self):
        return f"<IndexedProjective {len(self)} summands, dim {self.dim}>"

    def kind_of(self, label):
        return self.kinds[self.labels.index(label)]

    def block(self, label):
        a, b = self.offsets[label]
        return slice(a, b)

    def indices(self, labels):
        """Coordinate positions covered by the given summands, in order."""
        out = []
        for lab in self.labels:
            if lab in labels:
                a, b = self.offsets[lab]
                out.extend(range(a, b))
        return out

    def support(self, vectors):
        """Labels of the summands on which some row of ``vectors`` is nonzero."""
        v = np.atleast_2d(np.asarray(vectors) % self.p)
        if v.shape[0] == 0:
            return frozenset()
        nz = v.any(axis=0)
        return frozenset(lab for lab in self.labels if nz[self.block(lab)].any())

    def generator(self, label):
        """The vector ``e_j`` placed in summand ``label``."""
        v = np.zeros(self.dim, dtype=np.int64)
        v[self.block(label)] = summand_generator(self.algebra, self.kind_of(label))
        return v

    def inclusion(self, label):
        m = linalg.zeros(self.dim, summand(self.algebra, self.kind_of(label)).dim)
        a, b = self.offsets[label]
        m[a:b] = linalg.identity(b - a)
        return ModuleMap(summand(self.algebra, self.kind_of(label)), self.total, m, check=False)

    def projection(self, label):
        inc = self.inclusion(label)
        return ModuleMap(self.total, inc.source, inc.matrix.T.copy(), check=False)

    def restrict(self, labels):
        """Sub-sum on ``labels`` (kept in this object's order) and its coordinate inclusion."""
        keep = [lab for lab in self.labels if lab in labels]
        sub = IndexedProjective(self.algebra, keep, [self.kind_of(lab) for lab in keep])
        inc = linalg.zeros(self.dim, sub.dim)
        inc[self.indices(set(keep)), np.arange(sub.dim)] = 1
        return sub, ModuleMap(sub.total, self.total, inc, check=False)

    def relabel(self, fn):
        return IndexedProjective(self.algebra, [fn(lab) for lab in self.labels], self.kinds)

    def to_dict(self):
        return {"labels": [list(lab) if isinstance(lab, tuple) else lab for lab in self.labels],
                "kinds": list(self.kinds)}


def map_from_indexed(P, Q, images):
    """Module map ``P.total -> Q`` sending generator of summand ``label`` to ``images[label]``."""
    cols = linalg.zeros(Q.dim, P.dim)
    for lab in P.labels:
        cols[:, P.block(lab)] = map_from_summand(P.algebra, P.kind_of(lab), Q, images[lab])
    return ModuleMap(P.total, Q, cols, check=False)


# -- generators and covers -------------------------------------------------

def homogeneous_generators(M, prefer=None):
    """Greedy generating set of ``M`` by vectors ``x`` with ``e_j x = x``.

    Returns ``[(j, x), ...]``. Candidates are the vectors ``e_j b`` for the
    standard basis ``b`` (or rows of ``prefer`` first), largest ``A e_j`` first.
    """
    alg = M.algebra
    p = M.p
    gens = []
    span = linalg.zeros(0, M.dim)
    if M.dim == 0:
        return gens
    order = sorted(summand_types(alg), key=lambda j: -summand(alg, j).dim)
    idem = alg.primitive_idempotents()
    pool = [np.asarray(r) % p for r in (prefer if prefer is not None else [])]
    pool += list(linalg.identity(M.dim))
    for v in pool:
        if span.shape[0] == M.dim:
            break
        for j in order:
            x = M.act(idem[j], v)
            if not x.any() or linalg.in_span(span, x, p):
                continue
            gens.append((j, x))
            span = submodule_generated(M, np.array([g for _, g in gens]))
    if span.shape[0] != M.dim:
        raise NotGenerating("greedy generator search did not span the module")
    return gens


def _labels(prefix, n):
    return [t if prefix is None else (prefix, t) for t in range(n)]


def projective_cover_map(M, prefix=None, prefer=None):
    """Epimorphism from an :class:`IndexedProjective` onto ``M`` built from homogeneous generators.

    Summands are labelled ``(prefix, t)``, or plain ``t`` without a prefix.
    """
    gens = homogeneous_generators(M, prefer)
    P = IndexedProjective(M.algebra, _labels(prefix, len(gens)), [j for j, _ in gens])
    images = {lab: x for lab, (_, x) in zip(P.labels, gens)}
    return P, map_from_indexed(P, M, images)


def free_cover(M, generators=None):
    """Epimorphism ``A^k -> M`` sending the ``t``-th basis vector to ``generators[t]``.

    Defaults to the standard basis of ``M`` as generating set.
    """
    alg = M.algebra
    p = M.p
    if generators is None:
        generators = linalg.identity(M.dim)
    gens = linalg.as_rows(generators, M.dim) % p
    k = gens.shape[0]
    if submodule_generated(M, gens).shape[0] != M.dim:
        raise NotGenerating("generators do not span the module under the action")
    F = free_module(alg, k)
    if k == 0:
        return ModuleMap(F, M, linalg.zeros(M.dim, 0), check=False)
    # basis element e_i of the t-th copy of A maps to e_i . g_t
    cols = np.einsum("iab,tb->ati", M.action, gens).reshape(M.dim, k * alg.dim) % p
    return ModuleMap(F, M, cols, check=False)


def minimal_generators(M):
    """Greedy subset of the standard basis generating ``M``."""
    out = []
    span = linalg.zeros(0, M.dim)
    for v in linalg.identity(M.dim):
        if span.shape[0] == M.dim:
            break
        if not linalg.in_span(span, v, M.p):
            out.append(v)
            span = submodule_generated(M, np.array(out))
    return linalg.as_rows(out, M.dim)


def is_projective(M, generators=None):
    """``(verdict, section)``: projective iff the free cover has a module section."""
    if M.dim == 0:
        return True, linalg.zeros(0, 0)
    if generators is None:
        generators = minimal_generators(M)
    pi = free_cover(M, generators)
    s = section(pi)
    return s is not None, s


# -- decomposition ----------------------------------------------------------

def _candidates(Q, e, limit, rng):
    """Vectors of ``e Q``: basis vectors first, then exhaustive or sampled combinations."""
    p = Q.p
    eQ = linalg.image_basis(Q.rho(e), p)
    if eQ.shape[0] == 0:
        return
    yield from eQ
    k = eQ.shape[0]
    if p**k <= limit:
        yield from linalg.combinations(eQ, p, limit)[1:]
    else:
        for _ in range(limit):
            yield rng.integers(0, p, size=k) @ eQ % p


def decompose_projective(P, prefix=None, limit=4096, check=True):
    """Decompose a projective module into standard summands.

    Returns ``(IP, iso)`` where ``iso: IP.total -> P`` is an isomorphism.
    """
    alg = P.algebra
    p = P.p
    if check and not is_projective(P)[0]:
        raise NotProjective("module is not projective")
    idem = alg.primitive_idempotents()
    order = sorted(summand_types(alg), key=lambda j: -summand(alg, j).dim)
    rng = np.random.default_rng(0)
    chosen = []  # (j, x in P)
    images = linalg.zeros(0, P.dim)
    while images.shape[0] < P.dim:
        Q, q = quotient(P, images)
        found = None
        for j in order:
            for xq in _candidates(Q, idem[j], limit, rng):
                phi = map_from_summand(alg, j, Q, xq)
                if linalg.rank(phi, p) != summand(alg, j).dim:
                    continue
                if retraction(ModuleMap(summand(alg, j), Q, phi, check=False)) is None:
                    continue
                found = (j, xq)
                break
            if found:
                break
        if found is None:
            raise DecompositionFailed("no standard summand splits off the remaining quotient")
        j, xq = found
        # lift along q, then project into e_j P
        lift = linalg.solve(q.matrix, xq, p)[0]
        x = P.act(idem[j], lift)
        chosen.append((j, x))
        phi = map_from_summand(alg, j, P, x)
        images = linalg.span_sum(images, linalg.image_basis(phi, p), p)
    IP = IndexedProjective(alg, _labels(prefix, len(chosen)), [j for j, _ in chosen])
    iso = map_from_indexed(IP, P, {lab: x for lab, (_, x) in zip(IP.labels, chosen)})
    if not linalg.is_invertible(iso.matrix, p):
        raise DecompositionFailed("assembled summand map is not an isomorphism")
    return IP, iso
