"""Projective resolutions with explicit direct-sum decompositions of the terms."""
import numpy as np

from .modules import ModuleError, ModuleMap, kernel, submodule
from .projectives import (
    IndexedProjective,
    decompose_projective,
    is_projective,
    map_from_indexed,
    minimal_generators,
    projective_cover_map,
)


class ExceedsCutoff(ModuleError):
    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class NotExact(ModuleError):
    pass


class DecomposedResolution:
    """``0 -> P_n -> ... -> P_0 -> M -> 0`` with ``maps[0] = f_0: P_0 -> M``
    and ``maps[k] = f_k: P_k -> P_{k-1}``."""

    def __init__(self, target, terms, maps, check=True):
        if len(terms) != len(maps):
            raise ValueError("need one map per term")
        self.target = target
        self.terms = list(terms)
        self.maps = list(maps)
        if check:
            problem = self.defect()
            if problem:
                raise NotExact(problem)

    @property
    def length(self):
        return len(self.terms) - 1

    @property
    def algebra(self):
        return self.target.algebra

    def defect(self):
        """Description of the first failure of exactness, or None."""
        p = self.target.p
        ranks = [f.rank() for f in self.maps]
        if self.maps[0].target.dim != self.target.dim:
            return "f_0 does not land in the target"
        if ranks[0] != self.target.dim:
            return "f_0 is not surjective"
        for k in range(1, len(self.maps)):
            if (self.maps[k - 1].matrix @ self.maps[k].matrix % p).any():
                return f"f_{k - 1} f_{k} != 0"
            if ranks[k - 1] + ranks[k] != self.terms[k - 1].dim:
                return f"not exact at P_{k - 1}"
        if ranks[-1] != self.terms[-1].dim:
            return f"f_{self.length} is not injective"
        return None

    def syzygy(self, k):
        """The ``k``-th syzygy as a submodule of ``P_{k-1}`` (``k = 0`` gives ``M``)."""
        if k == 0:
            return self.target, self.target.identity()
        if k > self.length:
            raise ValueError("syzygy beyond the resolution length")
        f = self.maps[k]
        return submodule(f.target, f.image_basis())


def _cover(M, strategy, prefix):
    if strategy == "projective":
        return projective_cover_map(M, prefix=prefix)
    if strategy == "free":
        # one copy of A per generator, split along the idempotents
        gens = minimal_generators(M)
        alg = M.algebra
        idem = alg.primitive_idempotents()
        labs, kinds, images = [], [], {}
        for t, g in enumerate(gens):
            for j, e in enumerate(idem):
                lab = (prefix, len(labs))
                labs.append(lab)
                kinds.append(j)
                images[lab] = M.act(e, g)
        P = IndexedProjective(alg, labs, kinds)
        return P, map_from_indexed(P, M, images)
    raise ValueError(f"unknown cover strategy {strategy!r}")


def projective_resolution(M, max_len, strategy="projective"):
    """Resolve ``M`` by iterated covers until a syzygy is projective.

    Summand labels are ``(k, t)``. ``strategy`` picks the covers:
    ``"projective"`` uses idempotent-homogeneous generators, ``"free"``
    uses free modules on a generating subset of the standard basis.
    Raises :class:`ExceedsCutoff` if the length would exceed ``max_len``.
    """
    if max_len < 0:
        raise ValueError("max_len must be non-negative")

    terms, maps = [], []
    current, inc = M, M.identity()
    k = 0
    while True:
        proj, _ = is_projective(current)
        if proj:
            IP, iso = decompose_projective(current, prefix=k, check=False)
            terms.append(IP)
            maps.append(inc.compose(iso) if k else iso)
            break
        if k >= max_len:
            partial = DecomposedResolution(M, terms, maps, check=False) if terms else None
            raise ExceedsCutoff(f"projective dimension exceeds {max_len}", partial)
        P, f = _cover(current, strategy, k)
        terms.append(P)
        maps.append(inc.compose(f) if k else f)
        current, inc = kernel(f)
        k += 1
    return DecomposedResolution(M, terms, maps)


def proj_dim(M, cutoff, strategy="projective"):
    """Least ``n <= cutoff`` with ``pd M <= n``, or None if it exceeds the cutoff."""
    try:
        return projective_resolution(M, cutoff, strategy).length
    except ExceedsCutoff:
        return None


def resolution_from_dict(target, doc):
    from .projectives import IndexedProjective as IP
    terms = []
    maps = []
    prev = target
    for term, mat in zip(doc["terms"], doc["maps"]):
        labels = [tuple(lab) if isinstance(lab, list) else lab for lab in term["labels"]]
        P = IP(target.algebra, labels, term["kinds"])
        terms.append(P)
        maps.append(ModuleMap(P.total, prev, np.asarray(mat, dtype=np.int64)))
        prev = P.total
    return DecomposedResolution(target, terms, maps)


def resolution_to_dict(res):
    return {
        "terms": [t.to_dict() for t in res.terms],
        "maps": [f.matrix.tolist() for f in res.maps],
    }


__all__ = [
    "DecomposedResolution",
    "ExceedsCutoff",
    "NotExact",
    "projective_resolution",
    "proj_dim",
]
