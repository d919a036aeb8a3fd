"""Filtrations of complexes and the staircase zig-zag.

Every complex here comes with a fixed decomposed resolution of each term;
subcomplexes are tracked by per-degree index sets into those resolutions,
so quotients inherit resolutions by dropping summands.
"""
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .complexes import (
    ChainComplex,
    is_exact,
    quotient_complex,
    subcomplex,
)
from .modules import submodule_generated
from .resolution import ExceedsCutoff, projective_resolution
from .zigzag import (
    BudgetExceeded,
    NotInClass,
    flat_zigzag_subresolution,
    quotient_resolution,
    restricted_image,
    zigzag_subresolution,
)


class NotExactComplex(ValueError):
    pass


def degree_resolutions(X, n):
    """A decomposed projective resolution of length ``<= n`` for every term."""
    out = {}
    for m in X.degrees:
        try:
            out[m] = projective_resolution(X.module(m), n)
        except ExceedsCutoff:
            raise NotInClass(f"degree {m} has projective dimension > {n}") from None
    return out


def _empty_sets(res):
    return [frozenset() for _ in res.terms]


def _bases_from_sets(X, resolutions, index):
    return {m: restricted_image(resolutions[m], index[m]) for m in X.degrees}


def _quotient_setup(X, resolutions, index):
    """``X / X^alpha`` with the inherited resolutions of its terms."""
    bases = _bases_from_sets(X, resolutions, index)
    Q, q = quotient_complex(X, bases)
    qres = {m: quotient_resolution(resolutions[m], index[m], bases[m])[0] for m in X.degrees}
    return Q, q, qres, bases


def _within(bases, X, kappa):
    return kappa is None or all(bases[m].shape[0] <= kappa for m in X.degrees)


@dataclass
class SubcomplexExtension:
    complex: ChainComplex
    bases: dict            # Y'_m inside X_m
    index_sets: dict       # degree -> list of frozensets
    certificates: dict     # degree -> Subresolution
    log: list = field(default_factory=list)


def small_subcomplex_extension(X, Y, kappa=None, resolutions=None, n=None, initial=None, log=None):
    """Enlarge the subcomplex ``Y`` (bases per degree) to ``Y' ∈ dw P_n`` by one downward pass."""
    p = X.p
    if resolutions is None:
        resolutions = degree_resolutions(X, 4 if n is None else n)
    if log is None:
        log = []
    bases, index, certs = {}, {}, {}
    above = None
    for m in reversed(list(X.degrees)):
        seed = Y.get(m)
        gens = [linalg.zeros(0, X.dim(m)) if seed is None or np.size(seed) == 0
                else linalg.as_rows(seed, X.dim(m))]
        if above is not None and above.shape[0]:
            gens.append((X.d(m + 1).matrix @ above.T % p).T)
        stack = np.concatenate(gens) if X.dim(m) else linalg.zeros(0, 0)
        N = submodule_generated(X.module(m), stack) if stack.shape[0] else linalg.zeros(0, X.dim(m))
        init = initial.get(m) if initial else None
        cert = zigzag_subresolution(resolutions[m], N, initial=init, log=log)
        certs[m] = cert
        index[m] = cert.index_sets
        bases[m] = cert.sub_target
        above = bases[m]
        log.append(("boundary-closure", m))
    if not _within(bases, X, kappa):
        sizes = {m: b.shape[0] for m, b in bases.items()}
        raise BudgetExceeded(f"subcomplex dimensions {sizes} exceed {kappa}", achieved=sizes)
    return SubcomplexExtension(X, bases, index, certs, log)


@dataclass
class ComplexFiltration:
    target: ChainComplex
    resolutions: dict
    steps: list            # per step: {"index": {m: sets}, "bases": {m: basis}}
    kappa: int | None
    n: int
    kind: str              # "dw" or "ex"


def _seed(Q):
    """A one-generator subcomplex seed in the top nonzero degree of ``Q``."""
    for m in reversed(list(Q.degrees)):
        if Q.dim(m):
            M = Q.module(m)
            best = None
            for b in linalg.identity(M.dim):
                for e in M.algebra.primitive_idempotents():
                    x = M.act(e, b)
                    if x.any():
                        span = submodule_generated(M, x)
                        if best is None or span.shape[0] < best.shape[0]:
                            best = span
            return {m: best}
    return {}


def _lift_sets(index, new):
    return {m: [a | b for a, b in zip(index[m], new[m])] for m in index}


def dw_filtration(X, kappa, n=None, resolutions=None):
    """Filtration of ``X ∈ dw P_n`` whose quotients are in ``dw P_n`` with terms of dimension ``<= kappa``."""
    if resolutions is None:
        resolutions = degree_resolutions(X, 4 if n is None else n)
    if n is None:
        n = max((r.length for r in resolutions.values()), default=0)
    index = {m: _empty_sets(resolutions[m]) for m in X.degrees}
    steps = [{"index": index, "bases": _bases_from_sets(X, resolutions, index)}]
    while any(steps[-1]["bases"][m].shape[0] < X.dim(m) for m in X.degrees):
        Q, q, qres, _ = _quotient_setup(X, resolutions, index)
        if kappa is not None and Q.card() <= kappa:
            seed = {m: linalg.identity(Q.dim(m)) for m in Q.degrees}
        else:
            seed = _seed(Q)
        ext = small_subcomplex_extension(Q, seed, kappa, qres)
        index = _lift_sets(index, ext.index_sets)
        bases = _bases_from_sets(X, resolutions, index)
        subcomplex(X, bases)   # raises unless the pulled-back step is a subcomplex
        steps.append({"index": index, "bases": bases})
    return ComplexFiltration(X, resolutions, steps, kappa, n, "dw")


def _repair(Q, qres, ext, kappa, log):
    """Grow ``ext`` until its subcomplex is exact, one degree at a time in round-robin order."""
    p = Q.p
    while True:
        Y, _ = subcomplex(Q, ext.bases)
        bad = [m for m in Y.degrees if Y.homology_dim(m)]
        if not bad:
            return ext
        changed = False
        for m in Q.degrees:
            Y, _ = subcomplex(Q, ext.bases)
            if Y.homology_dim(m) == 0:
                continue
            # cycles of Y_m are boundaries in Q; add preimages U in degree m+1
            z = Y.cycles_basis(m)
            inc = ext.bases[m]
            cyc = z @ inc % p if z.shape[0] else linalg.zeros(0, Q.dim(m))
            pre = []
            for c in cyc:
                y = linalg.try_solve(Q.d(m + 1).matrix, c, p) if Q.dim(m + 1) else None
                if y is None:
                    raise NotExactComplex(f"ambient complex is not exact in degree {m}")
                pre.append(y)
            seed = {k: ext.bases[k] for k in Q.degrees}
            seed[m + 1] = np.concatenate([seed[m + 1], np.array(pre)]) if pre else seed[m + 1]
            log.append(("cycle-preimage", m))
            ext = small_subcomplex_extension(Q, seed, kappa, qres, initial=ext.index_sets, log=log)
            changed = True
        if not changed:
            raise NotExactComplex("repair loop stalled")


def ex_filtration(X, kappa, n=None, resolutions=None):
    """Filtration of an exact ``X ∈ dw P_n`` by exact subcomplexes with exact small quotients."""
    if not is_exact(X):
        raise NotExactComplex("complex is not exact")
    if resolutions is None:
        resolutions = degree_resolutions(X, 4 if n is None else n)
    if n is None:
        n = max((r.length for r in resolutions.values()), default=0)
    index = {m: _empty_sets(resolutions[m]) for m in X.degrees}
    steps = [{"index": index, "bases": _bases_from_sets(X, resolutions, index)}]
    log = []
    while any(steps[-1]["bases"][m].shape[0] < X.dim(m) for m in X.degrees):
        Q, q, qres, _ = _quotient_setup(X, resolutions, index)
        if kappa is not None and Q.card() <= kappa:
            seed = {m: linalg.identity(Q.dim(m)) for m in Q.degrees}
        else:
            seed = _seed(Q)
        ext = small_subcomplex_extension(Q, seed, kappa, qres, log=log)
        ext = _repair(Q, qres, ext, kappa, log)
        index = _lift_sets(index, ext.index_sets)
        bases = _bases_from_sets(X, resolutions, index)
        Xa, _ = subcomplex(X, bases)
        if not is_exact(Xa):
            raise NotExactComplex(f"step {len(steps)} is not exact")
        steps.append({"index": index, "bases": bases})
    return ComplexFiltration(X, resolutions, steps, kappa, n, "ex")


# -- staircase zig-zag -------------------------------------------------------

class StaircaseSchedule:
    """Degrees visited by the staircase, as a walk of growing amplitude around ``start``.

    The default walk is ``0, -1, 0, 1, 0, -1, -2, -1, 0, 1, 2, 1, 0, ...``
    (offsets from ``start``), clipped to ``[lo, hi]``. A custom cyclic list
    of degrees may be given instead.
    """

    def __init__(self, start, lo, hi, degrees=None):
        self.start, self.lo, self.hi = start, lo, hi
        self.custom = list(degrees) if degrees is not None else None
        if self.custom is not None:
            missing = set(range(lo, hi + 1)) - set(self.custom)
            outside = sorted(set(self.custom) - set(range(lo, hi + 1)))
            if outside:
                raise ValueError(f"schedule visits degrees {outside} outside the support [{lo}, {hi}]")
            if missing:
                raise ValueError(f"schedule never visits degrees {sorted(missing)}")

    @property
    def window(self):
        """Number of consecutive steps within which every support degree is visited."""
        if self.custom is not None:
            return len(self.custom)
        reach = max(self.start - self.lo, self.hi - self.start, 0)
        return len(self.prefix(self._steps_for(reach + 1)))

    def _steps_for(self, amplitude):
        return 1 + sum(4 * a for a in range(1, amplitude + 1))

    def offsets(self):
        yield 0
        pos, a = 0, 1
        while True:
            while pos > -a:
                pos -= 1
                yield pos
            while pos < a:
                pos += 1
                yield pos
            a += 1

    def __iter__(self):
        if self.custom is not None:
            while True:
                yield from self.custom
        for off in self.offsets():
            m = self.start + off
            if self.lo <= m <= self.hi:
                yield m

    def prefix(self, k):
        out = []
        for m in self:
            if len(out) >= k:
                break
            out.append(m)
        return out

    def is_fair(self, windows=3):
        """Every support degree appears in each window of the first few windows."""
        w = self.window
        seq = self.prefix(w * windows)
        support = set(range(self.lo, self.hi + 1))
        return all(support <= set(seq[i:i + w]) for i in range(0, len(seq) - w + 1, w))

    def to_dict(self):
        return {"start": self.start, "lo": self.lo, "hi": self.hi, "degrees": self.custom}


HYPOTHESES = {
    "preimage": "surjectivity of the resolution maps",
    "kernel-of-restriction": "noetherian: kernels of maps between small modules stay small",
    "image-support": "finite support of images in a direct sum",
    "pure-closure": "flat ambient: small pure submodules exist",
    "pure-kernel": "purity of sub-terms: kernel inside a pure submodule",
    "image-closure": "flat ambient: small pure submodules exist",
    "tensor-test": "definition of purity",
    "boundary-closure": "complex structure",
    "cycle-preimage": "exactness of the ambient complex",
    "exact-closure": "exactness of the ambient complex",
}

NOETHERIAN_STEPS = {"kernel-of-restriction"}


@dataclass
class StaircaseResult:
    complex: ChainComplex
    degree: int
    vector: np.ndarray
    bases: dict                 # Y_m inside X_m
    track: str
    kappa: int | None
    ladder: list                # per step: {"degree", "bases"} after the closure step
    term_certificates: dict     # degree -> Subresolution / FlatSubresolution
    log: list
    schedule: StaircaseSchedule

    def audit(self):
        return audit_log(self.log, self.track)


def audit_log(log, track):
    ops = {}
    for op, _ in log:
        ops[op] = ops.get(op, 0) + 1
    rows = [{"op": op, "count": ops[op], "hypothesis": HYPOTHESES.get(op, "")} for op in sorted(ops)]
    noeth = sorted(op for op in ops if op in NOETHERIAN_STEPS)
    return {"track": track, "operations": rows, "noetherian_steps": noeth,
            "noetherian_free": not noeth}


def remark_no_noetherian_check(result_or_log, track=None):
    """Audit which operations a staircase run used and what each one assumes."""
    if isinstance(result_or_log, StaircaseResult):
        return result_or_log.audit()
    return audit_log(result_or_log, track)


def _exact_closure(X, bases, log):
    """Smallest enlargement of ``bases`` to an exact subcomplex of the exact complex ``X``."""
    p = X.p
    bases = dict(bases)
    while True:
        changed = False
        for m in reversed(list(X.degrees)):    # boundaries downward
            if m - 1 < X.lo or bases[m].shape[0] == 0:
                continue
            img = (X.d(m).matrix @ bases[m].T % p).T
            if not linalg.in_span(bases[m - 1], img, p):
                bases[m - 1] = submodule_generated(X.module(m - 1), np.concatenate([bases[m - 1], img]))
                changed = True
                log.append(("boundary-closure", m - 1))
        for m in X.degrees:                     # cycles must be boundaries
            if bases[m].shape[0] == 0:
                continue
            Y, _ = subcomplex(X, bases)
            if Y.homology_dim(m) == 0:
                continue
            z = Y.cycles_basis(m) @ bases[m] % p
            pre = []
            for c in z:
                y = linalg.try_solve(X.d(m + 1).matrix, c, p) if X.dim(m + 1) else None
                if y is None:
                    raise NotExactComplex(f"ambient complex is not exact in degree {m}")
                pre.append(y)
            bases[m + 1] = submodule_generated(X.module(m + 1), np.concatenate([bases[m + 1], np.array(pre)]))
            changed = True
            log.append(("cycle-preimage", m))
        if not changed:
            return bases


def staircase_subcomplex(X, x, kappa=None, track="projective", schedule=None, n=None,
                         resolutions=None, max_steps=10_000):
    """Small exact subcomplex ``Y ∋ x`` with ``X / Y`` exact and degreewise in the class.

    ``x`` is ``(degree, vector)``.
    """
    if track not in ("projective", "flat"):
        raise ValueError("track must be 'projective' or 'flat'")
    degree, vec = x
    vec = np.asarray(vec, dtype=np.int64) % X.p
    if not X.lo <= degree <= X.hi or vec.shape != (X.dim(degree),):
        raise ValueError("element does not live in the complex")
    if not vec.any():
        raise ValueError("x must be nonzero")
    if not is_exact(X):
        raise NotExactComplex("complex is not exact")
    if resolutions is None:
        resolutions = degree_resolutions(X, 4 if n is None else n)
    if schedule is None:
        schedule = StaircaseSchedule(degree, X.lo, X.hi)
    elif isinstance(schedule, (list, tuple)):
        schedule = StaircaseSchedule(degree, X.lo, X.hi, schedule)
    log = []
    bases = {m: linalg.zeros(0, X.dim(m)) for m in X.degrees}
    bases[degree] = submodule_generated(X.module(degree), vec)
    state = {m: None for m in X.degrees}       # index sets or pure sub-terms
    certs = {}
    ladder = []
    support = set(X.degrees)
    quiet = set()
    steps = 0
    for j in schedule:
        steps += 1
        if steps > max_steps:
            raise RuntimeError("staircase did not stabilize")
        res = resolutions[j]
        if track == "projective":
            cert = zigzag_subresolution(res, bases[j], initial=state[j], log=log)
            state[j] = cert.index_sets
        else:
            cert = flat_zigzag_subresolution(res, bases[j], initial=state[j], log=log, test_set=())
            state[j] = cert.sub_terms
        certs[j] = cert
        grown = dict(bases)
        grown[j] = cert.sub_target
        grown = _exact_closure(X, grown, log)
        changed = any(grown[m].shape != bases[m].shape or not np.array_equal(grown[m], bases[m])
                      for m in X.degrees)
        bases = grown
        ladder.append({"degree": j, "bases": {m: b.copy() for m, b in bases.items()}})
        if kappa is not None and any(bases[m].shape[0] > kappa for m in X.degrees):
            sizes = {m: bases[m].shape[0] for m in X.degrees}
            raise BudgetExceeded(f"staircase subcomplex dimensions {sizes} exceed {kappa}", achieved=sizes)
        if changed:
            quiet = set()
        # a visit is quiet when the zig-zag at j already returned Y_j itself
        if not changed and np.array_equal(cert.sub_target, bases[j]):
            quiet.add(j)
        if quiet >= support:
            break
    if track == "flat":
        # certify purity with the tensor test on the final terms
        for m in X.degrees:
            certs[m] = flat_zigzag_subresolution(resolutions[m], bases[m], initial=state[m], log=log)
            log.append(("tensor-test", m))
    return StaircaseResult(X, degree, vec, bases, track, kappa, ladder, certs, log, schedule)
