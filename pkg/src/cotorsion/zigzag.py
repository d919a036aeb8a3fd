"""Zig-zag extraction of small subresolutions, module filtrations and pure closures."""
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import linalg
from .homological import default_test_set, is_flat, tensor, tensor_map
from .modules import (
    ModuleError,
    ModuleMap,
    is_action_stable,
    quotient,
    retraction,
    submodule,
    submodule_generated,
)
from .projectives import decompose_projective, summand
from .resolution import DecomposedResolution, NotExact, projective_resolution


class BudgetExceeded(ModuleError):
    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved


class NotASubmodule(ModuleError):
    pass


class NoPureExtensionFound(ModuleError):
    pass


class NotInClass(ModuleError):
    pass


def term_budget(P, kappa):
    """Largest admissible dimension of a sub-sum of ``P`` under budget ``kappa``."""
    if kappa is None:
        return None
    biggest = max((summand(P.algebra, k).dim for k in P.kinds), default=0)
    return kappa * biggest


def _rows(N, d, p):
    """Canonical row basis of ``N`` inside an ambient space of dimension ``d``."""
    N = np.asarray(N, dtype=np.int64)
    if N.size == 0:
        return linalg.zeros(0, d)
    N = N.reshape(-1, d) % p
    return linalg.row_basis(N, p, d)


def _preimage(f, z, p):
    """Preimage with all free variables zero (the lexicographically first solution)."""
    return linalg.solve(f, z, p)[0]


def _span_of_columns(f, cols, p):
    if not cols:
        return linalg.zeros(0, f.shape[0])
    return linalg.image_basis(f[:, cols], p)


def _restricted_kernel(f, P, labels, p):
    """Vectors of ``⊕_{labels}`` (in ``P`` coordinates) killed by ``f``."""
    cols = P.indices(labels)
    if not cols:
        return linalg.zeros(0, P.dim)
    if f.shape[0] == 0:
        kern = linalg.identity(len(cols))
    else:
        kern = linalg.kernel_basis(f[:, cols], p)
    out = linalg.zeros(kern.shape[0], P.dim)
    out[:, cols] = kern
    return out


@dataclass
class Subresolution:
    """A nice subresolution on ``I'_k ⊆ I_k`` together with the quotient resolution."""
    parent: DecomposedResolution
    generators: np.ndarray            # basis of N inside M
    index_sets: list                  # I'_k, frozensets of labels
    sub_target: np.ndarray            # basis of N' inside M
    quotient: DecomposedResolution    # resolution of M / N' on I_k - I'_k
    quotient_map: ModuleMap           # M -> M / N'
    kappa: int | None = None
    rounds: int = 0
    log: list = field(default_factory=list)

    def sizes(self):
        return [self.parent.terms[k].restrict(s)[0].dim for k, s in enumerate(self.index_sets)]

    def restricted(self):
        return restricted_resolution(self.parent, self.index_sets)


def restricted_resolution(res, index_sets):
    """The subsequence on ``⊕_{I'_k}`` as a resolution of ``f_0(⊕_{I'_0})``."""
    p = res.target.p
    subs = [res.terms[k].restrict(index_sets[k]) for k in range(len(res.terms))]
    image = res.maps[0].matrix @ subs[0][1].matrix % p
    Nsub, ninc = submodule(res.target, linalg.image_basis(image, p) if image.size else
                           linalg.zeros(0, res.target.dim))
    maps = []
    for k, (S, inc) in enumerate(subs):
        f = res.maps[k].matrix @ inc.matrix % p
        if k == 0:
            tinc = ninc.matrix
        else:
            tinc = subs[k - 1][1].matrix
        if S.dim == 0:
            coords = linalg.zeros(tinc.shape[1], 0)
        elif tinc.shape[1] == 0:
            if f.any():
                raise NotExact(f"f_{k} leaves the sub-sum")
            coords = linalg.zeros(0, S.dim)
        else:
            coords = linalg.try_solve(tinc, f, p)
            if coords is None:
                raise NotExact(f"f_{k} leaves the sub-sum")
        src = S.total
        dst = Nsub if k == 0 else subs[k - 1][0].total
        maps.append(ModuleMap(src, dst, coords, check=False))
    return DecomposedResolution(Nsub, [s for s, _ in subs], maps), ninc


def quotient_resolution(res, index_sets, sub_target):
    """Resolution of ``M / N'`` on the complementary index sets (labels preserved)."""
    p = res.target.p
    Q, q = quotient(res.target, sub_target)
    rest = [frozenset(res.terms[k].labels) - frozenset(index_sets[k]) for k in range(len(res.terms))]
    subs = [res.terms[k].restrict(rest[k]) for k in range(len(res.terms))]
    maps = []
    for k, (S, inc) in enumerate(subs):
        if k == 0:
            mat = q.matrix @ res.maps[0].matrix @ inc.matrix % p
            maps.append(ModuleMap(S.total, Q, mat, check=False))
        else:
            proj = subs[k - 1][1].matrix.T
            mat = proj @ res.maps[k].matrix @ inc.matrix % p
            maps.append(ModuleMap(S.total, subs[k - 1][0].total, mat, check=False))
    return DecomposedResolution(Q, [s for s, _ in subs], maps), q


def zigzag_subresolution(res, N, kappa=None, initial=None, log=None):
    """Stabilize forward (preimage/kernel) and backward (image support) passes.

    ``N`` is a basis (rows) of a submodule of ``res.target``; ``initial``
    optionally seeds the index sets. Returns a :class:`Subresolution`.
    """
    M = res.target
    p = M.p
    n = res.length
    N = _rows(N, M.dim, p)
    if not is_action_stable(M, N):
        raise NotASubmodule("generators do not span a submodule")
    if kappa is not None and kappa < N.shape[0]:
        raise ValueError(f"budget {kappa} is smaller than dim N = {N.shape[0]}")
    index = [set(initial[k]) if initial else set() for k in range(n + 1)]
    if log is None:
        log = []
    rounds = 0
    while True:
        rounds += 1
        before = [frozenset(s) for s in index]
        # forward pass
        targets = N
        for k in range(n + 1):
            P = res.terms[k]
            f = res.maps[k].matrix
            span = _span_of_columns(f, P.indices(index[k]), p)
            for z in targets:
                if linalg.in_span(span, z, p):
                    continue
                y = _preimage(f, z, p)
                index[k] |= P.support(y)
                span = _span_of_columns(f, P.indices(index[k]), p)
                log.append(("preimage", k))
            if k < n:
                targets = _restricted_kernel(f, P, index[k], p)
                log.append(("kernel-of-restriction", k))
        # backward pass
        for k in range(n, 0, -1):
            cols = res.terms[k].indices(index[k])
            if cols:
                img = res.maps[k].matrix[:, cols].T
                grown = res.terms[k - 1].support(img) - index[k - 1]
                if grown:
                    index[k - 1] |= grown
                    log.append(("image-support", k - 1))
        if [frozenset(s) for s in index] == before:
            break
    index = [frozenset(s) for s in index]
    sizes = [res.terms[k].restrict(index[k])[0].dim for k in range(n + 1)]
    if kappa is not None:
        limits = [term_budget(res.terms[k], kappa) for k in range(n + 1)]
        if any(s > lim for s, lim in zip(sizes, limits)):
            raise BudgetExceeded(f"stabilized sub-sums have dimensions {sizes}, budget allows {limits}",
                                 achieved=sizes)
    S0, inc0 = res.terms[0].restrict(index[0])
    image = res.maps[0].matrix @ inc0.matrix % p
    sub_target = linalg.image_basis(image, p) if image.size else linalg.zeros(0, M.dim)
    quot, q = quotient_resolution(res, index, sub_target)
    return Subresolution(res, N, index, sub_target, quot, q, kappa, rounds, log)


# -- module filtrations ----------------------------------------------------

@dataclass
class FiltrationStep:
    index_sets: list        # accumulated I^alpha_k
    basis: np.ndarray       # M_alpha inside M
    quotient: object = None            # M_alpha / M_{alpha-1}
    quotient_resolution: object = None  # its class witness


@dataclass
class ModuleFiltration:
    target: object
    resolution: DecomposedResolution
    steps: list
    kappa: int
    n: int


def _small_generator(Q):
    """A vector ``e_j b`` of ``Q`` generating a submodule of least dimension."""
    best = None
    idem = Q.algebra.primitive_idempotents()
    for b in linalg.identity(Q.dim):
        for e in idem:
            x = Q.act(e, b)
            if not x.any():
                continue
            span = submodule_generated(Q, x)
            if best is None or span.shape[0] < best.shape[0]:
                best = span
    return best


def module_filtration(M, kappa, n=None, res=None, cutoff=4):
    """Filtration ``0 = M_0 ⊆ ... ⊆ M_λ = M`` with quotients in ``P_n`` of dimension ``<= kappa``."""
    if kappa < 1:
        raise ValueError("kappa must be at least 1")
    if res is None:
        try:
            res = projective_resolution(M, cutoff if n is None else n)
        except Exception as exc:
            raise NotInClass(f"module has no projective resolution within the cutoff: {exc}") from None
    if n is None:
        n = res.length
    elif res.length > n:
        raise NotInClass(f"resolution has length {res.length} > {n}")
    p = M.p
    index = [frozenset() for _ in res.terms]
    steps = [FiltrationStep(list(index), linalg.zeros(0, M.dim))]
    current = linalg.zeros(0, M.dim)
    while current.shape[0] < M.dim:
        quot, _ = quotient_resolution(res, index, current)
        Q = quot.target
        N = linalg.identity(Q.dim) if Q.dim <= kappa else _small_generator(Q)
        sub = zigzag_subresolution(quot, N)
        if sub.sub_target.shape[0] > kappa:
            raise BudgetExceeded(
                f"step {len(steps)} needs a quotient of dimension {sub.sub_target.shape[0]} > {kappa}",
                achieved=sub.sub_target.shape[0])
        index = [index[k] | sub.index_sets[k] for k in range(len(index))]
        restricted_resolution(res, index)  # raises unless the reassembled middle is exact
        nxt = restricted_image(res, index)
        piece, piece_map = quotient(submodule(M, nxt)[0], _coords(nxt, current, p))
        piece_res = projective_resolution(piece, n)
        steps.append(FiltrationStep(list(index), nxt, piece, piece_res))
        if nxt.shape[0] <= current.shape[0]:
            raise ModuleError("filtration failed to grow")
        current = nxt
    return ModuleFiltration(M, res, steps, kappa, n)


def restricted_image(res, index):
    S0, inc0 = res.terms[0].restrict(index[0])
    image = res.maps[0].matrix @ inc0.matrix % res.target.p
    return linalg.image_basis(image, res.target.p) if image.size else linalg.zeros(0, res.target.dim)


def _coords(big, small, p):
    """Coordinates of the rows of ``small`` in the basis ``big``."""
    if small.shape[0] == 0:
        return linalg.zeros(0, big.shape[0])
    return linalg.coordinates(big, small, p)


# -- purity -----------------------------------------------------------------

@lru_cache(maxsize=None)
def purity_test_modules(algebra, max_dim=3):
    """Right modules (as modules over the opposite algebra) used to certify purity."""
    from .oracles import NotHomogeneous, modules_up_to
    try:
        return tuple(modules_up_to(algebra.opposite(), max_dim))
    except (NotHomogeneous, OverflowError):
        return tuple(default_test_set(algebra))


def tensor_injective(T, S_basis, F):
    """Is ``T ⊗ S -> T ⊗ F`` injective for the submodule ``S`` of ``F``?"""
    S, inc = submodule(F, S_basis)
    if S.dim == 0:
        return True
    t = tensor_map(T, inc)
    return linalg.rank(t, F.p) == tensor(T, S).dim if t.size else tensor(T, S).dim == 0


@dataclass
class PureClosure:
    basis: np.ndarray          # S inside F
    retraction: np.ndarray     # F -> S (coordinates of S), witnesses the summand
    tests: int                 # test modules passing tensor injectivity
    method: str


def _is_summand(F, basis):
    S, inc = submodule(F, basis)
    r = retraction(inc)
    return r


def pure_closure(S0, F, kappa=None, test_set=None, check_flat=True):
    """Smallest summand of ``F`` found containing ``S0``, with a purity certificate."""
    p = F.p
    if check_flat and not is_flat(F):
        raise NotInClass("ambient module is not flat")
    S0 = linalg.as_rows(S0, F.dim) % p
    S0 = submodule_generated(F, S0) if S0.shape[0] else linalg.zeros(0, F.dim)
    found, method = None, None
    r = _is_summand(F, S0)
    if r is not None:
        found, method = S0, "summand"
    if found is None:
        # one extra cyclic piece
        idem = F.algebra.primitive_idempotents()
        best = None
        for b in linalg.identity(F.dim):
            for e in idem:
                v = F.act(e, b)
                if not v.any() or linalg.in_span(S0, v, p):
                    continue
                cand = linalg.span_sum(S0, submodule_generated(F, v), p)
                if best is not None and cand.shape[0] >= best.shape[0]:
                    continue
                if _is_summand(F, cand) is not None:
                    best = cand
        if best is not None:
            found, method = best, "cyclic-extension"
    if found is None:
        IP, iso = decompose_projective(F)
        pre = linalg.solve(iso.matrix, S0.T, p)[0].T if S0.shape[0] else linalg.zeros(0, F.dim)
        labels = IP.support(pre)
        _, inc = IP.restrict(labels)
        found = linalg.image_basis(iso.matrix @ inc.matrix % p, p) if labels else linalg.zeros(0, F.dim)
        method = "support-closure"
    r = _is_summand(F, found)
    if r is None:
        raise NoPureExtensionFound("no summand containing the submodule was found")
    if kappa is not None and found.shape[0] > kappa:
        raise BudgetExceeded(f"pure closure has dimension {found.shape[0]} > {kappa}",
                             achieved=found.shape[0])
    tests = purity_test_modules(F.algebra) if test_set is None else test_set
    for T in tests:
        if not tensor_injective(T, found, F):
            raise NoPureExtensionFound("summand failed the tensor test")
    return PureClosure(found, r, len(tests), method)


# -- flat (pure) subresolutions ---------------------------------------------

@dataclass
class FlatSubresolution:
    parent: DecomposedResolution
    generators: np.ndarray
    sub_terms: list              # bases S_k inside F_k
    sub_target: np.ndarray       # N' inside M
    quotient_terms: list         # modules F_k / S_k
    quotient_maps: list          # induced maps, [0] lands in M / N'
    quotient_target: object
    purity: list                 # PureClosure per term
    kappa: int | None = None
    rounds: int = 0
    log: list = field(default_factory=list)

    def sizes(self):
        return [s.shape[0] for s in self.sub_terms]


def _restricted_kernel_basis(f, S, p):
    """Vectors of the row space ``S`` killed by ``f``."""
    if S.shape[0] == 0:
        return linalg.zeros(0, S.shape[1])
    img = f @ S.T % p
    if img.shape[0] == 0:
        return S.copy()
    kern = linalg.kernel_basis(img, p)
    if kern.shape[0] == 0:
        return linalg.zeros(0, S.shape[1])
    return linalg.row_basis(kern @ S % p, p, S.shape[1])


def flat_zigzag_subresolution(res, N, kappa=None, initial=None, log=None, test_set=None):
    """Zig-zag with pure closures in place of index-set supports."""
    M = res.target
    p = M.p
    n = res.length
    N = _rows(N, M.dim, p)
    if not is_action_stable(M, N):
        raise NotASubmodule("generators do not span a submodule")
    if log is None:
        log = []
    F = [t.total for t in res.terms]
    S = [np.asarray(initial[k]) % p if initial else linalg.zeros(0, F[k].dim) for k in range(n + 1)]
    purity = [None] * (n + 1)

    def close(k, vectors):
        base = linalg.span_sum(S[k], vectors, p) if vectors.shape[0] else S[k]
        pc = pure_closure(base, F[k], None, test_set=(), check_flat=False)
        purity[k] = pc
        log.append(("pure-closure", k))
        return pc.basis

    rounds = 0
    while True:
        rounds += 1
        before = [s.copy() for s in S]
        targets = N
        for k in range(n + 1):
            f = res.maps[k].matrix
            span = linalg.row_basis((f @ S[k].T % p).T, p, f.shape[0]) if S[k].shape[0] else linalg.zeros(0, f.shape[0])
            new = [_preimage(f, z, p) for z in targets if not linalg.in_span(span, z, p)]
            if new:
                log.append(("preimage", k))
                S[k] = close(k, np.array(new))
            if k < n:
                targets = _restricted_kernel_basis(f, S[k], p)
        for k in range(n, 0, -1):
            if S[k].shape[0] == 0:
                continue
            img = (res.maps[k].matrix @ S[k].T % p).T
            if not linalg.in_span(S[k - 1], img, p):
                log.append(("image-closure", k - 1))
                S[k - 1] = close(k - 1, img)
        if all(a.shape == b.shape and np.array_equal(a, b) for a, b in zip(S, before)):
            break
    sizes = [s.shape[0] for s in S]
    if kappa is not None:
        limits = [term_budget(res.terms[k], kappa) for k in range(n + 1)]
        if any(s > lim for s, lim in zip(sizes, limits)):
            raise BudgetExceeded(f"pure sub-terms have dimensions {sizes}, budget allows {limits}",
                                 achieved=sizes)
    # certify purity of every final term (tensor test) and build the quotient sequence
    for k in range(n + 1):
        purity[k] = pure_closure(S[k], F[k], None, test_set=test_set, check_flat=False)
        if not np.array_equal(purity[k].basis, S[k]):
            raise NoPureExtensionFound(f"term {k} is not already pure")
    image = (res.maps[0].matrix @ S[0].T % p).T if S[0].shape[0] else linalg.zeros(0, M.dim)
    sub_target = linalg.row_basis(image, p, M.dim) if image.shape[0] else linalg.zeros(0, M.dim)
    QM, qM = quotient(M, sub_target)
    quots = [quotient(F[k], S[k]) for k in range(n + 1)]
    qmaps = []
    for k in range(n + 1):
        Qk, qk = quots[k]
        lift = linalg.solve(qk.matrix, linalg.identity(Qk.dim), p)[0] if Qk.dim else linalg.zeros(F[k].dim, 0)
        down = qM if k == 0 else quots[k - 1][1]
        qmaps.append(ModuleMap(Qk, down.target, down.matrix @ res.maps[k].matrix @ lift % p))
    check = sequence_defect(QM, qmaps)
    if check:
        raise NotExact(f"quotient sequence: {check}")
    return FlatSubresolution(res, N, S, sub_target, [q for q, _ in quots], qmaps, QM, purity,
                             kappa, rounds, log)


def sequence_defect(target, maps):
    """First failure of exactness of ``0 -> Q_n -> ... -> Q_0 -> target -> 0``."""
    p = target.p
    ranks = [linalg.rank(f.matrix, p) if f.matrix.size else 0 for f in maps]
    if ranks[0] != target.dim:
        return "not surjective onto the target"
    for k in range(1, len(maps)):
        if (maps[k - 1].matrix @ maps[k].matrix % p).any():
            return f"composite at {k - 1} is nonzero"
        if ranks[k - 1] + ranks[k] != maps[k].target.dim:
            return f"not exact at term {k - 1}"
    if ranks[-1] != maps[-1].source.dim:
        return "last map is not injective"
    return None


__all__ = [
    "BudgetExceeded",
    "FlatSubresolution",
    "ModuleFiltration",
    "NoPureExtensionFound",
    "NotASubmodule",
    "NotInClass",
    "PureClosure",
    "Subresolution",
    "flat_zigzag_subresolution",
    "module_filtration",
    "pure_closure",
    "quotient_resolution",
    "restricted_resolution",
    "zigzag_subresolution",
]
