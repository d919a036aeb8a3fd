"""Bundled algebras, named modules and random instance generators."""
import json
from functools import lru_cache
from importlib import resources

import numpy as np

from . import linalg
from .algebra import load_algebra
from .complexes import ChainComplex, complex_direct_sum, disk
from .modules import (
    Module,
    direct_sum,
    hom_space,
    kernel,
    quotient,
    regular_module,
    submodule_generated,
)
from .oracles import modules_up_to
from .projectives import projective_cover_map, summand

BUNDLED = ("F2", "T2F2", "NakA3J2")


def _data(name):
    return resources.files("cotorsion").joinpath("data").joinpath(name).read_text()


@lru_cache(maxsize=None)
def bundled_algebra(name):
    if name not in BUNDLED:
        raise KeyError(f"unknown bundled algebra {name!r}; choose from {', '.join(BUNDLED)}")
    return load_algebra(_data(f"{name}.json"))


@lru_cache(maxsize=None)
def _vertices(name):
    return tuple(json.loads(_data("library.json"))[name]["vertices"])


def radical_basis(algebra):
    """Span of the non-idempotent basis elements (a nilpotent ideal for the bundled algebras)."""
    idem = [tuple(e) for e in algebra.primitive_idempotents()]
    rows = [algebra.basis_vector(i) for i in range(algebra.dim)
            if tuple(algebra.basis_vector(i)) not in idem]
    return linalg.row_basis(np.array(rows), algebra.p, algebra.dim) if rows else linalg.zeros(0, algebra.dim)


def simple(algebra, j):
    """Top of the ``j``-th indecomposable projective."""
    P = summand(algebra, j)
    J = radical_basis(algebra)
    rad = [P.act(r, v) for r in J for v in linalg.identity(P.dim)]
    sub = submodule_generated(P, np.array(rad)) if rad else linalg.zeros(0, P.dim)
    S, _ = quotient(P, sub)
    return S


@lru_cache(maxsize=None)
def named_modules(name):
    """``{"S_v": ..., "P_v": ..., "A": ...}`` for each vertex ``v`` of a bundled algebra."""
    alg = bundled_algebra(name)
    out = {}
    for j, v in enumerate(_vertices(name)):
        out[f"S_{v}"] = Module(alg, simple(alg, j).action, name=f"S_{v}")
        out[f"P_{v}"] = Module(alg, summand(alg, j).action, name=f"P_{v}")
    out["A"] = Module(alg, regular_module(alg).action, name="A")
    return out


def named_module(algebra_name, module_name):
    mods = named_modules(algebra_name)
    if module_name in mods:
        return mods[module_name]
    alias = module_name[0] + "_" + module_name[1:]   # S1 -> S_1
    if alias in mods:
        return mods[alias]
    raise KeyError(f"no module {module_name!r} over {algebra_name}; known: {', '.join(mods)}")


@lru_cache(maxsize=None)
def small_modules(name, max_dim=3):
    """All modules of dimension ``1..max_dim`` up to isomorphism."""
    return tuple(modules_up_to(bundled_algebra(name), max_dim))


# -- random instances ----------------------------------------------------------

def random_invertible(n, p, rng):
    while True:
        g = rng.integers(0, p, size=(n, n))
        if n == 0 or linalg.is_invertible(g, p):
            return g.astype(np.int64)


def conjugate(M, g):
    """The module ``M`` transported along the change of basis ``g``."""
    p = M.p
    gi = linalg.inverse(g, p)
    return Module(M.algebra, np.einsum("ab,ibc,cd->iad", g, M.action, gi) % p)


def random_module(algebra_name, rng, max_dim=4, scramble=True):
    """A direct sum of small modules, optionally in a random basis."""
    pool = small_modules(algebra_name)
    parts, total = [], 0
    target = int(rng.integers(1, max_dim + 1))
    while total < target:
        cands = [M for M in pool if M.dim <= target - total]
        M = cands[int(rng.integers(len(cands)))]
        parts.append(M)
        total += M.dim
    M = direct_sum(*parts)[0] if len(parts) > 1 else parts[0]
    if scramble:
        M = conjugate(M, random_invertible(M.dim, M.p, rng))
    return M


def random_chain_map_to(X, m, target, rng):
    """A random map ``X_m -> target`` killing the image of ``d_{m+1}``."""
    p = X.p
    basis = hom_space(X.module(m), target)
    if not basis:
        return linalg.zeros(target.dim, X.dim(m))
    if m + 1 <= X.hi and X.dim(m + 1):
        d = X.d(m + 1).matrix
        cond = np.array([(f @ d % p).ravel() for f in basis]).T
        coeff_basis = linalg.kernel_basis(cond, p) if cond.size else linalg.identity(len(basis))
    else:
        coeff_basis = linalg.identity(len(basis))
    if coeff_basis.shape[0] == 0:
        return linalg.zeros(target.dim, X.dim(m))
    c = rng.integers(0, p, size=coeff_basis.shape[0]) @ coeff_basis % p
    return sum(int(ci) * f for ci, f in zip(c, basis)) % p


def random_complex(algebra_name, rng, length=None, max_dim=6, lo=0):
    """Random bounded complex with support length ``<= 4`` and terms of dimension ``<= max_dim``."""
    alg = bundled_algebra(algebra_name)
    length = int(rng.integers(1, 5)) if length is None else length
    mods = [random_module(algebra_name, rng, max_dim) for _ in range(length)]
    X = ChainComplex(alg, lo, mods)
    bounds = {}
    for m in range(lo + length - 1, lo, -1):   # from the top down, so d_m d_{m+1} = 0
        bounds[m] = random_chain_map_to(X, m, X.module(m - 1), rng)
        X = ChainComplex(alg, lo, mods, bounds)
    return X


def _ses_complex(M, rng, lo):
    """``0 -> Omega M -> P -> M -> 0`` placed in degrees ``lo..lo+2``."""
    P, f = projective_cover_map(M)
    K, inc = kernel(f)
    mods = [M, P.total, K]
    return ChainComplex(M.algebra, lo, mods, {lo + 1: f.matrix, lo + 2: inc.matrix})


def random_exact_complex(algebra_name, rng, support=4, max_dim=6, lo=0):
    """Exact complex built from disks and short exact sequences, then scrambled degreewise."""
    alg = bundled_algebra(algebra_name)
    p = alg.p
    support = max(2, support)
    dims = [0] * support
    pieces = []
    for _ in range(8):
        if rng.random() < 0.5:
            M = random_module(algebra_name, rng, 2, scramble=False)
            a = int(rng.integers(1, support))
            piece = disk(M, lo + a)
        else:
            M = random_module(algebra_name, rng, 2, scramble=False)
            a = int(rng.integers(0, support - 2)) if support > 2 else None
            if a is None:
                continue
            piece = _ses_complex(M, rng, lo + a)
        new = [dims[m - lo] + piece.dim(m) for m in piece.degrees]
        if any(x > max_dim for x in new):
            continue
        for m, x in zip(piece.degrees, new):
            dims[m - lo] = x
        pieces.append(piece)
        if len(pieces) >= 3:
            break
    if not pieces:
        pieces = [disk(summand(alg, 0), lo + 1)]
    S = complex_direct_sum(*pieces)[0]
    gs = {m: random_invertible(S.dim(m), p, rng) for m in S.degrees}
    mods = [conjugate(S.module(m), gs[m]) for m in S.degrees]
    bounds = {m: gs[m - 1] @ S.d(m).matrix @ linalg.inverse(gs[m], p) % p for m in range(S.lo + 1, S.hi + 1)}
    return ChainComplex(alg, S.lo, mods, bounds)


def random_projective_complex(algebra_name, rng, length=None, max_dim=4, lo=0):
    """Random bounded complex whose terms are sums of indecomposable projectives."""
    alg = bundled_algebra(algebra_name)
    length = int(rng.integers(1, 4)) if length is None else length
    kinds = list(range(len(alg.primitive_idempotents())))
    mods = []
    for _ in range(length):
        parts, total = [], 0
        while True:
            j = kinds[int(rng.integers(len(kinds)))]
            if total + summand(alg, j).dim > max_dim:
                break
            parts.append(summand(alg, j))
            total += parts[-1].dim
            if rng.random() < 0.5:
                break
        if not parts:
            parts = [summand(alg, min(kinds, key=lambda k: summand(alg, k).dim))]
        mods.append(direct_sum(*parts)[0] if len(parts) > 1 else parts[0])
    X = ChainComplex(alg, lo, mods)
    bounds = {}
    for m in range(lo + length - 1, lo, -1):
        bounds[m] = random_chain_map_to(X, m, X.module(m - 1), rng)
        X = ChainComplex(alg, lo, mods, bounds)
    return X


def random_disk_sum(algebra_name, rng, count=None, lo=0, hi=2):
    """A direct sum of disks ``D^m(M)`` on small modules (a contractible complex)."""
    count = int(rng.integers(1, 3)) if count is None else count
    pieces = [disk(random_module(algebra_name, rng, 2, scramble=False), int(rng.integers(lo + 1, hi + 1)))
              for _ in range(count)]
    return complex_direct_sum(*pieces)[0]


def random_extension(M, N, rng, nonsplit=False):
    """A random extension ``0 -> N -> E -> M -> 0`` of complexes, as ``(i, q)``.

    With ``nonsplit`` the class is a nonzero element of ``Ext^1(M, N)``.
    """
    from .complexes import ext1_ch, extension_from_cocycle_ch
    p = M.p
    ext = ext1_ch(M, N)
    if nonsplit and ext.dim == 0:
        raise ValueError("Ext^1 vanishes; every extension splits")
    c = rng.integers(0, p, size=ext.dim)
    while nonsplit and not c.any():
        c = rng.integers(0, p, size=ext.dim)
    cocycle = {}
    for ct, z in zip(c, ext.cocycles):
        for m, blk in z.items():
            cocycle[m] = (cocycle.get(m, 0) + int(ct) * blk) % p
    return extension_from_cocycle_ch(M, N, cocycle, ext)


def random_chain_map(X, Y, rng):
    from .complexes import ChainMap, chain_hom_space
    p = X.p
    comps = {}
    for h in chain_hom_space(X, Y):
        c = int(rng.integers(0, p))
        for m, blk in h.items():
            comps[m] = (comps.get(m, 0) + c * blk) % p
    return ChainMap(X, Y, comps)


def random_lifting_square(algebra_name, rng):
    """A lifting problem with ``coker i`` degreewise projective and ``ker p`` contractible.

    ``i`` is a random extension of a projective-term complex, ``p`` a random
    extension with a disk-sum kernel; ``u = d i + k g`` and ``v = p d`` for a
    random chain map ``d``, so the square commutes without ``d`` being forced.
    """
    from .model import LiftingProblem
    A0 = random_complex(algebra_name, rng, length=int(rng.integers(1, 3)), max_dim=3)
    Q = random_projective_complex(algebra_name, rng, max_dim=3)
    i, _ = random_extension(Q, A0, rng)
    K = random_disk_sum(algebra_name, rng)
    D = random_complex(algebra_name, rng, length=int(rng.integers(1, 3)), max_dim=3)
    k, p = random_extension(D, K, rng)
    d = random_chain_map(i.target, p.source, rng)
    g = random_chain_map(A0, K, rng)
    pr = A0.p
    di, kg = d.compose(i), k.compose(g)
    from .complexes import ChainMap, _union
    u = ChainMap(A0, p.source, {m: (di[m].matrix + kg[m].matrix) % pr for m in _union(A0, p.source)})
    return LiftingProblem(i, p, u, p.compose(d))


def obstructed_square(algebra_name, rng, tries=200):
    """``i: K -> E`` a non-split extension, ``p: K -> 0``, ``u = id``, ``v = 0`` (no lift exists)."""
    from .complexes import ext1_ch, identity_map, zero_complex, zero_map
    from .model import LiftingProblem
    alg = bundled_algebra(algebra_name)
    for _ in range(tries):
        Q = random_complex(algebra_name, rng, length=int(rng.integers(1, 3)), max_dim=3)
        K = random_complex(algebra_name, rng, length=int(rng.integers(1, 3)), max_dim=3, lo=int(rng.integers(0, 2)))
        if ext1_ch(Q, K).dim == 0:
            continue
        i, _ = random_extension(Q, K, rng, nonsplit=True)
        Z = zero_complex(alg)
        return LiftingProblem(i, zero_map(K, Z), identity_map(K), zero_map(i.target, Z))
    raise RuntimeError("no complex pair with nonzero Ext^1 found")


def ses_complex(M, lo=0):
    """The exact complex ``0 -> Omega M -> P -> M -> 0`` with ``M`` in degree ``lo``."""
    return _ses_complex(M, None, lo)


def module_universe(algebra_name, max_dim=2):
    """Named projectives and simples plus all modules of dimension ``<= max_dim`` up to isomorphism."""
    from .model import Universe
    named = named_modules(algebra_name)
    objs, names = list(named.values()), list(named)
    for k, M in enumerate(small_modules(algebra_name, max_dim)):
        objs.append(M)
        names.append(f"M{k}")
    return Universe(objs, names, {"provenance": f"named modules of {algebra_name} and all modules of "
                                                f"dimension <= {max_dim} up to isomorphism"})


def compatibility_universe():
    """Twelve complexes over T2F2: disks, spheres of ``A`` in three adjacent degrees,
    spheres of simples, and the exact complex of a projective presentation.

    Every sphere in degree ``m`` has ``S^{m+1}(A)`` beside it, which is what
    witnesses its failure to be right orthogonal to the degreewise class.
    """
    from .complexes import sphere
    from .model import Universe
    T = named_modules("T2F2")
    objs = {
        "D1(A)": disk(T["A"], 1),
        "D1(P_b)": disk(T["P_b"], 1),
        "D2(S_b)": disk(T["S_b"], 2),
        "D1(S_a)": disk(T["S_a"], 1),
        "D0(P_b)": disk(T["P_b"], 0),
        "S0(A)": sphere(T["A"], 0),
        "S1(A)": sphere(T["A"], 1),
        "S2(A)": sphere(T["A"], 2),
        "S0(S_a)": sphere(T["S_a"], 0),
        "S0(S_b)": sphere(T["S_b"], 0),
        "S1(S_b)": sphere(T["S_b"], 1),
        "SES(S_b)": ses_complex(T["S_b"], 0),
    }
    notes = {"provenance": "disks D^m(M), spheres S^m(M) and the presentation complex of S_b over T2F2"}
    return Universe(list(objs.values()), list(objs), notes)
