"""Shared builders for the test suite: emitted certificates and mutation helpers."""
import copy
import json

import numpy as np

from cotorsion import certificates
from cotorsion.complex_zigzag import degree_resolutions, dw_filtration, ex_filtration, staircase_subcomplex
from cotorsion.library import bundled_algebra, random_complex, random_exact_complex, random_module
from cotorsion.modules import regular_module, submodule_generated
from cotorsion.resolution import projective_resolution
from cotorsion.zigzag import module_filtration, pure_closure, zigzag_subresolution

ALGEBRAS = ("T2F2", "NakA3J2")


def kappa_of(X):
    return max([X.dim(m) for m in X.degrees] + [1])


def roundtrip(cert):
    return json.loads(certificates.dump(cert))


def certificate_corpus(seed=2, rounds=3):
    """Certificates of every kind over both algebras, as plain JSON documents."""
    out = []
    for name in ALGEBRAS:
        rng = np.random.default_rng(seed)
        alg = bundled_algebra(name)
        for _ in range(rounds):
            M = random_module(name, rng, 5)
            res = projective_resolution(M, 4)
            N = submodule_generated(M, rng.integers(0, M.p, size=(1, M.dim)))
            sub = zigzag_subresolution(res, N, kappa=N.shape[0] + alg.dim)
            out.append(certificates.subresolution_certificate(sub))
            out.append(certificates.module_filtration_certificate(module_filtration(M, 2)))
            X = random_complex(name, rng)
            out.append(certificates.complex_filtration_certificate(dw_filtration(X, kappa_of(X))))
            E = random_exact_complex(name, rng)
            out.append(certificates.complex_filtration_certificate(ex_filtration(E, kappa_of(E))))
            res_e = degree_resolutions(E, 4)
            deg = next(m for m in E.degrees if E.dim(m))
            x = np.eye(E.dim(deg), dtype=np.int64)[0]
            for track in ("projective", "flat"):
                r = staircase_subcomplex(E, (deg, x), kappa=kappa_of(E), track=track, resolutions=res_e)
                out.append(certificates.staircase_certificate(r, res_e, 4))
            A = regular_module(alg)
            S0 = submodule_generated(A, rng.integers(0, A.p, size=A.dim))
            out.append(certificates.pure_closure_certificate(A, S0, pure_closure(S0, A)))
    return [roundtrip(c) for c in out]


def leaves(obj, path=()):
    """Every scalar position of a JSON document, with its path."""
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from leaves(v, path + (k,))
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            yield from leaves(v, path + (i,))
    else:
        yield path, obj


def lists(obj, path=()):
    """Every nonempty list position of a JSON document."""
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from lists(v, path + (k,))
    elif isinstance(obj, list):
        if obj:
            yield path, obj
        for i, v in enumerate(obj):
            yield from lists(v, path + (i,))


def _at(doc, path):
    for k in path:
        doc = doc[k]
    return doc


def mutate(cert, rng, root="witness"):
    """One single-field corruption below ``root``: change a scalar or drop a list entry.

    Returns ``(mutant, path, operation)``; the mutant always differs from the input.
    """
    p = cert["algebra"]["p"]
    if not any(True for _ in lists(cert[root])):
        raise ValueError("nothing to mutate")
    while True:
        c = copy.deepcopy(cert)
        base = c[root]
        if rng.random() < 0.75:
            cands = list(leaves(base))
            if not cands:
                continue
            path, v = cands[int(rng.integers(len(cands)))]
            parent = _at(base, path[:-1])
            if isinstance(v, bool):
                nv = not v
            elif isinstance(v, int):
                nv = (v + int(rng.integers(1, p))) % p if rng.random() < 0.8 else v + 1
            elif v is None:
                nv = 1
            else:
                nv = str(v) + "'"
            parent[path[-1]] = nv
            op = "change"
        else:
            cands = list(lists(base))
            if not cands:
                continue
            path, lst = cands[int(rng.integers(len(cands)))]
            idx = int(rng.integers(len(lst)))
            del lst[idx]
            path = path + (idx,)
            op = "drop"
        if c != cert:
            return c, (root,) + path, op
