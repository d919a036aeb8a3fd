"""Walkthrough of the bundled algebras, used by ``cotorsion demo``."""
import json

import numpy as np

from . import certificates, checker
from .classes import Pn, dw, listed, perp
from .complex_zigzag import (
    degree_resolutions,
    dw_filtration,
    ex_filtration,
    remark_no_noetherian_check,
    staircase_subcomplex,
)
from .complexes import chain_maps, is_exact, quotient_complex, zero_map
from .homological import ext1, flat_dim
from .library import (
    compatibility_universe,
    module_universe,
    named_modules,
    obstructed_square,
    random_complex,
    random_exact_complex,
    random_lifting_square,
)
from .model import approx_search, check_compatibility, check_cotorsion_pair, factor_map, lift, resolve
from .modules import regular_module, submodule_generated
from .resolution import proj_dim, projective_resolution
from .zigzag import module_filtration, pure_closure, zigzag_subresolution


def _accepted(cert):
    return checker.check_certificate(json.loads(certificates.dump(cert))).ok


def _kappa(X):
    return max([X.dim(m) for m in X.degrees] + [1])


def run_demo(args=None):
    """Run the walkthrough; returns rows ``(check, passed, detail)``."""
    seed = getattr(args, "seed", 0) or 0
    rows = []
    T = named_modules("T2F2")
    N = named_modules("NakA3J2")
    rows.append(("pd S_b over T2F2 = 1", proj_dim(T["S_b"], 4) == 1, f"got {proj_dim(T['S_b'], 4)}"))
    rows.append(("pd S_1 over NakA3J2 = 2", proj_dim(N["S_1"], 4) == 2, f"got {proj_dim(N['S_1'], 4)}"))
    rows.append(("fd S_1 over NakA3J2 = 2", flat_dim(N["S_1"], 4) == 2, f"got {flat_dim(N['S_1'], 4)}"))
    d = ext1(T["S_b"], T["S_a"]).dim
    rows.append(("Ext^1(S_b, S_a) over T2F2 = 1", d == 1, f"got {d}"))

    for name in ("T2F2", "NakA3J2"):
        rng = np.random.default_rng(seed)
        A = regular_module(named_modules(name)["A"].algebra)
        M = named_modules(name)["A"]
        res = projective_resolution(M, 4)
        sub = zigzag_subresolution(res, submodule_generated(M, np.eye(M.dim, dtype=np.int64)[-1]), M.dim)
        rows.append((f"{name}: zig-zag subresolution", _accepted(certificates.subresolution_certificate(sub)),
                     f"sub-term dimensions {sub.sizes()}"))
        filt = module_filtration(M, 2)
        rows.append((f"{name}: module filtration", _accepted(certificates.module_filtration_certificate(filt)),
                     f"{len(filt.steps)} steps"))
        X = random_complex(name, rng)
        f = dw_filtration(X, _kappa(X))
        rows.append((f"{name}: dw-filtration", _accepted(certificates.complex_filtration_certificate(f)),
                     f"{len(f.steps)} steps on card {X.card()}"))
        E = random_exact_complex(name, rng)
        f = ex_filtration(E, _kappa(E))
        rows.append((f"{name}: ex-filtration", _accepted(certificates.complex_filtration_certificate(f)),
                     f"{len(f.steps)} steps on card {E.card()}"))
        res_e = degree_resolutions(E, 4)
        deg = next(m for m in E.degrees if E.dim(m))
        for track in ("projective", "flat"):
            r = staircase_subcomplex(E, (deg, np.eye(E.dim(deg), dtype=np.int64)[0]), kappa=_kappa(E),
                                     track=track, resolutions=res_e)
            Y_ok = is_exact(quotient_complex(E, r.bases)[0])
            cert_ok = _accepted(certificates.staircase_certificate(r, res_e, 4))
            audit = remark_no_noetherian_check(r)
            ok = Y_ok and cert_ok and (audit["noetherian_free"] or track == "projective")
            rows.append((f"{name}: staircase ({track})", ok,
                         "noetherian-free" if audit["noetherian_free"] else "uses kernel-of-restriction"))
        S0 = submodule_generated(A, np.eye(A.dim, dtype=np.int64)[-1])
        c = pure_closure(S0, A)
        rows.append((f"{name}: pure closure", _accepted(certificates.pure_closure_certificate(A, S0, c)),
                     f"dimension {c.basis.shape[0]}, {c.tests} tensor tests"))

    U = module_universe("T2F2")
    r = check_cotorsion_pair(Pn(0), listed(U.objects, "U"), U)
    rows.append(("T2F2: (P0, all) cotorsion on U", r.clean, f"{len(U)} modules"))
    U2 = module_universe("NakA3J2")
    P2 = resolve(Pn(2), U2)[0]
    r = check_cotorsion_pair(Pn(2), perp([U2[n] for n in P2]), U2)
    rows.append(("NakA3J2: (P2, P2-perp) on U", r.clean, f"{len(U2)} modules"))
    P0 = resolve(Pn(0), U)[0]
    ap = approx_search(T["S_b"], Pn(0), perp([U[n] for n in P0]), U)
    rows.append(("T2F2: approximation of S_b", ap.left_member.member,
                 f"0 -> {ap.candidate} -> P -> S_b -> 0"))

    CU = compatibility_universe()
    comp = check_compatibility(Pn(1), CU)
    rows.append(("T2F2: compatibility identity", comp.equal, f"both sides {comp.lhs}"))
    rng = np.random.default_rng(seed)
    ok = all(lift(random_lifting_square("T2F2", rng)) is not None for _ in range(5))
    ok = ok and all(lift(obstructed_square("T2F2", rng)) is None for _ in range(5))
    rows.append(("T2F2: lifting", ok, "5 guaranteed, 5 obstructed"))
    X, Y = CU["S1(A)"], CU["S0(S_a)"]
    maps = chain_maps(X, Y)
    fmap = maps[0] if maps else zero_map(X, Y)
    A0 = dw(Pn(0))
    F = factor_map(fmap, A0, perp([CU[n] for n in resolve(A0, CU)[0]]), CU)
    rows.append(("T2F2: factorization", F.verify() is None, "; ".join(F.steps.values())))
    return rows
