"""Compiled kernels against the numpy fallback.

Run with ``python benchmarks/bench_kernels.py``. Both backends are imported
directly, so the comparison does not depend on ``COTORSION_PURE``.
"""
import argparse
import time

import numpy as np

from cotorsion import _fallback
from cotorsion.library import bundled_algebra, named_modules
from cotorsion.oracles import _search_plan

try:
    from cotorsion import _kernels as _compiled
except ImportError:
    _compiled = None


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_rref(impl, mats, p, repeat):
    return _time(lambda: [impl.rref(a, p) for a in mats], repeat)


def bench_extensions(impl, algebra_name, pair, repeat):
    alg = bundled_algebra(algebra_name)
    mods = named_modules(algebra_name)
    M, N = mods[pair[0]], mods[pair[1]]
    order, constraints, unit_level = _search_plan(alg)
    return _time(
        lambda: impl.enumerate_extensions(alg.mul, N.action, M.action, alg.unit, alg.p,
                                          order, constraints, unit_level),
        repeat,
    )


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if _compiled is None:
        print("compiled extension not built; only the fallback is available")
    rng = np.random.default_rng(args.seed)
    small = [rng.integers(0, 3, size=(30, 33)) for _ in range(20)]
    large = [rng.integers(0, 5, size=(80, 83)) for _ in range(20)]
    cases = [
        ("rref 30x33 mod 3 (x20)", lambda impl: bench_rref(impl, small, 3, args.repeat)),
        ("rref 80x83 mod 5 (x20)", lambda impl: bench_rref(impl, large, 5, args.repeat)),
        ("extensions T2F2 S_b by A", lambda impl: bench_extensions(impl, "T2F2", ("S_b", "A"), args.repeat)),
        ("extensions T2F2 P_b by A", lambda impl: bench_extensions(impl, "T2F2", ("P_b", "A"), args.repeat)),
    ]
    print(f"{'case':<30} {'python [s]':>11} {'compiled [s]':>13} {'speedup':>8}")
    for name, run in cases:
        t_py, out_py = run(_fallback)
        if _compiled is None:
            print(f"{name:<30} {t_py:>11.4f} {'-':>13} {'-':>8}")
            continue
        t_c, out_c = run(_compiled)
        if name.startswith("rref"):
            same = all(np.array_equal(a[0], b[0]) and a[1] == b[1] for a, b in zip(out_py, out_c))
        else:
            same = {x.tobytes() for x in np.asarray(out_py)} == {x.tobytes() for x in np.asarray(out_c)}
        flag = "" if same else "  MISMATCH"
        print(f"{name:<30} {t_py:>11.4f} {t_c:>13.4f} {t_py / max(t_c, 1e-9):>7.1f}x{flag}")


if __name__ == "__main__":
    main()
