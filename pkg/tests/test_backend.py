import os
import subprocess
import sys

import numpy as np
import pytest

from cotorsion import _fallback, kernels
from cotorsion.library import bundled_algebra, named_modules, small_modules
from cotorsion.oracles import _search_plan

try:
    from cotorsion import _kernels as _compiled
except ImportError:
    _compiled = None

needs_compiled = pytest.mark.skipif(_compiled is None, reason="compiled extension not built")


def _backend_in_subprocess(env_extra):
    env = {k: v for k, v in os.environ.items() if k != "COTORSION_PURE"}
    env.update(env_extra)
    out = subprocess.run([sys.executable, "-c", "from cotorsion import kernels; print(kernels.BACKEND)"],
                         capture_output=True, text=True, env=env, check=True)
    return out.stdout.strip()


def test_environment_variable_forces_fallback():
    assert _backend_in_subprocess({"COTORSION_PURE": "1"}) == "python"


@needs_compiled
def test_compiled_backend_chosen_by_default():
    assert _backend_in_subprocess({}) == "compiled"
    assert kernels.BACKEND in ("compiled", "python")


@needs_compiled
def test_rref_agrees():
    rng = np.random.default_rng(0)
    for p in (2, 3, 5, 7):
        for _ in range(30):
            shape = tuple(rng.integers(1, 12, size=2))
            a = rng.integers(0, p, size=shape)
            r1, piv1 = _fallback.rref(a, p)
            r2, piv2 = _compiled.rref(a, p)
            assert np.array_equal(r1, r2) and tuple(piv1) == tuple(piv2)


@needs_compiled
@pytest.mark.parametrize("name", ("T2F2", "NakA3J2"))
def test_enumerate_extensions_agrees(name):
    alg = bundled_algebra(name)
    order, constraints, unit_level = _search_plan(alg)
    mods = list(small_modules(name, 2)[:4]) + [named_modules(name)["A"]]
    for M in mods[:4]:
        for N in mods:
            if M.dim * N.dim > 6:
                continue
            args = (alg.mul, N.action, M.action, alg.unit, alg.p, order, constraints, unit_level)
            a = np.asarray(_fallback.enumerate_extensions(*args))
            b = np.asarray(_compiled.enumerate_extensions(*args))
            assert a.shape == b.shape
            assert np.array_equal(np.unique(a.reshape(len(a), -1), axis=0),
                                  np.unique(b.reshape(len(b), -1), axis=0))
