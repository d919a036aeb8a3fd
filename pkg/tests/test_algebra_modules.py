import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cotorsion.algebra import AlgebraError, BadUnit, MalformedSpec, NonAssociative, load_algebra
from cotorsion.library import bundled_algebra, named_modules, random_module, small_modules
from cotorsion.modules import (
    Module,
    ModuleMap,
    NotAModule,
    NotAModuleMap,
    ShortExactSequence,
    cokernel,
    direct_sum,
    find_isomorphism,
    hom_space,
    image,
    is_isomorphic,
    kernel,
    module_from_dict,
    quotient,
    regular_module,
    submodule,
    submodule_generated,
)
from cotorsion.oracles import brute_hom_count, modules_of_dim

ALGEBRAS = ("T2F2", "NakA3J2")
seeds = st.integers(0, 2**32 - 1)


def test_bundled_algebras_validate():
    T = bundled_algebra("T2F2")
    N = bundled_algebra("NakA3J2")
    assert (T.dim, T.p) == (3, 2)
    assert (N.dim, N.p) == (5, 2)
    assert not T.is_commutative()
    assert load_algebra(json.dumps(T.to_dict())) == T


def test_opposite_is_involutive():
    T = bundled_algebra("T2F2")
    assert T.opposite().opposite() is T
    x, y = T.basis_vector(1), T.basis_vector(2)
    assert np.array_equal(T.opposite().product(x, y), T.product(y, x))


def test_malformed_algebras_rejected():
    T = bundled_algebra("T2F2").to_dict()
    with pytest.raises(MalformedSpec):
        load_algebra({k: v for k, v in T.items() if k != "mul"})
    with pytest.raises(MalformedSpec):
        load_algebra(dict(T, p=4))
    with pytest.raises(MalformedSpec):
        load_algebra("{not json")
    bad_unit = dict(T, unit=[1, 0, 0])
    with pytest.raises(BadUnit):
        load_algebra(bad_unit)
    mul = np.array(T["mul"])
    mul[1, 2, 1] = 0          # e12 e22 = 0, so the unit e11 + e22 no longer fixes e12
    with pytest.raises(AlgebraError):
        load_algebra(dict(T, mul=mul.tolist()))
    mul = np.array(T["mul"])
    mul[1, 1, 1] = 1          # e12 e12 = e12 but (e12 e11) e12 = 0
    with pytest.raises(NonAssociative):
        load_algebra(dict(T, mul=mul.tolist()))
    assert issubclass(NonAssociative, AlgebraError)


def test_named_modules_dimensions():
    T = named_modules("T2F2")
    assert {k: v.dim for k, v in T.items()} == {"S_a": 1, "P_a": 1, "S_b": 1, "P_b": 2, "A": 3}
    N = named_modules("NakA3J2")
    assert N["A"].dim == 5 and N["P_3"].dim == 1


def test_bad_action_rejected():
    T = bundled_algebra("T2F2")
    with pytest.raises(NotAModule):
        Module(T, np.zeros((3, 1, 1), dtype=np.int64))


@pytest.mark.parametrize("name", ALGEBRAS)
def test_hom_space_dimension_matches_exhaustive_count(name):
    mods = small_modules(name, 2)
    for M in mods:
        for N in mods:
            assert M.p ** len(hom_space(M, N)) == brute_hom_count(M, N)


@pytest.mark.parametrize("name", ALGEBRAS)
def test_small_modules_pairwise_non_isomorphic(name):
    mods = small_modules(name, 3)
    for a, M in enumerate(mods):
        for N in mods[a + 1:]:
            assert not is_isomorphic(M, N)


def test_module_count_oracle():
    # T2F2 has three indecomposables S_a, S_b, P_b; dimension 2 modules up to iso:
    # S_a^2, S_b^2, S_a + S_b, P_b
    assert len(modules_of_dim(bundled_algebra("T2F2"), 2)) == 4


@settings(max_examples=25)
@given(seeds, st.sampled_from(ALGEBRAS))
def test_random_module_is_isomorphic_to_unscrambled(seed, name):
    rng = np.random.default_rng(seed)
    M = random_module(name, rng, 4)
    rng = np.random.default_rng(seed)
    N = random_module(name, rng, 4, scramble=False)
    assert find_isomorphism(N, M) is not None


@settings(max_examples=25)
@given(seeds, st.sampled_from(ALGEBRAS))
def test_kernel_image_cokernel(seed, name):
    rng = np.random.default_rng(seed)
    M = random_module(name, rng, 3)
    N = random_module(name, rng, 3)
    H = hom_space(M, N)
    if not H:
        return
    c = rng.integers(0, M.p, size=len(H))
    f = ModuleMap(M, N, np.einsum("t,tab->ab", c, np.stack(H)) % M.p)
    K, _ = kernel(f)
    I, _ = image(f)
    C, _ = cokernel(f)
    assert K.dim + I.dim == M.dim
    assert I.dim + C.dim == N.dim


@settings(max_examples=25)
@given(seeds, st.sampled_from(ALGEBRAS))
def test_submodule_quotient_short_exact(seed, name):
    rng = np.random.default_rng(seed)
    M = random_module(name, rng, 4)
    S = submodule_generated(M, rng.integers(0, M.p, size=M.dim))
    sub, inc = submodule(M, S)
    Q, q = quotient(M, S)
    ses = ShortExactSequence(inc, q)
    assert ses.defect() is None
    assert sub.dim + Q.dim == M.dim


def test_direct_sum_splits():
    T = named_modules("T2F2")
    S, incs, projs = direct_sum(T["S_a"], T["P_b"])
    assert S.dim == 3
    for i, pr in zip(incs, projs):
        assert np.array_equal(pr.matrix @ i.matrix % 2, np.eye(i.source.dim, dtype=np.int64))


def test_regular_module_round_trip():
    A = regular_module(bundled_algebra("NakA3J2"))
    B = module_from_dict(A.algebra, A.to_dict())
    assert np.array_equal(A.action, B.action)


def test_non_module_map_rejected():
    T = named_modules("T2F2")
    with pytest.raises(NotAModuleMap):
        ModuleMap(T["S_a"], T["S_b"], np.array([[1]]))
