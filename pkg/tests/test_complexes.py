import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cotorsion import linalg
from cotorsion.complexes import (
    ChainComplex,
    ChainMap,
    NotAChainMap,
    NotAComplex,
    NotSubcomplex,
    chain_hom_space,
    check_homotopy,
    cokernel_complex,
    complex_direct_sum,
    complex_from_dict,
    disk,
    disk_cover,
    ext1_ch,
    extension_from_cocycle_ch,
    identity_map,
    image_bases,
    is_exact,
    is_exact_by_subspaces,
    is_short_exact,
    kernel_complex,
    nullhomotopy,
    quotient_complex,
    sphere,
    subcomplex,
)
from cotorsion.homological import ext1
from cotorsion.library import bundled_algebra, named_modules, random_complex, random_exact_complex, small_modules
from cotorsion.modules import hom_space

ALGEBRAS = ("T2F2", "NakA3J2")
seeds = st.integers(0, 2**32 - 1)


def test_disk_is_exact_and_sphere_is_not():
    T = named_modules("T2F2")
    D = disk(T["P_b"], 1)
    assert list(D.degrees) == [0, 1] and is_exact(D)
    S = sphere(T["S_b"], 3)
    assert not is_exact(S)
    assert S.homology_dim(3) == 1 and S.homology_dim(2) == 0


def test_nonzero_composite_rejected():
    T2 = bundled_algebra("T2F2")
    S_a = named_modules("T2F2")["S_a"]
    with pytest.raises(NotAComplex):
        ChainComplex(T2, 0, [S_a, S_a, S_a], {1: [[1]], 2: [[1]]})


@settings(max_examples=25)
@given(seeds, st.sampled_from(ALGEBRAS))
def test_exactness_tests_agree(seed, name):
    rng = np.random.default_rng(seed)
    X = random_complex(name, rng)
    assert is_exact(X) == is_exact_by_subspaces(X)
    assert is_exact(random_exact_complex(name, rng))


@settings(max_examples=25)
@given(seeds, st.sampled_from(ALGEBRAS))
def test_euler_characteristic(seed, name):
    rng = np.random.default_rng(seed)
    X = random_complex(name, rng)
    lhs = sum((-1) ** m * X.dim(m) for m in X.degrees)
    rhs = sum((-1) ** m * X.homology_dim(m) for m in X.degrees)
    assert lhs == rhs


def test_maps_out_of_a_disk():
    # Hom(D^m(P), Y) = Hom(P, Y_m)
    N = named_modules("NakA3J2")
    rng = np.random.default_rng(4)
    Y = random_complex("NakA3J2", rng, length=3)
    for m in Y.degrees:
        D = disk(N["P_1"], m)
        assert len(chain_hom_space(D, Y)) == len(hom_space(N["P_1"], Y.module(m)))


def test_chain_map_must_commute():
    T = named_modules("T2F2")
    D = disk(T["S_a"], 1)
    S = sphere(T["S_a"], 1)
    with pytest.raises(NotAChainMap):       # id in degree 1 only: d f != f d
        ChainMap(D, D, {1: [[1]]})
    assert ChainMap(D, S, {1: [[1]]}).commutation_defect() is None


def test_disk_identity_is_nullhomotopic_and_sphere_identity_is_not():
    T = named_modules("T2F2")
    f = identity_map(disk(T["P_b"], 2))
    s = nullhomotopy(f)
    assert s is not None and check_homotopy(f, s)
    assert nullhomotopy(identity_map(sphere(T["S_a"], 0))) is None


@pytest.mark.parametrize("name", ALGEBRAS)
def test_ext_between_spheres(name):
    # same degree: module Ext; adjacent degrees: Hom(M, N) through the boundary
    mods = small_modules(name, 2)
    for M in mods:
        for N in mods:
            assert ext1_ch(sphere(M, 0), sphere(N, 0)).dim == ext1(M, N).dim
            assert ext1_ch(sphere(M, 1), sphere(N, 0)).dim == len(hom_space(M, N))
            assert ext1_ch(sphere(M, 0), sphere(N, 1)).dim == 0


@settings(max_examples=15)
@given(seeds, st.sampled_from(ALGEBRAS))
def test_disks_on_projectives_have_no_extensions(seed, name):
    rng = np.random.default_rng(seed)
    X = random_complex(name, rng, length=2, max_dim=3)
    cover = disk_cover(X)
    assert cover.epi.is_surjective()
    assert ext1_ch(cover.source, X).dim == 0


@settings(max_examples=15)
@given(seeds, st.sampled_from(ALGEBRAS))
def test_extensions_are_short_exact(seed, name):
    rng = np.random.default_rng(seed)
    X = random_complex(name, rng, length=2, max_dim=3)
    Y = random_complex(name, rng, length=2, max_dim=3)
    e = ext1_ch(X, Y)
    for z in e.cocycles:
        i, q = extension_from_cocycle_ch(X, Y, z, e)
        assert is_short_exact(i, q)
        assert e.class_of(z).any()


@settings(max_examples=25)
@given(seeds, st.sampled_from(ALGEBRAS))
def test_kernel_and_cokernel(seed, name):
    rng = np.random.default_rng(seed)
    X = random_complex(name, rng, max_dim=4)
    S, incs, projs = complex_direct_sum(X, X)
    K, kinc = kernel_complex(projs[0])
    assert [K.dim(m) for m in K.degrees] == [X.dim(m) for m in X.degrees]
    C, q = cokernel_complex(incs[0])
    assert [C.dim(m) for m in C.degrees] == [X.dim(m) for m in X.degrees]
    assert is_short_exact(incs[0], projs[1])
    Y, inc = subcomplex(S, image_bases(incs[1]))
    assert inc.is_injective()


def test_bad_subcomplex_rejected():
    T = named_modules("T2F2")
    D = disk(T["S_a"], 1)
    with pytest.raises(NotSubcomplex):          # the top of a disk maps onto the bottom
        subcomplex(D, {1: [[1]]})
    with pytest.raises(NotSubcomplex):
        quotient_complex(D, {1: [[1]]})
    Y, _ = subcomplex(D, {0: [[1]]})
    assert Y.dim(0) == 1 and Y.dim(1) == 0


def test_complex_round_trip():
    rng = np.random.default_rng(9)
    X = random_complex("NakA3J2", rng, length=3)
    Y = complex_from_dict(X.algebra, X.to_dict())
    assert list(Y.degrees) == list(X.degrees)
    for m in range(X.lo + 1, X.hi + 1):
        assert np.array_equal(X.d(m).matrix, Y.d(m).matrix)
    assert linalg.rank(X.d(X.hi).matrix, X.p) == linalg.rank(Y.d(Y.hi).matrix, Y.p)
