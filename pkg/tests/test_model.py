import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cotorsion.classes import Pn, dw, ex, exact_class, intersection, perp
from cotorsion.complexes import (
    ChainMap,
    complex_direct_sum,
    disk,
    identity_map,
    is_exact,
    is_short_exact,
    sphere,
    zero_complex,
    zero_map,
)
from cotorsion.library import (
    compatibility_universe,
    module_universe,
    named_modules,
    obstructed_square,
    random_chain_map,
    random_complex,
    random_extension,
    random_lifting_square,
)
from cotorsion.model import (
    LiftingProblem,
    MalformedSquare,
    NotFound,
    Universe,
    approx_search,
    check_compatibility,
    check_cotorsion_pair,
    check_thick,
    factor_map,
    left_perp,
    lift,
    resolve,
    right_perp,
    verify_lift,
)

ALGEBRAS = ("T2F2", "NakA3J2")
seeds = st.integers(0, 2**32 - 1)


@pytest.fixture(scope="module")
def modU():
    return module_universe("T2F2", 2)


def test_projectives_and_everything_form_a_pair(modU):
    r = check_cotorsion_pair(Pn(0), Pn(1), modU)
    assert r.clean
    assert set(r.left) == {"S_a", "P_a", "P_b", "A"} | {n for n in r.left if n.startswith("M")}
    assert set(r.right) == set(modU.names)          # T2F2 is hereditary


def test_corrupted_pairs_are_reported(modU):
    r = check_cotorsion_pair(["S_b"], ["S_a"], modU)
    assert not r.orthogonal
    assert r.violations == [("S_b", "S_a", 1)]
    assert "violation" in r.summary() and "NOT clean" in r.summary()
    r = check_cotorsion_pair(["S_a"], ["S_a"], modU)
    assert r.orthogonal and not r.closed


def test_misclassified_member_yields_a_violation_row(modU):
    # S_b listed among the projectives: Ext^1(S_b, S_a) = 1 shows up as a witness
    projectives = resolve(Pn(0), modU)[0]
    right = right_perp(modU.subset(projectives), modU).members
    r = check_cotorsion_pair(projectives + ["S_b"], right, modU)
    assert ("S_b", "S_a", 1) in r.violations
    assert not r.clean


def test_perp_of_s_b(modU):
    right = right_perp(modU.subset(["S_b"]), modU)
    assert "S_a" not in right and "S_b" in right and "P_b" in right
    assert right.table[("S_b", "S_a")] == 1
    left = left_perp(modU.subset(["S_a"]), modU)
    assert "S_b" not in left and "P_b" in left


def test_universe_validation():
    T = named_modules("T2F2")
    U = Universe([T["S_a"], T["S_b"]], ["x", "y"])
    assert len(U) == 2 and U["y"] is T["S_b"]
    with pytest.raises(Exception):
        Universe([T["S_a"], T["S_b"]], ["x", "x"])


def test_compatibility_on_the_bundled_universe():
    U = compatibility_universe()
    assert len(U) == 12
    rep = check_compatibility(Pn(1), U)
    assert rep.equal
    assert set(rep.lhs) == set(right_perp(U.subset(rep.dw_members), U).members)
    for name in U.names:
        if name not in rep.lhs:
            assert "lhs_failure" in rep.witnesses[name]


def test_compatibility_sees_only_the_universe():
    # S^1(S_b) fails the left side only through Ext^1(S^2(A), S^1(S_b)) != 0
    U = compatibility_universe()
    assert U.names.count("S2(A)") == 1
    rep = check_compatibility(Pn(1), U.subset([n for n in U.names if n != "S2(A)"]))
    assert not rep.equal
    assert set(rep.lhs) ^ set(rep.rhs) == {"S1(S_b)"}
    # with P_0 the top sphere S^2(A) has no S^3(A) beside it and escapes the same way
    rep = check_compatibility(Pn(0), U)
    assert set(rep.lhs) ^ set(rep.rhs) == {"S2(A)"}


def test_approximation_by_projective_cover(modU):
    a = approx_search(named_modules("T2F2")["S_b"], Pn(0), Pn(1), modU)
    i, q = a.maps
    assert a.left_member.member and a.right_member.member
    assert q.is_surjective() and i.is_injective()
    assert a.terms[1].dim == 2                         # P_b -> S_b with kernel S_a


def test_approximation_trivial_when_already_in_class(modU):
    a = approx_search(named_modules("T2F2")["P_b"], Pn(0), Pn(1), modU)
    assert a.candidate == "" and a.searched == 0


def test_approximation_not_found_reports_search():
    T = named_modules("T2F2")
    U = Universe([T["S_b"]], ["S_b"])
    with pytest.raises(NotFound) as info:
        approx_search(T["S_b"], Pn(0), Pn(1), U)
    assert info.value.report["candidates"] == ["S_b"]
    with pytest.raises(ValueError):
        approx_search(T["S_b"], Pn(0), Pn(1), U, side="sideways")


@settings(max_examples=15)
@given(seeds, st.sampled_from(ALGEBRAS))
def test_lifts_satisfy_both_triangles(seed, name):
    rng = np.random.default_rng(seed)
    sq = random_lifting_square(name, rng)
    d = lift(sq)
    assert d is not None and verify_lift(sq, d) is None


@pytest.mark.parametrize("name", ALGEBRAS)
def test_obstructed_square_has_no_lift(name):
    sq = obstructed_square(name, np.random.default_rng(0))
    assert lift(sq) is None


def test_malformed_square_rejected():
    T = named_modules("T2F2")
    X = sphere(T["S_a"], 0)
    Z = zero_complex(X.algebra)
    with pytest.raises(MalformedSquare, match="monomorphism"):
        LiftingProblem(zero_map(X, Z), zero_map(X, Z), identity_map(X), zero_map(Z, Z))
    with pytest.raises(MalformedSquare, match="commute"):
        twice = ChainMap(X, X, {0: [[0]]})
        LiftingProblem(identity_map(X), identity_map(X), identity_map(X), twice)


@pytest.fixture(scope="module")
def compatU():
    return compatibility_universe()


@pytest.mark.parametrize("trivial", ("fibration", "cofibration"))
@pytest.mark.parametrize("seed", range(6))
def test_factorizations_verify(compatU, trivial, seed):
    U = compatU
    rng = np.random.default_rng(seed)
    X = random_complex("T2F2", rng, length=2, max_dim=3)
    Y = random_complex("T2F2", rng, length=2, max_dim=3)
    f = random_chain_map(X, Y, rng)
    A = dw(Pn(0))
    left = A if trivial == "fibration" else intersection(A, exact_class())
    B = perp([U[n] for n in resolve(left, U)[0]])
    fac = factor_map(f, A, B, U, trivial=trivial)
    assert fac.verify() is None
    if trivial == "fibration":
        assert is_exact(fac.kernel)
    else:
        assert is_exact(fac.cokernel)


def test_factor_map_rejects_unknown_mode():
    X = sphere(named_modules("T2F2")["S_a"], 0)
    with pytest.raises(ValueError):
        factor_map(identity_map(X), Pn(0), Pn(0), Universe([]), trivial="both")


@settings(max_examples=10)
@given(seeds, st.sampled_from(ALGEBRAS))
def test_exactness_is_thick(seed, name):
    rng = np.random.default_rng(seed)
    X = random_complex(name, rng, length=2, max_dim=3)
    Y = random_complex(name, rng, length=2, max_dim=3)
    i, q = random_extension(X, Y, rng)
    S, incs, projs = complex_direct_sum(X, Y)
    rep = check_thick([("ses", i, q), ("retract", incs[0], projs[0]), ("retract", incs[1], projs[1])])
    assert rep.ok
    assert [r["kind"] for r in rep.rows] == ["ses", "retract", "retract"]
    assert rep.rows[0]["exact"] == [is_exact(Y), is_exact(i.target), is_exact(X)]


def test_thick_report_flags_bad_samples():
    T = named_modules("T2F2")
    D = disk(T["S_a"], 1)
    S = sphere(T["S_a"], 0)
    Z = zero_complex(D.algebra)
    bad_ses = ("ses", zero_map(Z, D), zero_map(D, S))
    bad_retract = ("retract", zero_map(S, D), zero_map(D, S))
    rep = check_thick([bad_ses, bad_retract])
    assert not rep.ok
    assert [r["reason"] for r in rep.rows] == ["not short exact", "r o s is not the identity"]
    assert not is_short_exact(*bad_ses[1:])
    with pytest.raises(ValueError):
        check_thick([("square", None, None)])


def test_exact_class_spec_on_universe():
    U = compatibility_universe()
    rep = check_cotorsion_pair(intersection(dw(Pn(0)), exact_class()), ex(Pn(0)), U)
    assert set(rep.left) == set(rep.right) == {"D1(A)", "D1(P_b)", "D1(S_a)", "D0(P_b)"}
    assert rep.orthogonal          # disks on projectives have no extensions
