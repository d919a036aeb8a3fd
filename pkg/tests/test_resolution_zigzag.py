import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cotorsion import certificates, linalg
from cotorsion.checker import check_certificate
from cotorsion.library import bundled_algebra, named_modules, random_module
from cotorsion.modules import direct_sum, is_isomorphic, regular_module, submodule_generated
from cotorsion.projectives import is_projective
from cotorsion.resolution import projective_resolution, resolution_from_dict, resolution_to_dict
from cotorsion.zigzag import (
    BudgetExceeded,
    NotASubmodule,
    NotInClass,
    flat_zigzag_subresolution,
    module_filtration,
    pure_closure,
    zigzag_subresolution,
)

ALGEBRAS = ("T2F2", "NakA3J2")
seeds = st.integers(0, 2**32 - 1)


def accepted(cert):
    return check_certificate(json.loads(certificates.dump(cert))).ok


@settings(max_examples=25)
@given(seeds, st.sampled_from(ALGEBRAS))
def test_resolution_exact_and_round_trips(seed, name):
    rng = np.random.default_rng(seed)
    M = random_module(name, rng, 5)
    res = projective_resolution(M, 4)
    assert res.defect() is None
    assert all(is_projective(t.total)[0] for t in res.terms)
    back = resolution_from_dict(M, json.loads(json.dumps(certificates._plain(resolution_to_dict(res)))))
    assert [t.labels for t in back.terms] == [t.labels for t in res.terms]


def test_zigzag_whole_module():
    M = named_modules("NakA3J2")["A"]
    res = projective_resolution(M, 4)
    sub = zigzag_subresolution(res, linalg.identity(M.dim), kappa=M.dim)
    assert [set(s) for s in sub.index_sets] == [set(t.labels) for t in res.terms]
    assert sub.sub_target.shape[0] == M.dim
    assert sub.quotient.target.dim == 0


def test_zigzag_zero_submodule():
    M = named_modules("NakA3J2")["S_1"]
    res = projective_resolution(M, 4)
    sub = zigzag_subresolution(res, linalg.zeros(0, M.dim), kappa=1)
    assert all(not s for s in sub.index_sets)
    assert sub.sub_target.shape[0] == 0
    assert accepted(certificates.subresolution_certificate(sub))


def test_zigzag_errors():
    T = named_modules("T2F2")
    M = T["P_b"]
    res = projective_resolution(M, 4)
    with pytest.raises(NotASubmodule):
        zigzag_subresolution(res, np.array([[0, 1]]))       # the top of P_b generates all of P_b
    with pytest.raises(ValueError):
        zigzag_subresolution(res, linalg.identity(2), kappa=1)


def test_zigzag_budget_reports_achieved_size():
    # the diagonal socle of P_b + P_b has dimension 1 but touches both summands
    T = named_modules("T2F2")
    M = direct_sum(T["P_b"], T["P_b"])[0]
    res = projective_resolution(M, 4)
    diag = submodule_generated(M, np.array([1, 0, 1, 0]))
    assert diag.shape[0] == 1
    with pytest.raises(BudgetExceeded) as info:
        zigzag_subresolution(res, diag, kappa=1)
    assert info.value.achieved == [4]
    assert zigzag_subresolution(res, diag, kappa=2).sizes() == [4]


@settings(max_examples=25)
@given(seeds, st.sampled_from(ALGEBRAS))
def test_zigzag_contains_generators(seed, name):
    rng = np.random.default_rng(seed)
    M = random_module(name, rng, 5)
    res = projective_resolution(M, 4)
    N = submodule_generated(M, rng.integers(0, M.p, size=M.dim))
    sub = zigzag_subresolution(res, N)
    if N.shape[0]:
        assert linalg.in_span(sub.sub_target, N, M.p)
    assert sub.quotient.defect() is None
    assert accepted(certificates.subresolution_certificate(sub))


def test_module_filtration_one_big_step():
    M = named_modules("NakA3J2")["A"]
    f = module_filtration(M, M.dim)
    assert len(f.steps) == 2 and f.steps[-1].basis.shape[0] == M.dim


def test_module_filtration_pb_squared():
    T = named_modules("T2F2")
    M = direct_sum(T["P_b"], T["P_b"])[0]
    f = module_filtration(M, 2)
    assert len(f.steps) >= 3
    for a, b in zip(f.steps, f.steps[1:]):
        assert b.basis.shape[0] - a.basis.shape[0] == 2
        assert is_projective(b.quotient)[0] and is_isomorphic(b.quotient, T["P_b"])
    assert accepted(certificates.module_filtration_certificate(f))


def test_module_filtration_rejects_bad_input():
    N = named_modules("NakA3J2")
    with pytest.raises(ValueError):
        module_filtration(N["A"], 0)
    with pytest.raises(NotInClass):
        module_filtration(N["S_1"], 2, n=1)


@settings(max_examples=15)
@given(seeds, st.sampled_from(ALGEBRAS), st.integers(1, 3))
def test_module_filtration_quotients_small(seed, name, kappa):
    rng = np.random.default_rng(seed)
    M = random_module(name, rng, 5)
    try:
        f = module_filtration(M, kappa)
    except BudgetExceeded as exc:          # a nice quotient may be forced above a small budget
        assert exc.achieved > kappa
        f = module_filtration(M, M.dim)
        kappa = M.dim
    sizes = [b.basis.shape[0] - a.basis.shape[0] for a, b in zip(f.steps, f.steps[1:])]
    assert all(0 < s <= kappa for s in sizes) and sum(sizes) == M.dim
    assert accepted(certificates.module_filtration_certificate(f))


def test_pure_closure_of_everything_is_everything():
    A = regular_module(bundled_algebra("T2F2"))
    c = pure_closure(linalg.identity(A.dim), A, A.dim)
    assert c.basis.shape[0] == A.dim


def test_pure_closure_diagonal():
    A = regular_module(bundled_algebra("T2F2"))
    A2 = direct_sum(A, A)[0]
    diag = np.concatenate([linalg.identity(A.dim)] * 2, axis=1)
    c = pure_closure(diag, A2, A.dim)
    assert linalg.in_span(c.basis, diag, 2)
    assert accepted(certificates.pure_closure_certificate(A2, diag, c, A.dim))


def test_pure_closure_needs_flat_ambient():
    S_b = named_modules("T2F2")["S_b"]
    with pytest.raises(NotInClass):
        pure_closure(linalg.identity(1), S_b)


def test_flat_zigzag_whole_module():
    M = named_modules("T2F2")["S_b"]
    res = projective_resolution(M, 4)
    sub = flat_zigzag_subresolution(res, linalg.identity(M.dim))
    assert [s.shape[0] for s in sub.sub_terms] == [t.total.dim for t in res.terms]
    assert sub.sub_target.shape[0] == M.dim
