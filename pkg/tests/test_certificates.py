import copy

import numpy as np
import pytest

from _corpus import certificate_corpus, mutate
from cotorsion import certificates
from cotorsion.checker import check_certificate, check_file

KINDS = {"subresolution", "module-filtration", "dw-filtration", "ex-filtration", "staircase", "pure-closure"}


@pytest.fixture(scope="module")
def corpus():
    return certificate_corpus(rounds=1)


def test_corpus_covers_every_kind_and_is_accepted(corpus):
    assert {c["kind"] for c in corpus} == KINDS
    for c in corpus:
        r = check_certificate(c)
        assert r.ok, (c["kind"], r.errors)


def test_file_round_trip(corpus, tmp_path):
    for k, c in enumerate(corpus):
        path = tmp_path / f"c{k}.json"
        certificates.dump(c, path)
        assert certificates.load(path) == c
        assert check_file(path).ok


def test_dump_is_canonical(corpus):
    c = corpus[0]
    shuffled = dict(reversed(list(c.items())))
    assert certificates.dump(shuffled) == certificates.dump(c)


def test_tampered_basis_names_its_degree(corpus):
    c = next(c for c in corpus if c["kind"] == "staircase")
    for degree, basis in c["witness"]["bases"].items():
        if len(basis) and degree != max(c["witness"]["bases"]):
            bad = copy.deepcopy(c)
            bad["witness"]["bases"][degree].pop()
            r = check_certificate(bad)
            assert not r.ok and r.errors[0].startswith(f"bases[{degree}]")


def test_envelope_errors(corpus):
    c = corpus[0]
    assert check_certificate("nonsense").errors == ["certificate: not an object"]
    assert "unknown certificate kind" in check_certificate(dict(c, kind="banana")).errors[0]
    assert "unsupported version" in check_certificate(dict(c, version=99)).errors[0]
    assert "malformed" in check_certificate({k: v for k, v in c.items() if k != "witness"}).errors[0]


def test_digest_binds_inputs(corpus):
    for c in corpus:
        assert c["inputs_digest"] == certificates.digest(c["kind"], c["algebra"], c["inputs"])
        bad = copy.deepcopy(c)
        bad["inputs_digest"] = "0" * len(c["inputs_digest"])
        assert "inputs_digest" in check_certificate(bad).errors[0]


def test_mutate_always_changes_something(corpus):
    rng = np.random.default_rng(0)
    for c in corpus:
        m, path, op = mutate(c, rng)
        assert m != c and path[0] == "witness" and op in ("change", "drop")


@pytest.mark.slow
def test_oracle_never_accepts_what_the_checker_rejects():
    # the oracle behind the mutation criterion must not be more lenient than the checker
    from test_acceptance import equivalent_mutant
    rng = np.random.default_rng(11)
    corpus = certificate_corpus(seed=5, rounds=2)
    disagree = 0
    for _ in range(600):
        c = corpus[int(rng.integers(len(corpus)))]
        m, path, op = mutate(c, rng)
        if not check_certificate(m).ok and equivalent_mutant(m, path, op):
            disagree += 1
    assert disagree == 0
