"""Serializable certificates for the constructions.

A certificate is a JSON-compatible dict ``{kind, algebra, inputs,
inputs_digest, witness}``. The digest binds the witness to the exact inputs;
everything under ``witness`` is re-verified by :mod:`cotorsion.checker`.
"""
import hashlib
import json

import numpy as np

from . import linalg
from .resolution import resolution_to_dict

VERSION = 1


def _plain(x):
    """Convert numpy arrays, tuples and frozensets into JSON-ready values."""
    if isinstance(x, np.ndarray):
        return x.tolist()
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, frozenset | set):
        return sorted((_plain(v) for v in x), key=lambda v: json.dumps(v))
    return x


def canonical_json(obj):
    return json.dumps(_plain(obj), sort_keys=True, separators=(",", ":"))


def digest(kind, algebra, inputs):
    payload = canonical_json({"kind": kind, "algebra": algebra, "inputs": inputs})
    return hashlib.sha256(payload.encode()).hexdigest()


def make_certificate(kind, algebra, inputs, witness):
    alg = _plain(algebra.to_dict())
    inputs = _plain(inputs)
    return {
        "version": VERSION,
        "kind": kind,
        "algebra": alg,
        "inputs": inputs,
        "inputs_digest": digest(kind, alg, inputs),
        "witness": _plain(witness),
    }


def retraction_ambiguity(action_F, action_S, S, p):
    """Canonical basis of ``{h : F -> S module map with h S^T = 0}``, flattened row-major.

    Retractions onto ``S`` form a coset of this space; certificates carry the
    normal form of the coset so that the witness is unique.
    """
    k, d = S.shape
    if k == 0 or d == 0:
        return linalg.zeros(0, k * d)
    eqs = [np.kron(np.eye(k, dtype=np.int64), a.T) - np.kron(b, np.eye(d, dtype=np.int64))
           for a, b in zip(action_F, action_S)]
    eqs.append(np.kron(np.eye(k, dtype=np.int64), S))
    return linalg.kernel_basis(np.concatenate(eqs) % p, p)


def canonical_retraction(F, S, r):
    """Normal form of the retraction ``r: F -> S`` (rows in coordinates of the basis ``S``)."""
    from .modules import submodule
    p = F.p
    sub, _ = submodule(F, S)
    V = retraction_ambiguity(F.action, sub.action, S, p)
    flat = linalg.reduce_mod(V, np.asarray(r).ravel(), p)[0]
    return flat.reshape(S.shape[0], F.dim)


def _labels(index_sets):
    return [sorted((list(lab) if isinstance(lab, tuple) else lab for lab in s), key=json.dumps)
            for s in index_sets]


def subresolution_certificate(sub):
    """For a :class:`~cotorsion.zigzag.Subresolution`."""
    res = sub.parent
    inputs = {
        "module": res.target.to_dict(),
        "resolution": resolution_to_dict(res),
        "generators": sub.generators,
        "kappa": sub.kappa,
    }
    witness = {"index_sets": _labels(sub.index_sets), "sub_target": sub.sub_target}
    return make_certificate("subresolution", res.algebra, inputs, witness)


def module_filtration_certificate(filt):
    res = filt.resolution
    inputs = {
        "module": filt.target.to_dict(),
        "resolution": resolution_to_dict(res),
        "kappa": filt.kappa,
        "n": filt.n,
    }
    witness = {"steps": [{"index_sets": _labels(s.index_sets), "basis": s.basis} for s in filt.steps]}
    return make_certificate("module-filtration", res.algebra, inputs, witness)


def complex_filtration_certificate(filt):
    X = filt.target
    inputs = {
        "complex": X.to_dict(),
        "resolutions": {str(m): resolution_to_dict(filt.resolutions[m]) for m in X.degrees},
        "kappa": filt.kappa,
        "n": filt.n,
        "exact": filt.kind == "ex",
    }
    steps = []
    for s in filt.steps:
        steps.append({
            "index_sets": {str(m): _labels(s["index"][m]) for m in X.degrees},
            "bases": {str(m): s["bases"][m] for m in X.degrees},
        })
    return make_certificate(f"{filt.kind}-filtration", X.algebra, inputs, {"steps": steps})


def staircase_certificate(result, resolutions, n, mode="full"):
    """For a :class:`~cotorsion.complex_zigzag.StaircaseResult`.

    ``mode="compact"`` keeps only the final witnesses and drops the ladder.
    """
    if mode not in ("full", "compact"):
        raise ValueError("mode must be 'full' or 'compact'")
    X = result.complex
    sched = result.schedule
    inputs = {
        "complex": X.to_dict(),
        "resolutions": {str(m): resolution_to_dict(resolutions[m]) for m in X.degrees},
        "element": {"degree": result.degree, "vector": result.vector},
        "kappa": result.kappa,
        "n": n,
        "track": result.track,
        "schedule": sched.to_dict(),
        "mode": mode,
    }
    terms = {}
    for m in X.degrees:
        cert = result.term_certificates[m]
        if result.track == "projective":
            terms[str(m)] = {"index_sets": _labels(cert.index_sets)}
        else:
            Fs = [t.total for t in resolutions[m].terms]
            terms[str(m)] = {
                "sub_terms": cert.sub_terms,
                "retractions": [canonical_retraction(F, S, pc.retraction)
                                for F, S, pc in zip(Fs, cert.sub_terms, cert.purity)],
            }
    witness = {"bases": {str(m): result.bases[m] for m in X.degrees}, "terms": terms}
    if mode == "full":
        witness["ladder"] = [
            {"degree": step["degree"], "bases": {str(m): b for m, b in step["bases"].items()}}
            for step in result.ladder
        ]
    return make_certificate("staircase", X.algebra, inputs, witness)


def pure_closure_certificate(F, S0, closure, kappa=None):
    inputs = {"module": F.to_dict(), "seed": S0, "kappa": kappa}
    witness = {"basis": closure.basis,
               "retraction": canonical_retraction(F, closure.basis, closure.retraction)}
    return make_certificate("pure-closure", F.algebra, inputs, witness)


def dump(cert, path=None):
    text = json.dumps(cert, sort_keys=True, indent=1)
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    return text


def load(path):
    with open(path) as fh:
        return json.load(fh)
