"""Independent certificate checker.

Only the algebra loader and the field linear algebra are shared with the
constructors; modules, projective summands, resolutions, subcomplexes and
quotients are rebuilt here from the raw matrices.
"""
import json
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .algebra import AlgebraError, load_algebra
from .certificates import VERSION, digest


class Reject(Exception):
    """A certificate check failed; ``where`` names the offending part."""

    def __init__(self, where, message):
        super().__init__(f"{where}: {message}")
        self.where = where


@dataclass
class CheckResult:
    ok: bool
    kind: str
    errors: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


# -- raw data ------------------------------------------------------------------

def _int_array(x, where):
    a = np.asarray(x)
    if a.size and a.dtype.kind not in "iu":
        raise Reject(where, "entries must be integers")
    return a.astype(np.int64) if a.size else a


def _matrix(x, rows, cols, p, where):
    a = _int_array(x, where)
    if rows == 0 or cols == 0:
        if a.size:
            raise Reject(where, f"expected an empty {rows}x{cols} matrix")
        return np.zeros((rows, cols), dtype=np.int64)
    if a.shape != (rows, cols):
        raise Reject(where, f"expected shape {(rows, cols)}, got {a.shape}")
    if ((a < 0) | (a >= p)).any():
        raise Reject(where, "entries not reduced mod p")
    return a


def _rows(x, cols, p, where):
    a = _int_array(x, where)
    if a.size == 0:
        return np.zeros((0, cols), dtype=np.int64)
    if a.ndim != 2 or a.shape[1] != cols:
        raise Reject(where, f"expected rows of length {cols}")
    if ((a < 0) | (a >= p)).any():
        raise Reject(where, "entries not reduced mod p")
    return a


def _canonical(basis, p, where):
    """Reject bases that are not in reduced row echelon form without zero rows."""
    if basis.shape[0] == 0:
        return basis
    if not np.array_equal(linalg.row_basis(basis, p, basis.shape[1]), basis):
        raise Reject(where, "basis is not canonical (reduced row echelon, independent rows)")
    return basis


def _label(x, where):
    if isinstance(x, list):
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in x):
            raise Reject(where, "label entries must be integers")
        return tuple(x)
    if isinstance(x, (int, str)) and not isinstance(x, bool):
        return x
    raise Reject(where, f"bad label {x!r}")


# -- modules ---------------------------------------------------------------------

@dataclass
class Rep:
    dim: int
    action: np.ndarray   # (algebra dim, dim, dim)


def _check_rep(alg, action, where):
    p = alg.p
    d = action.shape[1]
    unit = np.einsum("i,iab->ab", alg.unit, action) % p
    if not np.array_equal(unit, np.eye(d, dtype=np.int64)):
        raise Reject(where, "unit does not act as the identity")
    lhs = np.einsum("iab,jbc->ijac", action, action) % p
    rhs = np.einsum("ijk,kac->ijac", alg.mul, action) % p
    if not np.array_equal(lhs, rhs):
        raise Reject(where, "action is not multiplicative")


def _module(alg, doc, where):
    d = doc.get("dim") if isinstance(doc, dict) else None
    if not isinstance(d, int) or isinstance(d, bool) or d < 0:
        raise Reject(where, "module dimension missing")
    a = _int_array(doc["action"], where)
    if d == 0:
        action = np.zeros((alg.dim, 0, 0), dtype=np.int64)
    else:
        if a.shape != (alg.dim, d, d) or ((a < 0) | (a >= alg.p)).any():
            raise Reject(where, "action has the wrong shape or unreduced entries")
        action = a
    _check_rep(alg, action, where)
    return Rep(d, action)


def _intertwines(alg, src, dst, f, where):
    p = alg.p
    lhs = np.einsum("ab,ibc->iac", f, src.action) % p
    rhs = np.einsum("iab,bc->iac", dst.action, f) % p
    if not np.array_equal(lhs, rhs):
        raise Reject(where, "matrix is not a module map")


def _stable(rep, basis, p, where):
    if basis.shape[0] == 0:
        return
    moved = np.einsum("iab,tb->ita", rep.action, basis).reshape(-1, rep.dim) % p
    for v in moved:
        if not linalg.in_span(basis, v, p):
            raise Reject(where, "subspace is not a submodule")


def _sub_rep(rep, basis, p):
    k = basis.shape[0]
    if k == 0:
        return Rep(0, np.zeros((rep.action.shape[0], 0, 0), dtype=np.int64))
    action = np.stack([linalg.coordinates(basis, (basis @ a.T) % p, p).T for a in rep.action])
    return Rep(k, action % p)


def _retraction(alg, F, S, r, p, where):
    """``r`` is a module retraction ``F -> S`` in normal form modulo the other retractions."""
    k, d = S.shape
    sub = _sub_rep(F, S, p)
    _intertwines(alg, F, sub, r, where)
    if not np.array_equal(r @ S.T % p, np.eye(k, dtype=np.int64)):
        raise Reject(where, "not a retraction onto the submodule")
    if k == 0 or d == 0:
        return
    eye_k, eye_d = np.eye(k, dtype=np.int64), np.eye(d, dtype=np.int64)
    eqs = [np.kron(eye_k, a.T) - np.kron(b, eye_d) for a, b in zip(F.action, sub.action)]
    eqs.append(np.kron(eye_k, S))
    V = linalg.kernel_basis(np.concatenate(eqs) % p, p)
    if not np.array_equal(linalg.reduce_mod(V, r.ravel(), p)[0], r.ravel() % p):
        raise Reject(where, "retraction is not in normal form")


def _standard_projective(alg, j):
    """``A e_j`` on the canonical basis of the left ideal."""
    idem = alg.idempotents if alg.idempotents is not None else (alg.unit,)
    if not 0 <= j < len(idem):
        raise Reject("kinds", f"no idempotent {j}")
    basis = linalg.image_basis(alg.right_mult(idem[j]), alg.p)
    action = []
    for i in range(alg.dim):
        moved = (alg.left_mult(alg.basis_vector(i)) @ basis.T % alg.p).T
        action.append(linalg.coordinates(basis, moved, alg.p).T)
    return Rep(basis.shape[0], np.stack(action) % alg.p)


def _block_sum(alg, reps):
    d = sum(r.dim for r in reps)
    action = np.zeros((alg.dim, d, d), dtype=np.int64)
    o = 0
    for r in reps:
        action[:, o:o + r.dim, o:o + r.dim] = r.action
        o += r.dim
    return Rep(d, action)


@dataclass
class Term:
    labels: list
    offsets: dict
    rep: Rep
    sizes: list

    def coords(self, labels):
        out = []
        for lab in self.labels:
            if lab in labels:
                a, b = self.offsets[lab]
                out.extend(range(a, b))
        return out


def _term(alg, doc, where):
    labels = [_label(x, where) for x in doc["labels"]]
    kinds = doc["kinds"]
    if len(labels) != len(kinds) or len(set(labels)) != len(labels):
        raise Reject(where, "labels must be unique and match the kinds")
    reps, offsets, o = [], {}, 0
    for lab, j in zip(labels, kinds):
        if not isinstance(j, int) or isinstance(j, bool):
            raise Reject(where, "kinds must be integers")
        r = _standard_projective(alg, j)
        offsets[lab] = (o, o + r.dim)
        o += r.dim
        reps.append(r)
    return Term(labels, offsets, _block_sum(alg, reps), [r.dim for r in reps])


def _exact(mats, dims, p, where):
    """``V_n -> ... -> V_0 -> V_{-1} -> 0`` exact, ``mats[k]: V_k -> V_{k-1}``, ``dims[k+1] = dim V_k``."""
    ranks = [linalg.rank(m, p) if m.size else 0 for m in mats]
    n = len(mats) - 1
    if ranks[0] != dims[0]:
        raise Reject(where, "not surjective onto the target")
    for k in range(1, n + 1):
        if mats[k - 1].size and mats[k].size and (mats[k - 1] @ mats[k] % p).any():
            raise Reject(where, f"composite at level {k - 1} is nonzero")
    for k in range(n):
        if ranks[k] + ranks[k + 1] != dims[k + 1]:
            raise Reject(where, f"not exact at level {k}")
    if ranks[n] != dims[n + 1]:
        raise Reject(where, "last map is not injective")


@dataclass
class Res:
    target: Rep
    terms: list
    maps: list


def _resolution(alg, target, doc, where):
    p = alg.p
    terms = [_term(alg, t, f"{where}.terms[{k}]") for k, t in enumerate(doc["terms"])]
    if len(doc["maps"]) != len(terms) or not terms:
        raise Reject(where, "one map per term required")
    maps, prev = [], target
    for k, (t, m) in enumerate(zip(terms, doc["maps"])):
        f = _matrix(m, prev.dim, t.rep.dim, p, f"{where}.maps[{k}]")
        _intertwines(alg, t.rep, prev, f, f"{where}.maps[{k}]")
        maps.append(f)
        prev = t.rep
    _exact(maps, [target.dim] + [t.rep.dim for t in terms], p, where)
    return Res(target, terms, maps)


def _index_sets(res, doc, where):
    if not isinstance(doc, list) or len(doc) != len(res.terms):
        raise Reject(where, "one index set per resolution term required")
    out = []
    for k, (t, s) in enumerate(zip(res.terms, doc)):
        labs = [_label(x, f"{where}[{k}]") for x in s]
        if len(set(labs)) != len(labs) or not set(labs) <= set(t.labels):
            raise Reject(f"{where}[{k}]", "index set has duplicates or unknown labels")
        out.append(set(labs))
    return out


def _coordinate_space(term, labels):
    cols = term.coords(labels)
    b = np.zeros((len(cols), term.rep.dim), dtype=np.int64)
    b[np.arange(len(cols)), cols] = 1
    return b


def _reduce(sub, vectors, p):
    """Reduce rows of ``vectors`` modulo the canonical basis ``sub``."""
    v = np.array(vectors, dtype=np.int64) % p
    if sub.shape[0] == 0 or v.shape[0] == 0:
        return v
    piv = [int(np.flatnonzero(r)[0]) for r in sub]
    for r, c in zip(sub, piv):
        v = (v - np.outer(v[:, c], r)) % p
    return v


def _contained(small, big, p):
    return all(linalg.in_span(big, v, p) for v in small) if small.shape[0] else True


def _quotient_exact(maps, small, big, p, where):
    """The sequence induced on ``big_k / small_k`` is exact; ``small``/``big`` list level ``-1`` first."""
    for k, f in enumerate(maps):
        for spaces, name in ((small, "sub"), (big, "ambient")):
            src, dst = spaces[k + 1], spaces[k]
            if src.shape[0] and not _contained((f @ src.T % p).T, dst, p):
                raise Reject(where, f"{name} spaces are not preserved at level {k}")
    for k in range(len(big)):
        if not _contained(small[k], big[k], p):
            raise Reject(where, f"sub space not inside ambient at level {k - 1}")
    quot = []
    for s, b in zip(small, big):
        r = _reduce(s, b, p)
        quot.append(linalg.row_basis(r, p, b.shape[1]) if r.shape[0] else np.zeros((0, b.shape[1]), dtype=np.int64))
    mats = []
    for k, f in enumerate(maps):
        Qs, Qt = quot[k + 1], quot[k]
        if Qs.shape[0] == 0 or Qt.shape[0] == 0:
            mats.append(np.zeros((Qt.shape[0], Qs.shape[0]), dtype=np.int64))
            continue
        img = _reduce(small[k], (f @ Qs.T % p).T, p)
        mats.append(linalg.coordinates(Qt, img, p).T % p)
    _exact(mats, [q.shape[0] for q in quot], p, where)


def _image(f, space, p, width):
    if space.shape[0] == 0:
        return np.zeros((0, width), dtype=np.int64)
    return linalg.row_basis((f @ space.T % p).T, p, width)


def _nice_pair(res, small_sets, big_sets, small_img, big_img, p, where):
    """Coordinate subresolutions on ``small_sets ⊆ big_sets`` resolving ``small_img ⊆ big_img``."""
    for sets, img, name in ((small_sets, small_img, "sub"), (big_sets, big_img, "ambient")):
        got = _image(res.maps[0], _coordinate_space(res.terms[0], sets[0]), p, res.target.dim)
        if not (got.shape == img.shape and np.array_equal(got, img)):
            raise Reject(where, f"{name} index sets do not resolve the claimed submodule")
    small = [small_img] + [_coordinate_space(t, s) for t, s in zip(res.terms, small_sets)]
    big = [big_img] + [_coordinate_space(t, s) for t, s in zip(res.terms, big_sets)]
    _quotient_exact(res.maps, small, big, p, where)


def _size(res, sets):
    return [sum(t.sizes[t.labels.index(lab)] for lab in s) for t, s in zip(res.terms, sets)]


# -- complexes -------------------------------------------------------------------

@dataclass
class Cx:
    lo: int
    hi: int
    mods: dict
    d: dict

    @property
    def degrees(self):
        return range(self.lo, self.hi + 1)


def _complex(alg, doc, where):
    p = alg.p
    lo, hi = doc["lo"], doc["hi"]
    mods = {lo + k: _module(alg, m, f"{where}.X{lo + k}") for k, m in enumerate(doc["modules"])}
    if hi != lo + len(doc["modules"]) - 1:
        raise Reject(where, "support does not match the number of terms")
    bd = doc["boundaries"]
    if set(bd) != {str(m) for m in range(lo + 1, hi + 1)}:
        raise Reject(where, "boundary degrees do not match the support")
    d = {}
    for m in range(lo + 1, hi + 1):
        d[m] = _matrix(bd[str(m)], mods[m - 1].dim, mods[m].dim, p, f"{where}.d{m}")
        _intertwines(alg, mods[m], mods[m - 1], d[m], f"{where}.d{m}")
    for m in range(lo + 2, hi + 1):
        if (d[m - 1] @ d[m] % p).any():
            raise Reject(where, f"d{m - 1} d{m} != 0")
    return Cx(lo, hi, mods, d)


def _bases(X, doc, p, where, canonical=True):
    if not isinstance(doc, dict) or set(doc) != {str(m) for m in X.degrees}:
        raise Reject(where, "one basis per degree required")
    out = {}
    for m in X.degrees:
        b = _rows(doc[str(m)], X.mods[m].dim, p, f"{where}[{m}]")
        if canonical:
            _canonical(b, p, f"{where}[{m}]")
        _stable(X.mods[m], b, p, f"{where}[{m}]")
        out[m] = b
    return out


def _subcomplex(X, B, p, where):
    for m in range(X.lo + 1, X.hi + 1):
        img = (X.d[m] @ B[m].T % p).T if B[m].shape[0] else B[m]
        if img.shape[0] and not _contained(img, B[m - 1], p):
            raise Reject(where, f"boundary of degree {m} leaves the subcomplex")


def _quotient_complex_exact(X, A, B, p, where):
    """``B / A`` is exact, for subcomplexes ``A ⊆ B`` given by canonical bases."""
    quot = {}
    for m in X.degrees:
        if not _contained(A[m], B[m], p):
            raise Reject(where, f"degree {m}: not increasing")
        r = _reduce(A[m], B[m], p)
        quot[m] = linalg.row_basis(r, p, X.mods[m].dim) if r.shape[0] else np.zeros((0, X.mods[m].dim), dtype=np.int64)
    ranks = {}
    for m in range(X.lo + 1, X.hi + 1):
        Qs, Qt = quot[m], quot[m - 1]
        if Qs.shape[0] == 0 or Qt.shape[0] == 0:
            ranks[m] = 0
            continue
        img = _reduce(A[m - 1], (X.d[m] @ Qs.T % p).T, p)
        ranks[m] = linalg.rank(img, p) if img.size else 0
    for m in X.degrees:
        if ranks.get(m, 0) + ranks.get(m + 1, 0) != quot[m].shape[0]:
            raise Reject(where, f"not exact in degree {m}")


def _zero_bases(X):
    return {m: np.zeros((0, X.mods[m].dim), dtype=np.int64) for m in X.degrees}


def _full_bases(X):
    return {m: np.eye(X.mods[m].dim, dtype=np.int64) for m in X.degrees}


def _degree_resolutions(alg, X, doc, n, where):
    if set(doc) != {str(m) for m in X.degrees}:
        raise Reject(where, "one resolution per degree required")
    out = {}
    for m in X.degrees:
        r = _resolution(alg, X.mods[m], doc[str(m)], f"{where}[{m}]")
        if n is not None and len(r.terms) - 1 > n:
            raise Reject(f"{where}[{m}]", f"resolution longer than {n}")
        out[m] = r
    return out


# -- kinds -------------------------------------------------------------------------

def _positive(x, where, allow_none=True):
    if x is None and allow_none:
        return None
    if not isinstance(x, int) or isinstance(x, bool) or x < (0 if where == "n" else 1):
        raise Reject(where, "must be a positive integer")
    return x


def _check_subresolution(alg, inputs, witness):
    p = alg.p
    M = _module(alg, inputs["module"], "module")
    res = _resolution(alg, M, inputs["resolution"], "resolution")
    kappa = _positive(inputs["kappa"], "kappa")
    N = _rows(inputs["generators"], M.dim, p, "generators")
    sets = _index_sets(res, witness["index_sets"], "index_sets")
    Np = _canonical(_rows(witness["sub_target"], M.dim, p, "sub_target"), p, "sub_target")
    if not _contained(N, Np, p):
        raise Reject("sub_target", "does not contain the generators")
    empty = [set() for _ in res.terms]
    full = [set(t.labels) for t in res.terms]
    _nice_pair(res, empty, sets, np.zeros((0, M.dim), dtype=np.int64), Np, p, "subresolution")
    _nice_pair(res, sets, full, Np, np.eye(M.dim, dtype=np.int64), p, "quotient resolution")
    if kappa is not None:
        for k, (s, t) in enumerate(zip(_size(res, sets), res.terms)):
            if s > kappa * max(t.sizes, default=0):
                raise Reject(f"index_sets[{k}]", f"sub-sum of dimension {s} exceeds the budget")


def _check_module_filtration(alg, inputs, witness):
    p = alg.p
    M = _module(alg, inputs["module"], "module")
    res = _resolution(alg, M, inputs["resolution"], "resolution")
    kappa = _positive(inputs["kappa"], "kappa", allow_none=False)
    n = _positive(inputs["n"], "n", allow_none=False)
    if len(res.terms) - 1 > n:
        raise Reject("resolution", f"longer than {n}")
    steps = witness["steps"]
    if len(steps) < 1:
        raise Reject("steps", "empty filtration")
    prev_sets, prev = None, None
    for a, step in enumerate(steps):
        where = f"steps[{a}]"
        sets = _index_sets(res, step["index_sets"], f"{where}.index_sets")
        B = _canonical(_rows(step["basis"], M.dim, p, f"{where}.basis"), p, f"{where}.basis")
        if a == 0:
            if B.shape[0] or any(sets):
                raise Reject(where, "filtration must start at 0")
        else:
            if B.shape[0] <= prev.shape[0]:
                raise Reject(where, "filtration does not grow")
            if B.shape[0] - prev.shape[0] > kappa:
                raise Reject(where, "quotient exceeds the budget")
            _nice_pair(res, prev_sets, sets, prev, B, p, where)
        prev_sets, prev = sets, B
    if prev.shape[0] != M.dim:
        raise Reject(f"steps[{len(steps) - 1}]", "filtration does not reach the module")


def _check_complex_filtration(alg, inputs, witness, exact):
    p = alg.p
    X = _complex(alg, inputs["complex"], "complex")
    kappa = _positive(inputs["kappa"], "kappa", allow_none=False)
    n = _positive(inputs["n"], "n", allow_none=False)
    if inputs["exact"] is not exact:
        raise Reject("exact", "flag does not match the certificate kind")
    res = _degree_resolutions(alg, X, inputs["resolutions"], n, "resolutions")
    if exact:
        _quotient_complex_exact(X, _zero_bases(X), _full_bases(X), p, "complex")
    steps = witness["steps"]
    if len(steps) < 1:
        raise Reject("steps", "empty filtration")
    prev = None
    for a, step in enumerate(steps):
        where = f"steps[{a}]"
        if set(step["index_sets"]) != {str(m) for m in X.degrees}:
            raise Reject(f"{where}.index_sets", "one entry per degree required")
        sets = {m: _index_sets(res[m], step["index_sets"][str(m)], f"{where}.index_sets[{m}]")
                for m in X.degrees}
        B = _bases(X, step["bases"], p, f"{where}.bases")
        _subcomplex(X, B, p, where)
        if a == 0:
            if any(B[m].shape[0] for m in X.degrees) or any(any(s) for v in sets.values() for s in v):
                raise Reject(where, "filtration must start at 0")
        else:
            psets, pB = prev
            if sum(B[m].shape[0] for m in X.degrees) <= sum(pB[m].shape[0] for m in X.degrees):
                raise Reject(where, "filtration does not grow")
            for m in X.degrees:
                if B[m].shape[0] - pB[m].shape[0] > kappa:
                    raise Reject(f"{where}.bases[{m}]", "quotient term exceeds the budget")
                _nice_pair(res[m], psets[m], sets[m], pB[m], B[m], p, f"{where} degree {m}")
            if exact:
                _quotient_complex_exact(X, _zero_bases(X), B, p, f"{where} step")
                _quotient_complex_exact(X, pB, B, p, f"{where} quotient")
        prev = (sets, B)
    last = prev[1]
    if any(last[m].shape[0] != X.mods[m].dim for m in X.degrees):
        raise Reject(f"steps[{len(steps) - 1}]", "filtration does not reach the complex")


def schedule_prefix(sched, count):
    """Degrees visited by a staircase schedule (independent re-implementation)."""
    start, lo, hi, custom = sched["start"], sched["lo"], sched["hi"], sched["degrees"]
    out = []
    if custom is not None:
        if not custom:
            raise Reject("schedule", "empty schedule")
        while len(out) < count:
            out.extend(custom)
        return out[:count]
    def offsets():
        pos, amp = 0, 0
        yield 0
        while True:
            amp += 1
            for pos in range(pos - 1, -amp - 1, -1):
                yield pos
            for pos in range(-amp + 1, amp + 1):
                yield pos

    for off in offsets():
        if len(out) >= count:
            break
        if lo <= start + off <= hi:
            out.append(start + off)
    return out


def _check_staircase(alg, inputs, witness):
    p = alg.p
    X = _complex(alg, inputs["complex"], "complex")
    kappa = _positive(inputs["kappa"], "kappa")
    n = _positive(inputs["n"], "n", allow_none=False)
    track = inputs["track"]
    if track not in ("projective", "flat"):
        raise Reject("track", "unknown track")
    res = _degree_resolutions(alg, X, inputs["resolutions"], n, "resolutions")
    deg = inputs["element"]["degree"]
    if deg not in X.mods:
        raise Reject("element", "degree outside the support")
    x = _rows([inputs["element"]["vector"]], X.mods[deg].dim, p, "element")[0]
    if not x.any():
        raise Reject("element", "x must be nonzero")
    _quotient_complex_exact(X, _zero_bases(X), _full_bases(X), p, "complex")
    Y = _bases(X, witness["bases"], p, "bases")
    if not linalg.in_span(Y[deg], x, p):
        raise Reject("bases", "x is not in Y")
    _subcomplex(X, Y, p, "bases")
    _quotient_complex_exact(X, _zero_bases(X), Y, p, "Y")
    _quotient_complex_exact(X, Y, _full_bases(X), p, "X/Y")
    if kappa is not None:
        for m in X.degrees:
            if Y[m].shape[0] > kappa:
                raise Reject(f"bases[{m}]", "term exceeds the budget")
        if sum(Y[m].shape[0] for m in X.degrees) > kappa * len(X.degrees):
            raise Reject("bases", "card(Y) exceeds the budget bound")
    terms = witness["terms"]
    if set(terms) != {str(m) for m in X.degrees}:
        raise Reject("terms", "one entry per degree required")
    for m in X.degrees:
        r, where = res[m], f"terms[{m}]"
        dim = X.mods[m].dim
        full_img = np.eye(dim, dtype=np.int64)
        if track == "projective":
            sets = _index_sets(r, terms[str(m)]["index_sets"], f"{where}.index_sets")
            full = [set(t.labels) for t in r.terms]
            empty = [set() for _ in r.terms]
            _nice_pair(r, empty, sets, np.zeros((0, dim), dtype=np.int64), Y[m], p, where)
            _nice_pair(r, sets, full, Y[m], full_img, p, where)
        else:
            subs = terms[str(m)]["sub_terms"]
            rets = terms[str(m)]["retractions"]
            if len(subs) != len(r.terms) or len(rets) != len(r.terms):
                raise Reject(where, "one pure sub-term per resolution term required")
            S = []
            for k, t in enumerate(r.terms):
                Sk = _canonical(_rows(subs[k], t.rep.dim, p, f"{where}.sub_terms[{k}]"), p,
                                f"{where}.sub_terms[{k}]")
                _stable(t.rep, Sk, p, f"{where}.sub_terms[{k}]")
                rk = _matrix(rets[k], Sk.shape[0], t.rep.dim, p, f"{where}.retractions[{k}]")
                _retraction(alg, t.rep, Sk, rk, p, f"{where}.retractions[{k}]")
                S.append(Sk)
            got = _image(r.maps[0], S[0], p, dim)
            if not (got.shape == Y[m].shape and np.array_equal(got, Y[m])):
                raise Reject(where, "pure sub-terms do not resolve Y")
            big = [full_img] + [np.eye(t.rep.dim, dtype=np.int64) for t in r.terms]
            _quotient_exact(r.maps, [Y[m]] + S, big, p, where)
            _quotient_exact(r.maps, [np.zeros((0, dim), dtype=np.int64)] + [
                np.zeros((0, t.rep.dim), dtype=np.int64) for t in r.terms], [Y[m]] + S, p, where)
    if inputs["mode"] == "full":
        ladder = witness["ladder"]
        if not ladder:
            raise Reject("ladder", "empty ladder")
        expected = schedule_prefix(inputs["schedule"], len(ladder))
        prev = None
        for t, step in enumerate(ladder):
            where = f"ladder[{t}]"
            if step["degree"] != expected[t]:
                raise Reject(where, "step does not follow the schedule")
            L = _bases(X, step["bases"], p, f"{where}.bases")
            _subcomplex(X, L, p, where)
            _quotient_complex_exact(X, _zero_bases(X), L, p, where)
            if t == 0 and not linalg.in_span(L[deg], x, p):
                raise Reject(where, "first ladder step misses x")
            if prev is not None and not all(_contained(prev[m], L[m], p) for m in X.degrees):
                raise Reject(where, "ladder is not increasing")
            prev = L
        if any(not np.array_equal(prev[m], Y[m]) for m in X.degrees):
            raise Reject("ladder", "last ladder step is not Y")
    elif "ladder" in witness:
        raise Reject("ladder", "compact certificates carry no ladder")


def _check_pure_closure(alg, inputs, witness):
    p = alg.p
    F = _module(alg, inputs["module"], "module")
    kappa = _positive(inputs["kappa"], "kappa")
    S0 = _rows(inputs["seed"], F.dim, p, "seed")
    S = _canonical(_rows(witness["basis"], F.dim, p, "basis"), p, "basis")
    _stable(F, S, p, "basis")
    if not _contained(S0, S, p):
        raise Reject("basis", "does not contain the seed")
    r = _matrix(witness["retraction"], S.shape[0], F.dim, p, "retraction")
    _retraction(alg, F, S, r, p, "retraction")
    if kappa is not None and S.shape[0] > kappa:
        raise Reject("basis", "exceeds the budget")


CHECKS = {
    "subresolution": _check_subresolution,
    "module-filtration": _check_module_filtration,
    "dw-filtration": lambda a, i, w: _check_complex_filtration(a, i, w, exact=False),
    "ex-filtration": lambda a, i, w: _check_complex_filtration(a, i, w, exact=True),
    "staircase": _check_staircase,
    "pure-closure": _check_pure_closure,
}


def check_certificate(cert):
    """Verify a certificate dict; never raises on bad input."""
    kind = cert.get("kind") if isinstance(cert, dict) else None
    try:
        if not isinstance(cert, dict):
            raise Reject("certificate", "not an object")
        if cert.get("version") != VERSION:
            raise Reject("version", f"unsupported version {cert.get('version')!r}")
        if kind not in CHECKS:
            raise Reject("kind", f"unknown certificate kind {kind!r}")
        if cert.get("inputs_digest") != digest(kind, cert["algebra"], cert["inputs"]):
            raise Reject("inputs_digest", "inputs do not match their digest")
        try:
            alg = load_algebra(cert["algebra"])
        except AlgebraError as exc:
            raise Reject("algebra", str(exc)) from None
        CHECKS[kind](alg, cert["inputs"], cert["witness"])
    except Reject as exc:
        return CheckResult(False, str(kind), [str(exc)])
    except (KeyError, TypeError, ValueError, IndexError, AttributeError, linalg.Inconsistent) as exc:
        return CheckResult(False, str(kind), [f"malformed certificate: {type(exc).__name__}: {exc}"])
    return CheckResult(True, kind)


def check_file(path):
    with open(path) as fh:
        try:
            cert = json.load(fh)
        except json.JSONDecodeError as exc:
            return CheckResult(False, "", [f"not JSON: {exc}"])
    return check_certificate(cert)
