"""Cotorsion pairs, thickness and model-structure checks on finite universes.

Every statement here is relative to an explicit finite :class:`Universe`;
perp classes are computed inside it, never globally.
"""
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .classes import class_member, exact_class, intersection
from .complexes import (
    ChainComplex,
    ChainMap,
    _union,
    chain_hom_space,
    cokernel_complex,
    complex_direct_sum,
    disk,
    ext1_ch,
    extension_from_cocycle_ch,
    identity_map,
    is_exact,
    is_short_exact,
    kernel_complex,
    disk_cover,
    quotient_complex,
    subcomplex,
    zero_complex,
    zero_map,
)
from .homological import ext1, extension_from_cocycle
from .modules import ModuleMap, ShortExactSequence, same_algebra, zero_module

class MalformedSquare(ValueError):
    pass


class NotFound(LookupError):
    """The universe is too small for the search; carries the exhausted-space report."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report or {}


@dataclass
class Universe:
    """Named modules or complexes over one algebra, with provenance notes."""
    objects: list
    names: list = None
    notes: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.names is None:
            self.names = [getattr(x, "name", "") or f"U{k}" for k, x in enumerate(self.objects)]
        if len(self.names) != len(self.objects) or len(set(self.names)) != len(self.names):
            raise ValueError("universe names must be unique, one per object")
        if self.objects:
            same_algebra(*self.objects)
            kinds = {isinstance(x, ChainComplex) for x in self.objects}
            if len(kinds) > 1:
                raise ValueError("a universe holds either modules or complexes, not both")

    def __len__(self):
        return len(self.objects)

    def __iter__(self):
        return iter(zip(self.names, self.objects))

    def __getitem__(self, name):
        return self.objects[self.names.index(name)]

    def subset(self, names):
        keep = [n for n in self.names if n in set(names)]
        return Universe([self[n] for n in keep], keep, dict(self.notes))

    @property
    def complexes(self):
        return bool(self.objects) and isinstance(self.objects[0], ChainComplex)

    def to_dict(self):
        key = "complex" if self.complexes else "module"
        return {"objects": [{"name": n, key: x.to_dict()} for n, x in self],
                "notes": dict(self.notes)}


def universe_from_dict(algebra, doc):
    """Load ``{"objects": [{"name", "module" | "complex"}], "notes"}``."""
    from .complexes import complex_from_dict
    from .modules import module_from_dict
    objs, names = [], []
    for k, entry in enumerate(doc.get("objects", [])):
        names.append(entry.get("name", f"U{k}"))
        if "complex" in entry:
            objs.append(complex_from_dict(algebra, entry["complex"]))
        elif "module" in entry:
            objs.append(module_from_dict(algebra, entry["module"]))
        else:
            raise ValueError(f"universe entry {k} has neither a module nor a complex")
    return Universe(objs, names, dict(doc.get("notes", {})))


def _as_universe(S):
    return S if isinstance(S, Universe) else Universe(list(S))


def ext1_dim(a, b):
    if isinstance(a, ChainComplex):
        return ext1_ch(a, b).dim
    return ext1(a, b).dim


class ExtTable:
    """Memoized ``Ext^1`` dimensions keyed by object identity."""

    def __init__(self):
        self.cells = {}

    def __call__(self, a, b):
        key = (id(a), id(b))
        if key not in self.cells:
            self.cells[key] = (a, b, ext1_dim(a, b))
        return self.cells[key][2]


@dataclass
class PerpResult:
    members: list        # names in U
    table: dict          # (s_name, u_name) -> dim Ext^1 (in the orientation used)
    side: str

    def __contains__(self, name):
        return name in self.members


def right_perp(S, U, table=None):
    """Members ``u`` of ``U`` with ``Ext^1(s, u) = 0`` for every ``s`` in ``S``."""
    S, U = _as_universe(S), _as_universe(U)
    table = table or ExtTable()
    cells, members = {}, []
    for un, u in U:
        ok = True
        for sn, s in S:
            d = table(s, u)
            cells[(sn, un)] = d
            ok = ok and d == 0
        if ok:
            members.append(un)
    return PerpResult(members, cells, "right")


def left_perp(S, U, table=None):
    """Members ``u`` of ``U`` with ``Ext^1(u, s) = 0`` for every ``s`` in ``S``."""
    S, U = _as_universe(S), _as_universe(U)
    table = table or ExtTable()
    cells, members = {}, []
    for un, u in U:
        ok = True
        for sn, s in S:
            d = table(u, s)
            cells[(un, sn)] = d
            ok = ok and d == 0
        if ok:
            members.append(un)
    return PerpResult(members, cells, "left")


def resolve(spec, U, cutoff=None):
    """Names of the members of ``U`` lying in the class ``spec``, with membership witnesses."""
    U = _as_universe(U)
    out, why = [], {}
    for name, X in U:
        r = class_member(X, spec, cutoff)
        why[name] = r
        if r.member:
            out.append(name)
    return out, why


@dataclass
class CotorsionReport:
    left: list
    right: list
    table: dict                  # (a, b) -> dim Ext^1(a, b)
    violations: list             # (a, b, dim) with nonzero Ext^1
    left_closure: list           # ⊥(B ∩ U) ∩ U
    right_closure: list          # (A ∩ U)⊥ ∩ U
    memberships: dict = field(default_factory=dict)

    @property
    def orthogonal(self):
        return not self.violations

    @property
    def closed(self):
        """``A ∩ U = ⊥(B ∩ U) ∩ U`` and ``B ∩ U = (A ∩ U)⊥ ∩ U``."""
        return set(self.left) == set(self.left_closure) and set(self.right) == set(self.right_closure)

    @property
    def clean(self):
        return self.orthogonal and self.closed

    def summary(self):
        lines = [f"A ∩ U = {self.left}", f"B ∩ U = {self.right}",
                 f"⊥B ∩ U = {self.left_closure}", f"A⊥ ∩ U = {self.right_closure}"]
        for a, b, d in self.violations:
            lines.append(f"violation: Ext^1({a}, {b}) has dimension {d}")
        lines.append("clean (relative to U)" if self.clean else "NOT clean (relative to U)")
        return "\n".join(lines)


def _members(spec, U, table):
    if isinstance(spec, (list, tuple, set)):
        return [n for n in U.names if n in set(spec)], {}
    return resolve(spec, U)


def check_cotorsion_pair(A, B, U):
    """Check the cotorsion-pair conditions for ``(A, B)`` inside ``U``.

    ``A`` and ``B`` are class specs or explicit lists of names in ``U``.
    """
    U = _as_universe(U)
    table = ExtTable()
    left, why_a = _members(A, U, table)
    right, why_b = _members(B, U, table)
    cells, violations = {}, []
    for a in left:
        for b in right:
            d = table(U[a], U[b])
            cells[(a, b)] = d
            if d:
                violations.append((a, b, d))
    lc = left_perp(U.subset(right), U, table).members
    rc = right_perp(U.subset(left), U, table).members
    memberships = {"A": {k: v.reason for k, v in why_a.items()}, "B": {k: v.reason for k, v in why_b.items()}}
    return CotorsionReport(left, right, cells, violations, lc, rc, memberships)


@dataclass
class CompatibilityReport:
    dw_members: list
    ex_members: list
    exact_members: list
    lhs: list        # (dw ∩ U)⊥ ∩ U
    rhs: list        # (ex ∩ U)⊥ ∩ E ∩ U
    witnesses: dict

    @property
    def equal(self):
        return set(self.lhs) == set(self.rhs)


def check_compatibility(inner, U):
    """``(dw inner ∩ U)⊥ = (ex inner ∩ U)⊥ ∩ E`` as finite subsets of a complex universe."""
    from .classes import dw, ex
    U = _as_universe(U)
    table = ExtTable()
    dw_m, _ = resolve(dw(inner), U)
    ex_m, _ = resolve(ex(inner), U)
    exact = [n for n, X in U if is_exact(X)]
    lhs = right_perp(U.subset(dw_m), U, table)
    rp = right_perp(U.subset(ex_m), U, table)
    rhs = [n for n in rp.members if n in exact]
    witnesses = {}
    for n, X in U:
        w = {"exact": n in exact}
        if n not in lhs.members:
            w["lhs_failure"] = next((s, d) for (s, u), d in lhs.table.items() if u == n and d)
        if n not in rp.members:
            w["rhs_failure"] = next((s, d) for (s, u), d in rp.table.items() if u == n and d)
        elif n not in exact:
            w["rhs_failure"] = ("not exact", [m for m in X.degrees if X.homology_dim(m)])
        witnesses[n] = w
    return CompatibilityReport(dw_m, ex_m, exact, lhs.members, rhs, witnesses)


# -- thickness --------------------------------------------------------------------

@dataclass
class ThickReport:
    rows: list       # per sample: dict with the exactness pattern and verdict

    @property
    def ok(self):
        return all(r["ok"] for r in self.rows)


def check_thick(samples):
    """Two-of-three for short exact sequences and closure under retracts, for exactness.

    Samples are ``("ses", i, q)`` with ``0 -> A -i-> B -q-> C -> 0`` or
    ``("retract", s, r)`` with ``r o s = id``.
    """
    rows = []
    for k, sample in enumerate(samples):
        tag = sample[0]
        if tag == "ses":
            _, i, q = sample
            if not is_short_exact(i, q):
                rows.append({"sample": k, "kind": tag, "ok": False, "reason": "not short exact"})
                continue
            pattern = [is_exact(i.source), is_exact(i.target), is_exact(q.target)]
            ok = sum(pattern) != 2   # two exact terms force the third
            rows.append({"sample": k, "kind": tag, "exact": pattern, "ok": ok})
        elif tag == "retract":
            _, s, r = sample
            comp = r.compose(s)
            ident = all(np.array_equal(comp[m].matrix % s.p, linalg.identity(s.source.dim(m)))
                        for m in s.source.degrees)
            if not ident:
                rows.append({"sample": k, "kind": tag, "ok": False, "reason": "r o s is not the identity"})
                continue
            outer, inner = is_exact(s.target), is_exact(s.source)
            rows.append({"sample": k, "kind": tag, "exact": [inner, outer], "ok": inner or not outer})
        else:
            raise ValueError(f"unknown sample kind {tag!r}")
    return ThickReport(rows)


# -- approximations ---------------------------------------------------------------

@dataclass
class Approximation:
    """``0 -> B' -> A' -> X -> 0`` or ``0 -> X -> B' -> A' -> 0`` with both memberships.

    The ``B``-membership of a perp spec is relative to the objects listed in it.
    """
    sequence: object          # ShortExactSequence, or (i, q) chain maps
    left_member: object       # Membership of the A-term
    right_member: object      # Membership of the B-term
    searched: int
    side: str
    candidate: str            # name of the U-member used, "" for the trivial case

    @property
    def maps(self):
        return _maps(self.sequence)

    @property
    def terms(self):
        i, q = self.maps
        return i.source, i.target, q.target


def _maps(seq):
    if isinstance(seq, ShortExactSequence):
        return seq.i, seq.q
    return seq


def _zero_like(X):
    return zero_complex(X.algebra) if isinstance(X, ChainComplex) else zero_module(X.algebra)


def _identity_seq(X, at_end):
    """``0 -> X -> X -> 0 -> 0`` when ``at_end``, else ``0 -> 0 -> X -> X -> 0``."""
    Z = _zero_like(X)
    if isinstance(X, ChainComplex):
        ident = identity_map(X)
        return (ident, zero_map(X, Z)) if at_end else (zero_map(Z, X), ident)
    ident = X.identity()
    if at_end:
        return ShortExactSequence(ident, ModuleMap(X, Z, linalg.zeros(0, X.dim)))
    return ShortExactSequence(ModuleMap(Z, X, linalg.zeros(X.dim, 0)), ident)


def extension_classes(M, N):
    """Every extension ``0 -> N -> E -> M -> 0`` once per class (the split one first)."""
    p = M.p
    if isinstance(M, ChainComplex):
        ext = ext1_ch(M, N)
        for c in linalg.all_vectors(ext.dim, p):
            cocycle = {}
            for ct, z in zip(c, ext.cocycles):
                for m, blk in z.items():
                    cocycle[m] = (cocycle.get(m, 0) + int(ct) * blk) % p
            yield extension_from_cocycle_ch(M, N, cocycle, ext)
        return
    ext = ext1(M, N)
    for c in linalg.all_vectors(ext.dim, p):
        cocycle = linalg.zeros(N.dim, ext.presentation.syzygy.dim)
        for ct, z in zip(c, ext.cocycles):
            cocycle = (cocycle + int(ct) * z) % p
        yield extension_from_cocycle(M, N, cocycle, ext)


def _size(X):
    return X.card() if isinstance(X, ChainComplex) else X.dim


def approx_search(X, A, B, U, side="enough-projectives"):
    """Search for an approximation sequence of ``X`` built from members of ``U``.

    ``enough-projectives``: ``0 -> B' -> A' -> X -> 0`` with ``B'`` ranging over
    ``B ∩ U`` and ``A'`` over all extensions of ``X`` by ``B'``.
    ``enough-injectives``: ``0 -> X -> B' -> A' -> 0`` dually. Candidates are
    tried smallest first. Raises :class:`NotFound` when the space is exhausted.
    """
    U = _as_universe(U)
    if side not in ("enough-projectives", "enough-injectives"):
        raise ValueError("side must be 'enough-projectives' or 'enough-injectives'")
    projective_side = side == "enough-projectives"
    here = class_member(X, A if projective_side else B)
    if here.member:
        zero = class_member(_zero_like(X), B if projective_side else A)
        seq = _identity_seq(X, at_end=not projective_side)
        return (Approximation(seq, here, zero, 0, side, "") if projective_side
                else Approximation(seq, zero, here, 0, side, ""))
    pool, _ = resolve(B if projective_side else A, U)
    pool.sort(key=lambda n: (_size(U[n]), U.names.index(n)))
    searched = 0
    for name in pool:
        C = U[name]
        for seq in (extension_classes(X, C) if projective_side else extension_classes(C, X)):
            searched += 1
            middle = _maps(seq)[0].target
            r = class_member(middle, A if projective_side else B)
            if r.member:
                other = class_member(C, B if projective_side else A)
                return (Approximation(seq, r, other, searched, side, name) if projective_side
                        else Approximation(seq, other, r, searched, side, name))
    raise NotFound(f"no approximation among {searched} extensions over {len(pool)} candidates",
                   {"candidates": pool, "extensions_tried": searched, "side": side})


# -- lifting -------------------------------------------------------------------------

def _same_shape(X, Y):
    if X.card() == 0 and Y.card() == 0:
        return True
    return X.lo == Y.lo and X.hi == Y.hi and all(X.dim(m) == Y.dim(m) for m in X.degrees)


def _equal_maps(f, g):
    p = f.p
    return all(np.array_equal(f[m].matrix % p, g[m].matrix % p)
               for m in _union(f.source, f.target, g.source, g.target))


@dataclass
class LiftingProblem:
    """Commutative square ``p u = v i`` with ``i: A -> B`` monic and ``p: C -> D`` epi."""
    i: ChainMap
    p: ChainMap
    u: ChainMap
    v: ChainMap

    def __post_init__(self):
        i, p, u, v = self.i, self.p, self.u, self.v
        for f, g, what in ((u.source, i.source, "u starts at the source of i"),
                           (u.target, p.source, "u ends at the source of p"),
                           (v.source, i.target, "v starts at the target of i"),
                           (v.target, p.target, "v ends at the target of p")):
            if not _same_shape(f, g):
                raise MalformedSquare(f"shape mismatch: {what}")
        if not i.is_injective():
            raise MalformedSquare("i is not a monomorphism")
        if not p.is_surjective():
            raise MalformedSquare("p is not an epimorphism")
        if not _equal_maps(p.compose(u), v.compose(i)):
            raise MalformedSquare("the square does not commute")


def lift(problem):
    """A chain map ``d: B -> C`` with ``d i = u`` and ``p d = v``, or None.

    Solves the linear system over a basis of chain maps ``B -> C``; the answer
    is re-verified by substitution.
    """
    i, pp, u, v = problem.i, problem.p, problem.u, problem.v
    B, C = i.target, pp.source
    p = B.p
    degrees = list(_union(i.source, B, C, pp.target))
    rhs = np.concatenate([np.concatenate([u[m].matrix.ravel(), v[m].matrix.ravel()]) for m in degrees]
                         + [np.zeros(0, dtype=np.int64)]) % p
    homs = chain_hom_space(B, C)
    if not homs:
        return zero_map(B, C) if not rhs.any() else None
    cols = []
    for h in homs:
        d = ChainMap(B, C, h, check=False)
        parts = [np.concatenate([d.compose(i)[m].matrix.ravel(), pp.compose(d)[m].matrix.ravel()])
                 for m in degrees]
        cols.append(np.concatenate(parts + [np.zeros(0, dtype=np.int64)]) % p)
    c = linalg.try_solve(np.stack(cols, axis=1), rhs, p)
    if c is None:
        return None
    comps = {}
    for ct, h in zip(c, homs):
        for m, blk in h.items():
            comps[m] = (comps.get(m, 0) + int(ct) * blk) % p
    d = ChainMap(B, C, comps)
    problem_text = verify_lift(problem, d)
    if problem_text:
        raise AssertionError(f"lift failed substitution: {problem_text}")
    return d


def verify_lift(problem, d):
    """None when ``d i = u`` and ``p d = v`` hold exactly, else a description."""
    if not _equal_maps(d.compose(problem.i), problem.u):
        return "d i != u"
    if not _equal_maps(problem.p.compose(d), problem.v):
        return "p d != v"
    return None


def lifting_guaranteed(problem, A, B):
    """Membership facts that force a lift: ``coker i ∈ A``, ``ker p ∈ B ∩ E``, vanishing Ext^1."""
    Q, _ = cokernel_complex(problem.i)
    K, _ = kernel_complex(problem.p)
    return {
        "cokernel_in_A": class_member(Q, A).member,
        "kernel_in_B": class_member(K, B).member,
        "kernel_exact": is_exact(K),
        "ext1": ext1_ch(Q, K).dim,
    }


# -- factorization -----------------------------------------------------------------

@dataclass
class Factorization:
    """``f = p i`` with ``i`` monic (cokernel certified) and ``p`` epi (kernel certified)."""
    f: ChainMap
    i: ChainMap
    p: ChainMap
    cokernel: ChainComplex
    kernel: ChainComplex
    cokernel_member: object
    kernel_member: object
    steps: dict

    def verify(self):
        """None when every claimed property holds, else a description."""
        if not _equal_maps(self.p.compose(self.i), self.f):
            return "p i != f"
        if not self.i.is_injective():
            return "i is not monic"
        if not self.p.is_surjective():
            return "p is not epi"
        if not self.cokernel_member.member:
            return "cokernel not in the left class"
        if not self.kernel_member.member:
            return "kernel not in the right class"
        return None


def cone_embedding(X):
    """``X -> ⊕_m D^{m+1}(X_m)``, the inclusion into the cone of the identity (an exact complex)."""
    if X.card() == 0:
        Z = zero_complex(X.algebra)
        return zero_map(X, Z)
    degrees = list(X.degrees)
    pieces = [disk(X.module(m), m + 1) for m in degrees]
    S, incs, _ = complex_direct_sum(*pieces)
    p = X.p
    comps = {}
    for k, m in enumerate(degrees):
        # x in X_m goes to x in the lower copy of D^{m+1}(X_m) plus d x in the upper copy of D^m(X_{m-1})
        blk = incs[k][m].matrix
        if k:
            blk = blk + incs[k - 1][m].matrix @ X.d(m).matrix
        comps[m] = blk % p
    return ChainMap(X, S, comps)


def _pullback(a, b):
    """Pullback of ``a: Z0 -> C`` and ``b: A'' -> C``.

    Returns ``(Z, inclusion into Z0 ⊕ A'', pr_Z0, pr_A, incs of the sum)``.
    """
    S, incs, projs = complex_direct_sum(a.source, b.source)
    p = S.p
    bases = {}
    for m in S.degrees:
        if S.dim(m) == 0:
            continue
        diff = (a[m].matrix @ projs[0][m].matrix - b[m].matrix @ projs[1][m].matrix) % p
        bases[m] = linalg.kernel_basis(diff, p) if diff.shape[0] else linalg.identity(S.dim(m))
    Z, inc = subcomplex(S, bases)
    return Z, inc, projs[0].compose(inc), projs[1].compose(inc), incs


def disk_approximation(C, L, R):
    """The disk cover ``0 -> K -> D -> C -> 0`` when ``D ∈ L`` and ``K ∈ R``, else None."""
    cover = disk_cover(C)
    member = class_member(cover.source, L)
    if not member.member:
        return None
    K, _ = kernel_complex(cover.epi)
    if not class_member(K, R).member:
        return None
    return cover.epi, member


def salce_approximation(C, L, R):
    """``0 -> B'' -> W -> C -> 0`` from a disk cover ``0 -> K -> D -> C -> 0``.

    ``K`` embeds in the cone of its identity; pushing the cover out along that
    embedding gives ``W`` with kernel the cone. Returns ``(q: W -> C, membership of W)``
    or None when the cone is not in ``R`` or ``W`` is not in ``L``.
    """
    p = C.p
    cover = disk_cover(C)
    K, kinc = kernel_complex(cover.epi)
    j = cone_embedding(K)
    if not class_member(j.target, R).member:
        return None
    D = cover.source
    S, _, (prD, _) = complex_direct_sum(D, j.target)
    bases = {}
    for m in S.degrees:
        if K.dim(m):
            bases[m] = np.concatenate([kinc[m].matrix, (-j[m].matrix) % p]).T % p
    W, q = quotient_complex(S, bases)
    comps = {}
    for m in W.degrees:
        if W.dim(m):
            lift_m = linalg.solve(q[m].matrix, linalg.identity(W.dim(m)), p)[0]
            comps[m] = cover.epi[m].matrix @ prD[m].matrix @ lift_m % p
    member = class_member(W, L)
    if not member.member:
        return None
    return ChainMap(W, C, comps), member


def factor_map(f, A, B, U, trivial="fibration", cone_fallback=True):
    """Factor ``f: X -> Y`` as ``p i`` with ``i`` monic and ``p`` epi.

    With ``trivial="fibration"`` the cokernel of ``i`` lies in ``A`` and the
    kernel of ``p`` in ``B ∩ E``; with ``trivial="cofibration"`` the cokernel
    lies in ``A ∩ E`` and the kernel in ``B``.

    Step one embeds ``X`` into a right-class object ``R'`` (an approximation
    from ``U``, or the cone of the identity when the search is empty) and maps
    ``X`` into ``Z0 = R' ⊕ Y``. Step two replaces ``Z0`` by the pullback along
    a left-class approximation ``L'' -> coker``, which makes the cokernel ``L''``.
    With ``cone_fallback`` the second search falls back to the disk cover of
    the cokernel, then to pushing that cover out along a cone embedding.
    """
    if trivial == "fibration":
        L, R = A, intersection(B, exact_class())
    elif trivial == "cofibration":
        L, R = intersection(A, exact_class()), B
    else:
        raise ValueError("trivial must be 'fibration' or 'cofibration'")
    X, Y = f.source, f.target
    p = X.p
    steps = {}
    try:
        ap = approx_search(X, L, R, U, side="enough-injectives")
        j = ap.maps[0]
        steps["embedding"] = f"approximation via {ap.candidate or 'X itself'}"
    except NotFound as exc:
        if not cone_fallback:
            raise
        j = cone_embedding(X)
        if not class_member(j.target, R).member:
            raise NotFound("no right-class object receives X", exc.report) from None
        steps["embedding"] = "cone of the identity"
    Z0, incs, projs = complex_direct_sum(j.target, Y)
    i0 = ChainMap(X, Z0, {m: (incs[0][m].matrix @ j[m].matrix + incs[1][m].matrix @ f[m].matrix) % p
                          for m in _union(X, Z0)})
    C, pi = cokernel_complex(i0)
    try:
        ap2 = approx_search(C, L, R, U, side="enough-projectives")
        q = ap2.maps[1]
        steps["correction"] = f"approximation via {ap2.candidate or 'the cokernel itself'}"
    except NotFound:
        if not cone_fallback:
            raise
        found = disk_approximation(C, L, R)
        steps["correction"] = "disk cover"
        if found is None:
            found = salce_approximation(C, L, R)
            steps["correction"] = "disk cover pushed out along a cone"
        if found is None:
            raise
        q = found[0]
    Z, inc, prZ0, _, sum_incs = _pullback(pi, q)
    # X -> Z is x -> (i0 x, 0), read in the coordinates of Z
    target = sum_incs[0].compose(i0)
    comps = {}
    for m in _union(X, Z):
        if X.dim(m) and Z.dim(m):
            comps[m] = linalg.solve(inc[m].matrix, target[m].matrix, p)[0]
    i = ChainMap(X, Z, comps)
    pmap = projs[1].compose(prZ0)
    coker, _ = cokernel_complex(i)
    ker, _ = kernel_complex(pmap)
    steps["trivial"] = trivial
    return Factorization(f, i, pmap, coker, ker, class_member(coker, L), class_member(ker, R), steps)
