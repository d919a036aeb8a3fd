"""Descriptors of object classes and membership tests with witnesses."""
from dataclasses import dataclass, field, replace

from .complexes import ChainComplex, ext1_ch, is_exact
from .homological import default_test_set, ext1, flat_dim
from .modules import Module
from .resolution import ExceedsCutoff, projective_resolution, resolution_to_dict


class UnsupportedSpec(ValueError):
    pass


KINDS = ("Pn", "Fn", "E", "dw", "ex", "perp", "intersection", "listed")


@dataclass(frozen=True)
class ClassSpec:
    """A class of modules or complexes.

    ``budget`` bounds the F_p-dimension of a module, or the total dimension of
    a complex; inside ``dw``/``ex`` the inner budget applies degreewise.
    """
    kind: str
    n: int = 0
    inner: tuple = ()
    universe: tuple = field(default=(), compare=False)
    side: str = "right"
    budget: int | None = None
    label: str = ""

    def __post_init__(self):
        if self.kind not in KINDS:
            raise UnsupportedSpec(f"unknown class kind {self.kind!r}")
        if self.n < 0:
            raise UnsupportedSpec("n must be non-negative")
        if self.budget is not None and self.budget < 1:
            raise UnsupportedSpec("budget must be at least 1")
        if self.kind == "perp" and self.side not in ("right", "left"):
            raise UnsupportedSpec("perp side must be 'right' or 'left'")

    def with_budget(self, budget):
        return replace(self, budget=budget)

    def describe(self):
        tail = f"^<={self.budget}" if self.budget is not None else ""
        if self.kind in ("Pn", "Fn"):
            return f"{self.kind[0]}_{self.n}{tail}"
        if self.kind in ("dw", "ex"):
            return f"{self.kind}({self.inner[0].describe()}){tail}"
        if self.kind == "intersection":
            return " ∩ ".join(s.describe() for s in self.inner) + tail
        if self.kind == "perp":
            arrow = "⊥" if self.side == "right" else "⊥(left)"
            return f"{self.label or 'S'}{arrow}{tail}"
        if self.kind == "listed":
            return f"listed({self.label}){tail}"
        return self.kind + tail


def Pn(n, budget=None):
    return ClassSpec("Pn", n=n, budget=budget)


def Fn(n, budget=None):
    return ClassSpec("Fn", n=n, budget=budget)


def exact_class():
    return ClassSpec("E")


def dw(inner, budget=None):
    return ClassSpec("dw", inner=(inner,), budget=budget)


def ex(inner, budget=None):
    return ClassSpec("ex", inner=(inner,), budget=budget)


def perp(objects, side="right", label=""):
    """``S^⊥`` (``side="right"``: Ext^1(s, X) = 0) or ``^⊥S`` for a finite list ``S``."""
    return ClassSpec("perp", universe=tuple(objects), side=side, label=label)


def intersection(*specs):
    return ClassSpec("intersection", inner=tuple(specs))


def listed(objects, label=""):
    """An explicitly enumerated class (membership by equality of structure)."""
    return ClassSpec("listed", universe=tuple(objects), label=label)


@dataclass
class Membership:
    member: bool
    spec: str
    reason: str
    witness: dict = field(default_factory=dict)

    def __bool__(self):
        return self.member


def _size(X):
    return X.card() if isinstance(X, ChainComplex) else X.dim


def _ext(a, b):
    if isinstance(a, ChainComplex):
        return ext1_ch(a, b).dim
    return ext1(a, b).dim


def _same(a, b):
    if type(a) is not type(b):
        return False
    if isinstance(a, Module):
        return a == b
    if a.lo != b.lo or a.hi != b.hi:
        return a.card() == 0 and b.card() == 0
    return all(x == y for x, y in zip(a.modules, b.modules)) and all(
        (a.d(m).matrix == b.d(m).matrix).all() for m in a.degrees)


def class_member(X, spec, cutoff=None, test_set=None):
    """Decide ``X ∈ spec`` and return a :class:`Membership` with a witness."""
    name = spec.describe()
    if spec.budget is not None and _size(X) > spec.budget:
        return Membership(False, name, f"size {_size(X)} exceeds budget {spec.budget}",
                          {"size": _size(X)})
    kind = spec.kind
    if kind in ("Pn", "Fn"):
        if not isinstance(X, Module):
            raise UnsupportedSpec(f"{kind} applies to modules")
        if kind == "Pn":
            try:
                res = projective_resolution(X, spec.n)
            except ExceedsCutoff:
                return Membership(False, name, f"projective dimension exceeds {spec.n}")
            return Membership(True, name, f"resolution of length {res.length}",
                              {"resolution": resolution_to_dict(res)})
        tests = test_set if test_set is not None else default_test_set(X.algebra)
        fd = flat_dim(X, spec.n, tests)
        if fd is None:
            return Membership(False, name, f"Tor_{spec.n + 1} does not vanish on the test set")
        return Membership(True, name, f"flat dimension {fd} on {len(tests)} test modules",
                          {"flat_dim": fd, "tests": len(tests)})
    if kind == "E":
        if not isinstance(X, ChainComplex):
            raise UnsupportedSpec("E applies to complexes")
        bad = [m for m in X.degrees if X.homology_dim(m)]
        if bad:
            return Membership(False, name, f"homology in degree {bad[0]}", {"degrees": bad})
        return Membership(True, name, "exact", {"ranks": {str(m): X.d(m).rank() for m in X.degrees}})
    if kind in ("dw", "ex"):
        if not isinstance(X, ChainComplex):
            raise UnsupportedSpec(f"{kind} applies to complexes")
        inner = spec.inner[0]
        terms = {}
        for m in X.degrees:
            r = class_member(X.module(m), inner, cutoff, test_set)
            if not r.member:
                return Membership(False, name, f"degree {m}: {r.reason}", {"degree": m})
            terms[str(m)] = r.reason
        if kind == "ex" and not is_exact(X):
            return Membership(False, name, "not exact")
        return Membership(True, name, "all terms in class" + (" and exact" if kind == "ex" else ""),
                          {"terms": terms})
    if kind == "perp":
        table = []
        for s in spec.universe:
            v = _ext(s, X) if spec.side == "right" else _ext(X, s)
            table.append(v)
            if v:
                return Membership(False, name, f"Ext^1 nonzero against member {len(table) - 1}",
                                  {"ext": table})
        return Membership(True, name, "Ext^1 vanishes against the universe", {"ext": table})
    if kind == "intersection":
        reasons = []
        for s in spec.inner:
            r = class_member(X, s, cutoff, test_set)
            if not r.member:
                return Membership(False, name, r.reason)
            reasons.append(r.reason)
        return Membership(True, name, "; ".join(reasons))
    if kind == "listed":
        for k, s in enumerate(spec.universe):
            if _same(s, X):
                return Membership(True, name, f"listed as entry {k}")
        return Membership(False, name, "not listed")
    raise UnsupportedSpec(kind)
