"""Finite-dimensional associative algebras over GF(p), given by structure constants."""
import json

import numpy as np

from . import linalg
from .linalg import PrimeField


class AlgebraError(ValueError):
    pass


class MalformedSpec(AlgebraError):
    pass


class NonAssociative(AlgebraError):
    pass


class BadUnit(AlgebraError):
    pass


class BadIdempotents(AlgebraError):
    pass


def _frozen(a):
    a = np.array(a, dtype=np.int64)
    a.setflags(write=False)
    return a


class Algebra:
    """Algebra with basis ``e_0..e_{d-1}`` and ``e_i e_j = sum_k mul[i, j, k] e_k``.

    Validation (associativity, unit, idempotents) runs in the constructor, so
    any instance in hand is a genuine unital associative algebra.
    """

    def __init__(self, p, mul, unit, basis=None, idempotents=None, name=""):
        self.field = PrimeField(int(p))
        self.p = self.field.p
        mul = np.asarray(mul, dtype=np.int64)
        if mul.ndim != 3 or len(set(mul.shape)) != 1:
            raise MalformedSpec(f"structure constants must be d x d x d, got {mul.shape}")
        d = mul.shape[0]
        if d == 0:
            raise MalformedSpec("algebra dimension must be positive")
        if d > linalg.MAX_DIM:
            raise MalformedSpec(f"dimension {d} exceeds cap {linalg.MAX_DIM}")
        self.dim = d
        self.mul = _frozen(mul % self.p)
        unit = np.asarray(unit, dtype=np.int64)
        if unit.shape != (d,):
            raise MalformedSpec(f"unit must have {d} coordinates")
        self.unit = _frozen(unit % self.p)
        if basis is None:
            basis = [f"e{i}" for i in range(d)]
        if len(basis) != d:
            raise MalformedSpec(f"expected {d} basis names, got {len(basis)}")
        self.basis = tuple(str(b) for b in basis)
        self.name = name
        if idempotents is not None:
            idempotents = tuple(_frozen(np.asarray(e) % self.p) for e in idempotents)
            for e in idempotents:
                if e.shape != (d,):
                    raise MalformedSpec("idempotent has wrong length")
        self.idempotents = idempotents
        self._check_associative()
        self._check_unit()
        if idempotents is not None:
            self._check_idempotents()

    # -- validation -------------------------------------------------------
    def _check_associative(self):
        c = self.mul
        left = np.einsum("ijk,klm->ijlm", c, c) % self.p   # (e_i e_j) e_l
        right = np.einsum("jlk,ikm->ijlm", c, c) % self.p  # e_i (e_j e_l)
        bad = np.argwhere((left != right).any(axis=3))
        if bad.size:
            i, j, l = (int(t) for t in bad[0])
            b = self.basis
            raise NonAssociative(f"({b[i]}*{b[j]})*{b[l]} != {b[i]}*({b[j]}*{b[l]})")

    def _check_unit(self):
        eye = linalg.identity(self.dim)
        lu = np.einsum("i,ijk->jk", self.unit, self.mul) % self.p
        ru = np.einsum("j,ijk->ik", self.unit, self.mul) % self.p
        for side, table in (("left", lu), ("right", ru)):
            bad = np.argwhere((table != eye).any(axis=1))
            if bad.size:
                raise BadUnit(f"unit fails as {side} identity on {self.basis[int(bad[0][0])]}")

    def _check_idempotents(self):
        es = self.idempotents
        for a, e in enumerate(es):
            for b, f in enumerate(es):
                prod = self.product(e, f)
                want = e if a == b else np.zeros(self.dim, dtype=np.int64)
                if not np.array_equal(prod, want):
                    kind = "not idempotent" if a == b else "not orthogonal"
                    raise BadIdempotents(f"idempotents {a},{b}: {kind}")
        total = np.sum(es, axis=0) % self.p
        if not np.array_equal(total, self.unit):
            raise BadIdempotents("idempotents do not sum to the unit")

    # -- arithmetic -------------------------------------------------------
    def product(self, x, y):
        return np.einsum("i,j,ijk->k", np.asarray(x), np.asarray(y), self.mul) % self.p

    def left_mult(self, x):
        """Matrix ``L`` with ``L @ y = x * y``."""
        return np.einsum("i,ijk->kj", np.asarray(x), self.mul) % self.p

    def right_mult(self, x):
        """Matrix ``R`` with ``R @ y = y * x``."""
        return np.einsum("j,ijk->ki", np.asarray(x), self.mul) % self.p

    def regular_action(self):
        """Action matrices of the basis on ``A`` as a left module over itself."""
        return np.ascontiguousarray(self.mul.transpose(0, 2, 1))

    def basis_vector(self, i):
        v = np.zeros(self.dim, dtype=np.int64)
        v[i] = 1
        return v

    def primitive_idempotents(self):
        """Declared idempotents, or just the unit when none were given."""
        if self.idempotents is None:
            return (self.unit,)
        return self.idempotents

    def left_ideal_basis(self, e):
        """Canonical basis (rows) of the left ideal ``A e``."""
        return linalg.image_basis(self.right_mult(e), self.p)

    def opposite(self):
        cached = self.__dict__.get("_opposite")
        if cached is not None:
            return cached
        op = Algebra(
            self.p,
            self.mul.transpose(1, 0, 2),
            self.unit,
            self.basis,
            self.idempotents,
            name=f"{self.name}^op" if self.name else "",
        )
        op._opposite = self
        self._opposite = op
        return op

    def is_commutative(self):
        return bool((self.mul == self.mul.transpose(1, 0, 2)).all())

    # -- identity / serialization ---------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Algebra):
            return NotImplemented
        return (
            self.p == other.p
            and self.dim == other.dim
            and np.array_equal(self.mul, other.mul)
            and np.array_equal(self.unit, other.unit)
        )

    def __hash__(self):
        return hash((self.p, self.mul.tobytes(), self.unit.tobytes()))

    def __repr__(self):
        label = self.name or "Algebra"
        return f"<{label}: dim {self.dim} over F_{self.p}>"

    def to_dict(self):
        doc = {
            "p": self.p,
            "dim": self.dim,
            "basis": list(self.basis),
            "mul": self.mul.tolist(),
            "unit": self.unit.tolist(),
        }
        if self.idempotents is not None:
            doc["idempotents"] = [e.tolist() for e in self.idempotents]
        if self.name:
            doc["name"] = self.name
        return doc


def load_algebra(doc):
    """Build a validated ``Algebra`` from a dict, JSON text, or file path."""
    if isinstance(doc, str):
        text = doc
        if not doc.lstrip().startswith("{"):
            with open(doc) as fh:
                text = fh.read()
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MalformedSpec(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise MalformedSpec("an algebra must be a JSON object")
    for key in ("p", "dim", "mul", "unit"):
        if key not in doc:
            raise MalformedSpec(f"missing field {key!r}")
    d = doc["dim"]
    try:
        mul = np.asarray(doc["mul"], dtype=np.int64)
    except (ValueError, TypeError):
        raise MalformedSpec("mul is not a rectangular integer array") from None
    if mul.shape != (d, d, d):
        raise MalformedSpec(f"mul has shape {mul.shape}, expected {(d, d, d)}")
    try:
        p = int(doc["p"])
        PrimeField(p)
    except ValueError as exc:
        raise MalformedSpec(str(exc)) from None
    return Algebra(
        p,
        mul,
        doc["unit"],
        doc.get("basis"),
        doc.get("idempotents"),
        name=doc.get("name", ""),
    )


def opposite(algebra):
    return algebra.opposite()
