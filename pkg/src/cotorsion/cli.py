"""Command line front end.

Exit status: 0 on success or a clean report, 1 when a violation is found
(or a search comes back empty), 2 on input errors.
"""
import argparse
import json
import os
import re
import sys
from pathlib import Path

import numpy as np

from . import certificates, checker, linalg
from .algebra import AlgebraError, load_algebra
from .classes import Fn, Pn, dw, ex, exact_class, listed, perp
from .complexes import ComplexError, complex_from_dict, disk, is_exact, sphere
from .library import (
    BUNDLED,
    bundled_algebra,
    compatibility_universe,
    module_universe,
    named_module,
    obstructed_square,
    random_complex,
    random_exact_complex,
    random_extension,
    random_lifting_square,
    random_projective_complex,
    ses_complex,
)
from .model import NotFound
from .modules import Module, ModuleError, module_from_dict, submodule_generated
from .zigzag import BudgetExceeded

DEFAULT_KAPPA = 4
DEFAULT_ALGEBRA = "T2F2"


class InputError(Exception):
    pass


# -- input parsing ------------------------------------------------------------------

def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def load_algebra_arg(text):
    if text in BUNDLED:
        return bundled_algebra(text)
    if not Path(text).exists():
        raise InputError(f"unknown algebra {text!r}; bundled: {', '.join(BUNDLED)}")
    return load_algebra(text)


def _algebra_name(args):
    return args.algebra if args.algebra in BUNDLED else None


def dual(M):
    """``Hom_F(M, F)``, a right module, realized over the opposite algebra."""
    return Module(M.algebra.opposite(), np.transpose(M.action, (0, 2, 1)).copy(), name=f"{M.name}*")


def load_module(args, text):
    """A bundled module name (``S_b``, ``P_1``, ``A``), ``NAME*`` for its dual, or a JSON file."""
    alg = args.alg
    if text.endswith("*"):
        return dual(load_module(args, text[:-1]))
    if Path(text).exists():
        doc = _read_json(text)
        return module_from_dict(alg, doc)
    name = _algebra_name(args)
    if name is None:
        raise InputError(f"module {text!r} is not a file, and named modules need a bundled algebra")
    try:
        return named_module(name, text)
    except KeyError as exc:
        raise InputError(str(exc.args[0])) from None


def load_complex(args, text):
    """``disk:MOD:m``, ``sphere:MOD:m``, ``ses:MOD:m``, ``random:SEED``, ``exact:SEED``,
    ``projective:SEED``, a compatibility-universe name, or a JSON file."""
    if Path(text).exists():
        return complex_from_dict(args.alg, _read_json(text))
    parts = text.split(":")
    kind = parts[0]
    try:
        if kind in ("disk", "sphere", "ses"):
            M = load_module(args, parts[1])
            m = int(parts[2]) if len(parts) > 2 else 0
            return {"disk": disk, "sphere": sphere, "ses": ses_complex}[kind](M, m)
        if kind in ("random", "exact", "projective"):
            name = _algebra_name(args)
            if name is None:
                raise InputError("random complexes need a bundled algebra")
            rng = np.random.default_rng(int(parts[1]) if len(parts) > 1 else args.seed)
            maker = {"random": random_complex, "exact": random_exact_complex,
                     "projective": random_projective_complex}[kind]
            return maker(name, rng)
    except (IndexError, ValueError) as exc:
        raise InputError(f"cannot parse complex {text!r}: {exc}") from None
    if args.algebra == "T2F2":
        U = compatibility_universe()
        if text in U.names:
            return U[text]
    raise InputError(f"cannot interpret complex {text!r}")


def parse_vectors(text, width, p):
    """``"1,0,1"`` or ``"1,0,0;0,1,0"`` as rows."""
    try:
        rows = [[int(v) for v in chunk.split(",")] for chunk in text.split(";") if chunk.strip()]
    except ValueError:
        raise InputError(f"cannot parse vectors {text!r}") from None
    if any(len(r) != width for r in rows):
        raise InputError(f"vectors must have {width} entries")
    return linalg.as_rows(rows, width) % p


def load_universe(args, text):
    from .model import universe_from_dict
    if text == "compat":
        if args.algebra != "T2F2":
            raise InputError("the compatibility universe lives over T2F2")
        return compatibility_universe()
    if text == "modules":
        name = _algebra_name(args)
        if name is None:
            raise InputError("the module universe needs a bundled algebra")
        return module_universe(name)
    if Path(text).exists():
        try:
            return universe_from_dict(args.alg, _read_json(text))
        except ValueError as exc:
            raise InputError(str(exc)) from None
    raise InputError(f"unknown universe {text!r}; use 'modules', 'compat' or a JSON file")


_CLASS = re.compile(r"^([PF])(\d+)$")


def parse_class(text, U):
    """Class syntax: ``P1``, ``F0``, ``E``, ``dw(P0)``, ``ex(P1)``, ``all``, ``list:a,b``,
    ``perp:CLASS`` (right perp of the members of CLASS in U) and ``lperp:CLASS``."""
    from .model import resolve
    text = text.strip()
    m = _CLASS.match(text)
    if m:
        return (Pn if m.group(1) == "P" else Fn)(int(m.group(2)))
    if text == "E":
        return exact_class()
    for wrap, fn in (("dw(", dw), ("ex(", ex)):
        if text.startswith(wrap) and text.endswith(")"):
            return fn(parse_class(text[len(wrap):-1], U))
    if text == "all":
        return listed(U.objects, label="U")
    if text.startswith("list:"):
        names = [n for n in text[5:].split(",") if n]
        missing = [n for n in names if n not in U.names]
        if missing:
            raise InputError(f"not in the universe: {', '.join(missing)}")
        return names
    for prefix, side in (("perp:", "right"), ("lperp:", "left")):
        if text.startswith(prefix):
            inner = parse_class(text[len(prefix):], U)
            names = inner if isinstance(inner, list) else resolve(inner, U)[0]
            return perp([U[n] for n in names], side=side, label=text[len(prefix):])
    raise InputError(f"cannot parse class {text!r}")


def _as_spec(cls, U):
    return listed([U[n] for n in cls], label=",".join(cls)) if isinstance(cls, list) else cls


# -- output ---------------------------------------------------------------------

def _out_dir(args):
    out = args.out or os.environ.get("COTORSION_OUT")
    return Path(out) if out else None


def emit_certificate(args, cert, stem):
    """Write the certificate when an output directory is configured; return the path or None."""
    out = _out_dir(args)
    if out is None:
        return None
    out.mkdir(parents=True, exist_ok=True)
    path = out / f"{stem}.json"
    certificates.dump(cert, path)
    return str(path)


class Report:
    def __init__(self, command):
        self.command = command
        self.data = {"command": command}
        self.lines = []
        self.status = 0

    def set(self, key, value, text=None):
        self.data[key] = certificates._plain(value)
        if text is not None:
            self.lines.append(text)

    def line(self, text):
        self.lines.append(text)

    def fail(self, text):
        self.status = 1
        self.lines.append(text)
        self.data.setdefault("violations", []).append(text)


def _check_emitted(report, cert, args, stem):
    result = checker.check_certificate(json.loads(certificates.dump(cert)))
    path = emit_certificate(args, cert, stem)
    report.set("certificate_ok", result.ok, f"certificate: {'accepted' if result.ok else 'REJECTED'}"
               + (f" ({path})" if path else ""))
    if path:
        report.set("certificate", path)
    if not result.ok:
        report.fail("; ".join(result.errors))


# -- commands ---------------------------------------------------------------------

def cmd_validate(args, report):
    doc = _read_json(args.file)
    kind = args.kind
    if kind is None:
        if "inputs_digest" in doc:
            kind = "certificate"
        elif "mul" in doc:
            kind = "algebra"
        elif "modules" in doc:
            kind = "complex"
        elif "objects" in doc:
            kind = "universe"
        else:
            kind = "module"
    if kind == "algebra":
        A = load_algebra(doc)
        report.set("kind", kind, f"algebra: dim {A.dim} over F_{A.p}, associative with unit")
    elif kind == "module":
        M = module_from_dict(args.alg, doc)
        report.set("kind", kind, f"module: dim {M.dim}, module axioms hold")
    elif kind == "complex":
        X = complex_from_dict(args.alg, doc)
        report.set("kind", kind, f"complex: support [{X.lo}, {X.hi}], card {X.card()}, d d = 0")
        report.set("exact", is_exact(X), f"exact: {is_exact(X)}")
    elif kind == "universe":
        U = load_universe(args, args.file)
        report.set("kind", kind, f"universe: {len(U)} objects")
    else:
        result = checker.check_certificate(doc)
        report.set("kind", "certificate")
        report.set("ok", result.ok, f"certificate ({result.kind}): {'accepted' if result.ok else 'rejected'}")
        if not result.ok:
            for e in result.errors:
                report.fail(e)


def _module_arg(args):
    text = args.module_opt or args.module
    if text is None:
        raise InputError("give a module, positionally or with --module")
    return load_module(args, text)


def cmd_pd(args, report):
    from .resolution import proj_dim
    M = _module_arg(args)
    n = proj_dim(M, args.cutoff)
    report.set("proj_dim", n, str(n) if n is not None else f"> {args.cutoff}")


def cmd_fd(args, report):
    from .homological import flat_dim
    from .zigzag import purity_test_modules
    M = _module_arg(args)
    tests = purity_test_modules(M.algebra, args.test_dim) if getattr(args, "test_dim", None) else None
    n = flat_dim(M, args.cutoff, tests)
    report.set("flat_dim", n, str(n) if n is not None else f"> {args.cutoff}")


def cmd_ext(args, report):
    from .homological import ext
    M, N = load_module(args, args.M), load_module(args, args.N)
    d = ext(args.degree, M, N)
    report.set("dim", d, str(d))


def cmd_tor(args, report):
    from .homological import tor
    Mop, N = load_module(args, args.M), load_module(args, args.N)
    if Mop.algebra != N.algebra.opposite():
        raise InputError("the first argument must be a right module (use NAME* for the dual)")
    d = tor(args.degree, Mop, N)
    report.set("dim", d, str(d))


def cmd_resolve(args, report):
    from .resolution import projective_resolution, resolution_to_dict
    M = load_module(args, args.module)
    res = projective_resolution(M, args.max_len)
    report.set("length", res.length, f"length {res.length}")
    for k, P in enumerate(res.terms):
        report.line(f"P_{k}: {len(P)} summands of kinds {list(P.kinds)}, dim {P.dim}")
    report.set("resolution", resolution_to_dict(res))


def cmd_zigzag(args, report):
    from .resolution import projective_resolution
    from .zigzag import zigzag_subresolution
    M = load_module(args, args.module)
    res = projective_resolution(M, args.n)
    N = submodule_generated(M, parse_vectors(args.sub, M.dim, M.p)) if args.sub else linalg.zeros(0, M.dim)
    sub = zigzag_subresolution(res, N, kappa=args.kappa)
    report.set("sizes", sub.sizes(), f"sub-term dimensions {sub.sizes()} after {sub.rounds} rounds")
    report.set("sub_target_dim", sub.sub_target.shape[0], f"N' has dimension {sub.sub_target.shape[0]}")
    _check_emitted(report, certificates.subresolution_certificate(sub), args, "subresolution")


def cmd_filtrate_module(args, report):
    from .zigzag import module_filtration
    M = load_module(args, args.module)
    filt = module_filtration(M, args.kappa, n=args.n)
    dims = [s.basis.shape[0] for s in filt.steps]
    report.set("chain", dims, "chain dimensions " + " ⊆ ".join(map(str, dims)))
    _check_emitted(report, certificates.module_filtration_certificate(filt), args, "module-filtration")


def _complex_filtrate(args, report, kind):
    from .complex_zigzag import dw_filtration, ex_filtration
    X = load_complex(args, args.complex)
    fn = dw_filtration if kind == "dw" else ex_filtration
    filt = fn(X, args.kappa, n=args.n)
    cards = [sum(b.shape[0] for b in s["bases"].values()) for s in filt.steps]
    report.set("chain", cards, "chain cards " + " ⊆ ".join(map(str, cards)))
    _check_emitted(report, certificates.complex_filtration_certificate(filt), args, f"{kind}-filtration")


def cmd_dw_filtrate(args, report):
    _complex_filtrate(args, report, "dw")


def cmd_ex_filtrate(args, report):
    _complex_filtrate(args, report, "ex")


def cmd_staircase(args, report):
    from .complex_zigzag import degree_resolutions, remark_no_noetherian_check, staircase_subcomplex
    X = load_complex(args, args.complex)
    deg = args.degree if args.degree is not None else next((m for m in X.degrees if X.dim(m)), X.lo)
    if args.vector:
        vec = parse_vectors(args.vector, X.dim(deg), X.p)
        if vec.shape[0] != 1:
            raise InputError("give exactly one vector")
        vec = vec[0]
    else:
        if not 0 <= args.basis_index < X.dim(deg):
            raise InputError(f"degree {deg} has dimension {X.dim(deg)}")
        vec = linalg.identity(X.dim(deg))[args.basis_index]
    schedule = [int(v) for v in args.schedule.split(",")] if args.schedule else None
    resolutions = degree_resolutions(X, args.n)
    r = staircase_subcomplex(X, (deg, vec), kappa=args.kappa, track=args.track, schedule=schedule,
                             n=args.n, resolutions=resolutions)
    card = sum(b.shape[0] for b in r.bases.values())
    report.set("card", card, f"Y has card {card} after {len(r.ladder)} ladder steps")
    audit = remark_no_noetherian_check(r)
    ops = ", ".join(row["op"] for row in audit["operations"])
    report.set("audit", audit, f"audit ({args.track}): {ops}; "
               + ("noetherian-free" if audit["noetherian_free"] else
                  "noetherian steps: " + ", ".join(audit["noetherian_steps"])))
    cert = certificates.staircase_certificate(r, resolutions, args.n, mode=args.mode)
    _check_emitted(report, cert, args, f"staircase-{args.track}")


def cmd_pure_closure(args, report):
    from .zigzag import pure_closure
    F = load_module(args, args.module)
    S0 = submodule_generated(F, parse_vectors(args.seed_vectors, F.dim, F.p)) if args.seed_vectors \
        else linalg.zeros(0, F.dim)
    c = pure_closure(S0, F, kappa=args.kappa)
    report.set("dim", c.basis.shape[0], f"pure closure of dimension {c.basis.shape[0]} ({c.method}), "
               f"tensor-injective on {c.tests} test modules")
    _check_emitted(report, certificates.pure_closure_certificate(F, S0, c, args.kappa), args, "pure-closure")


def cmd_check_cotorsion(args, report):
    from .model import check_cotorsion_pair
    U = load_universe(args, args.universe)
    r = check_cotorsion_pair(parse_class(args.left, U), parse_class(args.right, U), U)
    for line in r.summary().splitlines():
        report.line(line)
    report.set("left", r.left)
    report.set("right", r.right)
    report.set("table", {f"{a}|{b}": d for (a, b), d in r.table.items()})
    report.set("clean", r.clean)
    if not r.clean:
        report.status = 1


def cmd_check_compat(args, report):
    from .model import check_compatibility
    U = load_universe(args, args.universe)
    r = check_compatibility(parse_class(args.inner, U), U)
    report.set("lhs", r.lhs, f"(dw ∩ U)⊥ ∩ U      = {r.lhs}")
    report.set("rhs", r.rhs, f"(ex ∩ U)⊥ ∩ E ∩ U  = {r.rhs}")
    report.set("witnesses", r.witnesses)
    report.set("equal", r.equal, "equal" if r.equal else "NOT equal")
    if not r.equal:
        report.status = 1


def thick_samples(algebra_name, rng, count):
    """Short exact sequences of exact complexes and split retract diagrams."""
    from .complexes import complex_direct_sum
    samples = []
    for k in range(count):
        X = random_exact_complex(algebra_name, rng, support=3, max_dim=4)
        Y = random_exact_complex(algebra_name, rng, support=3, max_dim=4) if k % 2 else \
            random_complex(algebra_name, rng, length=2, max_dim=3)
        i, q = random_extension(Y, X, rng)
        samples.append(("ses", i, q))
        S, incs, projs = complex_direct_sum(X, Y)
        samples.append(("retract", incs[0], projs[0]))
    return samples


def cmd_check_thick(args, report):
    from .model import check_thick
    name = _algebra_name(args)
    if name is None:
        raise InputError("random samples need a bundled algebra")
    r = check_thick(thick_samples(name, np.random.default_rng(args.seed), args.count))
    bad = [row for row in r.rows if not row["ok"]]
    report.set("rows", r.rows, f"{len(r.rows) - len(bad)}/{len(r.rows)} samples consistent with thickness")
    for row in bad:
        report.fail(f"sample {row['sample']} ({row['kind']}) violates thickness")


def cmd_approx(args, report):
    from .model import NotFound, approx_search
    U = load_universe(args, args.universe)
    X = U[args.object] if args.object in U.names else (
        load_complex(args, args.object) if U.complexes else load_module(args, args.object))
    A = _as_spec(parse_class(args.left, U), U)
    B = _as_spec(parse_class(args.right, U), U)
    try:
        ap = approx_search(X, A, B, U, side=args.side)
    except NotFound as exc:
        report.set("report", exc.report)
        report.fail(f"NOTFOUND: {exc}")
        return
    dims = [t.card() if hasattr(t, "card") else t.dim for t in ap.terms]
    report.set("terms", dims, f"0 -> {dims[0]} -> {dims[1]} -> {dims[2]} -> 0 "
               f"(candidate {ap.candidate or '-'}, {ap.searched} extensions tried)")
    report.set("left_member", ap.left_member.reason, f"A-term: {ap.left_member.reason}")
    report.set("right_member", ap.right_member.reason, f"B-term: {ap.right_member.reason} (relative to U)")


def cmd_lift(args, report):
    from .model import lift, verify_lift
    name = _algebra_name(args)
    if name is None:
        raise InputError("random squares need a bundled algebra")
    rng = np.random.default_rng(args.seed)
    found = none = 0
    for _ in range(args.count):
        problem = random_lifting_square(name, rng) if args.kind == "guaranteed" else obstructed_square(name, rng)
        d = lift(problem)
        if d is None:
            none += 1
        elif verify_lift(problem, d) is None:
            found += 1
    report.set("found", found)
    report.set("none", none, f"{args.count} {args.kind} squares: {found} lifts found, {none} with no lift")
    expected = found if args.kind == "guaranteed" else none
    if expected != args.count:
        report.fail(f"expected {args.count} {'lifts' if args.kind == 'guaranteed' else 'obstructions'}")


def cmd_factor(args, report):
    from .complexes import chain_maps, zero_map
    from .model import NotFound, factor_map, resolve
    U = load_universe(args, args.universe)
    if not U.complexes:
        raise InputError("factorization needs a universe of complexes")
    X, Y = load_complex(args, args.source), load_complex(args, args.target)
    maps = chain_maps(X, Y)
    f = maps[args.map_index % len(maps)] if maps else zero_map(X, Y)
    A = _as_spec(parse_class(args.left, U), U)
    if args.trivial == "fibration":
        B = perp([U[n] for n in resolve(A, U)[0]], label="A∩U")
    else:
        B = perp([U[n] for n in resolve(intersect_exact(A), U)[0]], label="A∩E∩U")
    try:
        F = factor_map(f, A, B, U, trivial=args.trivial)
    except NotFound as exc:
        report.fail(f"NOTFOUND: {exc}")
        return
    problem = F.verify()
    report.set("steps", F.steps, "; ".join(f"{k}: {v}" for k, v in F.steps.items()))
    report.set("cokernel", F.cokernel_member.reason, f"coker i: {F.cokernel_member.reason}")
    report.set("kernel", F.kernel_member.reason, f"ker p: {F.kernel_member.reason}")
    if problem:
        report.fail(problem)
    else:
        report.line("p i = f, i monic, p epi")


def intersect_exact(A):
    from .classes import intersection
    return intersection(A, exact_class())


def cmd_check_cert(args, report):
    result = checker.check_certificate(_read_json(args.file))
    report.set("kind", result.kind)
    report.set("ok", result.ok, f"{result.kind}: {'accepted' if result.ok else 'rejected'}")
    for e in result.errors:
        report.fail(e)


def cmd_demo(args, report):
    from .demo import run_demo
    rows = run_demo(args)
    width = max(len(r[0]) for r in rows)
    for name, ok, detail in rows:
        report.line(f"{name:<{width}}  {'PASS' if ok else 'FAIL'}  {detail}")
    report.set("rows", [{"check": n, "ok": ok, "detail": d} for n, ok, d in rows])
    if not all(ok for _, ok, _ in rows):
        report.status = 1


# -- parser ---------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", default=DEFAULT_ALGEBRA, help="bundled name or JSON file (default T2F2)")
    common.add_argument("--kappa", type=int, default=DEFAULT_KAPPA, help="dimension budget (default 4)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--json", action="store_true", help="machine-readable report")
    common.add_argument("--out", help="directory for certificates (overrides COTORSION_OUT)")

    parser = argparse.ArgumentParser(prog="cotorsion", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=fn)
        return p

    p = add("validate", cmd_validate, "load a file and check its invariants")
    p.add_argument("file")
    p.add_argument("--kind", choices=["algebra", "module", "complex", "universe", "certificate"])
    for name, fn in (("pd", cmd_pd), ("fd", cmd_fd)):
        p = add(name, fn, f"{'projective' if name == 'pd' else 'flat'} dimension of a module")
        p.add_argument("module", nargs="?")
        p.add_argument("--module", dest="module_opt", help="same as the positional argument")
        p.add_argument("--cutoff", type=int, default=6)
        if name == "fd":
            p.add_argument("--test-dim", type=int,
                           help="test Tor against all right modules up to this dimension")
    for name, fn in (("ext", cmd_ext), ("tor", cmd_tor)):
        p = add(name, fn, f"dimension of {name.capitalize()}^n(M, N)")
        p.add_argument("M")
        p.add_argument("N")
        p.add_argument("--degree", type=int, default=1)
    p = add("resolve", cmd_resolve, "decomposed projective resolution")
    p.add_argument("module")
    p.add_argument("--max-len", type=int, default=6)
    p = add("zigzag", cmd_zigzag, "nice subresolution containing a submodule")
    p.add_argument("module")
    p.add_argument("--sub", help="generators of N, e.g. '1,0,0;0,1,0'")
    p.add_argument("--n", type=int, default=4)
    p = add("filtrate-module", cmd_filtrate_module, "filtration of a module with small quotients")
    p.add_argument("module")
    p.add_argument("--n", type=int, default=None)
    for name, fn in (("dw-filtrate", cmd_dw_filtrate), ("ex-filtrate", cmd_ex_filtrate)):
        p = add(name, fn, "filtration of a complex with small quotients")
        p.add_argument("complex")
        p.add_argument("--n", type=int, default=4)
    p = add("staircase", cmd_staircase, "small exact subcomplex containing an element")
    p.add_argument("complex")
    p.add_argument("--degree", type=int)
    p.add_argument("--vector")
    p.add_argument("--basis-index", type=int, default=0)
    p.add_argument("--track", choices=["projective", "flat"], default="projective")
    p.add_argument("--schedule", help="comma-separated cyclic list of degrees")
    p.add_argument("--mode", choices=["full", "compact"], default="full")
    p.add_argument("--n", type=int, default=4)
    p = add("pure-closure", cmd_pure_closure, "small pure submodule containing a seed")
    p.add_argument("module")
    p.add_argument("--seed-vectors")
    p = add("check-cotorsion", cmd_check_cotorsion, "cotorsion-pair conditions on a universe")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--universe", default="modules")
    p = add("check-compat", cmd_check_compat, "compatibility identity on a complex universe")
    p.add_argument("--inner", default="P1")
    p.add_argument("--universe", default="compat")
    p = add("check-thick", cmd_check_thick, "two-of-three and retracts for exactness")
    p.add_argument("--count", type=int, default=10)
    p = add("approx", cmd_approx, "approximation sequence search")
    p.add_argument("object")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--universe", default="modules")
    p.add_argument("--side", choices=["enough-projectives", "enough-injectives"], default="enough-projectives")
    p = add("lift", cmd_lift, "solve random lifting problems")
    p.add_argument("--kind", choices=["guaranteed", "obstructed"], default="guaranteed")
    p.add_argument("--count", type=int, default=10)
    p = add("factor", cmd_factor, "factor a chain map as a cofibration followed by a fibration")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--map-index", type=int, default=0)
    p.add_argument("--left", default="dw(P0)")
    p.add_argument("--universe", default="compat")
    p.add_argument("--trivial", choices=["fibration", "cofibration"], default="fibration")
    p = add("check-cert", cmd_check_cert, "independent certificate checker")
    p.add_argument("file")
    add("demo", cmd_demo, "walk through the bundled algebras")
    return parser


VIOLATIONS = (BudgetExceeded, NotFound)
INPUT_ERRORS = (InputError, AlgebraError, ModuleError, ComplexError, KeyError, ValueError)


def main(argv=None):
    args = build_parser().parse_args(argv)
    report = Report(args.command)
    try:
        args.alg = load_algebra_arg(args.algebra)
        args.func(args, report)
    except VIOLATIONS as exc:
        report.fail(f"{type(exc).__name__}: {exc}")
    except INPUT_ERRORS as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        report.status = 2
        report.data["error"] = f"{type(exc).__name__}: {msg}"
        report.lines.append(f"error: {type(exc).__name__}: {msg}")
    report.data["status"] = report.status
    if args.json:
        print(json.dumps(report.data, sort_keys=True, indent=1, ensure_ascii=False))
    else:
        stream = sys.stderr if report.status == 2 else sys.stdout
        for line in report.lines:
            print(line, file=stream)
    return report.status


if __name__ == "__main__":
    sys.exit(main())
