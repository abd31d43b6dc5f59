"""Command-line front end: ``lodaydef <verb> ...``.

Exit status: 0 success / property holds, 1 mathematical negative (invalid
algebra, nonzero obstruction class, not equivalent), 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any

from . import io
from .algebra import (AlgebraSpec, adjoint_representation, check_representation, trivial_representation,
                      validate_algebra)
from .cohomology import (CochainComplex, cochain_dim, cocycle_from_extension, extension_from_cocycle,
                         is_cocycle)
from .deformation import (Obstructed, are_equivalent, extend_deformation, infinitesimal, is_deformation,
                          mc_check, obstruction, operad_complex, rigidity_verdict, universal_deformation)
from .morphisms import MorphismComplex, extend_morphism_deformation, is_morphism_deformation
from .operad import Operad
from .shapes import FAMILIES, get_family
from .twisted import twist_pair_check, twisted_spec, validate_twisted

MAX_DEGREE = 5
MAX_ORDER = 8
LARGE = 5000


class UsageError(Exception):
    pass


@dataclass
class Report:
    verb: str
    inputs: dict
    lines: list = field(default_factory=list)
    result: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)
    status: int = 0

    def say(self, line: str):
        self.lines.append(line)


def _frac_list(xs) -> list[str]:
    return [str(Fraction(x)) for x in xs]


def _sup(n: int) -> str:
    return str(n).translate(str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹"))


def _degree(n: int) -> int:
    if not 1 <= n <= MAX_DEGREE:
        raise UsageError(f"degree must be in 1..{MAX_DEGREE}")
    return n


def _order(n: int) -> int:
    if not 0 <= n <= MAX_ORDER:
        raise UsageError(f"order must be in 0..{MAX_ORDER}")
    return n


def _estimate(report: Report, rows: int, cols: int):
    if rows * cols > LARGE * LARGE // 10 or max(rows, cols) > LARGE:
        print(f"note: assembling a {rows} x {cols} exact matrix", file=sys.stderr)
    report.result.setdefault("matrix_sizes", []).append([rows, cols])


def _representation(spec: AlgebraSpec, rep_in, choice: str):
    if choice == "adjoint":
        return adjoint_representation(spec)
    if choice == "file":
        if rep_in is None:
            raise UsageError("--rep file needs mdim/theta1/theta2 in the algebra file")
        return rep_in
    if choice.startswith("trivial"):
        _, _, m = choice.partition(":")
        try:
            return trivial_representation(spec, int(m or 1))
        except ValueError:
            raise UsageError(f"bad representation {choice!r}") from None
    raise UsageError(f"unknown representation {choice!r}; use adjoint, trivial[:m] or file")


# ---------------------------------------------------------------------------
# verbs


def cmd_shapes(args, r: Report):
    fam = get_family(args.family)
    n = _degree(args.n)
    shapes = fam.enumerate(n)
    for s in shapes:
        r.say(fam.format(s))
    r.result = {"family": fam.name, "n": n, "count": len(shapes), "shapes": [fam.format(s) for s in shapes]}


def cmd_validate(args, r: Report):
    spec, rep = io.load_algebra(args.algebra)
    n3 = get_family(spec.family).count(3)
    ok = validate_twisted(spec) if spec.twisted else validate_algebra(spec)
    kind = "twisted multiplication" if spec.twisted else "multiplication"
    r.result = {"family": spec.family, "dim": spec.dim, "valid": ok.ok, "shapes_checked": n3}
    if ok:
        r.say(f"{kind} verified on {n3} shapes of U_3")
    else:
        r.say(f"{kind} fails: {json.dumps(ok.witness)}")
        r.witnesses.append(ok.witness)
        r.status = 1
    if rep is not None:
        rc = check_representation(rep)
        r.result["representation_valid"] = rc.ok
        r.say("representation identities hold" if rc else f"representation fails: {json.dumps(rc.witness)}")
        if not rc:
            r.witnesses.append(rc.witness)
            r.status = 1


def cmd_cohomology(args, r: Report):
    spec, rep_in = io.load_algebra(args.algebra)
    degrees = [_degree(args.n)] if args.n else [1, 2, 3]
    out = {}
    if spec.twisted or args.operad:
        cx = operad_complex(spec)
        for n in degrees:
            _estimate(r, spec.operad().space_dim(n + 1), spec.operad().space_dim(n))
            out[n] = cx.dims(n)
        r.result["complex"] = "operad (twisted subcomplex)" if spec.twisted else "operad"
    else:
        rep = _representation(spec, rep_in, args.rep)
        if args.rep != "adjoint":
            ok = check_representation(rep)
            if not ok:
                raise UsageError(f"invalid representation: {ok.witness}")
        cx = CochainComplex(rep)
        for n in degrees:
            _estimate(r, cochain_dim(rep, n + 1), cochain_dim(rep, n))
            out[n] = cx.dims(n)
        r.result["complex"] = f"coefficients in {args.rep}"
    for n, (z, b, h) in out.items():
        k = _sup(n)
        r.say(f"Z{k}={z} B{k}={b} H{k}={h}")
    r.result["dims"] = {str(n): {"Z": z, "B": b, "H": h} for n, (z, b, h) in out.items()}
    if 2 in out and (spec.twisted or args.operad or args.rep == "adjoint"):
        h2, text = rigidity_verdict(spec)
        r.say(text)
        r.result["rigidity"] = text


def cmd_derivations(args, r: Report):
    spec, rep_in = io.load_algebra(args.algebra)
    if spec.twisted:
        basis = operad_complex(spec).cocycle_basis(1)
    else:
        basis = CochainComplex(_representation(spec, rep_in, args.rep)).cocycle_basis(1)
    r.say(f"{len(basis)} derivation(s)")
    for k, D in enumerate(basis):
        r.say(f"D{k}:")
        r.say("  " + str(D).replace("\n", "\n  "))
    r.result = {"count": len(basis), "basis": [io.element_to_json(D) for D in basis]}


def cmd_deform_check(args, r: Report):
    defo = io.load_deformation(args.deformation)
    k = defo.order if args.order is None else _order(args.order)
    ok = is_deformation(defo, k)
    mc = mc_check(defo.base, list(defo.gamma()[:k]))
    r.result = {"order": k, "valid": ok.ok, "maurer_cartan": mc.ok}
    if ok:
        r.say(f"deformation equations hold to order {k} (Maurer-Cartan form agrees)")
    else:
        r.say(f"deformation equation fails at order {ok.witness['order']}: {json.dumps(ok.witness)}")
        r.witnesses.append(ok.witness)
        r.status = 1
        return
    inf = infinitesimal(defo)
    if inf is None:
        r.say("all higher terms vanish (constant deformation)")
        r.result["infinitesimal"] = None
    else:
        cob = operad_complex(defo.base).is_coboundary(inf.term)
        r.say(f"infinitesimal at order {inf.order}: 2-cocycle={inf.is_cocycle}, coboundary={cob}")
        r.result["infinitesimal"] = {"order": inf.order, "cocycle": inf.is_cocycle, "coboundary": cob}


def cmd_deform_extend(args, r: Report):
    defo = io.load_deformation(args.deformation)
    steps = args.steps
    if defo.order + steps > MAX_ORDER:
        raise UsageError(f"order would exceed {MAX_ORDER}")
    ok = is_deformation(defo)
    if not ok:
        r.say(f"input is not a deformation: {json.dumps(ok.witness)}")
        r.witnesses.append(ok.witness)
        r.status = 1
        return
    try:
        for _ in range(steps):
            defo = extend_deformation(defo)
            r.say(f"extended to order {defo.order}")
    except Obstructed as exc:
        coords = _frac_list(exc.coordinates)
        r.say(f"obstructed at order {exc.order + 1}: class coordinates in H^3 = [{' '.join(coords)}]")
        r.result = {"obstructed": True, "order": exc.order + 1, "class_coordinates": coords,
                    "obstruction": io.element_to_json(exc.obstruction)}
        r.status = 1
        return
    r.result = {"obstructed": False, "deformation": io.deformation_to_json(defo)}
    if args.output:
        Path(args.output).write_text(io.dumps(io.deformation_to_json(defo)) + "\n")
        r.say(f"written to {args.output}")


def cmd_obstruction(args, r: Report):
    defo = io.load_deformation(args.deformation)
    ok = is_deformation(defo)
    if not ok:
        raise UsageError(f"input is not a deformation to its order: {ok.witness}")
    ob = obstruction(defo, check=False)
    cx = operad_complex(defo.base)
    cocycle = cx.d(ob).is_zero()
    coords = cx.class_coordinates(ob)
    zero_class = not any(coords)
    r.say(f"obstruction to order {defo.order + 1}: " + ("0" if ob.is_zero() else "nonzero cochain"))
    r.say(f"3-cocycle={cocycle}, class coordinates [{' '.join(_frac_list(coords))}]")
    r.result = {"obstruction": io.element_to_json(ob), "cocycle": cocycle, "class_coordinates": _frac_list(coords),
                "extends": zero_class}
    if not zero_class:
        r.status = 1


def cmd_equivalence(args, r: Report):
    d1 = io.load_deformation(args.first)
    d2 = io.load_deformation(args.second)
    phi = are_equivalent(d1, d2)
    if phi is None:
        z1 = operad_complex(d1.base).dims(1)[0]
        cert = "certified (Z^1 = 0)" if z1 == 0 else "order-by-order search failed"
        r.say(f"no equivalence found; {cert}")
        r.result = {"equivalent": False, "certified": z1 == 0}
        r.status = 1
        return
    r.say("equivalent via phi_t =")
    for k, t in enumerate(phi.terms):
        r.say(f"  phi_{k}: " + str(t).replace("\n", "; "))
    r.result = {"equivalent": True, "automorphism": [io.element_to_json(t) for t in phi.terms]}


def cmd_extension(args, r: Report):
    spec, rep_in = io.load_algebra(args.algebra)
    rep = _representation(spec, rep_in, args.rep)
    f = io.load_cochain(args.cocycle, spec, rep.mdim)
    ok = is_cocycle(rep, f)
    if not ok:
        r.say(f"not a 2-cocycle: {json.dumps(ok.witness)}")
        r.witnesses.append(ok.witness)
        r.status = 1
        return
    ext = extension_from_cocycle(rep, f)
    g, _ = cocycle_from_extension(ext)
    diff = CochainComplex(rep).solve(f - g)
    valid = validate_algebra(ext.total)
    r.say(f"extension of dimension {ext.total.dim}: valid={valid.ok}; round trip cohomologous={diff is not None}")
    r.result = {"total": io.algebra_to_json(ext.total), "valid": valid.ok, "round_trip": diff is not None}
    if args.output:
        Path(args.output).write_text(io.dumps(io.algebra_to_json(ext.total)) + "\n")


def cmd_morphism_cohomology(args, r: Report):
    f = io.load_morphism(args.morphism)
    cx = MorphismComplex(f)
    degrees = [_degree(args.n)] if args.n else [1, 2, 3]
    dims = {}
    for n in degrees:
        _estimate(r, cx.cochain_dim(n + 1), cx.cochain_dim(n))
        dims[n] = cx.dims(n)
        z, b, h = dims[n]
        k = _sup(n)
        r.say(f"Z{k}={z} B{k}={b} H{k}={h}")
    r.result = {"dims": {str(n): {"Z": z, "B": b, "H": h} for n, (z, b, h) in dims.items()}}
    if 2 in dims:
        text = ("H^2(f,f) = 0, hence f is rigid" if dims[2][2] == 0
                else "H^2(f,f) is nonzero; rigidity is not implied")
        r.say(text)
        r.result["rigidity"] = text


def cmd_morphism_extend(args, r: Report):
    md = io.load_morphism_deformation(args.deformation)
    if md.order + args.steps > MAX_ORDER:
        raise UsageError(f"order would exceed {MAX_ORDER}")
    ok = is_morphism_deformation(md)
    if not ok:
        r.say(f"input is not a morphism deformation: {json.dumps(ok.witness)}")
        r.witnesses.append(ok.witness)
        r.status = 1
        return
    cx = MorphismComplex(md.f)
    try:
        for _ in range(args.steps):
            md = extend_morphism_deformation(md, cx)
            r.say(f"extended to order {md.order}")
    except Obstructed as exc:
        coords = _frac_list(exc.coordinates)
        r.say(f"obstructed at order {exc.order + 1}: class coordinates in H^3(f,f) = [{' '.join(coords)}]")
        r.result = {"obstructed": True, "order": exc.order + 1, "class_coordinates": coords}
        r.status = 1
        return
    r.result = {"obstructed": False, "deformation": io.morphism_deformation_to_json(md)}
    if args.output:
        Path(args.output).write_text(io.dumps(io.morphism_deformation_to_json(md)) + "\n")


def cmd_twist_validate(args, r: Report):
    spec, _ = io.load_algebra(args.algebra)
    if not spec.twisted:
        raise UsageError("the algebra file has no alpha/beta")
    if args.yau:
        base = spec.untwisted()
        try:
            spec = twisted_spec(base, spec.alpha.data[0].T.tolist(), spec.beta.data[0].T.tolist())
        except ValueError as exc:
            r.say(f"Yau twist preconditions fail: {exc}")
            r.status = 1
            return
        r.say("Yau twist pi(r; alpha a, beta b) built")
    commute = twist_pair_check(spec.operad())
    ok = validate_twisted(spec)
    r.say(f"alpha o beta = beta o alpha: {commute.ok}")
    r.say("twisted multiplication verified" if ok else f"fails: {json.dumps(ok.witness)}")
    r.result = {"valid": ok.ok, "algebra": io.algebra_to_json(spec)}
    if not ok:
        r.witnesses.append(ok.witness)
        r.status = 1


def cmd_universal_deform(args, r: Report):
    spec, _ = io.load_algebra(args.algebra)
    N = _order(args.order)
    obj = io.read_json(args.derivations)
    io._keys(obj, {"D", "Dbar"}, {"D"}, args.derivations)
    op = Operad(spec.family, spec.dim, spec.alpha, spec.beta)
    D = op.from_matrix(io.matrix_from_json(obj["D"], spec.dim, spec.dim, "D").tolist())
    Db = op.from_matrix(io.matrix_from_json(obj.get("Dbar", obj["D"]), spec.dim, spec.dim, "Dbar").tolist())
    try:
        defo = universal_deformation(spec, D, Db, N)
    except ValueError as exc:
        r.say(f"preconditions fail: {exc}")
        r.status = 1
        return
    ok = is_deformation(defo)
    r.say(f"universal deformation to order {N}: deformation equations hold = {ok.ok}")
    r.result = {"valid": ok.ok, "deformation": io.deformation_to_json(defo)}
    if args.output:
        Path(args.output).write_text(io.dumps(io.deformation_to_json(defo)) + "\n")
    if not ok:
        r.status = 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lodaydef", description="Exact cohomology and deformations of Loday-type algebras")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--no-timings", action="store_true", help="omit timings from JSON reports")
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("shapes", help="list the shapes of U_n")
    s.add_argument("--family", required=True, choices=FAMILIES)
    s.add_argument("--n", type=int, required=True)

    s = sub.add_parser("validate", help="check pi o pi = 0 (and a representation if present)")
    s.add_argument("algebra")

    for name in ("cohomology", "derivations"):
        s = sub.add_parser(name)
        s.add_argument("algebra")
        s.add_argument("--rep", default="adjoint", help="adjoint, trivial[:m] or file")
        if name == "cohomology":
            s.add_argument("--n", type=int)
            s.add_argument("--operad", action="store_true", help="use the complex (O, d_pi)")

    s = sub.add_parser("deform-check")
    s.add_argument("deformation")
    s.add_argument("--order", type=int)

    s = sub.add_parser("deform-extend")
    s.add_argument("deformation")
    s.add_argument("--steps", type=int, default=1)
    s.add_argument("--output")

    s = sub.add_parser("obstruction")
    s.add_argument("deformation")

    s = sub.add_parser("equivalence")
    s.add_argument("first")
    s.add_argument("second")

    s = sub.add_parser("extension")
    s.add_argument("algebra")
    s.add_argument("--cocycle", required=True)
    s.add_argument("--rep", default="adjoint")
    s.add_argument("--output")

    s = sub.add_parser("morphism-cohomology")
    s.add_argument("morphism")
    s.add_argument("--n", type=int)

    s = sub.add_parser("morphism-extend")
    s.add_argument("deformation")
    s.add_argument("--steps", type=int, default=1)
    s.add_argument("--output")

    s = sub.add_parser("twist-validate")
    s.add_argument("algebra")
    s.add_argument("--yau", action="store_true", help="twist the products by alpha, beta first")

    s = sub.add_parser("universal-deform")
    s.add_argument("algebra")
    s.add_argument("--derivations", required=True, help='JSON {"D": matrix, "Dbar": matrix}')
    s.add_argument("--order", type=int, default=4)
    s.add_argument("--output")
    return p


COMMANDS = {
    "shapes": cmd_shapes, "validate": cmd_validate, "cohomology": cmd_cohomology,
    "derivations": cmd_derivations, "deform-check": cmd_deform_check, "deform-extend": cmd_deform_extend,
    "obstruction": cmd_obstruction, "equivalence": cmd_equivalence, "extension": cmd_extension,
    "morphism-cohomology": cmd_morphism_cohomology, "morphism-extend": cmd_morphism_extend,
    "twist-validate": cmd_twist_validate, "universal-deform": cmd_universal_deform,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    inputs = {k: v for k, v in vars(args).items() if k not in ("verb", "format", "no_timings") and v is not None}
    report = Report(args.verb, inputs)
    start = time.perf_counter()
    try:
        COMMANDS[args.verb](args, report)
    except (io.SpecError, UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report.timings["total_s"] = round(time.perf_counter() - start, 4)
    if args.format == "json":
        out: dict[str, Any] = {"verb": report.verb, "inputs": report.inputs, "result": report.result,
                               "witnesses": report.witnesses}
        if not args.no_timings:
            out["timings"] = report.timings
        print(json.dumps(out, indent=1, default=str))
    else:
        for line in report.lines:
            print(line)
    return report.status


if __name__ == "__main__":
    sys.exit(main())
