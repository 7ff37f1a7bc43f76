"""Command-line entry point: one verb per operation, plus the fixture runner."""

from __future__ import annotations

import argparse
import os
import re
import sys
from pathlib import Path

from . import numerics as nm
from .catalog import FixtureError, FixtureRunError, run_all, run_fixture
from .duality import (BasePointError, CurveError, DualityError, FinitenessViolation, LinearSystemError,
                      PencilError, UnsupportedSource, discriminant, dual_variety, jumping_sets, milnor,
                      parse_linear_system, pencil_verify, strata, strata_cover, wronskian_branch)
from .duality.common import projective_dimension
from .ideals import dimension_degree, parse_ideal
from .polyring import GF, Field, ParseError, PolyRing, parse_field

FIELD_ENV = "DISCLOCI_FIELD"

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


class CheckFailed(Exception):
    """Raised after output has been produced, to turn a failed check into exit code 1."""


# ---------------------------------------------------------------- helpers

def default_field() -> Field:
    spec = os.environ.get(FIELD_ENV)
    return parse_field(spec) if spec else GF(32003)


def format_machine(kv: dict[str, str]) -> str:
    out = []
    for k, v in kv.items():
        if "\n" in str(v) or ":" in k:
            raise ValueError(f"value for {k!r} is not a single line")
        out.append(f"{k}: {v}")
    return "\n".join(out) + "\n"


def parse_machine(text: str) -> dict[str, str]:
    """Inverse of format_machine."""
    out = {}
    for line in text.splitlines():
        if line.endswith(":") and ": " not in line:
            out[line[:-1]] = ""
        elif line:
            k, _, v = line.partition(": ")
            out[k] = v
    return out


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _text_or_file(arg: str) -> str:
    p = Path(arg)
    return p.read_text().strip() if p.is_file() else arg


_IDENT = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


def _ring_for(exprs: list[str], field: Field, names: str | None) -> PolyRing:
    if names:
        return PolyRing(names.replace(",", " ").split(), field)
    seen = []
    for e in exprs:
        for v in _IDENT.findall(e):
            if v not in seen:
                seen.append(v)
    if not seen:
        raise InputError("no variables found; pass --vars")
    return PolyRing(sorted(seen), field)


def _system(args):
    return parse_linear_system(_read(args.input), args.field_obj, Path(args.input).stem)


def _emit(args, lines: list[str], kv: dict[str, str], with_field: bool = True):
    if args.machine and with_field:
        kv = {"field": args.field_obj.spec, **kv}
    sys.stdout.write(format_machine(kv) if args.machine else "\n".join(lines) + "\n")


# ---------------------------------------------------------------- verbs

def cmd_dual(args):
    X = parse_ideal(_read(args.input))
    X = X.map(X.ring.with_field(args.field_obj))
    names = args.dual_names.split() if args.dual_names else None
    D = dual_variety(X, names)
    dim = projective_dimension(D)
    deg = dimension_degree(D)[1] if dim >= 0 else 0
    gens = [str(g) for g in D.gens]
    lines = ["dual: (" + ", ".join(gens) + ")", f"dimension: {dim}", f"degree: {deg}"]
    _emit(args, lines, {"dual": "; ".join(gens), "dimension": str(dim), "degree": str(deg)})


def cmd_discriminant(args):
    V = _system(args)
    rep = discriminant(V, with_strata=not args.no_strata, seed=args.seed)
    _emit(args, rep.lines(), rep.machine())


def cmd_jumping_sets(args):
    V = _system(args)
    J = jumping_sets(V)
    kv = {}
    for i in sorted(J.ideals):
        kv[f"J{i}"] = "; ".join(map(str, J.ideals[i].gens)) or "0"
        kv[f"J{i}_dim"] = str(J.dims[i])
        kv[f"J{i}_stratum_dim"] = str(J.stratum_dims[i])
        kv[f"J{i}_radical_certified"] = str(J.certified[i]).lower()
    _emit(args, J.format(), kv)


def cmd_strata(args):
    V = _system(args)
    rep = discriminant(V, with_strata=True, seed=args.seed)
    parts = rep.strata or strata(V, seed=args.seed)
    cover = strata_cover(rep.ideal, parts)
    lines, kv = [], {}
    for i, P in sorted(parts.items()):
        body = "empty" if P.is_unit() else "; ".join(map(str, P.gens))
        lines.append(f"D{i}: {body}")
        kv[f"D{i}"] = body
    lines.append(f"cover: {str(cover).lower()}")
    kv["cover"] = str(cover).lower()
    _emit(args, lines, kv)
    if not cover:
        raise CheckFailed("strata do not cover the discriminant")


def cmd_codegree(args):
    V = _system(args)
    rep = discriminant(V, with_strata=False)
    _emit(args, [f"codegree: {rep.codegree}"], {"codegree": str(rep.codegree)})


def cmd_milnor(args):
    text = _text_or_file(args.poly)
    ring = _ring_for([text], args.field_obj, args.vars)
    f = ring.parse(text)
    point = None
    if args.point:
        F = ring.field
        point = tuple(F(c) for c in args.point.replace(",", " ").split())
        if len(point) != ring.nvars:
            raise InputError(f"point needs {ring.nvars} coordinates")
    d = milnor(f, point)
    mu = "inf" if not d.isolated else str(d.mu)
    lines = [f"variables: {' '.join(ring.names)}", f"mu: {mu}"]
    _emit(args, lines, {"variables": " ".join(ring.names), "mu": mu})


def cmd_pencil_verify(args):
    V = _system(args)
    rep = pencil_verify(V, seed=args.seed)
    _emit(args, rep.lines(V.field), rep.machine())
    if not rep.holds:
        raise CheckFailed("pencil identity fails")


def cmd_wronskian(args):
    texts = [_text_or_file(args.f), _text_or_file(args.g)]
    ring = _ring_for(texts, args.field_obj, args.vars)
    if ring.nvars != 2:
        raise InputError(f"binary forms expected; found variables {', '.join(ring.names)}")
    f, g = (ring.parse(t) for t in texts)
    data = wronskian_branch(f, g, seed=args.seed)
    kv = data.machine()
    kv["wronskian"] = str(data.wronskian)
    _emit(args, [f"wronskian: {data.wronskian}"] + data.lines(ring.field), kv)


def cmd_invariants(args):
    if args.ruled:
        s = nm.ruled_numerics(nm.RuledClass(*args.ruled))
    elif args.input:
        s = nm.parse_surface_numerics(_read(args.input))
    else:
        raise InputError("give a numerics file or --ruled a b e g")
    kv = {"e": s.e, "K2": s.K2, "KL": s.KL, "L2": s.L2, "q": s.q, "g": s.g}
    if s.chi is not None:
        kv["chi"] = s.chi
    kv["c2"] = nm.c2_jet_surface(s)
    if args.codegree is not None:
        kv["codegree"] = args.codegree
        kv["tame"] = str(nm.tame_check(args.codegree, kv["c2"])).lower()
    kv = {k: str(v) for k, v in kv.items()}
    _emit(args, [f"{k}: {v}" for k, v in kv.items()], kv, with_field=False)


def cmd_scan6(args):
    rows = nm.scan_scroll_inequality(args.e_max, args.a_max, args.b_max)
    wider = nm.scan_scroll_inequality(args.e_max, args.a_max, 2 * args.b_max)
    families = all(nm.expected_family(*t) for t in rows)
    stable = all(nm.expected_family(*t) for t in wider)
    lines = ["e a b"] + [f"{e} {a} {b}" for e, a, b in rows]
    lines += [f"survivors: {len(rows)}", f"families match: {str(families).lower()}",
              f"stable when b doubles: {str(stable).lower()}"]
    kv = {"survivors": str(len(rows)), "rows": "; ".join(f"{e} {a} {b}" for e, a, b in rows),
          "families_match": str(families).lower(), "stable": str(stable).lower()}
    _emit(args, lines, kv, with_field=False)
    if not (families and stable):
        raise CheckFailed("survivors outside the expected families")


def cmd_fixture(args):
    rep = run_fixture(args.id, args.field_obj)
    _emit(args, rep.lines(), rep.machine(), with_field=False)
    if not rep.ok:
        raise CheckFailed(f"fixture {rep.id} failed")


def cmd_fixture_all(args):
    reports = run_all(args.field_obj)
    lines, kv = [], {}
    for r in reports:
        lines += r.lines() if r.status == "fail" else [f"fixture {r.id} [{r.kind}, {r.field}]: {r.status}"]
        kv[r.id] = r.status
    failed = [r.id for r in reports if not r.ok]
    passed = sum(r.status == "pass" for r in reports)
    documented = sum(r.status == "documented" for r in reports)
    lines.append(f"total: {len(reports)}, passed: {passed}, documented: {documented}, "
                 f"failed: {len(failed)}")
    kv["total"], kv["passed"], kv["documented"] = str(len(reports)), str(passed), str(documented)
    kv["failed"] = str(len(failed))
    _emit(args, lines, kv)
    if failed:
        raise CheckFailed("failed fixtures: " + ", ".join(failed))


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", help="q or gf:<p> (default: $DISCLOCI_FIELD or gf:32003)")
    common.add_argument("--seed", type=int, default=0, help="seed for random choices (default 0)")
    common.add_argument("--machine", action="store_true", help="print a key: value block")

    p = argparse.ArgumentParser(prog="discloci", description="Discriminant loci of linear systems.")
    sub = p.add_subparsers(dest="verb", required=True, metavar="verb")

    def verb(name, fn, help_text):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        sp.set_defaults(func=fn)
        return sp

    sp = verb("dual", cmd_dual, "dual variety of a projective variety given as an ideal file")
    sp.add_argument("input")
    sp.add_argument("--dual-names", help="space-separated dual coordinate names")
    for name, fn, help_text in [
        ("discriminant", cmd_discriminant, "discriminant locus, hyperplanes and strata"),
        ("jumping-sets", cmd_jumping_sets, "jumping sets J_i of the differential"),
        ("strata", cmd_strata, "strata D_i and the cover check"),
        ("codegree", cmd_codegree, "degree of the discriminant"),
        ("pencil-verify", cmd_pencil_verify, "Milnor sum of a general pencil against c_n(J_1(L))"),
    ]:
        sp = verb(name, fn, help_text)
        sp.add_argument("input", help="linear system file")
        if name == "discriminant":
            sp.add_argument("--no-strata", action="store_true", help="skip jumping sets and strata")
    sp = verb("milnor", cmd_milnor, "Milnor number of an affine polynomial")
    sp.add_argument("poly", help="polynomial text or a file holding it")
    sp.add_argument("--point", help="comma-separated coordinates (default: the origin)")
    sp.add_argument("--vars", help="variable order (default: sorted names in the text)")
    sp = verb("wronskian", cmd_wronskian, "branch data of the map (f : g) of P^1")
    sp.add_argument("f")
    sp.add_argument("g")
    sp.add_argument("--vars", help="the two variable names, in order")
    sp = verb("invariants", cmd_invariants, "c_2(J_1(L)) and related numbers of a polarized surface")
    sp.add_argument("input", nargs="?", help="key: value numerics file")
    sp.add_argument("--ruled", type=int, nargs=4, metavar=("A", "B", "E", "G"),
                    help="L = A*C0 + B*f on a ruled surface with invariant E over genus G")
    sp.add_argument("--codegree", type=int, help="codegree to test for tameness")
    sp = verb("scan6", cmd_scan6, "brute-force scan of the rational scroll inequality")
    sp.add_argument("--e-max", type=int, default=5)
    sp.add_argument("--a-max", type=int, default=6)
    sp.add_argument("--b-max", type=int, default=40)
    sp = verb("fixture", cmd_fixture, "run one catalog fixture (id or file path)")
    sp.add_argument("id")
    verb("fixture-all", cmd_fixture_all, "run the whole catalog")
    return p


_INPUT_ERRORS = (ParseError, BasePointError, LinearSystemError, DualityError, UnsupportedSource,
                 CurveError, nm.NumericsError, FixtureError, InputError, FinitenessViolation)


def _input_message(exc: Exception) -> str:
    if isinstance(exc, BasePointError):
        return "base points; witness ideal: (" + ", ".join(map(str, exc.witness.gens)) + ")"
    return str(exc)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.field_obj = parse_field(args.field) if args.field else default_field()
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        args.func(args)
    except CheckFailed as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except FixtureRunError as exc:
        if isinstance(exc.cause, _INPUT_ERRORS):
            print(f"error: {exc.fixture_id}: {_input_message(exc.cause)}", file=sys.stderr)
            return EXIT_INPUT
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except _INPUT_ERRORS as exc:
        print(f"error: {_input_message(exc)}", file=sys.stderr)
        return EXIT_INPUT
    except PencilError as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
