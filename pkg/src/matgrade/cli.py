"""Command-line front end.

Builds gradings from declarative flags, verifies saved ones, and reports on
them.  Everything round-trips through the canonical JSON writer, so build
output piped back into verify or dims is byte-stable.

Exit codes: 0 success (and verification passed), 1 verification failed,
2 bad request, 3 malformed input file.  Failures print one JSON object so
callers never have to scrape prose.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import jsonio
from .errors import (
    InvalidGroup,
    InvalidTuple,
    KindMismatch,
    MatgradeError,
    ParseError,
)
from .groups import FinAbGroup, make_group, subgroup_generated
from .invol import (
    InvolutedGrading,
    elementary_involution_grading,
    involution_tensor,
    make_involution,
    pauli_involution_case,
    verify_involution_grading,
)
from .liegrad import (
    fine_outer,
    mixed_type2,
    recover_from_factor,
    type1,
    type1_obstruction,
    type2,
    verify_lie,
)
from .matalg import (
    Grading,
    coarsen,
    elementary_grading,
    epsilon_grading,
    tensor_grading,
    verify_assoc,
)

BUILD_KINDS = (
    "elementary",
    "epsilon",
    "tensor",
    "involution-elementary",
    "pauli-case",
    "involution-tensor",
    "type1",
    "type2",
    "fine-outer",
    "mixed-type2",
)


# ---------------------------------------------------------------------------
# flag parsing helpers; all failures are "bad request", never tracebacks


def _parse_ints(text: str, what: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",")]
    except ValueError as exc:
        raise InvalidTuple(f"{what} must be comma-separated integers, got {text!r}") from exc


def _parse_group(text: str) -> FinAbGroup:
    try:
        factors = [int(tok) for tok in text.split(",")]
    except ValueError as exc:
        raise InvalidGroup(f"group must be comma-separated orders, got {text!r}") from exc
    return make_group(factors)


def _parse_element(text: str, group: FinAbGroup):
    exps = _parse_ints(text, "element")
    if len(exps) != len(group.factors):
        raise InvalidTuple(
            f"element {text!r} has {len(exps)} exponents, the group has rank "
            f"{len(group.factors)}"
        )
    return group.element(exps)


def _parse_tuple(text: str, group: FinAbGroup) -> list:
    # ';' separates elements, ',' separates exponents.  A rank-one group may
    # drop the semicolons: "0,1,3" is three elements of Z_n.
    if ";" in text:
        chunks = text.split(";")
    elif len(group.factors) == 1:
        chunks = text.split(",")
    else:
        chunks = [text]
    return [_parse_element(chunk.strip(), group) for chunk in chunks]


def _leading_embed(group: FinAbGroup, k: int):
    """Embed the rank-2k two-torsion product into the leading coordinates."""
    if group.factors[: 2 * k] != (2,) * (2 * k):
        raise InvalidGroup(
            f"the first {2 * k} factors of the group must all be 2 to hold "
            f"{k} fine parts, got {group.factors}"
        )
    pad = (0,) * (len(group.factors) - 2 * k)
    return lambda t: group.element(t.exponents + pad)


def _require(args, attr: str, flag: str, kind: str):
    value = getattr(args, attr)
    if value is None:
        raise InvalidTuple(f"build {kind} needs {flag}")
    return value


# ---------------------------------------------------------------------------
# build


def _load_gradings(paths, want_involution: bool):
    parts = []
    for path in paths:
        thing = jsonio.load(path)
        if want_involution and not isinstance(thing, InvolutedGrading):
            raise KindMismatch(f"{path} holds no involution data")
        if not want_involution and isinstance(thing, InvolutedGrading):
            thing = thing.grading
        parts.append(thing)
    return parts


def _build(args):
    kind = args.build_kind
    if kind == "epsilon":
        return epsilon_grading(_require(args, "n", "--n", kind))
    if kind == "elementary":
        group = _parse_group(_require(args, "group", "--group", kind))
        tup = _parse_tuple(_require(args, "tuple", "--tuple", kind), group)
        return elementary_grading(group, len(tup), tup)
    if kind == "tensor":
        paths = _require(args, "infiles", "--in", kind)
        if len(paths) < 2:
            raise InvalidTuple("build tensor needs at least two --in files")
        parts = _load_gradings(paths, want_involution=False)
        out = parts[0]
        for part in parts[1:]:
            out = tensor_grading(out, part)
        return out
    if kind == "involution-elementary":
        group = _parse_group(_require(args, "group", "--group", kind))
        tup = _parse_tuple(_require(args, "tuple", "--tuple", kind), group)
        flavor = _require(args, "flavor", "--flavor", kind)
        return elementary_involution_grading(group, tup, flavor, args.m)
    if kind == "pauli-case":
        cases = _parse_ints(_require(args, "case", "--case", kind), "case")
        if len(cases) != 1:
            raise InvalidTuple("build pauli-case takes exactly one case id")
        return pauli_involution_case(cases[0])
    if kind == "involution-tensor":
        paths = _require(args, "infiles", "--in", kind)
        return involution_tensor(_load_gradings(paths, want_involution=True))
    if kind == "type1":
        (path,) = _one_path(args, kind)
        return type1(_load_gradings([path], want_involution=False)[0])
    if kind == "type2":
        (path,) = _one_path(args, kind)
        ig = jsonio.load(path)
        if not isinstance(ig, InvolutedGrading):
            raise KindMismatch(f"{path} holds no involution data")
        h = _parse_element(_require(args, "marker", "--marker", kind), ig.grading.group)
        return type2(ig.grading, ig.involution, h)
    if kind == "fine-outer":
        group = _parse_group(_require(args, "group", "--group", kind))
        cases = _parse_ints(_require(args, "case", "--case", kind), "case")
        h = _parse_element(_require(args, "marker", "--marker", kind), group)
        return fine_outer(cases, group, h, _leading_embed(group, len(cases)))
    if kind == "mixed-type2":
        group = _parse_group(_require(args, "group", "--group", kind))
        tup = _parse_tuple(_require(args, "tuple", "--tuple", kind), group)
        flavor = _require(args, "flavor", "--flavor", kind)
        cases = _parse_ints(_require(args, "case", "--case", kind), "case")
        h = _parse_element(_require(args, "marker", "--marker", kind), group)
        embed = _leading_embed(group, len(cases))
        return mixed_type2(group, tup, flavor, cases, h, embed=embed, m=args.m)
    raise InvalidTuple(f"unknown build kind {kind!r}")


def _one_path(args, kind: str):
    paths = _require(args, "infiles", "--in", kind)
    if len(paths) != 1:
        raise InvalidTuple(f"build {kind} takes exactly one --in file")
    return paths


# ---------------------------------------------------------------------------
# reporting


def _fmt_elem(g) -> str:
    return ",".join(str(e) for e in g.exponents) or "-"


def _report_obj(report) -> dict:
    return {
        "check": report.check,
        "ok": report.ok,
        "violations": [
            {"code": v.code, "witness": v.witness, "message": v.message}
            for v in report.violations
        ],
    }


def _cmd_verify(args, out) -> int:
    thing = jsonio.load(args.infile)
    actual = "involution" if isinstance(thing, InvolutedGrading) else thing.kind
    if args.kind is not None and args.kind != actual:
        raise KindMismatch(f"file holds a {actual} grading, --kind asked for {args.kind}")
    if isinstance(thing, InvolutedGrading):
        report = verify_involution_grading(thing)
    elif thing.kind == "lie":
        report = verify_lie(thing)
    else:
        report = verify_assoc(thing)
    out.write(json.dumps(_report_obj(report), sort_keys=True, indent=2) + "\n")
    return 0 if report.ok else 1


def _cmd_dims(args, out) -> int:
    thing = jsonio.load(args.infile)
    grading = thing.grading if isinstance(thing, InvolutedGrading) else thing
    for g, dim in grading.dimensions():
        out.write(f"{_fmt_elem(g)}\t{dim}\n")
    expected = grading.n**2 - 1 if grading.kind == "lie" else grading.n**2
    out.write(f"total\t{grading.total_dimension()}\texpected\t{expected}\n")
    return 0


def _cmd_support(args, out) -> int:
    thing = jsonio.load(args.infile)
    grading = thing.grading if isinstance(thing, InvolutedGrading) else thing
    for g in grading.support():
        out.write(f"{_fmt_elem(g)}\n")
    return 0


def _cmd_coarsen(args, out) -> int:
    thing = jsonio.load(args.infile)
    if isinstance(thing, InvolutedGrading):
        raise KindMismatch("coarsen expects a bare grading file")
    gens_text = args.generators.strip()
    gens = (
        [_parse_element(c.strip(), thing.group) for c in gens_text.split(";")]
        if gens_text
        else []
    )
    sub = subgroup_generated(gens, group=thing.group)
    _emit(coarsen(thing, sub), args.out, out)
    return 0


def _read_involution(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            obj = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise ParseError("involution file must hold an object")
    if "grading" in obj:
        obj = obj.get("involution")
        if not isinstance(obj, dict):
            raise ParseError("envelope has no involution")
    if "symkind" in obj:
        return jsonio.involution_from_obj(obj)
    if "phi" in obj:
        return make_involution(jsonio.mat_from_obj(obj["phi"]))
    raise ParseError("involution file needs a 'phi' field")


def _cmd_recover(args, out) -> int:
    factor = jsonio.load(args.infile)
    if isinstance(factor, InvolutedGrading):
        raise KindMismatch("recover expects a bare grading file")
    group = _parse_group(args.group)
    h = _parse_element(args.marker, group)
    sub = subgroup_generated([h])
    inv = _read_involution(args.phi)
    chi = group.character(_parse_ints(args.char, "character"))
    _emit(recover_from_factor(factor, inv, group, sub, chi), args.out, out)
    return 0


def _cmd_obstruction(args, out) -> int:
    rep = type1_obstruction(args.n)
    obj = {
        "n": rep.n,
        "skew_dim": rep.skew_dim,
        "sym_traceless_dim": rep.sym_traceless_dim,
        "split": list(rep.split) if rep.split is not None else None,
        "solvable": rep.solvable,
    }
    out.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")
    return 0


def _emit(thing, path, out) -> None:
    text = jsonio.serialize(thing)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        out.write(text)


# ---------------------------------------------------------------------------
# wiring


def _make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="matgrade",
        description="Build, verify, and inspect group gradings of matrix algebras.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="construct a grading and print its JSON")
    b.add_argument("build_kind", choices=BUILD_KINDS, metavar="kind")
    b.add_argument("--group", help="comma-separated cyclic factor orders, e.g. 4,2")
    b.add_argument("--n", type=int, help="matrix size")
    b.add_argument(
        "--tuple",
        help="';'-separated group elements, each a comma tuple of exponents; "
        "a rank-one group may use a plain comma list",
    )
    b.add_argument("--flavor", choices=("transpose", "symplectic"))
    b.add_argument("--m", type=int, help="number of self-paired tuple entries")
    b.add_argument("--case", help="comma-separated 2x2 case ids from 1-4")
    b.add_argument("--marker", help="order-two group element, comma exponents")
    b.add_argument("--in", dest="infiles", nargs="+", metavar="FILE")
    b.add_argument("--out", help="write JSON here instead of standard output")

    v = sub.add_parser("verify", help="check a saved grading, exit 1 on failure")
    v.add_argument("--in", dest="infile", required=True, metavar="FILE")
    v.add_argument("--kind", choices=("associative", "lie", "involution"))

    d = sub.add_parser("dims", help="tab-separated component dimensions")
    d.add_argument("--in", dest="infile", required=True, metavar="FILE")

    s = sub.add_parser("support", help="list the support, one element per line")
    s.add_argument("--in", dest="infile", required=True, metavar="FILE")

    c = sub.add_parser("coarsen", help="push a grading to the quotient group")
    c.add_argument("--in", dest="infile", required=True, metavar="FILE")
    c.add_argument(
        "--generators",
        required=True,
        help="';'-separated elements generating the subgroup to collapse",
    )
    c.add_argument("--out")

    r = sub.add_parser("recover", help="refine a quotient grading back over G")
    r.add_argument("--in", dest="infile", required=True, metavar="FILE")
    r.add_argument("--group", required=True, help="the full group G")
    r.add_argument("--marker", required=True, help="order-two element of G")
    r.add_argument("--phi", required=True, metavar="FILE", help="involution JSON")
    r.add_argument("--char", required=True, help="character exponents, -1 at marker")
    r.add_argument("--out")

    o = sub.add_parser("obstruction", help="parity count for inner gradings of sl(n)")
    o.add_argument("--n", type=int, required=True)

    return parser


def main(argv=None) -> int:
    parser = _make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    out = sys.stdout
    try:
        if args.command == "build":
            built = _build(args)
            _emit(built, args.out, out)
            return 0
        if args.command == "verify":
            return _cmd_verify(args, out)
        if args.command == "dims":
            return _cmd_dims(args, out)
        if args.command == "support":
            return _cmd_support(args, out)
        if args.command == "coarsen":
            return _cmd_coarsen(args, out)
        if args.command == "recover":
            return _cmd_recover(args, out)
        if args.command == "obstruction":
            return _cmd_obstruction(args, out)
        raise InvalidTuple(f"unknown command {args.command!r}")
    except ParseError as exc:
        out.write(_error_text(exc))
        return 3
    except MatgradeError as exc:
        out.write(_error_text(exc))
        return 2
    except OSError as exc:
        out.write(_error_text(exc))
        return 2


def _error_text(exc) -> str:
    obj = {"error": type(exc).__name__, "message": str(exc)}
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


if __name__ == "__main__":
    sys.exit(main())
