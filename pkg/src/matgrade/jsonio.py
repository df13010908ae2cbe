"""Canonical JSON interchange for groups, matrices, and gradings.

The writer is deterministic: object keys sorted, components and sign entries
sorted by exponent tuple, every rational as a reduced "p/q" string, no floats
anywhere.  Parsing a written file and writing it again is byte-identical,
which the golden tests pin down.

A file is either a bare grading object or an envelope {"grading": ...,
"involution": ..., "signs": ...} when an involution travels with it.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .cyclo import CycNum, Mat, span_mats
from .errors import MatgradeError, ParseError
from .groups import FinAbGroup, make_group
from .invol import InvolutedGrading, Involution, SignFunction, make_involution
from .matalg import KINDS, Grading


def _frac_str(fr: Fraction) -> str:
    return f"{fr.numerator}/{fr.denominator}"


_FRAC_RE = re.compile(r"-?\d+/[1-9]\d*\Z")


def _frac_parse(s) -> Fraction:
    if not isinstance(s, str) or not _FRAC_RE.match(s):
        raise ParseError(f"expected a 'p/q' string, got {s!r}")
    return Fraction(s)


def mat_to_obj(m: Mat) -> dict:
    # minimal common conductor, so equal matrices from different
    # computation paths serialize to the same bytes
    m = m.reduced()
    return {
        "rows": m.rows,
        "cols": m.cols,
        "conductor": m.conductor,
        "entries": [[_frac_str(c) for c in e.coeffs] for e in m.entries],
    }


def _require(obj, key, kind, what):
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(f"{what} is missing the {key!r} field")
    val = obj[key]
    if kind is not None and not isinstance(val, kind):
        raise ParseError(f"{what} has a malformed {key!r} field")
    return val


def mat_from_obj(obj) -> Mat:
    rows = _require(obj, "rows", int, "matrix")
    cols = _require(obj, "cols", int, "matrix")
    conductor = _require(obj, "conductor", int, "matrix")
    raw = _require(obj, "entries", list, "matrix")
    if len(raw) != rows * cols:
        raise ParseError(f"matrix declares {rows}x{cols} but has {len(raw)} entries")
    entries = []
    for coeffs in raw:
        if not isinstance(coeffs, list):
            raise ParseError("matrix entries must be coefficient lists")
        try:
            entries.append(CycNum(conductor, [_frac_parse(c) for c in coeffs]))
        except ParseError:
            raise
        except Exception as exc:
            raise ParseError(f"bad matrix entry: {exc}") from exc
    return Mat(rows, cols, entries)


def group_to_obj(group: FinAbGroup) -> dict:
    return {"factors": list(group.factors)}


def group_from_obj(obj) -> FinAbGroup:
    factors = _require(obj, "factors", list, "group")
    if not all(isinstance(n, int) and not isinstance(n, bool) and n >= 1 for n in factors):
        raise ParseError(f"group factors must be positive integers, got {factors!r}")
    return make_group(factors)


def _elem_from_obj(obj, group, what):
    exps = _require(obj, "exponents", list, what)
    if len(exps) != len(group.factors) or not all(isinstance(e, int) for e in exps):
        raise ParseError(f"{what} exponents {exps!r} do not fit the group")
    return group.element(exps)


def grading_to_obj(g: Grading) -> dict:
    comps = []
    for elem in g.support():
        comps.append(
            {
                "element": {"exponents": list(elem.exponents)},
                "basis": [mat_to_obj(m) for m in g.basis_matrices(elem)],
            }
        )
    return {
        "group": group_to_obj(g.group),
        "n": g.n,
        "kind": g.kind,
        "components": comps,
    }


def grading_from_obj(obj) -> Grading:
    group = group_from_obj(_require(obj, "group", dict, "grading"))
    n = _require(obj, "n", int, "grading")
    if isinstance(n, bool) or n < 1:
        raise ParseError(f"grading size must be a positive integer, got {n!r}")
    kind = _require(obj, "kind", str, "grading")
    if kind not in KINDS:
        raise ParseError(f"unknown grading kind {kind!r}")
    comps = {}
    for entry in _require(obj, "components", list, "grading"):
        elem = _elem_from_obj(
            _require(entry, "element", dict, "component"), group, "component element"
        )
        mats = [mat_from_obj(m) for m in _require(entry, "basis", list, "component")]
        for m in mats:
            if m.rows != n or m.cols != n:
                raise ParseError(
                    f"component matrix is {m.rows}x{m.cols}, grading declares n={n}"
                )
        if elem in comps:
            raise ParseError(f"duplicate component at {elem.exponents}")
        if mats:
            comps[elem] = span_mats(mats, n * n)
    return Grading(group, n, kind, comps)


def involution_to_obj(inv: Involution) -> dict:
    return {"phi": mat_to_obj(inv.phi), "symkind": inv.symkind}


def involution_from_obj(obj) -> Involution:
    phi = mat_from_obj(_require(obj, "phi", dict, "involution"))
    symkind = _require(obj, "symkind", str, "involution")
    try:
        inv = make_involution(phi)
    except MatgradeError as exc:
        raise ParseError(f"form does not define an involution: {exc}") from exc
    if inv.symkind != symkind:
        raise ParseError(
            f"form is {inv.symkind} but the file claims {symkind!r}"
        )
    return inv


def signs_to_obj(sf: SignFunction) -> list:
    return [
        {
            "element": {"exponents": list(t.exponents)},
            "sign": sf.sign(t),
            "monomial": mat_to_obj(sf.monomial(t)),
        }
        for t in sf.elements()
    ]


def signs_from_obj(obj, group: FinAbGroup, n: int) -> SignFunction:
    if not isinstance(obj, list):
        raise ParseError("signs must be a list")
    table = {}
    monomials = {}
    for entry in obj:
        t = _elem_from_obj(
            _require(entry, "element", dict, "sign entry"), group, "sign element"
        )
        sign = _require(entry, "sign", int, "sign entry")
        if sign not in (1, -1):
            raise ParseError(f"sign must be 1 or -1, got {sign!r}")
        mono = mat_from_obj(_require(entry, "monomial", dict, "sign entry"))
        if mono.rows != n or mono.cols != n:
            raise ParseError(f"sign monomial is {mono.rows}x{mono.cols}, expected {n}x{n}")
        table[t] = sign
        monomials[t] = mono
    return SignFunction(group, table, monomials)


def to_obj(thing):
    if isinstance(thing, Grading):
        return grading_to_obj(thing)
    if isinstance(thing, InvolutedGrading):
        obj = {
            "grading": grading_to_obj(thing.grading),
            "involution": involution_to_obj(thing.involution),
        }
        if thing.signs is not None:
            obj["signs"] = signs_to_obj(thing.signs)
        return obj
    raise TypeError(f"cannot serialize {type(thing).__name__}")


def serialize(thing) -> str:
    return json.dumps(to_obj(thing), sort_keys=True, indent=2) + "\n"


def from_obj(obj):
    if not isinstance(obj, dict):
        raise ParseError("top level must be an object")
    if "grading" in obj:
        grading = grading_from_obj(_require(obj, "grading", dict, "envelope"))
        inv = involution_from_obj(_require(obj, "involution", dict, "envelope"))
        if inv.n != grading.n:
            raise ParseError("involution size does not match the grading")
        signs = None
        if "signs" in obj:
            signs = signs_from_obj(obj["signs"], grading.group, grading.n)
        return InvolutedGrading(grading, inv, signs)
    return grading_from_obj(obj)


def parse_text(text: str):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from exc
    return from_obj(obj)


def load(path):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_text(fh.read())


def dump(thing, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(thing))
