"""Gradings of the traceless matrices sl(n).

Everything here stays inside the flattened n-by-n coordinates of the full
algebra, with tracelessness as a linear constraint; no separate chart for
sl(n) is ever used.  Two construction routes exist side by side: the inner
one restricts an algebra grading to the traceless part, the outer one pairs
an involution-compatible grading with an order-2 marker element and splits
components into symmetric and skew halves.  The explicit emitters
(fine_outer, mixed_type2) produce the same result as the general outer
construction by listing basis tensors directly; tests hold the routes
against each other.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cyclo import (
    Mat,
    Subspace,
    bracket,
    span,
    span_mats,
    subspace_intersect,
    subspace_sum,
)
from .errors import (
    BadEmbedding,
    BadMarker,
    BadSquare,
    GroupMismatch,
    InvalidOrder,
    InvalidTuple,
    KindMismatch,
    NotInvolutionGrading,
    NotInvolutionStable,
    NotStable,
    SupportClash,
    TooSmall,
)
from .groups import Character, FinAbGroup, GroupElem, Subgroup, char_eval, make_group, quotient
from .invol import (
    Involution,
    elementary_involution_grading,
    involution_tensor,
    make_involution,
    pauli_involution_case,
    sym_skew_split,
)
from .matalg import Grading, VerificationReport, Violation, _check_embedding

LieGrading = Grading  # kind "lie"; the alias keeps signatures readable


def traceless_subspace(n: int) -> Subspace:
    """sl(n) as a subspace of the flattened n-by-n matrices."""
    mats = [Mat.unit(n, i, j) for i in range(n) for j in range(n) if i != j]
    mats += [Mat.unit(n, 0, 0) - Mat.unit(n, i, i) for i in range(1, n)]
    return span_mats(mats, n * n)


# ---------------------------------------------------------------------------
# the two construction routes


def type1(assoc: Grading) -> Grading:
    """Restrict an algebra grading to the traceless matrices.

    Every component of the result is the meet of the input component with
    sl(n); only the identity component can lose dimension, and it loses
    exactly one.
    """
    if assoc.kind == "lie":
        raise KindMismatch("input must grade the full algebra")
    n = assoc.n
    if n < 2:
        raise TooSmall("sl(n) needs n >= 2")
    sl = traceless_subspace(n)
    comps = {
        g: subspace_intersect(sub, sl) for g, sub in assoc.components.items()
    }
    return Grading(assoc.group, n, "lie", comps)


def type2(inv_grading: Grading, inv: Involution, h: GroupElem) -> Grading:
    """Outer grading of sl(n) from an involution-compatible grading.

    The skew half of the component at g stays at g; the symmetric half moves
    to gh; what the symmetric identity half would contribute at h is cut to
    its traceless part, which removes the scalars.
    """
    group = inv_grading.group
    if inv_grading.kind == "lie":
        raise KindMismatch("input must grade the full algebra")
    if h.group != group:
        raise GroupMismatch("marker lives outside the grading group")
    if h.order() != 2:
        raise BadMarker(f"marker must have order 2, got order {h.order()}")
    n = inv_grading.n
    if inv.n != n:
        raise BadMarker("involution size does not match the grading")
    sl = traceless_subspace(n)
    pieces: dict[GroupElem, list[Subspace]] = {}
    for g in inv_grading.support():
        try:
            plus, minus = sym_skew_split(inv_grading.components[g], inv)
        except NotInvolutionStable as exc:
            raise NotInvolutionGrading(
                f"component at {g.exponents} is not stable: {exc}"
            ) from exc
        if minus.rank:
            pieces.setdefault(g, []).append(minus)
        if plus.rank:
            if g == group.identity():
                plus = subspace_intersect(plus, sl)
            if plus.rank:
                pieces.setdefault(g * h, []).append(plus)
    comps = {}
    for g, parts in pieces.items():
        acc = parts[0]
        for extra in parts[1:]:
            acc = subspace_sum(acc, extra)
        comps[g] = acc
    return Grading(group, n, "lie", comps)


def verify_lie(lg: Grading) -> VerificationReport:
    """Dimension count, tracelessness, and exhaustive bracket containment."""
    if lg.kind != "lie":
        raise KindMismatch("expected a grading of the traceless matrices")
    violations = []
    n = lg.n
    want = n * n - 1
    total = lg.total_dimension()
    if total != want:
        violations.append(
            Violation(
                "total-dimension",
                (total, want),
                f"components sum to {total}, sl({n}) has dimension {want}",
            )
        )
    joint = []
    for g in lg.support():
        joint.extend(lg.components[g].basis)
    if span(joint, n * n).rank != total:
        violations.append(
            Violation("not-direct", None, "components overlap; the sum is not direct")
        )
    for g in lg.support():
        for i, mat in enumerate(lg.basis_matrices(g)):
            if not mat.trace().is_zero():
                violations.append(
                    Violation(
                        "not-traceless",
                        (g.exponents, i),
                        f"basis vector {i} at {g.exponents} has nonzero trace",
                    )
                )
    supp = lg.support()
    for g in supp:
        gmats = lg.basis_matrices(g)
        for h in supp:
            hmats = lg.basis_matrices(h)
            target = lg.component(g * h)
            for i, x in enumerate(gmats):
                for j, y in enumerate(hmats):
                    if not target.contains(bracket(x, y).flatten()):
                        violations.append(
                            Violation(
                                "bracket-escapes",
                                (g.exponents, h.exponents, i, j),
                                f"[{g.exponents}#{i}, {h.exponents}#{j}] leaves "
                                f"the component at {(g * h).exponents}",
                            )
                        )
    return VerificationReport("lie", tuple(violations))


# ---------------------------------------------------------------------------
# outer data and factor recovery


@dataclass(frozen=True)
class OuterDatum:
    """Marker element plus the negated involution action X -> -X^*."""

    h: GroupElem
    grading: Grading
    involution: Involution

    def __post_init__(self):
        if self.h.order() != 2:
            raise BadMarker(f"marker must have order 2, got order {self.h.order()}")
        if self.involution.n != self.grading.n:
            raise BadMarker("involution size does not match the grading")

    def action(self, x: Mat) -> Mat:
        return -self.involution.apply(x)


def _as_action(phi_action):
    if isinstance(phi_action, OuterDatum):
        return phi_action.action
    if isinstance(phi_action, Involution):
        return lambda x: -phi_action.apply(x)
    if isinstance(phi_action, Mat):
        inv = make_involution(phi_action)
        return lambda x: -inv.apply(x)
    if callable(phi_action):
        return phi_action
    raise InvalidTuple(
        "the action must be a callable, a form matrix, an involution, or outer data"
    )


def recover_from_factor(
    factor: Grading,
    phi_action,
    group: FinAbGroup,
    sub: Subgroup,
    phi_char: Character,
) -> Grading:
    """Refine a grading over G/<h> back to one over G.

    phi_action must carry each factor component into itself and square to
    the scalar phi_char(a)^2 on the component over the coset of a; both are
    checked before anything is built.  phi_char fixes which half of each
    split coset gets which label, so it is part of the data: it must be a
    character of G taking -1 at the marker.
    """
    if factor.kind != "lie":
        raise KindMismatch("expected a grading of the traceless matrices")
    if sub.group != group:
        raise GroupMismatch("subgroup lives outside the given group")
    if sub.order != 2:
        raise BadMarker(f"refining subgroup must have order 2, got {sub.order}")
    h = next(m for m in sub if m != group.identity())
    if phi_char.group != group:
        raise GroupMismatch("character lives outside the given group")
    if char_eval(phi_char, h) != -1:
        raise BadMarker("character must take the value -1 at the marker")
    q, project = quotient(group, sub)
    if factor.group != q:
        raise GroupMismatch(
            f"factor grading is over {factor.group!r}, expected the quotient {q!r}"
        )
    action = _as_action(phi_action)
    n = factor.n

    lifts: dict[GroupElem, GroupElem] = {}
    for a in group.elements():
        lifts.setdefault(project(a), a)
    for abar in factor.support():
        comp = factor.components[abar]
        mats = [Mat.from_flat(n, n, row) for row in comp.basis]
        images = [action(x) for x in mats]
        for i, img in enumerate(images):
            if not comp.contains(img.flatten()):
                raise NotStable(
                    f"action moves basis vector {i} out of the component at "
                    f"{abar.exponents}"
                )
        scalar = char_eval(phi_char, lifts[abar]) ** 2
        for i, x in enumerate(mats):
            if action(action(x)) != x.scale(scalar):
                raise BadSquare(
                    f"action squared is not the scalar phi(a)^2 on basis vector {i} "
                    f"at {abar.exponents}"
                )

    comps: dict[GroupElem, Subspace] = {}
    for a in group.elements():
        abar = project(a)
        if abar not in factor.components:
            continue
        c = char_eval(phi_char, a).inverse()
        mats = [
            x + action(x).scale(c)
            for x in (
                Mat.from_flat(n, n, row) for row in factor.components[abar].basis
            )
        ]
        sub_a = span_mats(mats, n * n)
        if sub_a.rank:
            comps[a] = sub_a
    return Grading(group, n, "lie", comps)


# ---------------------------------------------------------------------------
# explicit emitters for the outer constructions


def _klein_power(k: int) -> FinAbGroup:
    return make_group([2, 2] * k)


def _fine_embeddings(t_group: FinAbGroup, embed, group: FinAbGroup, k: int):
    """Check one embedding of the whole 2x2-parts group, return per-part maps."""
    image = _check_embedding(embed, t_group.elements(), group, "embedding of T")
    if len(set(image.values())) != t_group.order:
        raise BadEmbedding("embedding folds distinct fine degrees together")
    per_part = []
    for idx in range(k):
        def part_embed(t, _i=idx):
            exps = [0] * (2 * k)
            exps[2 * _i], exps[2 * _i + 1] = t.exponents
            return embed(t_group.element(exps))

        per_part.append(part_embed)
    return per_part


def fine_outer(cases, group: FinAbGroup, h: GroupElem, embed) -> Grading:
    """Outer grading of sl(2^k) from a list of canonical 2x2 cases.

    The monomial at t lands at t itself when the involution negates it and
    at th when it fixes it, except that the fixed identity monomial (the
    unit matrix) has no traceless part and is dropped.  The marker may sit
    inside or outside the embedded fine support.
    """
    cases = list(cases)
    if not cases:
        raise InvalidOrder("need at least one 2x2 part")
    if h.group != group:
        raise GroupMismatch("marker lives outside the grading group")
    if h.order() != 2:
        raise BadMarker(f"marker must have order 2, got order {h.order()}")
    k = len(cases)
    t_group = _klein_power(k)
    per_part = _fine_embeddings(t_group, embed, group, k)
    parts = [pauli_involution_case(c) for c in cases]
    ig = involution_tensor(parts, group=group, embeddings=per_part)
    n = ig.grading.n
    ident = group.identity()
    buckets: dict[GroupElem, list[Mat]] = {}
    for t in ig.signs.elements():
        mono = ig.signs.monomial(t)
        if ig.signs.sign(t) == -1:
            buckets.setdefault(t, []).append(mono)
        elif t != ident:
            buckets.setdefault(t * h, []).append(mono)
    comps = {g: span_mats(mats, n * n) for g, mats in buckets.items()}
    return Grading(group, n, "lie", comps)


def mixed_type2(
    group: FinAbGroup,
    tup,
    flavor: str,
    cases,
    h: GroupElem,
    embed=None,
    m: int | None = None,
) -> Grading:
    """Outer grading of sl(p * 2^k) with an elementary and a fine factor.

    The elementary tuple lives in the target group directly; the fine 2x2
    cases arrive through one embedding of their product group.  Emission is
    by explicit basis tensors: a tensor of a split elementary basis vector Y
    and a fine monomial X_t is symmetric or skew according to the product of
    their signs, skew tensors stay at deg(Y) t, symmetric ones move by h,
    and at the identity degree the symmetric part is cut to trace zero
    before tensoring with the unit matrix.
    """
    if h.group != group:
        raise GroupMismatch("marker lives outside the grading group")
    if h.order() != 2:
        raise BadMarker(f"marker must have order 2, got order {h.order()}")
    cases = list(cases) if cases else []
    if tup:
        el = elementary_involution_grading(group, tup, flavor, m)
    else:
        el = elementary_involution_grading(group, [group.identity()], "transpose", 1)
    p = el.grading.n
    ident = group.identity()

    if cases:
        k = len(cases)
        t_group = _klein_power(k)
        if embed is None:
            raise InvalidTuple("fine parts need an embedding of their product group")
        per_part = _fine_embeddings(t_group, embed, group, k)
        fine = involution_tensor(
            [pauli_involution_case(c) for c in cases],
            group=group,
            embeddings=per_part,
        )
        fine_table = [
            (t, fine.signs.sign(t), fine.signs.monomial(t))
            for t in fine.signs.elements()
        ]
        q = fine.grading.n
        for d in el.grading.support():
            for t, _, _ in fine_table:
                if d * t == ident and not (d == ident and t == ident):
                    raise SupportClash(
                        "elementary support meets the fine support outside the identity"
                    )
    else:
        fine_table = [(ident, 1, Mat.identity(1))]
        q = 1

    n = p * q
    sl_p = traceless_subspace(p)
    buckets: dict[GroupElem, list[Mat]] = {}
    for d in el.grading.support():
        plus, minus = sym_skew_split(el.grading.components[d], el.involution)
        for t, beta, x_t in fine_table:
            degree = d * t
            for sign_y, half in ((1, plus), (-1, minus)):
                s = sign_y * beta
                if s == -1:
                    for row in half.basis:
                        buckets.setdefault(degree, []).append(
                            Mat.from_flat(p, p, row).kron(x_t)
                        )
                elif degree == ident:
                    cut = subspace_intersect(half, sl_p)
                    for row in cut.basis:
                        buckets.setdefault(h, []).append(
                            Mat.from_flat(p, p, row).kron(x_t)
                        )
                else:
                    for row in half.basis:
                        buckets.setdefault(degree * h, []).append(
                            Mat.from_flat(p, p, row).kron(x_t)
                        )
    comps = {g: span_mats(mats, n * n) for g, mats in buckets.items()}
    return Grading(group, n, "lie", comps)


# ---------------------------------------------------------------------------
# the size obstruction for inner gradings with outer dimension counts


@dataclass(frozen=True)
class ObstructionReport:
    """Outcome of scanning all position splits for one size."""

    n: int
    skew_dim: int
    sym_traceless_dim: int
    split: tuple[int, int] | None

    @property
    def solvable(self) -> bool:
        return self.split is not None


def type1_obstruction(n: int) -> ObstructionReport:
    """Can a two-block position grading match the symmetric/skew dimensions?

    Scans every k + l = n and compares k^2 + l^2 - 1 and 2kl against the
    dimensions of the skew and traceless-symmetric parts.  Solvable only at
    n = 2; from n = 3 on the counts cannot meet.
    """
    if n < 2:
        raise TooSmall("need n >= 2")
    skew = n * (n - 1) // 2
    symt = n * (n + 1) // 2 - 1
    split = None
    for k in range(n + 1):
        l = n - k
        if k * k + l * l - 1 == skew and 2 * k * l == symt:
            split = (k, l)
            break
    return ObstructionReport(n, skew, symt, split)
