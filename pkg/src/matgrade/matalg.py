"""Gradings of the full matrix algebra by a finite abelian group.

A grading assigns to every group element a subspace of n-by-n matrices
(flattened row-major to vectors of length n*n) so that the nonzero
components sum directly to the whole algebra and multiplication adds
degrees.  Verification is exhaustive over basis pairs and reports every
failure with a witness instead of raising.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cyclo import (
    CYC_ZERO,
    Mat,
    Subspace,
    linear_solve,
    span,
    span_mats,
    subspace_sum,
    zero_subspace,
    zeta,
)
from .errors import (
    BadEmbedding,
    GroupMismatch,
    InvalidTuple,
    KindMismatch,
    NotInAlgebra,
    SupportClash,
)
from .groups import Character, FinAbGroup, GroupElem, Subgroup, make_group, quotient

KINDS = ("associative", "lie", "involution")


@dataclass(frozen=True)
class Violation:
    """One verification failure with enough context to reproduce it."""

    code: str
    witness: tuple
    message: str


@dataclass(frozen=True)
class VerificationReport:
    check: str
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __repr__(self):
        state = "ok" if self.ok else f"{len(self.violations)} violations"
        return f"VerificationReport({self.check}: {state})"


class Grading:
    """Group-labelled decomposition of n-by-n matrices.

    kind is "associative" for a plain algebra grading, "involution" for an
    associative grading known to be compatible with an involution, and "lie"
    for a grading of the traceless matrices.  Zero components are dropped;
    the support is exactly the keys of the component map.
    """

    def __init__(self, group: FinAbGroup, n: int, kind: str, components, basis_labels=None):
        if kind not in KINDS:
            raise KindMismatch(f"unknown grading kind {kind!r}")
        ambient = n * n
        kept: dict[GroupElem, Subspace] = {}
        for g, sub in components.items():
            if g.group != group:
                raise GroupMismatch(f"component label {g!r} outside the grading group")
            if sub.ambient_dim != ambient:
                raise InvalidTuple(
                    f"component at {g!r} lives in dimension {sub.ambient_dim}, expected {ambient}"
                )
            if sub.rank:
                kept[g] = sub
        self.group = group
        self.n = n
        self.kind = kind
        self.components = kept
        self.basis_labels = dict(basis_labels) if basis_labels else None

    def support(self) -> list[GroupElem]:
        return sorted(self.components, key=lambda g: g.exponents)

    def component(self, g: GroupElem) -> Subspace:
        if g.group != self.group:
            raise GroupMismatch(f"{g!r} is not in the grading group")
        got = self.components.get(g)
        return got if got is not None else zero_subspace(self.n * self.n)

    def dimensions(self) -> list[tuple[GroupElem, int]]:
        return [(g, self.components[g].rank) for g in self.support()]

    def total_dimension(self) -> int:
        return sum(sub.rank for sub in self.components.values())

    def basis_matrices(self, g: GroupElem) -> list[Mat]:
        """Component basis reshaped to matrices (canonical rows)."""
        sub = self.component(g)
        return [Mat.from_flat(self.n, self.n, row) for row in sub.basis]

    def __eq__(self, other):
        if not isinstance(other, Grading):
            return NotImplemented
        if (self.group, self.n, self.kind) != (other.group, other.n, other.kind):
            return False
        if set(self.components) != set(other.components):
            return False
        return all(self.components[g] == other.components[g] for g in self.components)

    def __repr__(self):
        return (
            f"Grading({self.kind}, n={self.n}, group={self.group!r}, "
            f"support {len(self.components)})"
        )


def support(grading: Grading) -> list[GroupElem]:
    """Group elements carrying a nonzero component, sorted by exponents."""
    return grading.support()


# ---------------------------------------------------------------------------
# constructions


def elementary_grading(group: FinAbGroup, n: int, tup) -> Grading:
    """Grading by positions: the unit E_ij sits in degree tup[i]^-1 * tup[j]."""
    tup = list(tup)
    if n < 1:
        raise InvalidTuple(f"need n >= 1, got {n}")
    if len(tup) != n:
        raise InvalidTuple(f"tuple length {len(tup)} does not match n={n}")
    for g in tup:
        if not isinstance(g, GroupElem) or g.group != group:
            raise InvalidTuple(f"tuple entry {g!r} is not an element of {group!r}")
    buckets: dict[GroupElem, list[Mat]] = {}
    labels: dict[GroupElem, list[tuple[str, Mat]]] = {}
    for i in range(n):
        for j in range(n):
            deg = tup[i].inverse() * tup[j]
            unit = Mat.unit(n, i, j)
            buckets.setdefault(deg, []).append(unit)
            labels.setdefault(deg, []).append((f"E[{i},{j}]", unit))
    components = {g: span_mats(mats, n * n) for g, mats in buckets.items()}
    return Grading(group, n, "associative", components, labels)


@dataclass(frozen=True)
class ClockShift:
    """Clock and shift matrix pair generating the fine grading of M_n."""

    n: int
    root: object
    clock: Mat
    shift: Mat


def clock_shift(n: int) -> ClockShift:
    """Clock diag(w^(n-1), ..., w, 1) and the cyclic shift, w a primitive n-th root."""
    if n < 1:
        raise InvalidTuple(f"need n >= 1, got {n}")
    w = zeta(n)
    clock = Mat.diagonal([w ** (n - 1 - i) for i in range(n)])
    ent = [CYC_ZERO] * (n * n)
    for i in range(n - 1):
        ent[i * n + i + 1] = 1
    ent[(n - 1) * n] = 1
    shift = Mat(n, n, ent) if n > 1 else Mat.identity(1)
    return ClockShift(n, w, clock, shift)


def epsilon_grading(n: int) -> Grading:
    """Fine grading of M_n over Z_n x Z_n with monomial components.

    The element (i, j) carries the span of clock^i * shift^j; every component
    is one dimensional.
    """
    pair = clock_shift(n)
    group = make_group([n, n])
    components: dict[GroupElem, Subspace] = {}
    labels: dict[GroupElem, list[tuple[str, Mat]]] = {}
    clock_pow = Mat.identity(n)
    for i in range(n):
        row_base = clock_pow
        mono = row_base
        for j in range(n):
            g = group.element([i, j])
            components[g] = span_mats([mono], n * n)
            labels[g] = [(f"clock^{i}*shift^{j}", mono)]
            mono = mono * pair.shift
        clock_pow = clock_pow * pair.clock
    return Grading(group, n, "associative", components, labels)


def _check_embedding(embed, source_support, target_group, what):
    image = {}
    for g in source_support:
        img = embed(g)
        if not isinstance(img, GroupElem) or img.group != target_group:
            raise BadEmbedding(f"{what} does not land in the common group at {g!r}")
        image[g] = img
    for a in source_support:
        for b in source_support:
            if embed(a * b) != image[a] * image[b]:
                raise BadEmbedding(f"{what} is not a homomorphism at {a!r}, {b!r}")
    return image


def tensor_grading(
    a: Grading,
    b: Grading,
    group: FinAbGroup | None = None,
    embed_a=None,
    embed_b=None,
) -> Grading:
    """Kronecker product grading of M_(na*nb).

    Without a common group the result lives over the direct product of the
    two grading groups.  With one, both embeddings are required and the
    embedded supports may only meet at the identity.
    """
    for g in (a, b):
        if g.kind == "lie":
            raise KindMismatch("tensor factors must be gradings of the full algebra")
    if group is None:
        if embed_a is not None or embed_b is not None:
            raise BadEmbedding("embeddings need an explicit common group")
        ka, kb = len(a.group.factors), len(b.group.factors)
        group = make_group(a.group.factors + b.group.factors)
        embed_a = lambda g: group.element(g.exponents + (0,) * kb)
        embed_b = lambda g: group.element((0,) * ka + g.exponents)
    else:
        if embed_a is None or embed_b is None:
            raise BadEmbedding("a common group needs both embeddings")
    img_a = _check_embedding(embed_a, a.support(), group, "left embedding")
    img_b = _check_embedding(embed_b, b.support(), group, "right embedding")
    meet = set(img_a.values()) & set(img_b.values())
    if meet - {group.identity()}:
        clash = sorted(meet - {group.identity()}, key=lambda g: g.exponents)[0]
        raise SupportClash(f"embedded supports share the non-identity element {clash!r}")
    n = a.n * b.n
    buckets: dict[GroupElem, list] = {}
    labels: dict[GroupElem, list[tuple[str, Mat]]] = {}
    for ga in a.support():
        mats_a = a.basis_matrices(ga)
        for gb in b.support():
            mats_b = b.basis_matrices(gb)
            target = img_a[ga] * img_b[gb]
            bucket = buckets.setdefault(target, [])
            names = labels.setdefault(target, [])
            for ia, ma in enumerate(mats_a):
                for ib, mb in enumerate(mats_b):
                    prod = ma.kron(mb)
                    bucket.append(prod)
                    names.append((f"{ga.exponents}x{gb.exponents}[{ia},{ib}]", prod))
    components = {g: span_mats(mats, n * n) for g, mats in buckets.items()}
    return Grading(group, n, "associative", components, labels)


# ---------------------------------------------------------------------------
# verification


def verify_assoc(grading: Grading) -> VerificationReport:
    """Exhaustive check that the components grade the associative product.

    Cost is quadratic in the support size times the component dimensions;
    every failure is reported with the offending degrees and basis indexes.
    """
    if grading.kind == "lie":
        raise KindMismatch("verify_assoc expects a grading of the full algebra")
    violations: list[Violation] = []
    n = grading.n
    supp = grading.support()
    total = grading.total_dimension()
    if total != n * n:
        violations.append(
            Violation(
                "total-dimension",
                (total, n * n),
                f"component dimensions sum to {total}, expected {n * n}",
            )
        )
    stacked = [row for g in supp for row in grading.components[g].basis]
    whole = span(stacked, n * n)
    if whole.rank != total:
        violations.append(
            Violation(
                "not-direct",
                (whole.rank, total),
                f"components overlap: joint span has dimension {whole.rank}, "
                f"but dimensions sum to {total}",
            )
        )
    for g in supp:
        mats_g = grading.basis_matrices(g)
        for h in supp:
            mats_h = grading.basis_matrices(h)
            target = grading.component(g * h)
            for i, u in enumerate(mats_g):
                for j, v in enumerate(mats_h):
                    prod = u * v
                    if target.rank == 0:
                        if not prod.is_zero():
                            violations.append(
                                Violation(
                                    "product-escapes",
                                    (g.exponents, h.exponents, i, j),
                                    f"basis product {i},{j} of degrees "
                                    f"{g.exponents} * {h.exponents} is nonzero but the "
                                    f"target degree has no component",
                                )
                            )
                    elif not target.contains(prod.flatten()):
                        violations.append(
                            Violation(
                                "product-escapes",
                                (g.exponents, h.exponents, i, j),
                                f"basis product {i},{j} of degrees "
                                f"{g.exponents} * {h.exponents} leaves its component",
                            )
                        )
    return VerificationReport("associative", tuple(violations))


# ---------------------------------------------------------------------------
# coarsening and the dual action


def coarsen(grading: Grading, sub: Subgroup) -> Grading:
    """Push the grading forward along the quotient by the given subgroup."""
    q, project = quotient(grading.group, sub)
    buckets: dict[GroupElem, Subspace] = {}
    labels: dict[GroupElem, list] = {}
    for g in grading.support():
        target = project(g)
        cur = buckets.get(target)
        piece = grading.components[g]
        buckets[target] = piece if cur is None else subspace_sum(cur, piece)
        if grading.basis_labels and g in grading.basis_labels:
            labels.setdefault(target, []).extend(grading.basis_labels[g])
    return Grading(q, grading.n, grading.kind, buckets, labels or None)


def decompose(x: Mat, grading: Grading) -> dict[GroupElem, Mat]:
    """Split a matrix into its homogeneous parts.

    Raises NotInAlgebra when the matrix is outside the joint span of the
    components, which for a Lie grading means outside the traceless part.
    """
    n = grading.n
    if x.rows != n or x.cols != n:
        raise NotInAlgebra(f"matrix is {x.rows}x{x.cols}, grading lives on {n}x{n}")
    supp = grading.support()
    rows = []
    owner = []
    for g in supp:
        for row in grading.components[g].basis:
            rows.append(row)
            owner.append(g)
    columns = [[rows[j][i] for j in range(len(rows))] for i in range(n * n)]
    coeffs = linear_solve(columns, list(x.flatten()))
    if coeffs is None:
        raise NotInAlgebra("matrix is not in the span of the grading components")
    parts: dict[GroupElem, Mat] = {}
    for g in supp:
        parts[g] = Mat.zero(n, n)
    for c, g, row in zip(coeffs, owner, rows):
        if not c.is_zero():
            parts[g] = parts[g] + Mat.from_flat(n, n, [c * e for e in row])
    return parts


def homogeneous_projection(x: Mat, g: GroupElem, grading: Grading) -> Mat:
    """Component of x in the given degree."""
    if g.group != grading.group:
        raise GroupMismatch(f"{g!r} is not in the grading group")
    parts = decompose(x, grading)
    return parts.get(g, Mat.zero(grading.n, grading.n))


def chi_action(chi: Character, x: Mat, grading: Grading) -> Mat:
    """Dual action: scale each homogeneous part of x by the character value."""
    if chi.group != grading.group:
        raise GroupMismatch("character of a different group")
    parts = decompose(x, grading)
    out = Mat.zero(grading.n, grading.n)
    for g, part in parts.items():
        if not part.is_zero():
            out = out + part.scale(chi(g))
    return out
