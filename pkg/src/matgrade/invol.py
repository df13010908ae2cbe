"""Involutions of the matrix algebra and gradings compatible with them.

An involution here is always X -> phi^-1 * transpose(X) * phi for an
invertible form phi that is either symmetric (transpose type) or
skew-symmetric (symplectic type).  The form is normalized so its first
nonzero entry in row-major order is 1, which pins down the scalar.

A grading is involution-compatible when every component is carried into
itself.  For fine components the action on the distinguished monomial basis
is a bare sign; those signs are kept in an extensional table and never
assumed to be multiplicative in anything.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .cyclo import CYC_ZERO, Mat, Subspace, span, span_mats
from .errors import (
    DimensionMismatch,
    IncompatibleTuple,
    InvalidOrder,
    InvalidTuple,
    KindMismatch,
    MixedSymmetry,
    NotInvolutionStable,
    SingularForm,
    SupportClash,
)
from .groups import FinAbGroup, GroupElem, make_group
from .matalg import (
    Grading,
    VerificationReport,
    Violation,
    _check_embedding,
    elementary_grading,
    epsilon_grading,
    verify_assoc,
)

HALF = Fraction(1, 2)


@dataclass(frozen=True)
class Involution:
    """Antiautomorphism X -> phi^-1 * transpose(X) * phi of M_n."""

    phi: Mat
    phi_inv: Mat
    symkind: str  # "symmetric" or "skew"

    @property
    def n(self) -> int:
        return self.phi.rows

    def apply(self, x: Mat) -> Mat:
        return self.phi_inv * x.transpose() * self.phi

    def __repr__(self):
        return f"Involution({self.symkind}, n={self.n})"


def make_involution(phi: Mat) -> Involution:
    """Involution from an invertible symmetric or skew form.

    The form is rescaled so its first nonzero row-major entry is 1, then the
    antiautomorphism and involutivity laws are checked on the matrix units.
    """
    if phi.rows != phi.cols:
        raise DimensionMismatch("form must be square")
    n = phi.rows
    first = next((e for e in phi.entries if not e.is_zero()), None)
    if first is None:
        raise SingularForm("zero form")
    if not first.is_one():
        phi = phi.scale(first.inverse())
    t = phi.transpose()
    if t == phi:
        symkind = "symmetric"
    elif t == -phi:
        symkind = "skew"
    else:
        raise MixedSymmetry("form is neither symmetric nor skew-symmetric")
    phi_inv = phi.inverse()  # raises SingularForm when degenerate
    inv = Involution(phi, phi_inv, symkind)
    units = [Mat.unit(n, i, j) for i in range(n) for j in range(n)]
    stars = [inv.apply(u) for u in units]
    for u, s in zip(units, stars):
        if inv.apply(s) != u:
            raise MixedSymmetry("map fails to square to the identity on a unit")
    for a in range(n * n):
        for b in range(n * n):
            if inv.apply(units[a] * units[b]) != stars[b] * stars[a]:
                raise MixedSymmetry("map fails the antiautomorphism law on units")
    return inv


def apply_involution(inv: Involution, x: Mat) -> Mat:
    if x.rows != inv.n or x.cols != inv.n:
        raise DimensionMismatch(f"matrix is {x.rows}x{x.cols}, involution acts on {inv.n}")
    return inv.apply(x)


def sym_skew_split(sub: Subspace, inv: Involution):
    """Split a stable subspace into its symmetric and skew halves.

    Returns (plus, minus).  Raises when some basis vector leaves the
    subspace under the involution, since the split only makes sense then.
    """
    n = isqrt(sub.ambient_dim)
    if n * n != sub.ambient_dim or n != inv.n:
        raise DimensionMismatch("subspace is not made of flattened matrices of the right size")
    plus_rows = []
    minus_rows = []
    for idx, row in enumerate(sub.basis):
        mat = Mat.from_flat(n, n, row)
        star = inv.apply(mat)
        if not sub.contains(star.flatten()):
            raise NotInvolutionStable(
                f"basis vector {idx} is moved outside the subspace"
            )
        plus_rows.append(((mat + star).scale(HALF)).flatten())
        minus_rows.append(((mat - star).scale(HALF)).flatten())
    return span(plus_rows, sub.ambient_dim), span(minus_rows, sub.ambient_dim)


# ---------------------------------------------------------------------------
# sign tables for fine components


class SignFunction:
    """Extensional sign table for distinguished monomial basis matrices.

    For each recorded element t the involution sends the stored monomial to
    sign(t) times itself.  The table is never assumed multiplicative; it is
    checked entry by entry wherever it matters.
    """

    def __init__(self, group: FinAbGroup, table, monomials):
        self.group = group
        self.table = dict(table)
        self.monomials = dict(monomials)

    def elements(self) -> list[GroupElem]:
        return sorted(self.table, key=lambda g: g.exponents)

    def sign(self, t: GroupElem) -> int:
        return self.table[t]

    def monomial(self, t: GroupElem) -> Mat:
        return self.monomials[t]

    def __repr__(self):
        return f"SignFunction({len(self.table)} entries)"


@dataclass(frozen=True)
class InvolutedGrading:
    """Grading of the full algebra bundled with a compatible involution."""

    grading: Grading
    involution: Involution
    signs: SignFunction | None = None


def _signs_from_monomials(group, inv, monomials) -> SignFunction:
    table = {}
    for t, mat in monomials.items():
        star = inv.apply(mat)
        if star == mat:
            table[t] = 1
        elif star == -mat:
            table[t] = -1
        else:
            raise NotInvolutionStable(
                f"monomial at {t!r} is not sent to a multiple of itself"
            )
    return SignFunction(group, table, monomials)


def pauli_involution_case(case: int) -> InvolutedGrading:
    """One of the four involutions compatible with the fine grading of M_2.

    Case 1 is the skew form, cases 2 to 4 are the symmetric forms that keep
    every monomial component stable; the sign table is computed, not assumed.
    """
    forms = {
        1: Mat.from_rows([[0, 1], [-1, 0]]),
        2: Mat.from_rows([[0, 1], [1, 0]]),
        3: Mat.identity(2),
        4: Mat.from_rows([[1, 0], [0, -1]]),
    }
    if case not in forms:
        raise InvalidOrder(f"case must be 1, 2, 3 or 4, got {case!r}")
    inv = make_involution(forms[case])
    fine = epsilon_grading(2)
    grading = Grading(fine.group, 2, "involution", fine.components, fine.basis_labels)
    monomials = {g: pairs[0][1] for g, pairs in fine.basis_labels.items()}
    signs = _signs_from_monomials(fine.group, inv, monomials)
    return InvolutedGrading(grading, inv, signs)


# ---------------------------------------------------------------------------
# elementary gradings compatible with an involution


def _transpose_form(m: int, l: int) -> Mat:
    n = m + 2 * l
    ent = [CYC_ZERO] * (n * n)
    for i in range(m):
        ent[i * n + i] = 1
    for i in range(l):
        ent[(m + i) * n + (m + l + i)] = 1
        ent[(m + l + i) * n + (m + i)] = 1
    return Mat(n, n, ent)


def _symplectic_form(k: int) -> Mat:
    n = 2 * k
    ent = [CYC_ZERO] * (n * n)
    for i in range(k):
        ent[i * n + (k + i)] = 1
        ent[(k + i) * n + i] = -1
    return Mat(n, n, ent)


def _transpose_constraints_hold(tup, m: int, l: int) -> bool:
    targets = [tup[i] * tup[i] for i in range(m)]
    targets += [tup[m + i] * tup[m + l + i] for i in range(l)]
    return all(t == targets[0] for t in targets)


def elementary_involution_grading(
    group: FinAbGroup, tup, flavor: str, m: int | None = None
) -> InvolutedGrading:
    """Elementary grading that an involution of the given flavor preserves.

    The tuple must already be in canonical order.  For the transpose flavor
    the first m entries share one square and the remaining ones come in l
    pairs with a common product equal to that square; when m is not given the
    largest value that satisfies the constraints is used.  For the symplectic
    flavor the size is even and opposite halves pair to a common product.
    """
    tup = list(tup)
    n = len(tup)
    if n < 1:
        raise InvalidTuple("tuple must not be empty")
    for g in tup:
        if not isinstance(g, GroupElem) or g.group != group:
            raise InvalidTuple(f"tuple entry {g!r} is not an element of {group!r}")
    if flavor == "symplectic":
        if m is not None:
            raise InvalidTuple("the symplectic flavor does not take a split position")
        if n % 2:
            raise InvalidOrder(f"symplectic flavor needs an even size, got {n}")
        k = n // 2
        x0 = tup[0] * tup[k]
        if any(tup[i] * tup[k + i] != x0 for i in range(k)):
            raise IncompatibleTuple(
                "opposite halves of the tuple do not share one product"
            )
        phi = _symplectic_form(k)
    elif flavor == "transpose":
        if m is None:
            m = next(
                (
                    cand
                    for cand in range(n, -1, -2)
                    if _transpose_constraints_hold(tup, cand, (n - cand) // 2)
                ),
                None,
            )
            if m is None:
                raise IncompatibleTuple(
                    "no split of the tuple satisfies the square and pairing constraints"
                )
        if m < 0 or m > n or (n - m) % 2:
            raise InvalidTuple(f"split position {m} does not fit a tuple of length {n}")
        l = (n - m) // 2
        if not _transpose_constraints_hold(tup, m, l):
            raise IncompatibleTuple(
                "tuple fails the square and pairing constraints at the given split"
            )
        phi = _transpose_form(m, l)
    else:
        raise InvalidTuple(f"flavor must be 'transpose' or 'symplectic', got {flavor!r}")
    inv = make_involution(phi)
    plain = elementary_grading(group, n, tup)
    grading = Grading(group, n, "involution", plain.components, plain.basis_labels)
    return InvolutedGrading(grading, inv, None)


# ---------------------------------------------------------------------------
# tensor products that track the involution and the signs


def involution_tensor(parts, group=None, embeddings=None) -> InvolutedGrading:
    """Combine involution-compatible gradings by Kronecker product.

    Parts whose sign table is present contribute monomials to the combined
    fine sign table; parts without one (the elementary factor) contribute
    identity degree only.  Supports must meet pairwise at the identity alone
    inside the common group.
    """
    parts = list(parts)
    if not parts:
        raise InvalidTuple("need at least one part")
    for p in parts:
        if not isinstance(p, InvolutedGrading):
            raise KindMismatch("parts must carry a grading and an involution")
        if p.grading.kind != "involution":
            raise KindMismatch("parts must be involution-compatible gradings")
    if group is None:
        if embeddings is not None:
            raise InvalidTuple("embeddings need an explicit common group")
        factors = ()
        for p in parts:
            factors += p.grading.group.factors
        group = make_group(factors)
        embeddings = []
        before = 0
        for p in parts:
            k = len(p.grading.group.factors)
            after = len(factors) - before - k

            def embed(g, _b=before, _a=after):
                return group.element((0,) * _b + g.exponents + (0,) * _a)

            embeddings.append(embed)
            before += k
    else:
        if embeddings is None or len(embeddings) != len(parts):
            raise InvalidTuple("one embedding per part is required with a common group")
    images = []
    for k, p in enumerate(parts):
        images.append(
            _check_embedding(embeddings[k], p.grading.support(), group, f"embedding {k}")
        )
    ident = group.identity()
    for i in range(len(parts)):
        for j in range(i + 1, len(parts)):
            meet = set(images[i].values()) & set(images[j].values())
            if meet - {ident}:
                raise SupportClash(
                    f"supports of parts {i} and {j} meet outside the identity"
                )

    n = 1
    for p in parts:
        n *= p.grading.n
    buckets: dict[GroupElem, list[Mat]] = {}
    labels: dict[GroupElem, list[tuple[str, Mat]]] = {}

    def walk(idx, degree, mat, name):
        if idx == len(parts):
            buckets.setdefault(degree, []).append(mat)
            labels.setdefault(degree, []).append((name, mat))
            return
        part = parts[idx]
        for g in part.grading.support():
            target = degree * images[idx][g]
            for i, piece in enumerate(part.grading.basis_matrices(g)):
                walk(
                    idx + 1,
                    target,
                    mat.kron(piece),
                    f"{name}|{g.exponents}[{i}]",
                )

    walk(0, ident, Mat.identity(1), "")
    components = {g: span_mats(mats, n * n) for g, mats in buckets.items()}
    grading = Grading(group, n, "involution", components, labels)

    phi = Mat.identity(1)
    for p in parts:
        phi = phi.kron(p.involution.phi)
    inv = make_involution(phi)

    monomials: dict[GroupElem, Mat] = {}

    def walk_signs(idx, degree, mat):
        if idx == len(parts):
            if degree in monomials and not monomials[degree] == mat:
                raise SupportClash(
                    "fine monomials collide at one degree; supports are not independent"
                )
            monomials[degree] = mat
            return
        part = parts[idx]
        if part.signs is None:
            walk_signs(idx + 1, degree, mat.kron(Mat.identity(part.grading.n)))
            return
        for t in part.signs.elements():
            walk_signs(idx + 1, degree * images[idx][t], mat.kron(part.signs.monomial(t)))

    walk_signs(0, ident, Mat.identity(1))
    signs = _signs_from_monomials(group, inv, monomials)
    return InvolutedGrading(grading, inv, signs)


# ---------------------------------------------------------------------------
# verification


def verify_involution_grading(ig: InvolutedGrading) -> VerificationReport:
    """Associativity checks plus stability of every component, with a sign audit."""
    grading, inv = ig.grading, ig.involution
    if grading.kind not in ("associative", "involution"):
        raise KindMismatch("expected a grading of the full algebra")
    if inv.n != grading.n:
        raise DimensionMismatch("involution and grading act on different sizes")
    base = verify_assoc(grading)
    violations = list(base.violations)
    for g in grading.support():
        comp = grading.components[g]
        for i, row in enumerate(comp.basis):
            star = inv.apply(Mat.from_flat(grading.n, grading.n, row))
            if not comp.contains(star.flatten()):
                violations.append(
                    Violation(
                        "component-not-stable",
                        (g.exponents, i),
                        f"component at {g.exponents} loses basis vector {i} "
                        f"under the involution",
                    )
                )
    if ig.signs is not None:
        for t in ig.signs.elements():
            mono = ig.signs.monomial(t)
            expect = mono.scale(ig.signs.sign(t))
            if inv.apply(mono) != expect:
                violations.append(
                    Violation(
                        "sign-mismatch",
                        (t.exponents,),
                        f"recorded sign at {t.exponents} disagrees with the involution",
                    )
                )
    return VerificationReport("involution", tuple(violations))
