"""Exact arithmetic in cyclotomic fields, with exact linear algebra on top.

A CycNum is the residue of a rational polynomial modulo the N-th cyclotomic
polynomial, stored as a tuple of phi(N) coefficients.  All arithmetic stays
inside the rationals, so zero tests and equality are literal coefficient
comparisons.  There is no floating point and no tolerance anywhere in this
module; the matrix and subspace routines inherit that exactness.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import lcm

from .errors import (
    DimensionMismatch,
    DivisionByZero,
    InvalidConductor,
    SingularForm,
)

_ZERO = Fraction(0)
_ONE = Fraction(1)


# ---------------------------------------------------------------------------
# integer polynomials: cyclotomic polynomial by the recursive quotient


def _poly_div_exact(num: list, den: list) -> list:
    # den is monic and the division is known to be exact
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for k in range(len(num) - dd - 1, -1, -1):
        c = num[k + dd]
        out[k] = c
        if c:
            for i, d in enumerate(den):
                num[k + i] -= c * d
    if any(num):
        raise ArithmeticError("division was not exact")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, constant term first."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InvalidConductor(f"conductor must be a positive integer, got {n!r}")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_div_exact(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


def field_degree(n: int) -> int:
    """Degree of the n-th cyclotomic field over the rationals."""
    return len(cyclotomic_poly(n)) - 1


def _reduce(n: int, poly: list[Fraction]) -> tuple[Fraction, ...]:
    """Residue of poly modulo the n-th cyclotomic polynomial, padded to full length."""
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    work = list(poly)
    for k in range(len(work) - 1, deg - 1, -1):
        c = work[k]
        if c:
            base = k - deg
            for i in range(deg + 1):
                work[base + i] -= c * phi[i]
    if len(work) < deg:
        work = work + [_ZERO] * (deg - len(work))
    return tuple(work[:deg])


# ---------------------------------------------------------------------------
# rational-coefficient polynomial helpers for the extended Euclid step


def _poly_trim(p: list[Fraction]) -> list[Fraction]:
    while len(p) > 1 and not p[-1]:
        p.pop()
    return p


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] += ai * bj
    return _poly_trim(out)


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [_ZERO] * max(len(a), len(b))
    for i, ai in enumerate(a):
        out[i] += ai
    for i, bi in enumerate(b):
        out[i] -= bi
    return _poly_trim(out)


def _poly_divmod(a: list[Fraction], b: list[Fraction]):
    rem = list(a)
    db = len(b) - 1
    lead = b[-1]
    if len(rem) - 1 < db:
        return [_ZERO], _poly_trim(rem)
    quo = [_ZERO] * (len(rem) - db)
    for k in range(len(rem) - db - 1, -1, -1):
        c = rem[k + db] / lead
        quo[k] = c
        if c:
            for i, bi in enumerate(b):
                rem[k + i] -= c * bi
    return _poly_trim(quo), _poly_trim(rem)


def _poly_xgcd(a: list[Fraction], b: list[Fraction]):
    """g, s, t with s*a + t*b = g."""
    r0, s0, t0 = _poly_trim(list(a)), [_ONE], [_ZERO]
    r1, s1, t1 = _poly_trim(list(b)), [_ZERO], [_ONE]
    while any(r1):
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        t0, t1 = t1, _poly_sub(t0, _poly_mul(q, t1))
    return r0, s0, t0


# ---------------------------------------------------------------------------
# field elements


class CycNum:
    """Element of the cyclotomic field with the given conductor.

    The coefficient tuple is the canonical residue, so two values are equal
    exactly when they agree after lifting to the least common conductor.
    """

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor: int, coeffs):
        if not isinstance(conductor, int) or isinstance(conductor, bool) or conductor < 1:
            raise InvalidConductor(f"conductor must be a positive integer, got {conductor!r}")
        poly = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        self.conductor = conductor
        self.coeffs = _reduce(conductor, poly)

    @classmethod
    def rational(cls, value, conductor: int = 1) -> "CycNum":
        return cls(conductor, [Fraction(value)])

    def lift(self, conductor: int) -> "CycNum":
        """Rewrite at a larger conductor that the current one divides."""
        if conductor == self.conductor:
            return self
        if conductor % self.conductor != 0:
            raise InvalidConductor(
                f"cannot lift conductor {self.conductor} to {conductor}"
            )
        stride = conductor // self.conductor
        poly = [_ZERO] * ((len(self.coeffs) - 1) * stride + 1)
        for i, c in enumerate(self.coeffs):
            poly[i * stride] = c
        return CycNum(conductor, poly)

    def reduced(self) -> "CycNum":
        """Rewrite at the smallest conductor whose field holds the value.

        Inverse of lift up to conductor choice: v.lift(n).reduced() == v
        whenever v was already minimal.  Arithmetic never shrinks conductors
        on its own, so this is how serialization stays path-independent.
        """
        if self.is_rational():
            return self if self.conductor == 1 else CycNum(1, [self.coeffs[0]])
        n = self.conductor
        for d in range(2, n):
            if n % d:
                continue
            coords = _subfield_coords(n, d, self.coeffs)
            if coords is not None:
                return CycNum(d, coords)
        return self

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and not any(self.coeffs[1:])

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    # -- arithmetic --------------------------------------------------------

    def _pair(self, other):
        if isinstance(other, CycNum):
            pass
        elif isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = CycNum(1, [Fraction(other)])
        else:
            return None, None
        n = lcm(self.conductor, other.conductor)
        return self.lift(n), other.lift(n)

    def __add__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return CycNum(a.conductor, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return CycNum(a.conductor, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        return CycNum(self.conductor, [-c for c in self.coeffs])

    def __mul__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        prod = [_ZERO] * (len(a.coeffs) + len(b.coeffs) - 1)
        for i, ai in enumerate(a.coeffs):
            if ai:
                for j, bj in enumerate(b.coeffs):
                    if bj:
                        prod[i + j] += ai * bj
        return CycNum(a.conductor, prod)

    __rmul__ = __mul__

    def inverse(self) -> "CycNum":
        if self.is_zero():
            raise DivisionByZero("zero has no inverse")
        modulus = [Fraction(c) for c in cyclotomic_poly(self.conductor)]
        g, s, _ = _poly_xgcd(list(self.coeffs), modulus)
        scale = g[0] ** -1
        return CycNum(self.conductor, [c * scale for c in s])

    def __truediv__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return b * a.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        base = self
        if exponent < 0:
            base = self.inverse()
            exponent = -exponent
        out = CycNum(self.conductor, [_ONE])
        while exponent:
            if exponent & 1:
                out = out * base
            base = base * base
            exponent >>= 1
        return out

    def __eq__(self, other):
        a, b = self._pair(other)
        if a is None:
            return NotImplemented
        return a.coeffs == b.coeffs

    def __repr__(self):
        if self.is_rational():
            return f"CycNum({self.conductor}, {self.coeffs[0]})"
        return f"CycNum({self.conductor}, {[str(c) for c in self.coeffs]})"


def zeta(n: int) -> CycNum:
    """Primitive n-th root of unity."""
    return CycNum(n, [_ZERO, _ONE])


@lru_cache(maxsize=None)
def _lift_columns(n: int, d: int) -> tuple:
    # canonical coordinates at conductor n of the power basis of the
    # conductor-d subfield
    stride = n // d
    cols = []
    for j in range(field_degree(d)):
        poly = [_ZERO] * (j * stride) + [_ONE]
        cols.append(_reduce(n, poly))
    return tuple(cols)


def _subfield_coords(n: int, d: int, coeffs):
    """Coordinates of the value in the conductor-d power basis, or None."""
    cols = _lift_columns(n, d)
    rows = [[col[i] for col in cols] for i in range(len(coeffs))]
    sol = linear_solve(rows, list(coeffs))
    if sol is None:
        return None
    return [c.coeffs[0] for c in sol]


def cyc(value) -> CycNum:
    """Rational number as a conductor-1 field element."""
    return CycNum(1, [Fraction(value)])


CYC_ZERO = cyc(0)
CYC_ONE = cyc(1)


def _as_cyc(value) -> CycNum:
    if isinstance(value, CycNum):
        return value
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return CycNum(1, [Fraction(value)])
    raise TypeError(f"expected a field element, got {type(value).__name__}")


# ---------------------------------------------------------------------------
# matrices


class Mat:
    """Dense matrix of field elements, lifted to one common conductor."""

    __slots__ = ("rows", "cols", "conductor", "entries")

    def __init__(self, rows: int, cols: int, entries):
        entries = [_as_cyc(e) for e in entries]
        if len(entries) != rows * cols:
            raise DimensionMismatch(
                f"expected {rows * cols} entries, got {len(entries)}"
            )
        conductor = 1
        for e in entries:
            conductor = lcm(conductor, e.conductor)
        self.rows = rows
        self.cols = cols
        self.conductor = conductor
        self.entries = tuple(e.lift(conductor) for e in entries)

    @classmethod
    def from_rows(cls, rows) -> "Mat":
        rows = [list(r) for r in rows]
        n = len(rows)
        m = len(rows[0]) if rows else 0
        if any(len(r) != m for r in rows):
            raise DimensionMismatch("ragged rows")
        return cls(n, m, [e for r in rows for e in r])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Mat":
        return cls(rows, cols, [CYC_ZERO] * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls(n, n, [CYC_ONE if i == j else CYC_ZERO for i in range(n) for j in range(n)])

    @classmethod
    def diagonal(cls, values) -> "Mat":
        values = [_as_cyc(v) for v in values]
        n = len(values)
        return cls(n, n, [values[i] if i == j else CYC_ZERO for i in range(n) for j in range(n)])

    @classmethod
    def unit(cls, n: int, i: int, j: int) -> "Mat":
        """Matrix unit with a single 1 in row i, column j."""
        ent = [CYC_ZERO] * (n * n)
        ent[i * n + j] = CYC_ONE
        return cls(n, n, ent)

    @classmethod
    def from_flat(cls, rows: int, cols: int, vec) -> "Mat":
        return cls(rows, cols, list(vec))

    def entry(self, i: int, j: int) -> CycNum:
        return self.entries[i * self.cols + j]

    def row_list(self) -> list[list[CycNum]]:
        return [list(self.entries[i * self.cols:(i + 1) * self.cols]) for i in range(self.rows)]

    def flatten(self) -> tuple[CycNum, ...]:
        return self.entries

    def is_zero(self) -> bool:
        return all(e.is_zero() for e in self.entries)

    def _same_shape(self, other: "Mat"):
        if self.rows != other.rows or self.cols != other.cols:
            raise DimensionMismatch(
                f"shape ({self.rows}x{self.cols}) vs ({other.rows}x{other.cols})"
            )

    def __add__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        self._same_shape(other)
        return Mat(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        self._same_shape(other)
        return Mat(self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self):
        return Mat(self.rows, self.cols, [-a for a in self.entries])

    def scale(self, scalar) -> "Mat":
        s = _as_cyc(scalar)
        return Mat(self.rows, self.cols, [s * a for a in self.entries])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycNum)):
            return self.scale(other)
        if not isinstance(other, Mat):
            return NotImplemented
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        n, k, m = self.rows, self.cols, other.cols
        out = [CYC_ZERO] * (n * m)
        for i in range(n):
            for t in range(k):
                a = self.entries[i * k + t]
                if a.is_zero():
                    continue
                base = t * m
                for j in range(m):
                    b = other.entries[base + j]
                    if not b.is_zero():
                        out[i * m + j] = out[i * m + j] + a * b
        return Mat(n, m, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, CycNum)):
            return self.scale(other)
        return NotImplemented

    def transpose(self) -> "Mat":
        return Mat(
            self.cols,
            self.rows,
            [self.entries[j * self.cols + i] for i in range(self.cols) for j in range(self.rows)],
        )

    def trace(self) -> CycNum:
        if self.rows != self.cols:
            raise DimensionMismatch("trace of a non-square matrix")
        total = CYC_ZERO
        for i in range(self.rows):
            total = total + self.entries[i * self.cols + i]
        return total

    def kron(self, other: "Mat") -> "Mat":
        """Kronecker product; entry blocks follow row-major convention."""
        p, q = other.rows, other.cols
        rows, cols = self.rows * p, self.cols * q
        out = [CYC_ZERO] * (rows * cols)
        for i1 in range(self.rows):
            for j1 in range(self.cols):
                a = self.entries[i1 * self.cols + j1]
                if a.is_zero():
                    continue
                for i2 in range(p):
                    for j2 in range(q):
                        b = other.entries[i2 * q + j2]
                        if not b.is_zero():
                            out[(i1 * p + i2) * cols + (j1 * q + j2)] = a * b
        return Mat(rows, cols, out)

    def inverse(self) -> "Mat":
        if self.rows != self.cols:
            raise DimensionMismatch("inverse of a non-square matrix")
        n = self.rows
        aug = []
        for i in range(n):
            row = list(self.entries[i * n:(i + 1) * n])
            row.extend(CYC_ONE if j == i else CYC_ZERO for j in range(n))
            aug.append(row)
        red, _, pivots = rref(aug)
        if pivots[:n] != list(range(n)):
            raise SingularForm("matrix is singular")
        return Mat(n, n, [red[i][n + j] for i in range(n) for j in range(n)])

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        if self.rows != other.rows or self.cols != other.cols:
            return False
        return all(a == b for a, b in zip(self.entries, other.entries))

    def reduced(self) -> "Mat":
        """Rewrite at the smallest common conductor of the reduced entries."""
        return Mat(self.rows, self.cols, [e.reduced() for e in self.entries])

    def __repr__(self):
        return f"Mat({self.rows}x{self.cols}, conductor {self.conductor})"


def bracket(a: Mat, b: Mat) -> Mat:
    """Commutator a*b - b*a."""
    return a * b - b * a


# ---------------------------------------------------------------------------
# exact row reduction and subspaces


def rref(rows):
    """Reduced row echelon form of a list of rows of field elements.

    Pivot choice is deterministic: columns are scanned left to right and the
    topmost remaining row with a nonzero entry wins.  Returns the reduced
    rows, the rank, and the pivot column list.
    """
    work = [[_as_cyc(e) for e in row] for row in rows]
    nrows = len(work)
    ncols = len(work[0]) if nrows else 0
    if any(len(r) != ncols for r in work):
        raise DimensionMismatch("ragged rows")
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        pr = None
        for i in range(r, nrows):
            if not work[i][c].is_zero():
                pr = i
                break
        if pr is None:
            continue
        work[r], work[pr] = work[pr], work[r]
        inv = work[r][c].inverse()
        work[r] = [e * inv for e in work[r]]
        for i in range(nrows):
            if i != r and not work[i][c].is_zero():
                f = work[i][c]
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
    return work, r, pivots


def nullspace(rows, ncols: int):
    """Basis of the right kernel of the matrix whose rows are given."""
    if not rows:
        red, pivots = [], []
    else:
        red, _, pivots = rref(rows)
    pivot_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_set:
            continue
        vec = [CYC_ZERO] * ncols
        vec[f] = CYC_ONE
        for i, p in enumerate(pivots):
            vec[p] = -red[i][f]
        basis.append(vec)
    return basis


def linear_solve(rows, rhs):
    """One exact solution of (rows) * x = rhs, or None when inconsistent.

    Free variables are set to zero, which makes the answer deterministic.
    """
    if not rows:
        return [] if all(_as_cyc(b).is_zero() for b in rhs) else None
    ncols = len(rows[0])
    aug = [list(r) + [rhs[i]] for i, r in enumerate(rows)]
    red, _, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [CYC_ZERO] * ncols
    for i, p in enumerate(pivots):
        x[p] = red[i][ncols]
    return x


class Subspace:
    """Subspace of row vectors in canonical form.

    The stored basis is the reduced row echelon form of any spanning set, so
    two subspaces are equal exactly when their bases match entry by entry.
    """

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim: int, basis, pivots):
        self.ambient_dim = ambient_dim
        self.basis = tuple(tuple(row) for row in basis)
        self.pivots = tuple(pivots)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, vec) -> bool:
        vec = [_as_cyc(e) for e in vec]
        if len(vec) != self.ambient_dim:
            raise DimensionMismatch(
                f"vector of length {len(vec)} in ambient dimension {self.ambient_dim}"
            )
        for row, p in zip(self.basis, self.pivots):
            c = vec[p]
            if not c.is_zero():
                vec = [a - c * b for a, b in zip(vec, row)]
        return all(e.is_zero() for e in vec)

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(row) for row in other.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return subspace_eq(self, other)

    def __repr__(self):
        return f"Subspace(dim {self.rank} of {self.ambient_dim})"


def span(vectors, ambient_dim: int) -> Subspace:
    """Canonical subspace spanned by the given row vectors."""
    vecs = []
    for v in vectors:
        v = [_as_cyc(e) for e in v]
        if len(v) != ambient_dim:
            raise DimensionMismatch(
                f"vector of length {len(v)} in ambient dimension {ambient_dim}"
            )
        vecs.append(v)
    if not vecs:
        return Subspace(ambient_dim, [], [])
    red, rank, pivots = rref(vecs)
    return Subspace(ambient_dim, red[:rank], pivots)


def span_mats(mats, ambient_dim: int | None = None) -> Subspace:
    """Span of flattened matrices."""
    mats = list(mats)
    if ambient_dim is None:
        if not mats:
            raise DimensionMismatch("cannot infer ambient dimension from no matrices")
        ambient_dim = mats[0].rows * mats[0].cols
    return span([m.flatten() for m in mats], ambient_dim)


def subspace_eq(a: Subspace, b: Subspace) -> bool:
    if a.ambient_dim != b.ambient_dim or a.rank != b.rank:
        return False
    if a.pivots != b.pivots:
        return False
    return all(
        x == y for ra, rb in zip(a.basis, b.basis) for x, y in zip(ra, rb)
    )


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch("ambient dimensions differ")
    return span(list(a.basis) + list(b.basis), a.ambient_dim)


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch("ambient dimensions differ")
    if a.rank == 0 or b.rank == 0:
        return span([], a.ambient_dim)
    stacked = list(a.basis) + list(b.basis)
    transposed = [[stacked[j][i] for j in range(len(stacked))] for i in range(a.ambient_dim)]
    combos = nullspace(transposed, len(stacked))
    vecs = []
    for x in combos:
        v = [CYC_ZERO] * a.ambient_dim
        for coeff, row in zip(x[: a.rank], a.basis):
            if not coeff.is_zero():
                v = [acc + coeff * e for acc, e in zip(v, row)]
        vecs.append(v)
    return span(vecs, a.ambient_dim)


def zero_subspace(ambient_dim: int) -> Subspace:
    return Subspace(ambient_dim, [], [])
