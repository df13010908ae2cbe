"""Finite abelian groups, their characters, subgroups, and quotients.

Groups are kept in the factor order the caller gave; nothing is silently
rewritten into invariant-factor form except quotients, which come out of a
Smith normal form computation and cannot preserve the input order anyway.
Everything here assumes tiny groups (a few hundred elements at most) and
materializes element lists freely.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd, lcm, prod

from .cyclo import CycNum, zeta
from .errors import GroupMismatch, InvalidGroup


@dataclass(frozen=True)
class FinAbGroup:
    """Direct product of cyclic groups of the given orders."""

    factors: tuple[int, ...]

    @property
    def order(self) -> int:
        return prod(self.factors) if self.factors else 1

    @property
    def exponent(self) -> int:
        return lcm(*self.factors) if self.factors else 1

    def identity(self) -> "GroupElem":
        return GroupElem(self, (0,) * len(self.factors))

    def element(self, exponents) -> "GroupElem":
        return GroupElem(self, tuple(exponents))

    def elements(self) -> list["GroupElem"]:
        return [
            GroupElem(self, exps)
            for exps in itertools.product(*(range(n) for n in self.factors))
        ]

    def trivial_character(self) -> "Character":
        return Character(self, (0,) * len(self.factors))

    def character(self, exponents) -> "Character":
        return Character(self, tuple(exponents))

    def __repr__(self):
        if not self.factors:
            return "FinAbGroup(trivial)"
        return "FinAbGroup(" + " x ".join(f"Z{n}" for n in self.factors) + ")"


def make_group(factors) -> FinAbGroup:
    """Group with the given cyclic factor orders; the empty list is the trivial group."""
    factors = tuple(factors)
    for n in factors:
        if not isinstance(n, int) or isinstance(n, bool) or n < 1:
            raise InvalidGroup(f"factor orders must be positive integers, got {n!r}")
    return FinAbGroup(factors)


def _check_same_group(a, b):
    if a.group != b.group:
        raise GroupMismatch(f"{a!r} and {b!r} live in different groups")


def _normalize_exponents(group: FinAbGroup, exponents: tuple[int, ...]) -> tuple[int, ...]:
    if len(exponents) != len(group.factors):
        raise InvalidGroup(
            f"expected {len(group.factors)} exponents, got {len(exponents)}"
        )
    return tuple(e % n for e, n in zip(exponents, group.factors))


@dataclass(frozen=True)
class GroupElem:
    """Element written as exponents against the group's cyclic factors."""

    group: FinAbGroup
    exponents: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "exponents", _normalize_exponents(self.group, tuple(self.exponents))
        )

    def __mul__(self, other: "GroupElem") -> "GroupElem":
        if not isinstance(other, GroupElem):
            return NotImplemented
        _check_same_group(self, other)
        return GroupElem(
            self.group, tuple(a + b for a, b in zip(self.exponents, other.exponents))
        )

    def inverse(self) -> "GroupElem":
        return GroupElem(self.group, tuple(-e for e in self.exponents))

    def __pow__(self, k: int) -> "GroupElem":
        return GroupElem(self.group, tuple(e * k for e in self.exponents))

    def order(self) -> int:
        out = 1
        for e, n in zip(self.exponents, self.group.factors):
            if e:
                out = lcm(out, n // gcd(e, n))
        return out

    def is_identity(self) -> bool:
        return not any(self.exponents)

    def __repr__(self):
        return f"g{self.exponents}"


@dataclass(frozen=True)
class Character:
    """Character of the group, stored as exponents against the dual generators.

    The j-th dual generator sends the j-th group generator to a fixed
    primitive root of unity of that factor's order and every other generator
    to 1.  Values land in the cyclotomic field whose conductor is the group
    exponent.
    """

    group: FinAbGroup
    exponents: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "exponents", _normalize_exponents(self.group, tuple(self.exponents))
        )

    def value_exponent(self, g: GroupElem) -> int:
        """k with value(g) equal to the group-exponent root of unity to the k."""
        _check_same_group(self, g)
        big = self.group.exponent
        total = 0
        for k, e, n in zip(self.exponents, g.exponents, self.group.factors):
            total += (big // n) * k * e
        return total % big

    def __call__(self, g: GroupElem) -> CycNum:
        return zeta(self.group.exponent) ** self.value_exponent(g)

    def __mul__(self, other: "Character") -> "Character":
        if not isinstance(other, Character):
            return NotImplemented
        _check_same_group(self, other)
        return Character(
            self.group, tuple(a + b for a, b in zip(self.exponents, other.exponents))
        )

    def inverse(self) -> "Character":
        return Character(self.group, tuple(-e for e in self.exponents))

    def __pow__(self, k: int) -> "Character":
        return Character(self.group, tuple(e * k for e in self.exponents))

    def order(self) -> int:
        out = 1
        for e, n in zip(self.exponents, self.group.factors):
            if e:
                out = lcm(out, n // gcd(e, n))
        return out

    def is_trivial(self) -> bool:
        return not any(self.exponents)

    def __repr__(self):
        return f"chi{self.exponents}"


def char_eval(chi: Character, g: GroupElem) -> CycNum:
    """Value of the character at the element, as an exact root of unity."""
    return chi(g)


def dual_group(group: FinAbGroup) -> list[Character]:
    """All characters, trivial first, in lexicographic exponent order."""
    return [
        Character(group, exps)
        for exps in itertools.product(*(range(n) for n in group.factors))
    ]


class Subgroup:
    """Subgroup given by generators, with the element list materialized.

    Works for subgroups of a group (members are GroupElem) and for subgroups
    of its character group (members are Character); both carry the same
    componentwise arithmetic.
    """

    def __init__(self, group: FinAbGroup, generators, members):
        self.group = group
        self.generators = tuple(generators)
        self.members = tuple(sorted(members, key=lambda m: m.exponents))
        self._member_set = frozenset(self.members)

    @property
    def order(self) -> int:
        return len(self.members)

    def __contains__(self, item) -> bool:
        return item in self._member_set

    def __iter__(self):
        return iter(self.members)

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.group == other.group and self._member_set == other._member_set

    def __hash__(self):
        return hash((self.group, self._member_set))

    def __repr__(self):
        return f"Subgroup(order {self.order} of {self.group!r})"


def _closure(group: FinAbGroup, identity, gens):
    seen = {identity}
    frontier = [identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def subgroup_generated(generators, group: FinAbGroup | None = None) -> Subgroup:
    """Smallest subgroup containing the generators.

    Generators may be elements or characters; pass the group explicitly when
    the generator list is empty.
    """
    generators = list(generators)
    if not generators:
        if group is None:
            raise InvalidGroup("empty generating set needs an explicit group")
        return Subgroup(group, (), [group.identity()])
    g0 = generators[0]
    if group is None:
        group = g0.group
    for g in generators:
        if g.group != group:
            raise GroupMismatch("generators from different groups")
    if isinstance(g0, Character):
        identity = group.trivial_character()
    else:
        identity = group.identity()
    return Subgroup(group, generators, _closure(group, identity, generators))


def annihilator(members, group: FinAbGroup) -> Subgroup:
    """Everything on the dual side that evaluates to 1 on all given members.

    Characters in, elements out; elements in, characters out.  The input may
    be a Subgroup or any iterable, including an arbitrary subset or nothing.
    """
    members = list(members)
    big = group.exponent
    if members and isinstance(members[0], Character):
        for chi in members:
            if chi.group != group:
                raise GroupMismatch("character of a different group")
        out = [
            g
            for g in group.elements()
            if all(chi.value_exponent(g) == 0 for chi in members)
        ]
        return Subgroup(group, tuple(out), out)
    for g in members:
        if g.group != group:
            raise GroupMismatch("element of a different group")
    chis = [
        chi
        for chi in dual_group(group)
        if all(chi.value_exponent(g) == 0 for g in members)
    ]
    return Subgroup(group, tuple(chis), chis)


def all_subgroups(group: FinAbGroup) -> list[Subgroup]:
    """Every subgroup, found by closing generator sets breadth first."""
    trivial = subgroup_generated([], group)
    found = {trivial._member_set: trivial}
    frontier = [trivial]
    elements = group.elements()
    while frontier:
        nxt = []
        for sub in frontier:
            for g in elements:
                if g in sub:
                    continue
                bigger = subgroup_generated(list(sub.generators) + [g], group)
                if bigger._member_set not in found:
                    found[bigger._member_set] = bigger
                    nxt.append(bigger)
        frontier = nxt
    return sorted(found.values(), key=lambda s: (s.order, [m.exponents for m in s.members]))


# ---------------------------------------------------------------------------
# quotients via Smith normal form of the relation lattice


def _smith_diagonal_with_colops(rows: list[list[int]], ncols: int):
    """Diagonal of the Smith normal form plus the accumulated column operations.

    Returns (diag, V) where V is unimodular and right-multiplication by V
    carries the row lattice of the input onto the diagonal lattice.  Row
    operations are applied but not tracked; only column operations matter for
    reading off cosets.
    """
    a = [row[:] for row in rows]
    nrows = len(a)
    v = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_col(src, dst, k):
        # dst += k * src
        for row in a:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    def negate_col(i):
        for row in a:
            row[i] = -row[i]
        for row in v:
            row[i] = -row[i]

    t = 0
    limit = min(nrows, ncols)
    while t < limit:
        # locate a pivot of smallest absolute value for fewer growth steps
        pivot = None
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                val = abs(a[i][j])
                if val and (best is None or val < best):
                    best = val
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        a[t], a[pi] = a[pi], a[t]
        if pj != t:
            swap_cols(t, pj)
        # clear the pivot row and column by Euclidean steps
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, nrows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    if q:
                        a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        dirty = True
            for j in range(t + 1, ncols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    if q:
                        add_col(t, j, -q)
                    if a[t][j]:
                        swap_cols(t, j)
                        dirty = True
        if a[t][t] < 0:
            negate_col(t)
        # divisibility fix across the remaining block
        offender = None
        for i in range(t + 1, nrows):
            for j in range(t + 1, ncols):
                if a[i][j] % a[t][t]:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            a[t] = [x + y for x, y in zip(a[t], a[offender])]
            continue
        t += 1
    diag = [a[i][i] for i in range(limit)]
    return diag, v


def quotient(group: FinAbGroup, sub: Subgroup):
    """Quotient group and the projection map, via the relation lattice.

    Returns (Q, project) where project sends each element of the group to its
    coset in Q.  Q is in invariant-factor form with trivial factors dropped;
    quotienting by the trivial subgroup returns the group itself with the
    identity projection so labels survive unchanged.
    """
    if sub.group != group:
        raise GroupMismatch("subgroup of a different group")
    if sub.order == 1:
        return group, lambda g: g
    if sub.order == group.order:
        trivial = make_group([])
        ident = trivial.identity()
        return trivial, lambda g: ident
    m = len(group.factors)
    rows = [[group.factors[i] if j == i else 0 for j in range(m)] for i in range(m)]
    for h in sub.members:
        rows.append(list(h.exponents))
    diag, v = _smith_diagonal_with_colops(rows, m)
    keep = [i for i, d in enumerate(diag) if d > 1]
    q = make_group([diag[i] for i in keep])

    def project(g: GroupElem, _v=v, _keep=keep, _diag=diag, _q=q) -> GroupElem:
        if g.group != group:
            raise GroupMismatch("element of a different group")
        coords = [
            sum(g.exponents[i] * _v[i][j] for i in range(m)) for j in range(m)
        ]
        return GroupElem(_q, tuple(coords[i] % _diag[i] for i in _keep))

    return q, project
