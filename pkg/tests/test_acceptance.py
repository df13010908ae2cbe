"""Acceptance gate: one test per shipping criterion, exact arithmetic only.

Run with -v to get one pass/fail line per criterion.  Every expected value
here is either a frozen hand-checked table, an independent recomputation
(permutation oracles, counting formulas), or a byte-pinned golden file;
nothing is read back from the code under test.
"""

import itertools
import json
import os
import random
from fractions import Fraction

from matgrade.cli import main as cli_main
from matgrade.cyclo import Mat, span_mats, zeta
from matgrade.groups import (
    all_subgroups,
    annihilator,
    char_eval,
    dual_group,
    make_group,
    subgroup_generated,
)
from matgrade.invol import (
    elementary_involution_grading,
    involution_tensor,
    make_involution,
    pauli_involution_case,
    sym_skew_split,
    verify_involution_grading,
)
from matgrade.jsonio import parse_text, serialize
from matgrade.liegrad import (
    fine_outer,
    mixed_type2,
    recover_from_factor,
    type1_obstruction,
    type2,
    verify_lie,
)
from matgrade.matalg import (
    chi_action,
    clock_shift,
    coarsen,
    elementary_grading,
    epsilon_grading,
    homogeneous_projection,
    verify_assoc,
)

rng = random.Random(36919)

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


# ---------------------------------------------------------------------------
# criterion 1: the clock and shift pair satisfies the defining relations and
# generates a basis of the full matrix algebra


def _mat_pow(m, k):
    out = Mat.identity(m.rows)
    for _ in range(k):
        out = out * m
    return out


def test_c01_clock_shift_relations_and_rank():
    for n in (2, 3, 4, 6):
        cs = clock_shift(n)
        a, b, eps = cs.clock, cs.shift, zeta(n)
        assert a * b * a.inverse() == b.scale(eps)
        assert _mat_pow(a, n) == Mat.identity(n)
        assert _mat_pow(b, n) == Mat.identity(n)
        monomials = [_mat_pow(a, i) * _mat_pow(b, j) for i in range(n) for j in range(n)]
        assert span_mats(monomials, n * n).rank == n * n


# ---------------------------------------------------------------------------
# criterion 2: the root-of-unity grading is fine


def test_c02_epsilon_grading_is_fine():
    for n in range(2, 7):
        g = epsilon_grading(n)
        dims = dict((e.exponents, d) for e, d in g.dimensions())
        assert len(dims) == n * n
        assert set(dims.values()) == {1}
        assert verify_assoc(g).ok


# ---------------------------------------------------------------------------
# criterion 3: two-block elementary dimension count


def test_c03_elementary_split_dimensions():
    for n in range(1, 9):
        for k in range(n + 1):
            l = n - k
            group = make_group([2])
            tup = [group.element([0])] * k + [group.element([1])] * l
            g = elementary_grading(group, n, tup)
            dims = dict((e.exponents, d) for e, d in g.dimensions())
            want = {}
            if k * k + l * l:
                want[(0,)] = k * k + l * l
            if 2 * k * l:
                want[(1,)] = 2 * k * l
            assert dims == want, (n, k)


# ---------------------------------------------------------------------------
# criterion 4: the four signed 2x2 gradings against frozen tables


CASE_FORMS = {
    1: [[0, 1], [-1, 0]],
    2: [[0, 1], [1, 0]],
    3: [[1, 0], [0, 1]],
    4: [[1, 0], [0, -1]],
}
CASE_SIGNS = {
    1: (1, -1, -1, -1),
    2: (1, -1, 1, 1),
    3: (1, 1, 1, -1),
    4: (1, 1, -1, 1),
}
CASE_MINUS = {
    1: [[[-1, 0], [0, 1]], [[0, 1], [1, 0]], [[0, -1], [1, 0]]],
    2: [[[1, 0], [0, -1]]],
    3: [[[0, -1], [1, 0]]],
    4: [[[0, 1], [1, 0]]],
}
CASE_PLUS = {
    1: [[[1, 0], [0, 1]]],
    2: [[[1, 0], [0, 1]], [[0, 1], [0, 0]], [[0, 0], [1, 0]]],
    3: [[[1, 0], [0, 1]], [[0, 1], [1, 0]], [[1, 0], [0, -1]]],
    4: [[[1, 0], [0, 0]], [[0, 0], [0, 1]], [[0, 1], [-1, 0]]],
}
SIGN_ORDER = ((0, 0), (1, 0), (0, 1), (1, 1))


def test_c04_two_by_two_case_tables():
    for case in (1, 2, 3, 4):
        ig = pauli_involution_case(case)
        assert ig.involution.phi == Mat.from_rows(CASE_FORMS[case])
        for exps, want in zip(SIGN_ORDER, CASE_SIGNS[case]):
            assert ig.signs.sign(ig.grading.group.element(exps)) == want, (case, exps)
        full = span_mats(
            [Mat.unit(2, i, j) for i in range(2) for j in range(2)], 4
        )
        plus, minus = sym_skew_split(full, ig.involution)
        assert minus == span_mats([Mat.from_rows(r) for r in CASE_MINUS[case]], 4)
        assert plus == span_mats([Mat.from_rows(r) for r in CASE_PLUS[case]], 4)
        assert verify_involution_grading(ig).ok


# ---------------------------------------------------------------------------
# criterion 5: block shapes of the symmetric/skew split for both canonical
# form families, checked against an independent permutation-and-sign oracle


def _transpose_sigma(m, l):
    def sigma(i):
        if i < m:
            return i
        if i < m + l:
            return i + l
        return i - l

    return sigma


def test_c05_split_block_patterns():
    # symmetric family: identity block of size m plus l swapped pairs
    for n in range(1, 7):
        for l in range(n // 2 + 1):
            m = n - 2 * l
            rows = [[0] * n for _ in range(n)]
            for i in range(m):
                rows[i][i] = 1
            for j in range(l):
                rows[m + j][m + l + j] = 1
                rows[m + l + j][m + j] = 1
            inv = make_involution(Mat.from_rows(rows))
            assert inv.symkind == "symmetric"
            sigma = _transpose_sigma(m, l)
            full = span_mats([Mat.unit(n, i, j) for i in range(n) for j in range(n)], n * n)
            plus, minus = sym_skew_split(full, inv)
            assert plus.rank == n * (n + 1) // 2
            assert minus.rank == n * (n - 1) // 2
            for i in range(n):
                for j in range(n):
                    image = Mat.unit(n, sigma(j), sigma(i))
                    up = Mat.unit(n, i, j) + image
                    down = Mat.unit(n, i, j) - image
                    if not up.is_zero():
                        assert plus.contains(up.flatten()), (n, m, l, i, j)
                    if not down.is_zero():
                        assert minus.contains(down.flatten()), (n, m, l, i, j)

    # alternating family: paired halves with a sign flip across them
    for k in (1, 2, 3):
        n = 2 * k
        rows = [[0] * n for _ in range(n)]
        for j in range(k):
            rows[j][k + j] = 1
            rows[k + j][j] = -1
        inv = make_involution(Mat.from_rows(rows))
        assert inv.symkind == "skew"
        full = span_mats([Mat.unit(n, i, j) for i in range(n) for j in range(n)], n * n)
        plus, minus = sym_skew_split(full, inv)
        assert plus.rank == n * (n - 1) // 2
        assert minus.rank == n * (n + 1) // 2
        eps = lambda i: 1 if i < k else -1
        sigma = lambda i: (i + k) % n
        for i in range(n):
            for j in range(n):
                image = Mat.unit(n, sigma(j), sigma(i)).scale(eps(i) * eps(j))
                up = Mat.unit(n, i, j) + image
                down = Mat.unit(n, i, j) - image
                if not up.is_zero():
                    assert plus.contains(up.flatten()), (k, i, j)
                if not down.is_zero():
                    assert minus.contains(down.flatten()), (k, i, j)


# ---------------------------------------------------------------------------
# criterion 6: the tensor sign rule by direct matrix arithmetic


def test_c06_tensor_sign_rule():
    # one factor: the sign function is the star eigenvalue on each monomial
    for case in (1, 2, 3, 4):
        ig = pauli_involution_case(case)
        for t in ig.signs.elements():
            x_t = ig.signs.monomial(t)
            assert ig.involution.apply(x_t) == x_t.scale(ig.signs.sign(t))

    # two factors: star acts on the left factor and signs the right monomial
    for ca, cb in itertools.product((1, 2, 3, 4), repeat=2):
        a, b = pauli_involution_case(ca), pauli_involution_case(cb)
        combined = involution_tensor([a, b])
        for s in a.signs.elements():
            y = a.signs.monomial(s)
            y_star = a.involution.apply(y)
            for t in b.signs.elements():
                x_t = b.signs.monomial(t)
                lhs = combined.involution.apply(y.kron(x_t))
                rhs = (y_star.kron(x_t)).scale(b.signs.sign(t))
                assert lhs == rhs, (ca, cb, s.exponents, t.exponents)


# ---------------------------------------------------------------------------
# shared constructions for the outer-grading criteria


def _leading_embeds(group, k):
    rank = len(group.factors)
    out = []
    for i in range(k):
        out.append(
            lambda t, _i=i: group.element(
                (0,) * (2 * _i) + t.exponents + (0,) * (rank - 2 * _i - 2)
            )
        )
    return out


def _fine_entry(cases, group, h):
    """fine_outer output plus the signed tensor it was emitted from."""
    k = len(cases)
    embeds = _leading_embeds(group, k)
    ig = involution_tensor(
        [pauli_involution_case(c) for c in cases], group=group, embeddings=embeds
    )
    embed_all = lambda t: group.element(
        t.exponents + (0,) * (len(group.factors) - 2 * k)
    )
    lg = fine_outer(cases, group, h, embed_all)
    return lg, ig, h


def _mixed_entry_a():
    g = make_group([2, 2, 2])
    h = g.element([0, 0, 1])
    tup = [g.element([0, 0, 0]), g.element([0, 0, 1])]
    cases = [2]
    embed = lambda t: g.element(t.exponents + (0,))
    lg = mixed_type2(g, tup, "symplectic", cases, h, embed=embed)
    el = elementary_involution_grading(g, tup, "symplectic")
    ig = involution_tensor(
        [el, pauli_involution_case(2)],
        group=g,
        embeddings=[lambda x: x, embed],
    )
    return lg, ig, h


def _mixed_entry_b():
    g = make_group([2, 2, 2, 2])
    h = g.element([0, 0, 0, 1])
    tup = [g.element([0, 0, 0, 0]), g.element([0, 0, 1, 0])]
    cases = [2]
    embed = lambda t: g.element(t.exponents + (0, 0))
    lg = mixed_type2(g, tup, "transpose", cases, h, embed=embed)
    el = elementary_involution_grading(g, tup, "transpose")
    ig = involution_tensor(
        [el, pauli_involution_case(2)],
        group=g,
        embeddings=[lambda x: x, embed],
    )
    return lg, ig, h


def _outer_suite():
    entries = []
    # 2x2, marker in a fresh direction
    g3 = make_group([2, 2, 2])
    for case in (1, 2, 3, 4):
        entries.append(_fine_entry([case], g3, g3.element([0, 0, 1])))
    # 2x2, marker inside the fine support
    g2 = make_group([2, 2])
    entries.append(_fine_entry([3], g2, g2.element([1, 0])))
    # 4x4, marker in a fresh direction
    g5 = make_group([2, 2, 2, 2, 2])
    for pair in ((1, 3), (2, 4)):
        entries.append(_fine_entry(list(pair), g5, g5.element([0, 0, 0, 0, 1])))
    # 4x4, marker inside the fine support
    g4 = make_group([2, 2, 2, 2])
    entries.append(_fine_entry([1, 2], g4, g4.element([1, 1, 0, 0])))
    entries.append(_mixed_entry_a())
    entries.append(_mixed_entry_b())
    return entries


# ---------------------------------------------------------------------------
# criterion 7: outer gradings close under the bracket


def test_c07_type2_outputs_verify():
    # the four 2x2 cases, every order-two marker of their own group
    klein = make_group([2, 2])
    markers = [e for e in klein.elements() if e.order() == 2]
    for case in (1, 2, 3, 4):
        ig = pauli_involution_case(case)
        for h in markers:
            lg = type2(ig.grading, ig.involution, h)
            assert verify_lie(lg).ok, (case, h.exponents)

    # trivial elementary gradings with both involution flavors
    z2 = make_group([2])
    h = z2.element([1])
    for n in range(2, 6):
        ig = elementary_involution_grading(z2, [z2.identity()] * n, "transpose")
        assert verify_lie(type2(ig.grading, ig.involution, h)).ok, ("transpose", n)
    for n in (2, 4):
        ig = elementary_involution_grading(z2, [z2.identity()] * n, "symplectic")
        assert verify_lie(type2(ig.grading, ig.involution, h)).ok, ("symplectic", n)

    # two mixed 4x4 instances
    for lg, _, _ in (_mixed_entry_a(), _mixed_entry_b()):
        assert lg.n == 4
        assert verify_lie(lg).ok


# ---------------------------------------------------------------------------
# criterion 8: parity dimensions of the transpose outer grading


def test_c08_transpose_parity_dimensions():
    z2 = make_group([2])
    h = z2.element([1])
    for n in (3, 4, 5):
        ig = elementary_involution_grading(z2, [z2.identity()] * n, "transpose")
        lg = type2(ig.grading, ig.involution, h)
        dims = dict((e.exponents, d) for e, d in lg.dimensions())
        assert dims == {(0,): n * (n - 1) // 2, (1,): n * (n + 1) // 2 - 1}, n


# ---------------------------------------------------------------------------
# criterion 9: the parity obstruction singles out n = 2


def test_c09_obstruction_only_at_two():
    rep = type1_obstruction(2)
    assert rep.solvable and rep.split == (1, 1)
    for n in range(3, 13):
        assert not type1_obstruction(n).solvable, n


# ---------------------------------------------------------------------------
# criterion 10: quotient-and-recover reproduces every outer grading


def test_c10_recovery_roundtrips():
    for lg, ig, h in _outer_suite():
        group = lg.group
        sub = subgroup_generated([h])
        coarse = coarsen(lg, sub)
        phi = next(chi for chi in dual_group(group) if char_eval(chi, h) == -1)
        action = lambda x, _ig=ig, _phi=phi: -_ig.involution.apply(
            chi_action(_phi, x, _ig.grading)
        )
        back = recover_from_factor(coarse, action, group, sub, phi)
        assert back.support() == lg.support()
        assert back == lg


# ---------------------------------------------------------------------------
# criterion 11: emitters agree with the quotient construction


def test_c11_emitters_match_type2_of_tensor():
    for lg, ig, h in _outer_suite():
        assert lg == type2(ig.grading, ig.involution, h)


# ---------------------------------------------------------------------------
# criterion 12: annihilator duality and the invariance characterization


def _abelian_groups_up_to(order):
    def partitions(k):
        if k == 0:
            yield ()
            return
        for first in range(k, 0, -1):
            for rest in partitions(k - first):
                if not rest or first >= rest[0]:
                    yield (first,) + rest

    out = []
    for size in range(1, order + 1):
        shapes = [()]
        rem = size
        for p in (2, 3, 5, 7, 11, 13):
            k = 0
            while rem % p == 0:
                rem //= p
                k += 1
            if k:
                shapes = [
                    old + tuple(p**e for e in part)
                    for old in shapes
                    for part in partitions(k)
                ]
        assert rem == 1
        out.extend(make_group(list(f)) for f in shapes)
    return out


def _all_subgroups(group):
    found = {subgroup_generated([], group)}
    frontier = list(found)
    while frontier:
        nxt = []
        for sub in frontier:
            for x in group.elements():
                if x in sub:
                    continue
                bigger = subgroup_generated(list(sub) + [x])
                if bigger not in found:
                    found.add(bigger)
                    nxt.append(bigger)
        frontier = nxt
    return found


def test_c12_duality_and_invariance():
    groups = _abelian_groups_up_to(16)
    assert len(groups) == 25
    for group in groups:
        subs = _all_subgroups(group)
        assert subs == set(all_subgroups(group)), group.factors
        for lam in subs:
            perp = annihilator(lam, group)
            assert lam.order * perp.order == group.order, group.factors
    # spot checks that the subgroup walk is not degenerate
    assert len(_all_subgroups(make_group([4]))) == 3
    assert len(_all_subgroups(make_group([2, 2]))) == 5
    assert len(_all_subgroups(make_group([2, 2, 2]))) == 16

    # a subspace is a sum of homogeneous pieces exactly when the whole dual
    # group maps it to itself
    seen = {True: 0, False: 0}
    for n in (2, 3):
        grading = epsilon_grading(n)
        chars = dual_group(grading.group)
        basis_mats = [
            grading.basis_matrices(g)[0] for g in grading.support()
        ]
        for _ in range(50):
            r = rng.randint(1, n * n - 1)
            if rng.random() < 0.5:
                picks = rng.sample(basis_mats, r)
                mats = [m.scale(Fraction(rng.randint(1, 3))) for m in picks]
            else:
                mats = [
                    Mat(n, n, [Fraction(rng.randint(-2, 2)) for _ in range(n * n)])
                    for _ in range(r)
                ]
            w = span_mats(mats, n * n)
            if w.rank == 0:
                continue
            rows = [Mat.from_flat(n, n, row) for row in w.basis]
            graded = all(
                w.contains(homogeneous_projection(x, g, grading).flatten())
                for x in rows
                for g in grading.support()
            )
            invariant = all(
                w.contains(chi_action(chi, x, grading).flatten())
                for x in rows
                for chi in chars
            )
            assert graded == invariant
            seen[graded] += 1
    assert seen[True] >= 10 and seen[False] >= 10


# ---------------------------------------------------------------------------
# criterion 13: command-line golden files


GOLDEN_BUILDS = [
    ("epsilon_n2.json", ["build", "epsilon", "--n", "2"]),
    ("epsilon_n3.json", ["build", "epsilon", "--n", "3"]),
    ("elementary_z2.json", ["build", "elementary", "--group", "2", "--tuple", "0,0,1"]),
    ("elementary_z4.json", ["build", "elementary", "--group", "4", "--tuple", "0,1,3"]),
    ("pauli_case1.json", ["build", "pauli-case", "--case", "1"]),
    ("pauli_case3.json", ["build", "pauli-case", "--case", "3"]),
    (
        "invol_elementary_z4.json",
        ["build", "involution-elementary", "--group", "4", "--tuple", "0;1;3",
         "--flavor", "transpose", "--m", "1"],
    ),
    (
        "invol_tensor_13.json",
        ["build", "involution-tensor", "--in",
         os.path.join(FIXTURES, "pauli_case1.json"),
         os.path.join(FIXTURES, "pauli_case3.json")],
    ),
    ("type1_eps3.json", ["build", "type1", "--in", os.path.join(FIXTURES, "epsilon_n3.json")]),
    (
        "type2_z4.json",
        ["build", "type2", "--in", os.path.join(FIXTURES, "invol_elementary_z4.json"),
         "--marker", "2"],
    ),
]


def test_c13_cli_goldens(tmp_path, capsys):
    for name, argv in GOLDEN_BUILDS:
        golden = os.path.join(FIXTURES, name)
        with open(golden, "r", encoding="utf-8") as fh:
            want = fh.read()
        assert cli_main(argv) == 0, name
        assert capsys.readouterr().out == want, name
        assert serialize(parse_text(want)) == want, name
        assert cli_main(["verify", "--in", golden]) == 0, name
        capsys.readouterr()

    # corrupted fixtures must fail verification with a printed witness
    with open(os.path.join(FIXTURES, "epsilon_n2.json")) as fh:
        obj = json.load(fh)
    obj["components"][0]["element"]["exponents"] = [1, 0]
    obj["components"][2]["element"]["exponents"] = [0, 0]
    bad = tmp_path / "bad_assoc.json"
    bad.write_text(json.dumps(obj))
    assert cli_main(["verify", "--in", str(bad)]) == 1
    report = json.loads(capsys.readouterr().out)
    assert not report["ok"]
    assert report["violations"]
    assert all(v["code"] and v["message"] for v in report["violations"])

    with open(os.path.join(FIXTURES, "type1_eps3.json")) as fh:
        obj = json.load(fh)
    del obj["components"][0]
    bad = tmp_path / "bad_lie.json"
    bad.write_text(json.dumps(obj))
    assert cli_main(["verify", "--in", str(bad)]) == 1
    report = json.loads(capsys.readouterr().out)
    assert any(v["code"] == "total-dimension" for v in report["violations"])
