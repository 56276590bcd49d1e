import itertools
import random
from fractions import Fraction as F

import pytest

from tropgeo.residual import RPoly
from tropgeo.trop_linalg import (
    cramer_conditions,
    cramer_signed_solution,
    cramer_stable,
    pseudodet,
    trop_det,
)


def brute_det(a):
    n = len(a)
    best, perms = None, []
    for sigma in itertools.permutations(range(n)):
        v = sum(a[i][sigma[i]] for i in range(n))
        if best is None or v > best:
            best, perms = v, [sigma]
        elif v == best:
            perms.append(sigma)
    return best, sorted(perms)


def test_trop_det_examples():
    r = trop_det([[0, 0], [0, 0]])
    assert r.value == 0 and len(r.optimal_perms) == 2 and not r.regular
    r = trop_det([[1, 0], [0, 1]])
    assert r.value == 2 and r.regular

    # 2x2 minors of [[0,0,0],[-2,1,0]]: deleting the last column
    r = trop_det([[0, 0], [-2, 1]])
    assert r.value == 1 and r.regular


def test_trop_det_rejects_oversize_and_nonsquare():
    with pytest.raises(ValueError):
        trop_det([[0, 0, 0], [0, 0, 0]])
    with pytest.raises(ValueError):
        trop_det([[0] * 13] * 13)


def test_trop_det_brute_force_oracle():
    rng = random.Random(11)
    for _ in range(200):
        n = rng.randint(1, 5)
        a = [[F(rng.randint(-6, 6)) for _ in range(n)] for _ in range(n)]
        r = trop_det(a)
        value, perms = brute_det(a)
        assert r.value == value
        assert r.optimal_perms == perms
        assert r.regular == (len(perms) == 1)


def test_row_scaling_invariance():
    rng = random.Random(5)
    for _ in range(60):
        n = rng.randint(2, 4)
        a = [[F(rng.randint(-4, 4)) for _ in range(n)] for _ in range(n)]
        c = F(rng.randint(-5, 5))
        row = rng.randrange(n)
        b = [list(r) for r in a]
        b[row] = [x + c for x in b[row]]
        ra, rb = trop_det(a), trop_det(b)
        assert rb.value == ra.value + c
        assert rb.optimal_perms == ra.optimal_perms
        assert rb.regular == ra.regular


def test_cramer_stable_examples():
    sol = cramer_stable([[0, 0, 0], [0, 0, 0]])
    assert sol.values == (0, 0, 0)
    assert sol.regular == (False, False, False)

    sol = cramer_stable([[0, 0, 0], [-2, 1, 0]])
    assert sol.values == (1, 0, 1)

    sol = cramer_stable([[0, 0, 0], [-1, 3, 0]])
    assert sol.values == (3, 0, 3)


def test_pseudodet_regular_is_single_product():
    a = [[1, 0], [0, 1]]
    b = [[F(5), F(7)], [F(2), F(3)]]
    assert pseudodet(a, b) == 15  # the identity permutation only


def test_pseudodet_all_zero_weights_is_full_determinant():
    a = [[0, 0], [0, 0]]
    b = [[F(1), F(1)], [F(1), F(1)]]
    assert pseudodet(a, b) == 0
    bsym = [[RPoly.var("b11"), RPoly.var("b12")], [RPoly.var("b21"), RPoly.var("b22")]]
    d = pseudodet(a, bsym, zero=RPoly())
    assert d == RPoly.var("b11") * RPoly.var("b22") - RPoly.var("b12") * RPoly.var("b21")


def test_pseudodet_matches_signed_enumeration():
    rng = random.Random(3)
    for _ in range(80):
        n = rng.randint(2, 4)
        a = [[F(rng.randint(-3, 3)) for _ in range(n)] for _ in range(n)]
        b = [[F(rng.randint(-5, 5)) for _ in range(n)] for _ in range(n)]
        _, perms = brute_det(a)
        expected = F(0)
        for sigma in perms:
            sign = (-1) ** sum(
                1 for i in range(n) for j in range(i + 1, n) if sigma[i] > sigma[j]
            )
            prod = F(1)
            for i in range(n):
                prod *= b[i][sigma[i]]
            expected += sign * prod
        assert pseudodet(a, b) == expected


def test_cramer_conditions_all_ones():
    # the third illustrative matrix family: Cram_A(Pc) = (0, 0, 0)
    a = [[0, 0, 0], [0, 0, 0]]
    b = [[F(1)] * 3, [F(1)] * 3]
    assert [v for _, v in cramer_conditions(a, b)] == [0, 0, 0]


def test_cramer_conditions_regular_minors_are_monomials():
    a = [[0, 0, 0], [-2, 1, 0]]
    b = [[RPoly.var("x1"), RPoly.var("y1"), RPoly.const(1)],
         [RPoly.var("x2"), RPoly.var("y2"), RPoly.const(1)]]
    conds = cramer_conditions(a, b, zero=RPoly())
    for _, poly in conds:
        assert poly.is_monomial()


def test_cramer_signed_solution_solves_the_system():
    rng = random.Random(9)
    for _ in range(40):
        n = rng.randint(2, 3)
        a = [[F(rng.randint(-3, 3)) for _ in range(n + 1)] for _ in range(n)]
        b = [[F(rng.randint(1, 9)) for _ in range(n + 1)] for _ in range(n)]
        # restrict to weight matrices whose minors are all regular so the
        # masked determinants are honest determinants of b's minors
        sol_flags = cramer_stable(a)
        if not all(sol_flags.regular):
            continue
        x = cramer_signed_solution(a, b)
        xb = []
        for k in range(n + 1):
            cols = [c for c in range(n + 1) if c != k]
            minor = [[b[r][c] for c in cols] for r in range(n)]
            det = _plain_det(minor)
            xb.append(det if k % 2 == 0 else -det)
        for row in b:
            assert sum(row[k] * xb[k] for k in range(n + 1)) == 0


def _plain_det(m):
    n = len(m)
    out = F(0)
    for sigma in itertools.permutations(range(n)):
        sign = (-1) ** sum(
            1 for i in range(n) for j in range(i + 1, n) if sigma[i] > sigma[j]
        )
        prod = F(1)
        for i in range(n):
            prod *= m[i][sigma[i]]
        out += sign * prod
    return out


def test_lemma_disjoint_monomials_for_homogenized_points():
    """Curve-through-points with homogenized symbolic residual points:
    every Cramer entry is a nonzero multihomogeneous polynomial and no
    two entries share a monomial (line and conic supports)."""
    from tropgeo.trop_core import Support

    rng = random.Random(21)
    for sup_name, npts, deg in [("line", 2, 1), ("conic", 5, 2)]:
        sup = Support.named(sup_name)
        pts = [(rng.randint(-5, 5), rng.randint(-5, 5)) for _ in range(npts)]
        a = [[F(i[0] * q[0] + i[1] * q[1]) for i in sup.points] for q in pts]
        b = []
        for j in range(npts):
            row = []
            for i in sup.points:
                row.append(
                    RPoly.var(f"g{j}.1") ** i[0]
                    * RPoly.var(f"g{j}.2") ** i[1]
                    * RPoly.var(f"g{j}.3") ** (deg - i[0] - i[1])
                )
            b.append(row)
        conds = cramer_conditions(a, b, zero=RPoly())
        monomial_sets = []
        for _, s in conds:
            assert not s.is_zero
            monomial_sets.append(set(s.terms))
        for u in range(len(monomial_sets)):
            for v in range(u + 1, len(monomial_sets)):
                assert not (monomial_sets[u] & monomial_sets[v])
