import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from tropgeo.residual import (
    ConditionSet,
    FpElt,
    InformationLostError,
    Jet,
    NONEMPTY_DENSE,
    PROVABLY_EMPTY,
    ResidualField,
    RFrac,
    RPoly,
    RootsOutsideFieldError,
    density_test,
    residual_poly,
    residual_terms,
    rpoly_roots_univariate,
)


def test_field_parsing_and_elements():
    f = ResidualField.parse("fp:10007")
    assert f.finite and f.char == 10007
    q = ResidualField.parse("q")
    assert not q.finite and q.char == 0
    assert f.elt(F(1, 2)) * f.elt(2) == f.one
    with pytest.raises(ValueError):
        ResidualField(10)  # not prime


def test_fp_arithmetic():
    p = 7
    a, b = FpElt(3, p), FpElt(5, p)
    assert a + b == FpElt(1, p)
    assert a * b == FpElt(1, p)
    assert a - b == FpElt(5, p)
    assert a / b == a * FpElt(3, p)
    assert (a ** 3) == FpElt(27 % 7, p)
    assert not FpElt(0, p)


# ---------------------------------------------------------------------------
# jets


def test_jet_cancellation_gives_degenerate():
    j = Jet.principal(0, F(1)) + Jet.principal(0, F(-1))
    assert j.is_degenerate and j.order == 0


def test_jet_dominant_order_wins():
    j = Jet.principal(2, F(3)) + Jet.principal(0, F(5))
    assert j.is_principal and j.order == 2 and j.coeff == 3


def test_jet_multiplication_adds_orders():
    a = Jet.principal(1, RPoly.var("a"))
    b = Jet.principal(2, RPoly.var("b"))
    c = a * b
    assert c.order == 3 and c.coeff == RPoly.var("a") * RPoly.var("b")


def test_degenerate_absorption():
    d = Jet.degenerate(2)
    p = Jet.principal(3, F(1))
    assert (d + p).is_principal
    # a principal term exactly at the bound survives: the degenerate part
    # lives strictly below it
    q = Jet.principal(2, F(5))
    assert (d + q) == q
    r = Jet.principal(1, F(5))
    assert (d + r).is_degenerate and (d + r).order == 2
    assert (d * p).is_degenerate and (d * p).order == 5


def test_jet_zero_is_exact():
    z = Jet.zero()
    p = Jet.principal(4, F(2))
    assert z + p == p
    assert (z * p).is_zero
    assert (p - p).is_degenerate  # cancellation is not exact zero


jets = st.builds(
    lambda o, c: Jet.principal(F(o), F(c)),
    st.integers(-4, 4),
    st.integers(1, 9),
)


@given(jets, jets, jets)
@settings(max_examples=80)
def test_jet_ring_laws_without_degeneracy(a, b, c):
    # products of principal jets with positive coefficients never cancel
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    s1 = a * (b + c)
    s2 = a * b + a * c
    assert s1 == s2
    assert (a + b) + c == a + (b + c)


@given(jets, jets)
@settings(max_examples=60)
def test_tropicalization_is_a_homomorphism_on_orders(a, b):
    assert (a * b).order == a.order + b.order
    assert (a + b).order == max(a.order, b.order)


# ---------------------------------------------------------------------------
# residual polynomials


def test_residual_poly_unit_line():
    jets = {
        (1, 0): Jet.principal(0, F(1)),
        (0, 1): Jet.principal(0, F(1)),
        (0, 0): Jet.principal(0, F(1)),
    }
    p = residual_poly(jets, (0, 0))
    assert p == RPoly.var("x") + RPoly.var("y") + RPoly.const(1)


def test_residual_poly_symbolic_at_vertex_and_ray():
    jets = {
        (1, 0): Jet.principal(1, RPoly.var("ax")),
        (0, 1): Jet.principal(0, RPoly.var("ay")),
        (0, 0): Jet.principal(1, RPoly.var("a1")),
    }
    p = residual_poly(jets, (0, 1))
    expect = (
        RPoly.var("ax") * RPoly.var("x")
        + RPoly.var("ay") * RPoly.var("y")
        + RPoly.var("a1")
    )
    assert p == expect
    p = residual_poly(jets, (5, 6))  # on the (1,1) ray: only x and y attain
    assert p == RPoly.var("ax") * RPoly.var("x") + RPoly.var("ay") * RPoly.var("y")


def test_residual_poly_degenerate_raises():
    jets = {
        (1, 0): Jet.degenerate(1),
        (0, 0): Jet.principal(0, F(1)),
    }
    with pytest.raises(InformationLostError):
        residual_terms(jets, (2, 0))


def test_residual_poly_matches_jet_substitution():
    # Pc(f(x t^-b1, y t^-b2)) agrees with the argmax characterization
    rng = random.Random(17)
    from tropgeo.trop_core import Support

    for _ in range(30):
        sup = Support.degree(2)
        jets = {
            pt: Jet.principal(F(rng.randint(-5, 5)), F(rng.randint(1, 19)))
            for pt in sup.points
        }
        b = (F(rng.randint(-4, 4)), F(rng.randint(-4, 4)))
        terms = residual_terms(jets, b)
        # direct substitution: order of x^i y^j coefficient becomes
        # order + i*b1 + j*b2; the principal part keeps the max order
        shifted = {pt: Jet.principal(j.order + pt[0] * b[0] + pt[1] * b[1], j.coeff)
                   for pt, j in jets.items()}
        top = max(j.order for j in shifted.values())
        expect = {pt: j.coeff for pt, j in shifted.items() if j.order == top}
        assert terms == expect


# ---------------------------------------------------------------------------
# univariate roots


def test_roots_over_f5():
    p = RPoly.var("x") ** 2 - RPoly.const(1)
    roots = rpoly_roots_univariate(p, ResidualField(5))
    assert [(r.v, m) for r, m in roots] == [(1, 1), (4, 1)]


def test_roots_x_squared_over_q():
    p = RPoly.var("x") ** 2
    roots = rpoly_roots_univariate(p, ResidualField(None))
    assert roots == [(F(0), 2)]


def test_roots_quadratic_over_q():
    x = RPoly.var("x")
    p = x**2 - RPoly.const(F(9, 4))
    roots = rpoly_roots_univariate(p, ResidualField(None))
    assert roots == [(F(-3, 2), 1), (F(3, 2), 1)]
    with pytest.raises(RootsOutsideFieldError):
        rpoly_roots_univariate(x**2 - RPoly.const(2), ResidualField(None))


def test_roots_random_cubic_matches_exhaustive_scan():
    field = ResidualField(10007)
    rng = random.Random(4)
    x = RPoly.var("x")
    for _ in range(5):
        coeffs = [rng.randrange(10007) for _ in range(3)] + [rng.randrange(1, 10007)]
        p = RPoly()
        for e, cf in enumerate(coeffs):
            if cf:
                p = p + RPoly.const(FpElt(cf, 10007)) * x**e
        roots = {r.v: m for r, m in rpoly_roots_univariate(p, field)}
        found = {}
        for v in range(10007):
            acc = 0
            for e in range(3, -1, -1):
                acc = (acc * v + coeffs[e]) % 10007
            if acc == 0:
                found[v] = 1
        assert set(roots) == set(found)


def test_roots_with_multiplicity_over_fp():
    field = ResidualField(10007)
    x = RPoly.var("x")
    p = (x - RPoly.const(3)) ** 2 * (x - RPoly.const(5))
    roots = rpoly_roots_univariate(p, field)
    assert [(r.v, m) for r, m in roots] == [(3, 2), (5, 1)]


# ---------------------------------------------------------------------------
# condition sets and density tests


def test_density_empty_condition_list():
    cs = ConditionSet()
    verdict, witness = density_test(cs, ResidualField(10007), trials=3, seed=1)
    assert verdict == NONEMPTY_DENSE and witness == {}


def test_density_zero_condition_is_provably_empty():
    cs = ConditionSet()
    cs.add(RPoly(), "the zero polynomial")
    assert cs.provably_empty
    verdict, witness = density_test(cs, ResidualField(10007), trials=3, seed=1)
    assert verdict == PROVABLY_EMPTY and witness is None


def test_density_finds_witness():
    cs = ConditionSet()
    cs.add(RPoly.var("a") - RPoly.var("b"), "a != b")
    cs.add(RPoly.var("a") * RPoly.var("c") + RPoly.const(1), "ac != -1")
    verdict, witness = density_test(cs, ResidualField(10007), trials=20, seed=3)
    assert verdict == NONEMPTY_DENSE
    assert (witness["a"] - witness["b"]) and (witness["a"] * witness["c"] + 1)


def test_units_and_duplicates_are_pruned():
    cs = ConditionSet()
    cs.add(RPoly.const(5), "unit")
    cs.add(RPoly.var("a"), "first")
    cs.add(RPoly.var("a"), "again")
    assert len(cs.conditions) == 1


def test_schwartz_zippel_sanity():
    # empirical vanishing rate of a nonzero polynomial is at most d/q + 3 sigma
    field = ResidualField(101)
    rng = random.Random(8)
    poly = (RPoly.var("a") + RPoly.var("b")) * RPoly.var("a") + RPoly.const(3)
    d = poly.total_degree()
    trials = 4000
    hits = 0
    for t in range(trials):
        sample = {v: field.random_nonzero(random.Random(t * 31 + 7)) for v in poly.variables()}
        if not poly.evaluate(sample):
            hits += 1
    bound = d / 100 + 3 * (d / 100) ** 0.5 / trials**0.5 + 3 * (trials ** -0.5)
    assert hits / trials <= d / 100 + 0.05


def test_rfrac_zero_test_and_arithmetic():
    a = RFrac.of(RPoly.var("x")) / RFrac.of(RPoly.var("y"))
    b = RFrac.of(RPoly.var("x")) / RFrac.of(RPoly.var("y"))
    assert a == b
    assert not (a - b)
    with pytest.raises(ZeroDivisionError):
        a / (b - a)
