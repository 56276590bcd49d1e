import random
from fractions import Fraction as F

import pytest

from tropgeo.trop_core import Support, TropPoly, curve
from tropgeo.residual import PROVABLY_EMPTY, ResidualField, residual_terms
from tropgeo.construction import (
    CERT_ALWAYS,
    CERT_NEVER,
    CERT_UNDECIDABLE,
    Construction,
    CurveThrough,
    IncidenceStructure,
    Intersect,
    complete_to_construction,
    construction_to_incidence,
    is_admissible,
    lift_acyclic,
    lift_conditions,
    realize,
    subconstruction_to,
    validate_construction,
    verify_witness,
)
from tropgeo.theorems import (
    abc_double_path_construction,
    fano_statement,
    four_lines_construction,
    pappus_statement,
    vector_addition_construction,
    weak_pascal_statement,
)

LINE = Support.named("line")
F10007 = ResidualField(10007)


# ---------------------------------------------------------------------------
# validation


def test_pappus_hypothesis_is_a_valid_exact_construction():
    d = validate_construction(pappus_statement().hypothesis)
    assert d.ok and d.exact


def test_point_with_three_predecessors_rejected():
    g = IncidenceStructure(
        points=["p"],
        blocks=[("a", LINE), ("b", LINE), ("c", LINE)],
        flags=[("p", "a"), ("p", "b"), ("p", "c")],
        orientation={("p", "a"): "bp", ("p", "b"): "bp", ("p", "c"): "bp"},
    )
    d = validate_construction(g)
    assert not d.ok
    assert any("3 direct predecessors" in e for e in d.errors)


def test_desargues_needs_an_orientation():
    pts = ["A", "B", "C", "A'", "B'", "C'", "P", "Q", "R", "O"]
    blocks = ["AA'O", "BB'O", "CC'O", "ABP", "A'B'P", "ACQ", "A'C'Q", "BCR", "B'C'R", "PQR"]
    flags = []
    for b in blocks:
        # block names encode their three points
        members = []
        rest = b
        for p in sorted(pts, key=len, reverse=True):
            while p in rest:
                members.append(p)
                rest = rest.replace(p, "", 1)
        for p in members:
            flags.append((p, b))
    g = IncidenceStructure(points=pts, blocks=[(b, LINE) for b in blocks], flags=flags)
    assert not g.is_acyclic()  # plenty of cycles in the Levi graph
    with pytest.raises(ValueError):
        validate_construction(g)


def test_oriented_cycle_is_reported():
    g = IncidenceStructure(
        points=["p"],
        blocks=[("a", LINE)],
        flags=[("p", "a")],
        orientation={("p", "a"): "pb"},
    )
    g2 = IncidenceStructure(
        points=["p"],
        blocks=[("a", LINE)],
        flags=[("p", "a"), ("p", "a")],
        orientation={("p", "a"): "pb"},
    )
    assert validate_construction(g).ok


# ---------------------------------------------------------------------------
# completion


def test_complete_single_predecessor_point_adds_a_line():
    g = IncidenceStructure(
        points=["q"], blocks=[("C", LINE)], flags=[("q", "C")],
        orientation={("q", "C"): "bp"},
    )
    c = complete_to_construction(g)
    assert len(c.input_curves) == 2  # C plus one auxiliary line
    assert validate_construction(c).exact
    assert isinstance(c.steps[0], Intersect) and "q" in c.steps[0].names


def test_complete_is_idempotent_on_exact_constructions():
    pp = pappus_statement().hypothesis
    c = complete_to_construction(construction_to_incidence(pp))
    assert validate_construction(c).exact
    assert sorted(n for s in c.steps for n in s.new_nodes) == sorted(
        n for s in pp.steps for n in s.new_nodes
    )
    assert not [n for n in c.input_points if n.startswith("_aux")]


def test_complete_pads_curve_steps_with_input_points():
    g = IncidenceStructure(
        points=["q"], blocks=[("K", Support.named("conic"))],
        flags=[("q", "K")], orientation={("q", "K"): "pb"},
    )
    c = complete_to_construction(g)
    assert validate_construction(c).exact
    step = c.steps[0]
    assert isinstance(step, CurveThrough) and len(step.through) == 5


# ---------------------------------------------------------------------------
# admissibility


def test_fano_and_pappus_are_admissible():
    assert is_admissible(fano_statement().hypothesis)[0]
    assert is_admissible(pappus_statement().hypothesis)[0]


def test_depth_one_constructions_are_admissible():
    c = Construction(input_points=["a", "b"])
    c.steps.append(CurveThrough(name="l", support=LINE, through=["a", "b"]))
    assert is_admissible(c)[0]


def test_double_path_witness():
    ok, wit = is_admissible(abc_double_path_construction())
    assert not ok
    assert wit.source == "a" and wit.target == "p"
    assert len(wit.paths) == 2 and wit.paths[0] != wit.paths[1]


def test_vector_addition_not_admissible():
    ok, wit = is_admissible(vector_addition_construction())
    assert not ok and wit is not None


# ---------------------------------------------------------------------------
# realization


def test_abc_realization_gives_p_ne_a():
    c = abc_double_path_construction()
    r = realize(c, {"a": (0, 0), "b": (-2, 1), "c": (-1, 3)})
    assert r.values["p"] == (F(0), F(1))
    assert r.values["p"] != r.values["a"]


def test_all_degenerate_input_realizes_at_the_origin():
    c = four_lines_construction()
    r = realize(c, {n: (0, 0) for n in c.input_points})
    for s in c.steps:
        if isinstance(s, Intersect):
            for q in s.names:
                assert r.values[q] == (F(0), F(0))
        else:
            assert all(v == 0 for v in r.values[s.name].coeffs)


def _ray_of_point(line_poly: TropPoly, p):
    """Which ray direction of a tropical line contains the point."""
    cx = curve(line_poly)
    for e in cx.edges:
        if e.base == tuple(p):
            return "vertex"
    for e in cx.edges:
        d = e.dir
        b = e.base
        t = None
        if d[0] and (p[0] - b[0]) % d[0] == 0:
            t = F(p[0] - b[0], d[0])
        elif d[1]:
            t = F(p[1] - b[1], d[1])
        if t is not None and t > 0:
            if (b[0] + t * d[0], b[1] + t * d[1]) == tuple(p):
                return d
    return None


def test_most_degenerate_input_is_liftable():
    # every node at the origin, all curves all-zero: the construction is
    # still realizable algebraically with all elements of order zero
    c = four_lines_construction()
    r = realize(c, {n: (0, 0) for n in c.input_points})
    rep = lift_conditions(c, r, mode="numeric", field=F10007, seed=77, trials=6)
    assert rep.successes and rep.successes >= 4
    assert verify_witness(c, r, rep.witness_jets) == []


def test_four_lines_always_share_a_ray_direction():
    c = four_lines_construction()
    rng = random.Random(123)
    for _ in range(30):
        inputs = {n: (F(rng.randint(-9, 9)), F(rng.randint(-9, 9))) for n in c.input_points}
        r = realize(c, inputs)
        a = r.values["a"]
        dirs = []
        for nm in ("l1", "l2", "l3", "l4"):
            d = _ray_of_point(r.values[nm], a)
            assert d is not None
            dirs.append(d)
        vertex_hits = [d for d in dirs if d == "vertex"]
        ray_dirs = [d for d in dirs if d != "vertex"]
        assert vertex_hits or len(set(ray_dirs)) < len(ray_dirs)


# ---------------------------------------------------------------------------
# lifting


def test_abc_symbolic_lift_is_provably_empty():
    c = abc_double_path_construction()
    r = realize(c, {"a": (0, 0), "b": (-2, 1), "c": (-1, 3)})
    rep = lift_conditions(c, r, mode="symbolic")
    assert rep.verdict == PROVABLY_EMPTY
    final = rep.steps[-1]
    assert final.certificate == CERT_NEVER
    # the torus condition on the second coordinate is the zero polynomial
    zero_origins = [o for o, v in final.conditions if not v]
    assert any("torus y" in o for o in zero_origins)


def test_transversal_line_intersection_is_always_compatible():
    # a vertex-free edge-edge crossing: every vertex condition of every
    # resultant is a monomial
    c = Construction(input_curves=[("f", LINE), ("g", LINE)])
    c.steps.append(Intersect(names=["p"], curves=("f", "g")))
    r = realize(c, {
        "f": TropPoly.parse("0x+0y+0"),
        "g": TropPoly.parse("(-10)x+0y+(-4)"),
    })
    assert r.values["p"] == (F(0), F(-4))
    rep = lift_conditions(c, r, mode="numeric", field=F10007, seed=1, trials=4)
    assert rep.steps[0].certificate == CERT_ALWAYS
    assert rep.steps[0].fixed


def test_fano_pappus_numeric_lift_with_sound_witnesses():
    rng = random.Random(55)
    for stmt in (fano_statement(), pappus_statement()):
        c = stmt.hypothesis
        good = 0
        for t in range(10):
            inputs = {n: (F(rng.randint(-8, 8)), F(rng.randint(-8, 8)))
                      for n in c.input_points}
            r = realize(c, inputs)
            rep = lift_conditions(c, r, mode="numeric", field=F10007, seed=100 + t, trials=3)
            if rep.witness_jets is not None:
                assert verify_witness(c, r, rep.witness_jets) == []
                good += 1
        assert good >= 9


def test_vector_addition_certificates():
    c = vector_addition_construction()
    r = realize(c, {"a": (0, 0), "b": (-1, -1), "c": (-2, -2), "q": (2, -1)})
    assert r.values["z"] == (F(0), F(0))
    rep = lift_conditions(c, r, mode="numeric", field=F10007, seed=11, trials=4)
    final = [s for s in rep.steps if "l9" in s.nodes][0]
    assert final.certificate == CERT_UNDECIDABLE

    sub = subconstruction_to(c, "z")
    rz = realize(sub, {"a": (0, 0), "b": (-1, -1), "c": (-2, -2), "q": (2, -1)})
    repz = lift_conditions(sub, rz, mode="numeric", field=F10007, seed=11, trials=6)
    assert repz.successes and repz.successes >= 5


def test_weak_pascal_general_position_instance_lifts():
    # the almost-admissible case: when the double-path point pairs are in
    # general position the numeric lift finds a witness
    stmt = weak_pascal_statement()
    inputs = {
        "Z": TropPoly.parse("3y+5+3y^2+0x^2+4x+0xy"),
        "L1": TropPoly.parse("1y+0x+0"),
        "L2": TropPoly.parse("0y+0x+2"),
        "L3": TropPoly.parse("(9/2)y+0x+3"),
    }
    from tropgeo.construction import labeling_choices
    from tropgeo.genpos import in_general_position

    r0 = realize(stmt.hypothesis, inputs)
    for lab in labeling_choices(stmt.hypothesis, r0):
        r = realize(stmt.hypothesis, inputs, labeling=lab)
        pre = all(
            in_general_position(r.values[cv], [r.values[p] for p in pts])[0]
            for pts, cv in stmt.genpos_pairs
        )
        if not pre:
            continue
        rep = lift_conditions(stmt.hypothesis, r, mode="numeric", field=F10007,
                              seed=5, trials=40)
        assert rep.successes
        return
    pytest.fail("no labeling satisfied the general position precondition")


# ---------------------------------------------------------------------------
# acyclic lifting


def test_lift_acyclic_point_on_line():
    g = IncidenceStructure(points=["p"], blocks=[("C", LINE)], flags=[("p", "C")])
    Cv = TropPoly.parse("1x+0y+1")
    jets = lift_acyclic(g, {"C": Cv, "p": (0, 1)}, F10007, seed=2)
    terms = residual_terms(jets["C"], (0, 1))
    px, py = jets["p"]
    val = sum((c * px.coeff**i * py.coeff**j for (i, j), c in terms.items()),
              F10007.zero)
    assert not val


def test_lift_acyclic_path_point_line_point_line():
    from tropgeo.stable_ops import stable_curve

    g = IncidenceStructure(
        points=["p", "q"],
        blocks=[("C", LINE), ("D", LINE)],
        flags=[("p", "C"), ("p", "D"), ("q", "D")],
    )
    Cv = TropPoly.parse("1x+0y+1")
    Dv = stable_curve(LINE, [(0, 1), (4, 4)])
    real = {"C": Cv, "p": (0, 1), "D": Dv, "q": (4, 4)}
    jets = lift_acyclic(g, real, F10007, seed=9)
    for pt, blk in g.flags:
        terms = residual_terms(jets[blk], real[pt])
        px, py = jets[pt]
        val = sum((c * px.coeff**i * py.coeff**j for (i, j), c in terms.items()),
                  F10007.zero)
        assert not val


def test_lift_acyclic_empty_structure():
    g = IncidenceStructure(points=[], blocks=[], flags=[])
    assert lift_acyclic(g, {}, F10007) == {}


def test_lift_acyclic_rejects_cycles():
    g = IncidenceStructure(
        points=["p", "q"],
        blocks=[("C", LINE), ("D", LINE)],
        flags=[("p", "C"), ("p", "D"), ("q", "C"), ("q", "D")],
    )
    with pytest.raises(ValueError):
        lift_acyclic(g, {}, F10007)
