"""Geometric constructions: incidence DAGs, realization, lifting.

A construction is a DAG program with two step kinds: the stable curve of
a fixed support through delta-1 points, and the stable intersection of
two curves (which creates all of its mixed-volume many points at once).

``lift_conditions`` runs the forward jet propagation that realizes the
residual sufficient-condition set: curve steps contribute
pseudodeterminant conditions, intersection steps contribute resultant
vertex conditions plus the local residual systems at each intersection
point, and auxiliary variables are eliminated by solving those local
systems directly.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field as dc_field

from .trop_core import Support, TropPoly, frac, mixed_volume
from .residual import (
    ConditionSet,
    InformationLostError,
    Jet,
    NONEMPTY_DENSE,
    LIKELY_EMPTY,
    PROVABLY_EMPTY,
    ResidualField,
    RFrac,
    RPoly,
    RootsOutsideFieldError,
    density_test,
    residual_terms,
    rpoly_roots_univariate,
)
from .stable_ops import (
    curve_step_jets,
    intersection_step_conditions,
    local_intersection_solve,
    solve_local_linear,
    stable_curve,
    stable_intersection,
)


class SymbolicModeUnsupported(ValueError):
    """Symbolic propagation hit a local system it cannot solve in closed form."""


# ---------------------------------------------------------------------------
# data model


@dataclass
class CurveThrough:
    name: str
    support: Support
    through: list

    @property
    def new_nodes(self):
        return [self.name]


@dataclass
class Intersect:
    names: list
    curves: tuple

    @property
    def new_nodes(self):
        return list(self.names)


@dataclass
class Construction:
    input_points: list = dc_field(default_factory=list)
    input_curves: list = dc_field(default_factory=list)  # (name, Support)
    steps: list = dc_field(default_factory=list)

    # -- graph views ---------------------------------------------------

    def node_names(self):
        out = list(self.input_points) + [n for n, _ in self.input_curves]
        for s in self.steps:
            out.extend(s.new_nodes)
        return out

    def kind(self, name):
        if name in self.input_points:
            return "point"
        if any(name == n for n, _ in self.input_curves):
            return "curve"
        for s in self.steps:
            if isinstance(s, CurveThrough) and s.name == name:
                return "curve"
            if isinstance(s, Intersect) and name in s.names:
                return "point"
        raise KeyError(name)

    def support_of(self, name):
        for n, sup in self.input_curves:
            if n == name:
                return sup
        for s in self.steps:
            if isinstance(s, CurveThrough) and s.name == name:
                return s.support
        raise KeyError(f"{name} is not a curve")

    def direct_preds(self):
        preds = {n: [] for n in self.node_names()}
        for s in self.steps:
            if isinstance(s, CurveThrough):
                preds[s.name] = list(s.through)
            else:
                for q in s.names:
                    preds[q] = list(s.curves)
        return preds

    def oriented_edges(self):
        out = []
        for s in self.steps:
            if isinstance(s, CurveThrough):
                out.extend((q, s.name) for q in s.through)
            else:
                for q in s.names:
                    out.extend(((s.curves[0], q), (s.curves[1], q)))
        return out

    def defining_step(self, name):
        for idx, s in enumerate(self.steps):
            if name in s.new_nodes:
                return idx, s
        return None, None

    def depths(self):
        preds = self.direct_preds()
        depth = {}

        def rec(n):
            if n in depth:
                return depth[n]
            ps = preds[n]
            depth[n] = 0 if not ps else 1 + max(rec(p) for p in ps)
            return depth[n]

        for n in self.node_names():
            rec(n)
        return depth

    def ancestors(self, name):
        preds = self.direct_preds()
        seen = set()
        stack = list(preds[name])
        while stack:
            n = stack.pop()
            if n in seen:
                continue
            seen.add(n)
            stack.extend(preds[n])
        return seen

    def flags(self):
        """Point-on-curve incidences (point, curve), from all steps."""
        out = []
        for s in self.steps:
            if isinstance(s, CurveThrough):
                out.extend((q, s.name) for q in s.through)
            else:
                for q in s.names:
                    out.extend(((q, s.curves[0]), (q, s.curves[1])))
        return out


@dataclass
class IncidenceStructure:
    points: list
    blocks: list  # (name, Support)
    flags: list   # (point, block)
    orientation: dict | None = None  # flag -> "pb" (point feeds block) or "bp"

    def support_of(self, name):
        for n, sup in self.blocks:
            if n == name:
                return sup
        raise KeyError(name)

    def levi_degree(self):
        deg = {n: 0 for n in self.points + [b for b, _ in self.blocks]}
        for p, b in self.flags:
            deg[p] += 1
            deg[b] += 1
        return deg

    def is_acyclic(self):
        """Undirected acyclicity of the Levi graph (union-find)."""
        parent = {}

        def find(x):
            while parent.setdefault(x, x) != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for p, b in self.flags:
            rp, rb = find(p), find(b)
            if rp == rb:
                return False
            parent[rp] = rb
        return True

    def oriented_preds(self):
        if self.orientation is None:
            raise ValueError("incidence structure carries no orientation")
        preds = {n: [] for n in self.points + [b for b, _ in self.blocks]}
        for fl in self.flags:
            p, b = fl
            if self.orientation[fl] == "pb":
                preds[b].append(p)
            else:
                preds[p].append(b)
        return preds


def construction_to_incidence(c: Construction) -> IncidenceStructure:
    points = [n for n in c.node_names() if c.kind(n) == "point"]
    blocks = [(n, c.support_of(n)) for n in c.node_names() if c.kind(n) == "curve"]
    flags = []
    orientation = {}
    for s in c.steps:
        if isinstance(s, CurveThrough):
            for q in s.through:
                flags.append((q, s.name))
                orientation[(q, s.name)] = "pb"
        else:
            for q in s.names:
                for cv in s.curves:
                    flags.append((q, cv))
                    orientation[(q, cv)] = "bp"
    return IncidenceStructure(points, blocks, flags, orientation)


# ---------------------------------------------------------------------------
# validation (the subgraph-of-a-construction conditions)


@dataclass
class Diagnostics:
    ok: bool
    exact: bool
    errors: list
    inexact: list


def _oriented_graph_of(obj):
    if isinstance(obj, Construction):
        g = construction_to_incidence(obj)
    else:
        g = obj
    preds = g.oriented_preds()
    kinds = {}
    for p in g.points:
        kinds[p] = "point"
    for b, _ in g.blocks:
        kinds[b] = "curve"
    sups = dict(g.blocks)
    return g, preds, kinds, sups


def validate_construction(obj) -> Diagnostics:
    """Check the five conditions for being (a subgraph of) a construction
    graph, and whether the equalities of an exact construction hold."""
    g, preds, kinds, sups = _oriented_graph_of(obj)
    errors, inexact = [], []

    # DAG check
    color = {}

    def dfs(n):
        color[n] = 1
        for p in preds[n]:
            if color.get(p) == 1:
                errors.append(f"oriented cycle through {n!r}")
                return False
            if color.get(p) != 2 and not dfs(p):
                return False
        color[n] = 2
        return True

    for n in preds:
        if color.get(n) != 2 and not dfs(n):
            break

    for n, k in kinds.items():
        ps = preds[n]
        if k == "point":
            if len(ps) > 2:
                errors.append(f"point {n!r} has {len(ps)} direct predecessors (max 2)")
            elif len(ps) == 1:
                inexact.append(f"point {n!r} has one predecessor (needs 0 or 2)")
        else:
            limit = sups[n].delta() - 1
            if len(ps) > limit:
                errors.append(
                    f"curve {n!r} has {len(ps)} direct predecessors (max {limit})"
                )
            elif 0 < len(ps) < limit:
                inexact.append(f"curve {n!r} has {len(ps)} of {limit} points")

    # common-successor bound per curve pair
    succs = {}
    for n, ps in preds.items():
        if kinds[n] == "point" and len(ps) == 2:
            key = tuple(sorted(ps))
            succs.setdefault(key, []).append(n)
    for (c1, c2), pts in succs.items():
        if kinds.get(c1) != "curve" or kinds.get(c2) != "curve":
            errors.append(f"point fed by non-curves {c1!r}, {c2!r}")
            continue
        m = mixed_volume(sups[c1], sups[c2])
        if len(pts) > m:
            errors.append(
                f"curves {c1!r},{c2!r} share {len(pts)} successors (mixed volume {m})"
            )
        elif len(pts) < m:
            inexact.append(f"curves {c1!r},{c2!r} share {len(pts)} of {m} points")

    # no repeated full curve steps
    seen = {}
    for n, k in kinds.items():
        if k == "curve" and preds[n] and len(preds[n]) == sups[n].delta() - 1:
            key = (sups[n], tuple(sorted(preds[n])))
            if key in seen:
                errors.append(f"curves {seen[key]!r} and {n!r} repeat the same step")
            seen[key] = n

    return Diagnostics(ok=not errors, exact=not errors and not inexact,
                       errors=errors, inexact=inexact)


def complete_to_construction(g: IncidenceStructure) -> Construction:
    """Embed an oriented incidence structure into an exact construction,
    adding auxiliary input points/lines where arities fall short."""
    diag = validate_construction(g)
    if not diag.ok:
        raise ValueError("not a construction subgraph: " + "; ".join(diag.errors))
    preds = g.oriented_preds()
    kinds = {p: "point" for p in g.points}
    kinds.update({b: "curve" for b, _ in g.blocks})
    sups = dict(g.blocks)

    depth = {}

    def rec(n):
        if n in depth:
            return depth[n]
        ps = preds[n]
        depth[n] = 0 if not ps else 1 + max(rec(p) for p in ps)
        return depth[n]

    for n in preds:
        rec(n)

    c = Construction()
    aux = itertools.count()
    line = Support.named("line")

    for n in sorted(preds, key=lambda n: (depth[n], n)):
        if not preds[n]:
            if kinds[n] == "point":
                c.input_points.append(n)
            else:
                c.input_curves.append((n, sups[n]))

    handled = set()
    # single-predecessor points first get an auxiliary input line
    point_pairs = {}
    for n in sorted(preds, key=lambda n: (depth[n], n)):
        if kinds[n] != "point" or not preds[n]:
            continue
        ps = list(preds[n])
        if len(ps) == 1:
            z = f"_auxline{next(aux)}"
            c.input_curves.append((z, line))
            kinds[z] = "curve"
            sups[z] = line
            ps.append(z)
        point_pairs.setdefault(tuple(sorted(ps)), []).append(n)

    ordered = sorted(preds, key=lambda n: (depth[n], n))
    done_pairs = set()
    for n in ordered:
        if n in handled or not preds[n]:
            continue
        if kinds[n] == "curve":
            pts = list(preds[n])
            need = sups[n].delta() - 1 - len(pts)
            for _ in range(need):
                q = f"_auxpt{next(aux)}"
                c.input_points.append(q)
                pts.append(q)
            c.steps.append(CurveThrough(name=n, support=sups[n], through=pts))
            handled.add(n)
        else:
            key = None
            for pair, members in point_pairs.items():
                if n in members:
                    key = pair
                    break
            if key in done_pairs:
                handled.add(n)
                continue
            done_pairs.add(key)
            cur = [p for p in key if kinds.get(p, "curve") == "curve"]
            members = point_pairs[key]
            m = mixed_volume(sups[cur[0]], sups[cur[1]])
            names = list(members)
            while len(names) < m:
                names.append(f"_auxint{next(aux)}")
            c.steps.append(Intersect(names=names, curves=(cur[0], cur[1])))
            handled.update(members)
    return c


# ---------------------------------------------------------------------------
# admissibility


@dataclass
class DoublePath:
    source: str
    target: str
    paths: tuple


def is_admissible(c: Construction):
    """At most one oriented path between any two nodes; returns
    (True, None) or (False, DoublePath witness)."""
    preds = c.direct_preds()
    nodes = c.node_names()
    order = sorted(nodes, key=lambda n: (c.depths()[n], n))
    counts = {n: {} for n in nodes}  # counts[b][a] = #paths a->b
    for b in order:
        cb = counts[b]
        for p in preds[b]:
            cb[p] = cb.get(p, 0) + 1
            for a, k in counts[p].items():
                cb[a] = cb.get(a, 0) + k
    offender = None
    for b in order:
        for a, k in counts[b].items():
            if k >= 2:
                offender = (a, b)
                break
        if offender:
            break
    if offender is None:
        return True, None
    a, b = offender
    paths = _two_paths(preds, a, b)
    return False, DoublePath(source=a, target=b, paths=tuple(paths))


def _two_paths(preds, a, b, want=2):
    out = []

    def dfs(n, path):
        if len(out) >= want:
            return
        if n == a:
            out.append(tuple(reversed(path + [n])))
            return
        for p in preds[n]:
            dfs(p, path + [n])

    dfs(b, [])
    return out[:want]


# ---------------------------------------------------------------------------
# tropical realization


@dataclass
class TropRealization:
    values: dict                 # node -> point tuple or TropPoly
    intersections: dict          # step index -> StableIntersection
    labelings: dict              # step index -> tuple permutation applied

    def point(self, name):
        return self.values[name]


def realize(c: Construction, inputs: dict, labeling=None) -> TropRealization:
    """Forward tropical evaluation; total, never fails.

    ``labeling`` optionally permutes intersection labels per step index;
    the default order is lexicographic by point, multiplicities repeated.
    """
    diag = validate_construction(c)
    if not diag.exact:
        raise ValueError(
            "realize needs an exact construction: " + "; ".join(diag.errors + diag.inexact)
        )
    vals = {}
    for n in c.input_points:
        p = inputs[n]
        vals[n] = (frac(p[0]), frac(p[1]))
    for n, sup in c.input_curves:
        f = inputs[n]
        if not isinstance(f, TropPoly):
            raise TypeError(f"input curve {n!r} needs a TropPoly")
        if f.support != sup:
            raise ValueError(f"input curve {n!r} has the wrong support")
        vals[n] = f
    inters = {}
    labelings = {}
    for idx, s in enumerate(c.steps):
        if isinstance(s, CurveThrough):
            vals[s.name] = stable_curve(s.support, [vals[q] for q in s.through])
        else:
            si = stable_intersection(vals[s.curves[0]], vals[s.curves[1]])
            labeled = si.as_labeled()
            perm = tuple(range(len(labeled)))
            if labeling and idx in labeling:
                perm = tuple(labeling[idx])
            if len(labeled) != len(s.names):
                raise AssertionError("intersection arity mismatch")
            for k, q in enumerate(s.names):
                vals[q] = labeled[perm[k]]
            inters[idx] = si
            labelings[idx] = perm
    return TropRealization(values=vals, intersections=inters, labelings=labelings)


def labeling_choices(c: Construction, r: TropRealization, max_points=4):
    """Distinct label assignments per intersection step.

    Permutations inducing the same point assignment are merged; steps
    with more than ``max_points`` labels keep only the default order
    (enumeration is meant for small choice sets, e.g. conic-line pairs).
    """
    per_step = {}
    for idx, si in r.intersections.items():
        labeled = si.as_labeled()
        if len(labeled) > max_points:
            per_step[idx] = [tuple(range(len(labeled)))]
            continue
        seen = {}
        for p in itertools.permutations(range(len(labeled))):
            key = tuple(labeled[i] for i in p)
            if key not in seen:
                seen[key] = p
        per_step[idx] = [seen[k] for k in sorted(seen)]
    keys = sorted(per_step)
    for combo in itertools.product(*(per_step[k] for k in keys)):
        yield dict(zip(keys, combo))


# ---------------------------------------------------------------------------
# lifting conditions (the residual-condition forward pass)


CERT_ALWAYS = "AlwaysCompatible"
CERT_CONDITIONAL = "Conditional"
CERT_NEVER = "NeverLiftable"
CERT_GENERIC_FAILS = "GenericLiftFails"
CERT_UNDECIDABLE = "Undecidable"


@dataclass
class StepReport:
    index: int
    kind: str
    nodes: list
    conditions: list      # (origin, value) pairs, value may be poly or scalar
    all_zero: bool
    some_zero: bool
    fixed: bool
    certificate: str | None = None
    notes: list = dc_field(default_factory=list)


@dataclass
class LiftReport:
    mode: str
    field: ResidualField
    steps: list
    condition_set: ConditionSet
    verdict: str
    witness: dict | None
    seed: int | None = None
    trials: int | None = None
    successes: int | None = None
    witness_jets: dict | None = None

    def to_json(self):
        def val_str(v):
            return str(v)

        return {
            "mode": self.mode,
            "field": repr(self.field),
            "seed": self.seed,
            "trials": self.trials,
            "successes": self.successes,
            "verdict": self.verdict,
            "steps": [
                {
                    "id": s.index,
                    "kind": s.kind,
                    "nodes": list(s.nodes),
                    "certificate": s.certificate,
                    "conditions": [
                        {"origin": o, "poly": val_str(v)} for o, v in s.conditions
                    ],
                    "notes": list(s.notes),
                }
                for s in self.steps
            ],
            "conditions": self.condition_set.to_json(),
            "witness": self.witness,
        }


def _input_variables(c: Construction):
    out = []
    for n in c.input_points:
        out.extend([f"{n}.x", f"{n}.y"])
    for n, sup in c.input_curves:
        out.extend(f"{n}[{i},{j}]" for (i, j) in sup.points)
    return out


def _symbolic_inputs(c: Construction, r: TropRealization):
    res = {}
    for n in c.input_points:
        res[n] = (RFrac.of(RPoly.var(f"{n}.x")), RFrac.of(RPoly.var(f"{n}.y")))
    for n, sup in c.input_curves:
        res[n] = {
            pt: RFrac.of(RPoly.var(f"{n}[{pt[0]},{pt[1]}]")) for pt in sup.points
        }
    return res


def _numeric_inputs(c: Construction, field: ResidualField, rng: random.Random):
    res = {}
    for n in c.input_points:
        res[n] = (field.random_nonzero(rng), field.random_nonzero(rng))
    for n, sup in c.input_curves:
        res[n] = {pt: field.random_nonzero(rng) for pt in sup.points}
    return res


def _propagate(c: Construction, r: TropRealization, residuals, field, symbolic: bool):
    """One forward pass; returns (step reports, condition set, node jets, ok)."""
    jets = {}
    for n in c.input_points:
        p = r.values[n]
        cx, cy = residuals[n]
        jets[n] = (Jet.principal(p[0], cx), Jet.principal(p[1], cy))
    for n, sup in c.input_curves:
        f = r.values[n]
        cmap = f.coeff_map()
        jets[n] = {pt: Jet.principal(cmap[pt], residuals[n][pt]) for pt in sup.points}

    conds = ConditionSet()
    conds.variables = _input_variables(c)
    reports = []
    ok = True
    for idx, s in enumerate(c.steps):
        if isinstance(s, CurveThrough):
            rep, ok_step = _propagate_curve_step(idx, s, jets, conds)
        else:
            rep, ok_step = _propagate_intersection_step(
                idx, s, jets, conds, r, field, symbolic
            )
        reports.append(rep)
        ok = ok and ok_step
    return reports, conds, jets, ok


def _propagate_curve_step(idx, s: CurveThrough, jets, conds: ConditionSet):
    pt_jets = []
    for q in s.through:
        jx, jy = jets[q]
        pt_jets.append(((jx.order, jy.order), (jx, jy)))
    res = curve_step_jets(s.support, pt_jets, origin=f"step#{idx} curve {s.name}")
    jets[s.name] = res.coeff_jets
    conds.merge(res.conditions)
    step_conds = [(c.origin, c.poly) for c in res.conditions.conditions]
    zeroes = [v for _, v in step_conds if not v]
    # a regular minor gives a monomial pseudodeterminant: recompute flags
    all_reg = all(res.minor_regular.values())
    rep = StepReport(
        index=idx,
        kind="curve",
        nodes=[s.name],
        conditions=step_conds,
        all_zero=res.undecidable,
        some_zero=bool(zeroes) or res.undecidable,
        fixed=any(res.minor_regular.values()),
    )
    if all_reg:
        rep.notes.append("all minors regular")
    return rep, not rep.some_zero


def _propagate_intersection_step(idx, s: Intersect, jets, conds, r, field, symbolic):
    f_jets = jets[s.curves[0]]
    g_jets = jets[s.curves[1]]
    origin = f"step#{idx} intersect {s.curves[0]}*{s.curves[1]}"
    bundle = intersection_step_conditions(f_jets, g_jets, origin=origin)
    conds.merge(bundle.conditions)
    step_conds = [(c.origin, c.poly) for c in bundle.conditions.conditions]
    notes = [f"shear a={bundle.shear}"] if bundle.shear is not None else []
    for fam in bundle.families:
        if fam.bound_exceeded:
            notes.append(f"R_{fam.name}: resultant bound exceeded")

    if bundle.always_compatible:
        notes.append("always-compatible")
    si = r.intersections[idx]
    perm = r.labelings[idx]
    labeled_pts = si.as_labeled()
    failed = bool([v for _, v in step_conds if not v]) or bundle.undecidable

    # local residual systems, one per distinct stable point
    solved = {}
    for b, _m in si.points:
        try:
            if symbolic:
                ft = residual_terms(f_jets, b)
                gt = residual_terms(g_jets, b)
                try:
                    x, y, det = solve_local_linear(ft, gt)
                except ValueError as exc:
                    raise SymbolicModeUnsupported(
                        f"{origin}: {exc} at point {b}"
                    ) from exc
                conds.add(_num(det), f"{origin} local det at {b}")
                conds.add(_num(x), f"{origin} torus x at {b}")
                conds.add(_num(y), f"{origin} torus y at {b}")
                step_conds.extend(
                    [
                        (f"{origin} local det at {b}", _num(det)),
                        (f"{origin} torus x at {b}", _num(x)),
                        (f"{origin} torus y at {b}", _num(y)),
                    ]
                )
                if not _num(x) or not _num(y) or not _num(det):
                    failed = True
                    solved[b] = []
                else:
                    solved[b] = [(x, y)]
            else:
                sols = local_intersection_solve(f_jets, g_jets, b, field)
                if not sols:
                    zero = field.zero
                    conds.add(zero, f"{origin} no torus solution at {b}")
                    step_conds.append((f"{origin} no torus solution at {b}", zero))
                    failed = True
                    solved[b] = []
                else:
                    sols = sorted(sols, key=lambda t: (repr(t.x), repr(t.y)))
                    solved[b] = [(t.x, t.y) for t in sols]
        except (InformationLostError, RootsOutsideFieldError) as exc:
            notes.append(f"local solve at {b}: {exc}")
            failed = True
            solved[b] = []

    # hand the solved principal terms to the labeled points
    cursor = {}
    for k, q in enumerate(s.names):
        b = labeled_pts[perm[k]]
        options = solved.get(b, [])
        if options:
            i = cursor.get(b, 0)
            x, y = options[i % len(options)]
            cursor[b] = i + 1
            jets[q] = (Jet.principal(b[0], x), Jet.principal(b[1], y))
        else:
            jets[q] = (Jet.degenerate(b[0]), Jet.degenerate(b[1]))

    rep = StepReport(
        index=idx,
        kind="intersect",
        nodes=list(s.names),
        conditions=step_conds,
        all_zero=bundle.undecidable,
        some_zero=failed,
        fixed=bundle.fixed,
        notes=notes,
    )
    return rep, not failed


def _num(v):
    return v.num if isinstance(v, RFrac) else v


def lift_conditions(
    c: Construction,
    r: TropRealization,
    mode: str = "symbolic",
    field: ResidualField | None = None,
    seed: int = 0,
    trials: int = 32,
) -> LiftReport:
    """Residual conditions for the whole construction to lift.

    symbolic mode: one pass with indeterminate input residuals; the
    condition set is over the input variables only (auxiliary point
    coordinates are eliminated by forward substitution).  Restricted to
    constructions whose local residual systems are linear.

    numeric mode: samples input residuals in k* and propagates; a trial
    in which every condition is nonzero and every local system has a
    torus solution yields witness jets for every node.
    """
    if mode == "symbolic":
        field = field or ResidualField(None)
        residuals = _symbolic_inputs(c, r)
        reports, conds, jets, ok = _propagate(c, r, residuals, field, symbolic=True)
        if conds.provably_empty:
            verdict = PROVABLY_EMPTY
        else:
            sample_field = field if field.finite else ResidualField(10007)
            verdict, _w = density_test(conds, sample_field, trials=max(trials, 8), seed=seed)
        witness = _witness_json(jets) if ok else None
        rep = LiftReport(
            mode=mode, field=field, steps=reports, condition_set=conds,
            verdict=verdict, witness=witness, seed=seed, trials=None,
            witness_jets=jets if ok else None,
        )
        return classify_certificates(rep, c, r)

    if mode != "numeric":
        raise ValueError("mode must be 'symbolic' or 'numeric'")
    field = field or ResidualField(10007)
    if not field.finite:
        raise ValueError("numeric mode needs a finite residual field")
    first_success = None
    last_failure = None
    successes = 0
    for t in range(trials):
        rng = random.Random(seed * 1000003 + t)
        residuals = _numeric_inputs(c, field, rng)
        outcome = _propagate(c, r, residuals, field, symbolic=False)
        if outcome[3]:
            successes += 1
            if first_success is None:
                first_success = outcome
        else:
            last_failure = outcome
    reports, conds, jets, _ok = first_success or last_failure
    verdict = NONEMPTY_DENSE if successes else LIKELY_EMPTY
    witness = _witness_json(jets) if successes else None
    rep = LiftReport(
        mode=mode, field=field, steps=reports, condition_set=conds,
        verdict=verdict, witness=witness, seed=seed, trials=trials,
        successes=successes, witness_jets=jets if successes else None,
    )
    return classify_certificates(rep, c, r)


def _witness_json(jets):
    out = {}
    for n, j in jets.items():
        if isinstance(j, tuple):
            out[n] = {
                "order": [str(j[0].order), str(j[1].order)],
                "coeff": [_jet_coeff_str(j[0]), _jet_coeff_str(j[1])],
            }
        else:
            pts = sorted(j)
            out[n] = {
                "support": [list(p) for p in pts],
                "order": [str(j[p].order) for p in pts],
                "coeff": [_jet_coeff_str(j[p]) for p in pts],
            }
    return out


def _jet_coeff_str(j: Jet):
    if j.is_principal:
        return str(j.coeff)
    if j.is_degenerate:
        return "?"
    return "0"


def classify_certificates(report: LiftReport, c: Construction, r: TropRealization) -> LiftReport:
    """Fill per-step certificate classes per the fixed-element case analysis."""
    fixed_nodes = set(c.input_points) | {n for n, _ in c.input_curves}
    for rep in report.steps:
        if rep.fixed:
            fixed_nodes.update(rep.nodes)
    for rep in report.steps:
        step = c.steps[rep.index]
        if rep.all_zero:
            rep.certificate = CERT_UNDECIDABLE
            continue
        if rep.some_zero:
            node = step.new_nodes[0]
            anc = c.ancestors(node)
            if all(a in fixed_nodes for a in anc):
                rep.certificate = CERT_NEVER
            else:
                rep.certificate = CERT_GENERIC_FAILS
            continue
        if isinstance(step, CurveThrough):
            reg_note = any(n == "all minors regular" for n in rep.notes)
            rep.certificate = CERT_ALWAYS if reg_note else CERT_CONDITIONAL
        else:
            always = all(
                f"R_{nm}: resultant bound exceeded" not in rep.notes for nm in "xyz"
            ) and rep.fixed and _always_compatible_note(rep)
            rep.certificate = CERT_ALWAYS if always else CERT_CONDITIONAL
    return report


def _always_compatible_note(rep: StepReport):
    return any(n == "always-compatible" for n in rep.notes)


def verify_witness(c: Construction, r: TropRealization, jets) -> list:
    """Soundness of witness jets: every flag's residual incidence holds.

    For each incidence (q, C), the residual polynomial of C's jets at q
    must vanish when evaluated at q's residual coordinates, and q must
    lie on the tropical curve.  Returns a list of violations.
    """
    bad = []
    for q, cv in c.flags():
        p = r.values[q]
        f = r.values[cv]
        if not f.on_curve(p):
            bad.append(f"{q} not on tropical curve {cv}")
            continue
        cj = jets[cv]
        qx, qy = jets[q]
        if not (qx.is_principal and qy.is_principal):
            bad.append(f"{q} has non-principal witness jets")
            continue
        try:
            terms = residual_terms(cj, p)
        except InformationLostError as exc:
            bad.append(f"residual terms of {cv} at {q}: {exc}")
            continue
        acc = None
        for (i, j), cf in terms.items():
            v = cf
            if i:
                v = v * qx.coeff**i
            if j:
                v = v * qy.coeff**j
            acc = v if acc is None else acc + v
        if acc:
            bad.append(f"residual incidence of {q} on {cv} fails: {acc}")
    return bad


# ---------------------------------------------------------------------------
# subconstructions and acyclic lifting


def subconstruction_to(c: Construction, node: str) -> Construction:
    """Minimal construction containing all inputs and the given node;
    intersection steps keep all their sibling points."""
    needed = {node} | c.ancestors(node)
    out = Construction(
        input_points=list(c.input_points),
        input_curves=list(c.input_curves),
        steps=[],
    )
    for s in c.steps:
        if any(n in needed for n in s.new_nodes):
            out.steps.append(s)
            needed.update(s.new_nodes)
    return out


def lift_acyclic(g: IncidenceStructure, realization: dict, field: ResidualField,
                 seed: int = 0, max_tries: int = 64):
    """Witness jets for an acyclic incidence structure (tree-walk lifting).

    Alternates point-on-curve lifts (choose a residual root of the
    residual polynomial) and curve-through-point lifts (solve one
    coefficient from the linear residual relation).
    """
    if not g.is_acyclic():
        raise ValueError("graph not acyclic")
    if not field.finite:
        raise ValueError("acyclic lifting samples roots; use a finite field")
    rng = random.Random(seed)
    adj = {}
    for p, b in g.flags:
        adj.setdefault(p, []).append(b)
        adj.setdefault(b, []).append(p)
    nodes = g.points + [b for b, _ in g.blocks]
    jets = {}
    block_names = {b for b, _ in g.blocks}

    def lift_free(n):
        if n in block_names:
            f = realization[n]
            cmap = f.coeff_map()
            jets[n] = {
                pt: Jet.principal(cmap[pt], field.random_nonzero(rng)) for pt in cmap
            }
        else:
            p = realization[n]
            jets[n] = (
                Jet.principal(frac(p[0]), field.random_nonzero(rng)),
                Jet.principal(frac(p[1]), field.random_nonzero(rng)),
            )

    def lift_point_on_curve(q, b):
        fj = jets[b]
        p = realization[q]
        terms = residual_terms(fj, p)
        if len(terms) < 2:
            raise ValueError(f"point {q!r} is not on curve {b!r} tropically")
        for _ in range(max_tries):
            # fix one coordinate, solve the other from the univariate trace
            xs = field.random_nonzero(rng)
            poly = RPoly()
            for (i, j), cf in terms.items():
                poly = poly + RPoly({((("y", j),) if j else ()): field.elt(cf) * xs**i})
            if poly.is_constant():
                continue
            try:
                roots = [y for y, _ in rpoly_roots_univariate(poly, field) if y]
            except RootsOutsideFieldError:
                continue
            if roots:
                y0 = roots[0]
                jets[q] = (
                    Jet.principal(frac(p[0]), xs),
                    Jet.principal(frac(p[1]), y0),
                )
                return
        raise RootsOutsideFieldError(f"no torus root for {q!r} on {b!r}")

    def lift_curve_through_point(b, q):
        sup = g.support_of(b)
        f = realization[b]
        cmap = f.coeff_map()
        p = realization[q]
        qx, qy = jets[q]
        # residual relation: sum over argmax of alpha_i * gamma^i = 0
        val, arg = f.eval(p)
        if len(arg) < 2:
            raise ValueError(f"point {q!r} is not on curve {b!r} tropically")
        coeffs = {}
        for pt in sup.points:
            if pt not in arg:
                coeffs[pt] = field.random_nonzero(rng)
        solve_for = arg[0]
        acc = field.zero
        for pt in arg[1:]:
            cfree = field.random_nonzero(rng)
            coeffs[pt] = cfree
            acc = acc + cfree * (qx.coeff ** pt[0] if pt[0] else field.one) * (
                qy.coeff ** pt[1] if pt[1] else field.one
            )
        mono = (qx.coeff ** solve_for[0] if solve_for[0] else field.one) * (
            qy.coeff ** solve_for[1] if solve_for[1] else field.one
        )
        coeffs[solve_for] = -acc / mono
        if not coeffs[solve_for]:
            raise ValueError("degenerate residual relation")
        jets[b] = {pt: Jet.principal(cmap[pt], coeffs[pt]) for pt in sup.points}

    seen = set()
    for start in sorted(nodes):
        if start in seen:
            continue
        lift_free(start)
        seen.add(start)
        queue = [start]
        while queue:
            x = queue.pop()
            for y in adj.get(x, []):
                if y in seen:
                    continue
                if x in block_names:
                    lift_point_on_curve(y, x)
                else:
                    lift_curve_through_point(y, x)
                seen.add(y)
                queue.append(y)
    return jets
