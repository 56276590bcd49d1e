"""Line-oriented construction DSL.

One statement per line, so catalog files double as documentation of the
construction tables:

    input point A
    input curve Z support conic
    curve l1 = through A B support line
    points {P Q} = intersect l1 l2
    realize A = (0, -3/2)
    realize Z = "3y + 5 + 3y^2 + 0x^2 + 4x + 0xy"
    thesis point p on a'' b'' c''
    thesis curve R support cubic through q0 q1 q2

Named supports: line, conic, cubic, degree(d), vertical, horizontal,
pencil; explicit supports as lattice-point lists {(0,0), (1,0)}.
Rationals are written p/q.  Comments start with '#'.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field

from .trop_core import Support, TropPoly, frac
from .construction import Construction, CurveThrough, Intersect


class DslError(ValueError):
    def __init__(self, msg, line, col=1):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col


NAME = r"[A-Za-z0-9_.']+"
_INPUT_POINT = re.compile(rf"^input\s+point\s+({NAME})$")
_INPUT_CURVE = re.compile(rf"^input\s+curve\s+({NAME})\s+support\s+(.+)$")
_CURVE_STEP = re.compile(rf"^curve\s+({NAME})\s*=\s*through\s+((?:{NAME}\s+)*{NAME})\s+support\s+(.+)$")
_POINTS_STEP = re.compile(
    rf"^points\s+\{{\s*((?:{NAME}\s+)*{NAME})\s*\}}\s*=\s*intersect\s+({NAME})\s+({NAME})$"
)
_REALIZE_POINT = re.compile(
    rf"^realize\s+({NAME})\s*=\s*\(\s*(-?\d+(?:/\d+)?)\s*,\s*(-?\d+(?:/\d+)?)\s*\)$"
)
_REALIZE_CURVE = re.compile(rf"^realize\s+({NAME})\s*=\s*\"([^\"]*)\"$")
_THESIS_POINT = re.compile(rf"^thesis\s+point\s+({NAME})\s+on\s+((?:{NAME}\s+)*{NAME})$")
_THESIS_CURVE = re.compile(
    rf"^thesis\s+curve\s+({NAME})\s+support\s+(.+?)\s+through\s+((?:{NAME}\s+)*{NAME})$"
)
_EXPLICIT_SUPPORT = re.compile(r"^\{\s*(.*?)\s*\}$")
_LATTICE_POINT = re.compile(r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)")


@dataclass
class InputDecl:
    kind: str  # "point" | "curve"
    name: str
    support: Support | None = None


@dataclass
class ThesisDecl:
    kind: str  # "point" | "curve"
    name: str
    support: Support | None
    nodes: list


@dataclass
class DslDocument:
    inputs: list = dc_field(default_factory=list)
    steps: list = dc_field(default_factory=list)
    realizations: list = dc_field(default_factory=list)  # (name, value)
    thesis: ThesisDecl | None = None

    def realization_map(self):
        return dict(self.realizations)


def parse_support(text: str, line: int) -> Support:
    text = text.strip()
    m = _EXPLICIT_SUPPORT.match(text)
    if m:
        pts = _LATTICE_POINT.findall(m.group(1))
        if not pts:
            raise DslError("empty explicit support", line)
        return Support((int(a), int(b)) for a, b in pts)
    try:
        return Support.named(text)
    except ValueError as exc:
        raise DslError(str(exc), line) from exc


def parse(text: str) -> DslDocument:
    doc = DslDocument()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].strip()
        if not stripped:
            continue
        m = _INPUT_POINT.match(stripped)
        if m:
            doc.inputs.append(InputDecl("point", m.group(1)))
            continue
        m = _INPUT_CURVE.match(stripped)
        if m:
            doc.inputs.append(
                InputDecl("curve", m.group(1), parse_support(m.group(2), lineno))
            )
            continue
        m = _CURVE_STEP.match(stripped)
        if m:
            doc.steps.append(
                ("curve", m.group(1), m.group(2).split(), parse_support(m.group(3), lineno))
            )
            continue
        m = _POINTS_STEP.match(stripped)
        if m:
            doc.steps.append(("points", m.group(1).split(), m.group(2), m.group(3)))
            continue
        m = _REALIZE_POINT.match(stripped)
        if m:
            doc.realizations.append((m.group(1), (frac(m.group(2)), frac(m.group(3)))))
            continue
        m = _REALIZE_CURVE.match(stripped)
        if m:
            try:
                poly = TropPoly.parse(m.group(2))
            except ValueError as exc:
                raise DslError(str(exc), lineno, col=raw.find('"') + 2) from exc
            doc.realizations.append((m.group(1), poly))
            continue
        m = _THESIS_POINT.match(stripped)
        if m:
            doc.thesis = ThesisDecl("point", m.group(1), None, m.group(2).split())
            continue
        m = _THESIS_CURVE.match(stripped)
        if m:
            doc.thesis = ThesisDecl(
                "curve", m.group(1), parse_support(m.group(2), lineno), m.group(3).split()
            )
            continue
        col = len(raw) - len(raw.lstrip()) + 1
        raise DslError(f"cannot parse statement {stripped!r}", lineno, col)
    return doc


_NAMED_BY_POINTS = {
    Support.named(n).points: n
    for n in ("line", "conic", "cubic", "vertical", "horizontal", "pencil")
}


def print_support(sup: Support) -> str:
    if sup.points in _NAMED_BY_POINTS:
        return _NAMED_BY_POINTS[sup.points]
    for d in range(4, 13):
        if sup == Support.degree(d):
            return f"degree({d})"
    return "{" + ", ".join(f"({i},{j})" for i, j in sup.points) + "}"


def print_doc(doc: DslDocument) -> str:
    lines = []
    for inp in doc.inputs:
        if inp.kind == "point":
            lines.append(f"input point {inp.name}")
        else:
            lines.append(f"input curve {inp.name} support {print_support(inp.support)}")
    for s in doc.steps:
        if s[0] == "curve":
            _, name, through, sup = s
            lines.append(
                f"curve {name} = through {' '.join(through)} support {print_support(sup)}"
            )
        else:
            _, names, c1, c2 = s
            lines.append(f"points {{{' '.join(names)}}} = intersect {c1} {c2}")
    for name, val in doc.realizations:
        if isinstance(val, TropPoly):
            lines.append(f'realize {name} = "{val}"')
        else:
            lines.append(f"realize {name} = ({val[0]}, {val[1]})")
    if doc.thesis:
        t = doc.thesis
        if t.kind == "point":
            lines.append(f"thesis point {t.name} on {' '.join(t.nodes)}")
        else:
            lines.append(
                f"thesis curve {t.name} support {print_support(t.support)} "
                f"through {' '.join(t.nodes)}"
            )
    return "\n".join(lines) + "\n"


def to_construction(doc: DslDocument) -> Construction:
    c = Construction()
    for inp in doc.inputs:
        if inp.kind == "point":
            c.input_points.append(inp.name)
        else:
            c.input_curves.append((inp.name, inp.support))
    for s in doc.steps:
        if s[0] == "curve":
            _, name, through, sup = s
            c.steps.append(CurveThrough(name=name, support=sup, through=list(through)))
        else:
            _, names, c1, c2 = s
            c.steps.append(Intersect(names=list(names), curves=(c1, c2)))
    return c


def to_statement(doc: DslDocument, name="statement"):
    from .theorems import Statement, ThesisCurve, ThesisPoint

    if doc.thesis is None:
        raise ValueError("document has no thesis clause")
    c = to_construction(doc)
    t = doc.thesis
    if t.kind == "point":
        thesis = ThesisPoint(name=t.name, on=list(t.nodes))
    else:
        thesis = ThesisCurve(name=t.name, support=t.support, through=list(t.nodes))
    return Statement(name=name, hypothesis=c, thesis=thesis)


def construction_to_doc(c: Construction, realizations=None, thesis=None) -> DslDocument:
    doc = DslDocument()
    for n in c.input_points:
        doc.inputs.append(InputDecl("point", n))
    for n, sup in c.input_curves:
        doc.inputs.append(InputDecl("curve", n, sup))
    for s in c.steps:
        if isinstance(s, CurveThrough):
            doc.steps.append(("curve", s.name, list(s.through), s.support))
        else:
            doc.steps.append(("points", list(s.names), s.curves[0], s.curves[1]))
    if realizations:
        for n in c.input_points:
            if n in realizations:
                doc.realizations.append((n, realizations[n]))
        for n, _ in c.input_curves:
            if n in realizations:
                doc.realizations.append((n, realizations[n]))
    doc.thesis = thesis
    return doc
