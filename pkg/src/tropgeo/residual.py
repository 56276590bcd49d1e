"""Residual-field arithmetic: scalars, sparse polynomials, jets.

The residual field k is either Q or a prime field F_p.  All lifting
computations run over the ring of *jets*: principal terms c*t^(-u) with
an explicit absorbing element for "principal information lost", so
undecidability surfaces as a value instead of a crash.

Coefficients of jets range over any of the domains defined here
(field scalars, sparse polynomials, rational functions); all of them
support +, -, *, truth-testing for zero and exact equality.

A fixed multiplicative section of the valuation is assumed implicitly:
t^u * t^v = t^(u+v) exactly, so jets multiply orders additively and
principal coefficients directly.  At the principal-term level this
choice introduces no ambiguity.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .trop_core import frac


class InformationLostError(ValueError):
    """Raised when a degenerate jet hides the needed principal data."""


class RootsOutsideFieldError(ValueError):
    """Raised when univariate roots do not live in the residual field."""


# ---------------------------------------------------------------------------
# residual fields


class FpElt:
    __slots__ = ("v", "p")

    def __init__(self, v, p):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, FpElt):
            if other.p != self.p:
                raise ValueError("mixed characteristics")
            return other.v
        if isinstance(other, int):
            return other % self.p
        if isinstance(other, Fraction):
            return (other.numerator * pow(other.denominator, -1, self.p)) % self.p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FpElt(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FpElt(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FpElt(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FpElt(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FpElt(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return FpElt(o * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return FpElt(-self.v, self.p)

    def __pow__(self, e: int):
        if e < 0:
            return FpElt(pow(self.v, -1, self.p), self.p) ** (-e)
        return FpElt(pow(self.v, e, self.p), self.p)

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        if isinstance(other, FpElt):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __repr__(self):
        return f"{self.v}"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class ResidualField:
    """Either Q (p is None) or F_p for a prime p."""

    def __init__(self, p: int | None = None):
        if p is not None and not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    @staticmethod
    def parse(spec: str) -> "ResidualField":
        spec = spec.strip().lower()
        if spec in ("q", "qq", "rationals"):
            return ResidualField(None)
        if spec.startswith("fp:"):
            return ResidualField(int(spec[3:]))
        if spec.startswith("f"):
            return ResidualField(int(spec[1:]))
        raise ValueError(f"cannot parse field spec {spec!r}")

    @property
    def char(self) -> int:
        return self.p or 0

    @property
    def finite(self) -> bool:
        return self.p is not None

    def elt(self, x):
        if self.p is None:
            if isinstance(x, FpElt):
                raise ValueError("cannot coerce F_p element into Q")
            return frac(x)
        if isinstance(x, FpElt):
            if x.p != self.p:
                raise ValueError("mixed characteristics")
            return x
        if isinstance(x, str):
            x = frac(x)
        if isinstance(x, Fraction):
            return FpElt(x.numerator * pow(x.denominator, -1, self.p), self.p)
        return FpElt(int(x), self.p)

    @property
    def zero(self):
        return self.elt(0)

    @property
    def one(self):
        return self.elt(1)

    def random_nonzero(self, rng: random.Random):
        if self.p is not None:
            return FpElt(rng.randrange(1, self.p), self.p)
        v = rng.randrange(1, 10**6)
        return Fraction(v if rng.random() < 0.5 else -v)

    def __eq__(self, other):
        return isinstance(other, ResidualField) and self.p == other.p

    def __hash__(self):
        return hash(("field", self.p))

    def __repr__(self):
        return "Q" if self.p is None else f"F_{self.p}"


QQ = ResidualField(None)


# ---------------------------------------------------------------------------
# sparse multivariate polynomials over k


def _coerce_scalar(x):
    if isinstance(x, (FpElt, Fraction)):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"not a residual scalar: {x!r}")


class RPoly:
    """Sparse polynomial over k; monomials are sorted (var, exp) tuples."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = dict(terms or {})

    @staticmethod
    def var(name: str, exp: int = 1) -> "RPoly":
        return RPoly({((name, exp),): Fraction(1)})

    @staticmethod
    def const(c) -> "RPoly":
        c = _coerce_scalar(c)
        return RPoly({(): c} if c else {})

    def _spawn(self, terms):
        return RPoly({m: c for m, c in terms.items() if c})

    def __bool__(self):
        return bool(self.terms)

    @property
    def is_zero(self):
        return not self.terms

    def is_monomial(self):
        return len(self.terms) == 1

    def is_constant(self):
        return not self.terms or set(self.terms) == {()}

    def variables(self):
        return sorted({v for m in self.terms for v, _ in m})

    def total_degree(self):
        return max((sum(e for _, e in m) for m in self.terms), default=0)

    def _as_poly(self, other):
        if isinstance(other, RPoly):
            return other
        if isinstance(other, (int, Fraction, FpElt)):
            c = other if isinstance(other, (Fraction, FpElt)) else Fraction(other)
            return RPoly({(): c} if c else {})
        return None

    def __add__(self, other):
        o = self._as_poly(other)
        if o is None:
            return NotImplemented
        t = dict(self.terms)
        for m, c in o.terms.items():
            s = t.get(m, 0) + c
            if s:
                t[m] = s
            elif m in t:
                del t[m]
        return RPoly(t)

    __radd__ = __add__

    def __neg__(self):
        return RPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        o = self._as_poly(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._as_poly(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._as_poly(other)
        if o is None:
            return NotImplemented
        t = {}
        for m1, c1 in self.terms.items():
            d1 = dict(m1)
            for m2, c2 in o.terms.items():
                d = dict(d1)
                for v, e in m2:
                    d[v] = d.get(v, 0) + e
                m = tuple(sorted(d.items()))
                s = t.get(m, 0) + c1 * c2
                if s:
                    t[m] = s
                elif m in t:
                    del t[m]
        return RPoly(t)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers live in RFrac")
        out = RPoly.const(self._one_like())
        b = self
        while n:
            if n & 1:
                out = out * b
            b = b * b
            n >>= 1
        return out

    def _one_like(self):
        for c in self.terms.values():
            if isinstance(c, FpElt):
                return FpElt(1, c.p)
        return Fraction(1)

    def __truediv__(self, other):
        if isinstance(other, RFrac):
            return RFrac(self, RPoly.const(1)) / other
        o = self._as_poly(other)
        if o is None:
            return NotImplemented
        return RFrac(self, o)

    def canonical(self):
        return tuple(sorted((m, c) for m, c in self.terms.items()))

    def __eq__(self, other):
        o = self._as_poly(other)
        if o is None:
            return NotImplemented
        return self.canonical() == o.canonical()

    def __hash__(self):
        return hash(self.canonical())

    def evaluate(self, assignment: dict):
        out = None
        for m, c in self.terms.items():
            v = c
            for var, e in m:
                v = v * assignment[var] ** e
            out = v if out is None else out + v
        if out is None:
            return Fraction(0)
        return out

    def substitute(self, assignment: dict) -> "RPoly":
        """Substitute RPoly/scalar values for (some) variables."""
        out = RPoly()
        for m, c in self.terms.items():
            term = RPoly.const(c)
            for var, e in m:
                if var in assignment:
                    val = assignment[var]
                    val = val if isinstance(val, RPoly) else RPoly.const(val)
                    term = term * val**e
                else:
                    term = term * RPoly({((var, e),): term._one_like()})
            out = out + term
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in sorted(self.terms.items()):
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)
            cs = str(c)
            if isinstance(c, Fraction) and (c < 0 or c.denominator != 1):
                cs = f"({cs})"
            parts.append(f"{cs}*{mono}" if mono else cs)
        return " + ".join(parts)

    def __repr__(self):
        return f"RPoly({self})"


class RFrac:
    """Rational function num/den; zero test is exact (num == 0)."""

    __slots__ = ("num", "den")

    def __init__(self, num: RPoly, den: RPoly | None = None):
        den = den if den is not None else RPoly.const(1)
        if not den:
            raise ZeroDivisionError("zero denominator in RFrac")
        if not num:
            den = RPoly.const(1)
        self.num = num
        self.den = den

    @staticmethod
    def of(x) -> "RFrac":
        if isinstance(x, RFrac):
            return x
        if isinstance(x, RPoly):
            return RFrac(x)
        return RFrac(RPoly.const(x))

    def __bool__(self):
        return bool(self.num)

    def __add__(self, other):
        o = RFrac.of(other)
        return RFrac(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RFrac(-self.num, self.den)

    def __sub__(self, other):
        return self + (-RFrac.of(other))

    def __rsub__(self, other):
        return RFrac.of(other) + (-self)

    def __mul__(self, other):
        o = RFrac.of(other)
        return RFrac(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = RFrac.of(other)
        if not o.num:
            raise ZeroDivisionError("division by symbolic zero")
        return RFrac(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return RFrac.of(other) / self

    def __eq__(self, other):
        try:
            o = RFrac.of(other)
        except TypeError:
            return NotImplemented
        return (self.num * o.den).canonical() == (o.num * self.den).canonical()

    def __hash__(self):
        return hash(("rfrac", self.num.canonical(), self.den.canonical()))

    def evaluate(self, assignment: dict):
        d = self.den.evaluate(assignment)
        if not d:
            raise ZeroDivisionError("denominator vanished at the sample")
        return self.num.evaluate(assignment) / d

    def __str__(self):
        if self.den == RPoly.const(1):
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RFrac({self})"


# ---------------------------------------------------------------------------
# jets: principal terms with an explicit information-loss element


_ZERO, _PRINCIPAL, _DEGENERATE = 0, 1, 2


class Jet:
    """c*t^(-order) + o(t^(-order)), exact zero, or an unknown below a bound.

    ``order`` is the tropical value (negative valuation).  Addition takes
    the dominant order and sums coefficients on ties; a tie that cancels
    yields a degenerate jet, the carrier of "principal information lost".
    """

    __slots__ = ("kind", "order", "coeff")

    def __init__(self, kind, order, coeff):
        self.kind = kind
        self.order = order
        self.coeff = coeff

    @staticmethod
    def zero() -> "Jet":
        return Jet(_ZERO, None, None)

    @staticmethod
    def principal(order, coeff) -> "Jet":
        if not coeff:
            raise ValueError("principal coefficient must be nonzero")
        return Jet(_PRINCIPAL, frac(order), coeff)

    @staticmethod
    def degenerate(bound) -> "Jet":
        return Jet(_DEGENERATE, frac(bound), None)

    @staticmethod
    def of(order, coeff) -> "Jet":
        """Principal if the coefficient is nonzero, degenerate otherwise."""
        return Jet.principal(order, coeff) if coeff else Jet.degenerate(order)

    @property
    def is_zero(self):
        return self.kind == _ZERO

    @property
    def is_principal(self):
        return self.kind == _PRINCIPAL

    @property
    def is_degenerate(self):
        return self.kind == _DEGENERATE

    def __add__(self, other):
        if not isinstance(other, Jet):
            return NotImplemented
        a, b = self, other
        if a.is_zero:
            return b
        if b.is_zero:
            return a
        if a.is_principal and b.is_principal:
            if a.order > b.order:
                return a
            if a.order < b.order:
                return b
            return Jet.of(a.order, a.coeff + b.coeff)
        if a.is_degenerate and b.is_degenerate:
            return Jet.degenerate(max(a.order, b.order))
        deg, pri = (a, b) if a.is_degenerate else (b, a)
        # the degenerate part lives strictly below its bound, so a
        # principal term at or above the bound survives exactly
        if pri.order >= deg.order:
            return pri
        return Jet.degenerate(deg.order)

    def __neg__(self):
        if self.is_principal:
            return Jet(_PRINCIPAL, self.order, -self.coeff)
        return self

    def __sub__(self, other):
        if not isinstance(other, Jet):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return Jet.zero()
        order = self.order + other.order
        if self.is_principal and other.is_principal:
            return Jet.of(order, self.coeff * other.coeff)
        return Jet.degenerate(order)

    def __truediv__(self, other):
        if not isinstance(other, Jet):
            return NotImplemented
        if not other.is_principal:
            raise InformationLostError("division by a non-principal jet")
        if self.is_zero:
            return self
        if self.is_degenerate:
            return Jet.degenerate(self.order - other.order)
        return Jet.principal(self.order - other.order, self.coeff / other.coeff)

    def __eq__(self, other):
        if not isinstance(other, Jet):
            return NotImplemented
        return (self.kind, self.order, self.coeff) == (other.kind, other.order, other.coeff)

    def __repr__(self):
        if self.is_zero:
            return "Jet(0)"
        if self.is_degenerate:
            return f"Jet(<{self.order})"
        return f"Jet({self.coeff}*t^-({self.order}))"


def jet_add(a: Jet, b: Jet) -> Jet:
    return a + b


def jet_mul(a: Jet, b: Jet) -> Jet:
    return a * b


JET_ZERO = Jet.zero()


# ---------------------------------------------------------------------------
# residual polynomial of a lift at a tropical point


def residual_terms(f_jets: dict, b) -> dict:
    """Terms of the residual polynomial over b.

    ``f_jets`` maps support points (i1, i2) to jets; the result maps the
    argmax support points to their principal coefficients.
    """
    bx, by = frac(b[0]), frac(b[1])
    best = None
    for pt, j in f_jets.items():
        if not j.is_principal:
            continue
        v = j.order + pt[0] * bx + pt[1] * by
        if best is None or v > best:
            best = v
    if best is None:
        raise InformationLostError("no principal jet in the lift")
    terms = {}
    for pt, j in f_jets.items():
        if j.is_zero:
            continue
        v = j.order + pt[0] * bx + pt[1] * by
        if j.is_degenerate:
            # a degenerate jet lives strictly below its bound, so it can
            # only hide information when the bound exceeds the maximum
            if v > best:
                raise InformationLostError(
                    f"principal information lost at support point {pt}"
                )
            continue
        if v == best:
            terms[pt] = j.coeff
    return terms


def residual_poly(f_jets: dict, b) -> RPoly:
    """The residual polynomial over b as an RPoly in x and y.

    Coefficients that are symbolic polynomials are multiplied through, so
    the result may mix x, y with input residual variables.
    """
    terms = residual_terms(f_jets, b)
    out = RPoly()
    for (i1, i2), c in terms.items():
        mono = RPoly({tuple(t for t in (("x", i1), ("y", i2)) if t[1]): Fraction(1)})
        cp = c if isinstance(c, RPoly) else RPoly.const(c)
        out = out + cp * mono
    return out


# ---------------------------------------------------------------------------
# univariate roots over the residual field


def _dense_coeffs(p: RPoly, var: str, field: ResidualField):
    deg = 0
    for m in p.terms:
        for v, e in m:
            if v != var:
                raise ValueError("polynomial is not univariate in " + var)
            deg = max(deg, e)
    out = [field.zero] * (deg + 1)
    for m, c in p.terms.items():
        e = m[0][1] if m else 0
        out[e] = out[e] + field.elt(c)
    while len(out) > 1 and not out[-1]:
        out.pop()
    return out


def _fp_polymod(a, b, p):
    """a mod b over F_p, dense int lists (low to high)."""
    a = [x % p for x in a]
    db = len(b) - 1
    if db == 0:
        return [0]
    inv = pow(b[-1], -1, p)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] * inv % p
        if c:
            for k in range(db + 1):
                a[i - db + k] = (a[i - db + k] - c * b[k]) % p
    out = a[:db]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out if out else [0]

def _fp_polymul(a, b, p, mod=None):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    if mod is not None:
        out = _fp_polymod(out, mod, p)
    return out


def _fp_polygcd(a, b, p):
    while any(b):
        a, b = b, _fp_polymod(a, b, p)
    inv = pow(a[-1], -1, p)
    return [x * inv % p for x in a]


def _fp_powmod(base, e, mod, p):
    out = [1]
    base = _fp_polymod(base, mod, p)
    while e:
        if e & 1:
            out = _fp_polymul(out, base, p, mod)
        base = _fp_polymul(base, base, p, mod)
        e >>= 1
    return out


def _fp_roots(coeffs, p):
    """Roots (with multiplicity) of a dense F_p polynomial, exact.

    Splits off the linear-factor part with gcd(x^p - x, f), then finds
    the roots by deterministic shift splitting; multiplicities by
    repeated division.
    """
    f = [c % p for c in coeffs]
    while len(f) > 1 and f[-1] == 0:
        f.pop()
    if len(f) <= 1:
        raise ValueError("root finding needs a nonconstant polynomial")
    roots = []
    # root at zero
    k = 0
    while f[0] == 0 and len(f) > 1:
        f = f[1:]
        k += 1
    if k:
        roots.append((0, k))
    if len(f) == 1:
        return roots
    if p <= 64:
        for r in range(p):
            m = _fp_root_multiplicity(f, r, p)
            if m:
                roots.append((r, m))
        return sorted(roots)
    xp = _fp_powmod([0, 1], p, f, p)
    xp_minus_x = xp[:]
    while len(xp_minus_x) < 2:
        xp_minus_x.append(0)
    xp_minus_x[1] = (xp_minus_x[1] - 1) % p
    g = _fp_polygcd(f, xp_minus_x, p)
    lin_roots = _fp_split(g, p)
    for r in sorted(lin_roots):
        roots.append((r, _fp_root_multiplicity(f, r, p)))
    return sorted(roots)


def _fp_root_multiplicity(f, r, p):
    m = 0
    while len(f) > 1:
        rem, q = _synth_div(f, r, p)
        if rem != 0:
            return m
        m += 1
        f = q
    return m


def _synth_div(f, r, p):
    """Divide dense f (low-to-high) by (x - r) over F_p: (remainder, quotient)."""
    n = len(f)
    q = [0] * (n - 1)
    carry = 0
    for i in range(n - 1, 0, -1):
        carry = (carry * r + f[i]) % p
        q[i - 1] = carry
    rem = (carry * r + f[0]) % p
    return rem, q


def _fp_split(g, p):
    """All roots of a product of distinct linear factors over F_p."""
    if len(g) <= 1:
        return []
    if len(g) == 2:
        return [(-g[0] * pow(g[1], -1, p)) % p]
    for shift in range(0, 4 * len(g) + 16):
        h = _fp_powmod([shift, 1], (p - 1) // 2, g, p)
        h = h[:]
        h[0] = (h[0] - 1) % p
        d = _fp_polygcd(g, h, p)
        if 1 < len(d) < len(g):
            rest = _fp_quotient(g, d, p)
            return _fp_split(d, p) + _fp_split(rest, p)
    raise AssertionError("deterministic shift splitting failed")


def _fp_quotient(a, b, p):
    """Exact quotient a/b over F_p (b divides a)."""
    a = a[:]
    out = [0] * (len(a) - len(b) + 1)
    inv = pow(b[-1], -1, p)
    for i in range(len(out) - 1, -1, -1):
        c = a[i + len(b) - 1] * inv % p
        out[i] = c
        if c:
            for k in range(len(b)):
                a[i + k] = (a[i + k] - c * b[k]) % p
    return out


def _rat_sqrt(x: Fraction):
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = _int_sqrt(n), _int_sqrt(d)
    if rn is None or rd is None:
        return None
    return Fraction(rn, rd)


def _int_sqrt(n: int):
    r = int(n**0.5)
    for c in (r - 1, r, r + 1, r + 2):
        if c >= 0 and c * c == n:
            return c
    return None


def rpoly_roots_univariate(p: RPoly, field: ResidualField):
    """All roots of a univariate polynomial in k, with multiplicities.

    Over a finite field this is complete; over Q only degrees <= 2 with a
    rational square discriminant are supported, anything else raises
    RootsOutsideFieldError so callers can switch fields or go symbolic.
    """
    vars_ = p.variables()
    if len(vars_) > 1:
        raise ValueError("univariate polynomial expected")
    var = vars_[0] if vars_ else "x"
    coeffs = _dense_coeffs(p, var, field)
    if field.finite:
        dense = [c.v for c in coeffs]
        return [(FpElt(r, field.p), m) for r, m in _fp_roots(dense, field.p)]
    # rationals: strip x^k, then solve degree <= 2
    if len(coeffs) <= 1:
        raise ValueError("root finding needs a nonconstant polynomial")
    roots = []
    k = 0
    while not coeffs[0] and len(coeffs) > 1:
        coeffs = coeffs[1:]
        k += 1
    if k:
        roots.append((Fraction(0), k))
    deg = len(coeffs) - 1
    if deg == 0:
        return roots
    if deg == 1:
        roots.append((-coeffs[0] / coeffs[1], 1))
    elif deg == 2:
        a, b, c = coeffs[2], coeffs[1], coeffs[0]
        disc = b * b - 4 * a * c
        r = _rat_sqrt(disc)
        if r is None:
            raise RootsOutsideFieldError("irrational quadratic roots")
        if r == 0:
            roots.append((-b / (2 * a), 2))
        else:
            roots.extend(sorted([((-b + r) / (2 * a), 1), ((-b - r) / (2 * a), 1)]))
    else:
        raise RootsOutsideFieldError(f"degree {deg} root finding over Q is unsupported")
    return sorted(roots)


# ---------------------------------------------------------------------------
# condition sets


NONEMPTY_DENSE = "nonempty-dense"
PROVABLY_EMPTY = "provably-empty"
UNKNOWN = "unknown"
LIKELY_EMPTY = "likely-empty"


@dataclass
class Condition:
    poly: object  # RPoly (symbolic) or a field scalar (numeric evaluation)
    origin: str

    def is_zero(self):
        return not self.poly

    def is_unit(self):
        if isinstance(self.poly, RPoly):
            return bool(self.poly) and self.poly.is_constant()
        return bool(self.poly)

    def key(self):
        if isinstance(self.poly, RPoly):
            return ("p", self.poly.canonical())
        return ("s", repr(self.poly))


@dataclass
class ConditionSet:
    """A conjunction of 'polynomial != 0' constraints, with provenance."""

    conditions: list = dc_field(default_factory=list)
    empty_flag: str = UNKNOWN
    variables: list = dc_field(default_factory=list)

    def add(self, poly, origin: str):
        cond = Condition(poly, origin)
        if cond.is_zero():
            self.empty_flag = PROVABLY_EMPTY
            self.conditions.append(cond)
            return
        if cond.is_unit():
            return  # nonzero constants carry no constraint
        if any(cond.key() == c.key() for c in self.conditions):
            return
        self.conditions.append(cond)

    def merge(self, other: "ConditionSet"):
        for c in other.conditions:
            self.add(c.poly, c.origin)
        if other.empty_flag == PROVABLY_EMPTY:
            self.empty_flag = PROVABLY_EMPTY
        for v in other.variables:
            if v not in self.variables:
                self.variables.append(v)

    @property
    def provably_empty(self):
        return self.empty_flag == PROVABLY_EMPTY

    def to_json(self):
        return {
            "variables": list(self.variables),
            "conditions": [
                {"poly": str(c.poly), "origin": c.origin} for c in self.conditions
            ],
            "verdict": self.empty_flag,
        }


def density_test(cs: ConditionSet, field: ResidualField, trials: int, seed: int):
    """Sample the condition variables uniformly in k* and look for a witness.

    Returns (verdict, witness) where witness is an assignment satisfying
    every condition, or None.  Deterministic under the seed; by
    Schwartz-Zippel the failure probability per trial is at most
    (total degree)/|k*|.
    """
    if cs.provably_empty:
        return PROVABLY_EMPTY, None
    variables = set(cs.variables)
    for c in cs.conditions:
        if isinstance(c.poly, RPoly):
            variables.update(c.poly.variables())
    variables = sorted(variables)
    failures = 0
    for t in range(max(trials, 1)):
        rng = random.Random(seed * 1000003 + t)
        sample = {v: field.random_nonzero(rng) for v in variables}
        ok = True
        for c in cs.conditions:
            val = c.poly.evaluate(sample) if isinstance(c.poly, RPoly) else c.poly
            if not val:
                ok = False
                break
        if ok:
            return NONEMPTY_DENSE, sample
        failures += 1
    return LIKELY_EMPTY, None
