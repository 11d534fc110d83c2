"""Polynomial vector fields F d/da + G d/db on an affine chart of the plane."""

from __future__ import annotations

from dataclasses import dataclass, fields

from .gf2k import FieldCtx
from .poly import MultiPoly, divexact, gcd, parse_element, parse_poly

CHART_VARS = {"U0": ("x", "y"), "U1": ("z", "w"), "U2": ("u", "v")}


class DerivationError(ValueError):
    pass


class PolyDerivation:
    """delta = F * d/da + G * d/db where (a, b) are the chart coordinates.

    The default constructor insists on F, G nonzero and coprime; pass
    ``validate=False`` for degenerate fixtures.
    """

    __slots__ = ("ctx", "chart", "F", "G")

    def __init__(self, F: MultiPoly, G: MultiPoly, chart: str = "U0", validate: bool = True):
        if chart not in CHART_VARS:
            raise DerivationError(f"unknown chart {chart!r}")
        vs = CHART_VARS[chart]
        if F.ctx is not G.ctx:
            raise DerivationError("F and G live over different fields")
        self.ctx: FieldCtx = F.ctx
        self.chart = chart
        self.F = F.with_vars(vs)
        self.G = G.with_vars(vs)
        if validate:
            if self.F.is_zero() or self.G.is_zero():
                raise DerivationError("F and G must both be nonzero")
            if not gcd(self.F, self.G).is_constant():
                raise DerivationError("F and G must be coprime")

    @property
    def vars(self):
        return CHART_VARS[self.chart]

    @classmethod
    def loose(cls, F, G, chart="U0"):
        return cls(F, G, chart, validate=False)

    @classmethod
    def from_text(cls, F: str, G: str, ctx: FieldCtx, chart: str = "U0", validate=True):
        vs = CHART_VARS[chart]
        return cls(parse_poly(F, ctx, vs), parse_poly(G, ctx, vs), chart, validate)

    def __call__(self, p: MultiPoly) -> MultiPoly:
        a, b = self.vars
        p = p.with_vars(tuple(set(p.vars) | set(self.vars)))
        return self.F * p.derivative(a) + self.G * p.derivative(b)

    def scaled(self, c: int) -> "PolyDerivation":
        return PolyDerivation(self.F.scale(c), self.G.scale(c), self.chart, validate=False)

    def times(self, p: MultiPoly) -> "PolyDerivation":
        return PolyDerivation(self.F * p, self.G * p, self.chart, validate=False)

    def __eq__(self, other):
        return (isinstance(other, PolyDerivation) and self.chart == other.chart
                and self.F == other.F and self.G == other.G)

    def __hash__(self):
        return hash((self.chart, self.F, self.G))

    def __repr__(self):
        a, b = self.vars
        return f"({self.F})*d{a} + ({self.G})*d{b}"

    def to_json(self):
        return {"chart": self.chart, "F": str(self.F), "G": str(self.G)}


def square_components(d: PolyDerivation):
    """(A, B) with delta^2 = A d/da + B d/db."""
    a, b = d.vars
    F, G = d.F, d.G
    A = F * F.derivative(a) + G * F.derivative(b)
    B = F * G.derivative(a) + G * G.derivative(b)
    return A, B


def is_p_closed(d: PolyDerivation):
    """(True, H) when delta^2 = H delta, else (False, None).

    Tests A*G == B*F; with F != 0 the witness is H = A / F.
    """
    A, B = square_components(d)
    if A * d.G != B * d.F:
        return False, None
    if d.F.terms:
        try:
            return True, divexact(A, d.F)
        except ArithmeticError:
            return True, None
    if d.G.terms:
        try:
            return True, divexact(B, d.G)
        except ArithmeticError:
            return True, None
    return True, d.F.zero()


COEFF_NAMES = ("a30", "a12", "a20", "a02", "a10", "b20", "b02")


@dataclass(frozen=True)
class NormalFormCoefficients:
    a30: int = 0
    a12: int = 0
    a20: int = 0
    a02: int = 0
    a10: int = 0
    b20: int = 0
    b02: int = 0

    def as_tuple(self):
        return tuple(getattr(self, f.name) for f in fields(self))

    @classmethod
    def from_tuple(cls, t):
        return cls(*t)

    @classmethod
    def parse(cls, text: str, ctx: FieldCtx) -> "NormalFormCoefficients":
        """Parse "a20=1,b02=g^2"; unspecified coefficients are zero."""
        vals = {}
        for item in filter(None, (s.strip() for s in text.split(","))):
            if "=" not in item:
                raise DerivationError(f"expected name=value, got {item!r}")
            name, val = (s.strip() for s in item.split("=", 1))
            if name not in COEFF_NAMES:
                raise DerivationError(f"unknown coefficient {name!r}")
            vals[name] = parse_element(val, ctx)
        return cls(**vals)

    def format(self, ctx: FieldCtx) -> dict:
        return {n: ctx.format(v) for n, v in zip(COEFF_NAMES, self.as_tuple())}


def normal_form_polys(c: NormalFormCoefficients, ctx: FieldCtx):
    """The template pair (F, G) on U0."""
    t = {
        "F": {(3, 0): c.a30, (1, 2): c.a12, (2, 0): c.a20, (0, 2): c.a02, (1, 0): c.a10},
        "G": {(2, 1): c.a30, (0, 3): c.a12, (2, 0): c.b20, (0, 2): c.b02, (0, 1): c.a10},
    }
    return MultiPoly(ctx, ("x", "y"), t["F"]), MultiPoly(ctx, ("x", "y"), t["G"])


def make_normalized(c: NormalFormCoefficients, ctx: FieldCtx) -> PolyDerivation:
    F, G = normal_form_polys(c, ctx)
    if F.is_zero() or G.is_zero():
        raise DerivationError("violates condition (ii): F and G must both be nonzero")
    if not gcd(F, G).is_constant():
        raise DerivationError("violates condition (iii): F and G must be coprime")
    return PolyDerivation(F, G, "U0", validate=False)


def normal_form_witness(c: NormalFormCoefficients, ctx: FieldCtx) -> MultiPoly:
    """H = a30 x^2 + a12 y^2 + a10, the expected p-closure factor."""
    return MultiPoly(ctx, ("x", "y"), {(2, 0): c.a30, (0, 2): c.a12, (0, 0): c.a10})
