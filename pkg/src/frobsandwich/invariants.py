"""Invariant rings of p-closed vector fields as hypersurfaces Z^2 + f(X, Y).

k[a, b] is free over S = k[a^2, b^2] with basis 1, a, b, ab, and delta is
S-linear.  Writing an invariant as c0 + c1 a + c2 b + c3 ab gives

    delta(...) = c1 F + c2 G + c3 (b F + a G) = 0,

and splitting each of F, G, bF + aG by exponent parity turns this into a
4 x 3 linear system over S of rank 2.  Its kernel is a free S-module of
rank one, generated by the primitive cross product of two independent rows.
"""

from __future__ import annotations

from dataclasses import dataclass

from .derivation import PolyDerivation, is_p_closed
from .poly import MultiPoly, divexact, gcd

QVARS = ("X", "Y")


class InvariantError(ArithmeticError):
    pass


@dataclass(frozen=True)
class HypersurfacePresentation:
    """k[a,b]^delta = k[a^2, b^2, h] = k[X, Y, Z] / (Z^2 + f)."""

    chart: str
    h: MultiPoly
    f: MultiPoly
    certificate: tuple

    def to_json(self):
        return {"h": str(self.h), "f": str(self.f), "relation": f"Z^2 + {self.f}"}


def _parity_split(p: MultiPoly, ctx):
    """p = sum over (r, s) of a^r b^s * Q_rs(a^2, b^2), with Q_rs in k[X, Y]."""
    parts = {(0, 0): {}, (1, 0): {}, (0, 1): {}, (1, 1): {}}
    for (i, j), c in p.terms.items():
        parts[(i & 1, j & 1)][(i >> 1, j >> 1)] = c
    return {k: MultiPoly(ctx, QVARS, t) for k, t in parts.items()}


def _from_s(c: MultiPoly, avars, shift):
    """c(a^2, b^2) * a^shift[0] * b^shift[1] as a polynomial in the chart variables."""
    return MultiPoly(c.ctx, avars, {(2 * i + shift[0], 2 * j + shift[1]): v
                                    for (i, j), v in c.terms.items()})


def _cross(r1, r2):
    return (r1[1] * r2[2] + r1[2] * r2[1],
            r1[2] * r2[0] + r1[0] * r2[2],
            r1[0] * r2[1] + r1[1] * r2[0])


def kernel_generator(d: PolyDerivation):
    """Primitive (c1, c2, c3) in k[X,Y]^3 spanning the kernel."""
    ctx = d.ctx
    a, b = d.vars
    A, B = MultiPoly.var(ctx, a, d.vars), MultiPoly.var(ctx, b, d.vars)
    cols = [d.F, d.G, B * d.F + A * d.G]
    split = [_parity_split(p, ctx) for p in cols]
    rows = [tuple(split[i][cls] for i in range(3)) for cls in ((0, 0), (1, 0), (0, 1), (1, 1))]
    rows = [r for r in rows if any(c.terms for c in r)]
    vec = None
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            v = _cross(rows[i], rows[j])
            if any(c.terms for c in v):
                vec = v
                break
        if vec is not None:
            break
    if vec is None:
        raise InvariantError("degenerate vector field")
    for r in rows:
        dot = r[0] * vec[0] + r[1] * vec[1] + r[2] * vec[2]
        if dot.terms:
            raise InvariantError("kernel has rank zero; vector field is not p-closed")
    g = None
    for c in sorted((c for c in vec if c.terms), key=lambda c: len(c.terms)):
        g = c if g is None else gcd(g, c)
        if g.is_constant():
            break
    if not g.is_constant():
        vec = tuple(divexact(c, g) for c in vec)
    lead = next(c for c in vec if c.terms)
    s = ctx.inv(lead.leading_coeff())
    return tuple(c.scale(s) for c in vec)


def invariant_ring(d: PolyDerivation, degree_bound: int | None = None,
                   check_p_closed: bool = True) -> HypersurfacePresentation:
    """Hypersurface presentation of the invariant ring of a p-closed field."""
    if check_p_closed and not is_p_closed(d)[0]:
        raise InvariantError("vector field is not p-closed")
    if degree_bound is None:
        degree_bound = d.F.total_degree() + d.G.total_degree() + 2
    c = kernel_generator(d)
    h = (_from_s(c[0], d.vars, (1, 0)) + _from_s(c[1], d.vars, (0, 1))
         + _from_s(c[2], d.vars, (1, 1)))
    if h.total_degree() > 4 * degree_bound:
        raise InvariantError("no hypersurface generator found below bound")
    if d(h).terms:
        raise InvariantError("generator is not invariant")
    f = MultiPoly(d.ctx, QVARS, {(i >> 1, j >> 1): v for (i, j), v in h.square().terms.items()})
    return HypersurfacePresentation(d.chart, h, f, c)


def relation_at(pres: HypersurfacePresentation, avars):
    """f(a^2, b^2), which must equal h^2."""
    return _from_s(pres.f, avars, (0, 0))


def localize(pres: HypersurfacePresentation, point, emb=None) -> MultiPoly:
    """The germ Z^2 + f_loc at the image of an affine point (alpha, beta).

    ``point`` is a SingularPoint (its chart must match) or a coordinate pair;
    ``emb`` pushes the presentation into the point's field when needed.
    """
    if hasattr(point, "affine"):
        if point.chart != pres.chart:
            raise InvariantError("point outside chart")
        coords, emb = point.affine, point.emb if emb is None else emb
    else:
        coords = tuple(point)
    f = pres.f if emb is None else pres.f.map_coeffs(emb)
    ctx = f.ctx
    X0, Y0 = (ctx.mul(c, c) for c in coords)
    g = f.translate({"X": X0, "Y": Y0})
    c0 = g.constant_term()
    if c0:
        g = g + MultiPoly.const(ctx, c0, QVARS)
    return g
