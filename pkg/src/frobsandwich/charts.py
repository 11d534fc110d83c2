"""The three affine charts of P^2 and the singular scheme of a vector field.

Homogeneous coordinates are (X0 : X1 : X2).  Chart Ui is X_i != 0 with
coordinates X_p / X_i for the two other indices p in increasing order:

    U0: x = X1/X0, y = X2/X0
    U1: z = X0/X1, w = X2/X1
    U2: u = X0/X2, v = X1/X2

Every coordinate of one chart is a Laurent monomial in the coordinates of
another, so moving a vector field between charts is a linear map on
exponent vectors plus the chain rule.  Minus signs from differentiating
1/z disappear in characteristic 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import upoly
from .derivation import CHART_VARS, PolyDerivation
from .gf2k import (Embedding, FieldCtx, FieldError, compatible_embedding, embedding,
                   field_make, identity)
from .poly import MultiPoly, NotZeroDimensional, divexact, gcd, local_quotient_dim

CHARTS = ("U0", "U1", "U2")


class ChartError(ArithmeticError):
    pass


def _others(i):
    return [j for j in range(3) if j != i]


def _ratio(p, c, ch):
    """Exponent vector of X_p / X_c in the coordinates of chart ch."""
    v = [0, 0]
    o = _others(ch)
    if p != ch:
        v[o.index(p)] += 1
    if c != ch:
        v[o.index(c)] -= 1
    return v


@dataclass(frozen=True)
class ChartExpr:
    """delta = (c / t^m) * (f d/da + g d/db) on a chart, t the pole variable."""

    chart: str
    pole_var: str | None
    m: int
    c: MultiPoly
    f: MultiPoly
    g: MultiPoly

    def derivation(self) -> PolyDerivation:
        """The saturated field f d/da + g d/db (same invariants as delta)."""
        return PolyDerivation(self.f, self.g, self.chart, validate=False)

    def to_json(self):
        return {"chart": self.chart, "pole_var": self.pole_var, "m": self.m,
                "c": str(self.c), "f": str(self.f), "g": str(self.g)}


def _laurent_add(acc, e, c):
    v = acc.get(e, 0) ^ c
    if v:
        acc[e] = v
    else:
        acc.pop(e, None)


def transport(d: PolyDerivation, target: str, coprime: bool = False) -> ChartExpr:
    """Rewrite delta in the coordinates of another chart.

    With ``coprime=True`` the caller vouches that F, G are coprime; the
    common factor in the target chart is then a monomial and no gcd is needed.
    """
    s, t = CHARTS.index(d.chart), CHARTS.index(target)
    ctx = d.ctx
    tv = CHART_VARS[target]
    if s == t:
        c0 = MultiPoly.const(ctx, 1, tv) if coprime else gcd(d.F, d.G)
        return ChartExpr(target, None, 0, c0, divexact(d.F, c0), divexact(d.G, c0))
    so, to = _others(s), _others(t)
    # source coordinates as exponent vectors over target coordinates
    src_in_tgt = [_ratio(p, s, t) for p in so]
    # target coordinates as exponent vectors over source coordinates
    tgt_in_src = [_ratio(q, t, s) for q in to]
    comps = (d.F, d.G)
    out = []
    for j in range(2):
        acc = {}
        ej = tgt_in_src[j]
        for i in range(2):
            if ej[i] % 2 == 0:
                continue
            # d t_j / d s_i = e_ji * t_j / s_i
            shift = list(ej)
            shift[i] -= 1
            for e, c in comps[i].terms.items():
                a = (e[0] + shift[0], e[1] + shift[1])
                img = (a[0] * src_in_tgt[0][0] + a[1] * src_in_tgt[1][0],
                       a[0] * src_in_tgt[0][1] + a[1] * src_in_tgt[1][1])
                _laurent_add(acc, img, c)
        out.append(acc)
    P, Q = out
    allexp = list(P) + list(Q)
    if not allexp:
        raise ChartError("vector field vanishes identically")
    lo = (min(e[0] for e in allexp), min(e[1] for e in allexp))
    Pp = MultiPoly(ctx, tv, {(e[0] - lo[0], e[1] - lo[1]): c for e, c in P.items()})
    Qp = MultiPoly(ctx, tv, {(e[0] - lo[0], e[1] - lo[1]): c for e, c in Q.items()})
    if coprime:
        c0, f, g = MultiPoly.const(ctx, 1, tv), Pp, Qp
    else:
        c0 = gcd(Pp, Qp)
        f, g = divexact(Pp, c0), divexact(Qp, c0)
    pole = tv[to.index(s)]
    pi = tv.index(pole)
    # move all powers of the pole variable into one exponent
    k = 0
    while c0.terms and all(e[pi] > 0 for e in c0.terms):
        sh = [0, 0]
        sh[pi] = -1
        c0 = MultiPoly(ctx, tv, {(e[0] + sh[0], e[1] + sh[1]): c for e, c in c0.terms.items()})
        k += 1
    total = lo[pi] + k
    rest = [0, 0]
    rest[1 - pi] = lo[1 - pi]
    if rest[1 - pi] < 0:
        raise ChartError("unexpected pole along a coordinate line")
    zpow = [0, 0]
    zpow[pi] = max(total, 0)
    c = c0.mul_monomial((rest[0] + zpow[0], rest[1] + zpow[1]))
    m = max(-total, 0)
    return ChartExpr(target, pole, m, c, f, g)


def pole_order(expr: ChartExpr) -> int:
    """ord along the pole variable of the prefactor c / t^m."""
    pi = CHART_VARS[expr.chart].index(expr.pole_var)
    c = expr.c
    if not c.terms:
        raise ChartError("zero prefactor")
    k = min(e[pi] for e in c.terms)
    # anything left in c besides a pole-variable power means div(delta) meets the source chart
    stripped = {tuple(a - (k if i == pi else 0) for i, a in enumerate(e)) for e in c.terms}
    if len(c.terms) != 1 or stripped != {(0, 0)}:
        raise ChartError("prefactor has a factor other than the pole variable")
    return k - expr.m


def chart_exprs(d: PolyDerivation, coprime: bool | None = None) -> dict:
    """transport(d, U) for all three charts."""
    cop = gcd(d.F, d.G).is_constant() if coprime is None else coprime
    return {c: transport(d, c, cop) for c in CHARTS}


def degree_of_foliation(d: PolyDerivation, exprs: dict | None = None) -> int:
    """deg L, read on both charts that see the line at infinity; they must agree."""
    s = CHARTS.index(d.chart)
    get = (lambda c: exprs[c]) if exprs else (lambda c: transport(d, c))
    vals = [pole_order(get(CHARTS[t])) for t in _others(s)]
    if vals[0] != vals[1]:
        raise ChartError(f"chart degrees disagree: {vals}")
    return vals[0]


# closed points of a bivariate system

@dataclass(frozen=True)
class ClosedPoint:
    """One representative of a Galois orbit of points over the base field."""

    ctx: FieldCtx
    emb: Embedding
    coords: tuple
    degree: int


def _uexact(ctx, a, b):
    if not a:
        return []
    if b == [1]:
        return a
    q, r = upoly.divmod_(ctx, a, b)
    if r:
        raise ArithmeticError("inexact division in resultant")
    return q


def _det_bareiss(ctx, M):
    n = len(M)
    M = [row[:] for row in M]
    prev = [1]
    for k in range(n - 1):
        if not M[k][k]:
            for r in range(k + 1, n):
                if M[r][k]:
                    M[k], M[r] = M[r], M[k]
                    break
            else:
                return []
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = upoly.add(upoly.mul(ctx, M[i][j], M[k][k]), upoly.mul(ctx, M[i][k], M[k][j]))
                M[i][j] = _uexact(ctx, num, prev)
            M[i][k] = []
        prev = M[k][k]
    return M[n - 1][n - 1]


def resultant(f: MultiPoly, g: MultiPoly, a: str, b: str):
    """Res_a(f, g) as a dense polynomial in b."""
    ctx = f.ctx
    fa = _dense_coeffs(f, a, b)
    ga = _dense_coeffs(g, a, b)
    m, n = len(fa) - 1, len(ga) - 1
    N = m + n
    if N == 0:
        return [1]
    rows = []
    for i in range(n):
        row = [[] for _ in range(N)]
        for j, c in enumerate(reversed(fa)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [[] for _ in range(N)]
        for j, c in enumerate(reversed(ga)):
            row[i + j] = c
        rows.append(row)
    return upoly.trim(_det_bareiss(ctx, rows))


def _dense_coeffs(p, a, b):
    """p as a list over powers of a of dense polynomials in b."""
    ia, ib = p.vars.index(a), p.vars.index(b)
    d = p.degree_in(a)
    out = [[] for _ in range(d + 1)]
    tmp = [{} for _ in range(d + 1)]
    for e, c in p.terms.items():
        tmp[e[ia]][e[ib]] = c
    for i, t in enumerate(tmp):
        if t:
            lst = [0] * (max(t) + 1)
            for k, c in t.items():
                lst[k] = c
            out[i] = lst
    return out


def _specialize(p, a, b, val, emb):
    """p(a, b=val) as a dense polynomial in a over emb.dst."""
    ia, ib = p.vars.index(a), p.vars.index(b)
    big = emb.dst
    out = [0] * (max(p.degree_in(a), 0) + 1)
    for e, c in p.terms.items():
        out[e[ia]] ^= big.mul(emb(c), big.pow(val, e[ib]))
    return upoly.trim(out)


def _root_in_extension(base_emb: Embedding, poly, d):
    """Extend base_emb.dst by degree d and pick the smallest root of poly there.

    Returns (base -> extension, mid -> extension, root).
    """
    mid = base_emb.dst
    if mid.k * d > 32:
        raise FieldError("extension too large")
    if d == 1:
        # monic linear factor t + p0
        return base_emb, identity(mid), poly[0] if poly[1] == 1 else mid.div(poly[0], poly[1])
    else:
        step = embedding(mid, field_make(mid.k * d))
        total = base_emb.compose(step)
    roots = upoly.roots(step.dst, [step(c) for c in poly])
    if not roots:
        raise ChartError("irreducible factor has no root in its splitting field")
    return total, step, min(roots)


def solve_bivariate(f: MultiPoly, g: MultiPoly, extend: bool = True):
    """All common zeros of coprime f, g in two variables, as closed points."""
    a, b = f.vars if len(f.vars) == 2 else (None, None)
    if a is None:
        raise ValueError("expected a bivariate system")
    ctx = f.ctx
    base = identity(ctx)
    if f.degree_in(a) <= 0 and g.degree_in(a) <= 0:
        return []
    if f.degree_in(a) <= 0 or g.degree_in(a) <= 0:
        if f.degree_in(a) > 0:
            f, g = g, f
        rb = [c for c in _dense_coeffs(f, a, b)[0]] if f.terms else []
    else:
        rb = resultant(f, g, a, b)
    if not rb:
        raise ChartError("components not coprime")
    pts = []
    for p in upoly.factor_squarefree(ctx, rb):
        d = len(p) - 1
        if d > 1 and not extend:
            raise ChartError("points require a field extension")
        emb_d, _, t0 = _root_in_extension(base, p, d)
        fa = _specialize(f, a, b, t0, emb_d)
        ga = _specialize(g, a, b, t0, emb_d)
        h = upoly.gcd(emb_d.dst, fa, ga)
        if len(h) <= 1:
            continue
        for q in upoly.factor_squarefree(emb_d.dst, h):
            e = len(q) - 1
            if e > 1 and not extend:
                raise ChartError("points require a field extension")
            emb_de, step, s0 = _root_in_extension(emb_d, q, e)
            t1 = step(t0)
            coords = (s0, t1)
            pts.append(ClosedPoint(emb_de.dst, emb_de, coords, d * e))
    pts.sort(key=lambda P: (P.degree, P.ctx.k, P.coords))
    return pts


# singular points

@dataclass(frozen=True)
class SingularPoint:
    """An orbit of points of the singular scheme, with its local length."""

    chart: str
    affine: tuple
    homogeneous: tuple
    length: int
    ctx: FieldCtx
    emb: Embedding
    degree: int = 1

    def to_json(self):
        return {"point": [self.ctx.format(a) for a in self.homogeneous],
                "length": self.length, "chart": self.chart}


def _homogeneous(chart, affine, ctx):
    i = CHARTS.index(chart)
    h = [0, 0, 0]
    h[i] = 1
    o = _others(i)
    h[o[0]], h[o[1]] = affine
    lead = next(c for c in h if c)
    inv = ctx.inv(lead)
    return tuple(ctx.mul(c, inv) for c in h)


def _length(f, g, emb, coords):
    F, G = f.map_coeffs(emb), g.map_coeffs(emb)
    a, b = f.vars
    pt = dict(zip(f.vars, coords))
    k = F.ctx
    jac = k.mul(F.derivative(a).evaluate(pt), G.derivative(b).evaluate(pt)) ^ \
        k.mul(F.derivative(b).evaluate(pt), G.derivative(a).evaluate(pt))
    if jac and not F.evaluate(pt) and not G.evaluate(pt):
        return 1  # transversal intersection
    try:
        return local_quotient_dim([F, G], dict(zip(f.vars, coords)))
    except NotZeroDimensional:
        raise ChartError("components not coprime") from None


def singular_scheme(d: PolyDerivation, extend: bool = True, exprs: dict | None = None):
    """Orbits of singular points, each with its local length.

    The plane is cut into the source chart, the line at infinity minus one
    point (seen on the next chart) and that last point (origin of the third
    chart), so every point is found exactly once.
    """
    s = CHARTS.index(d.chart)
    t1, t2 = _others(s)
    get = (lambda c: exprs[c]) if exprs else (lambda c: transport(d, c))
    out = []
    own = get(d.chart)
    for P in solve_bivariate(own.f, own.g, extend):
        out.append(SingularPoint(d.chart, P.coords, _homogeneous(d.chart, P.coords, P.ctx),
                                 _length(own.f, own.g, P.emb, P.coords), P.ctx, P.emb, P.degree))
    e1 = get(CHARTS[t1])
    vs = CHART_VARS[CHARTS[t1]]
    pole = e1.pole_var
    other = vs[1 - vs.index(pole)]
    fl = e1.f.substitute({pole: 0}).with_vars(vs)
    gl = e1.g.substitute({pole: 0}).with_vars(vs)
    h = gcd(fl, gl)
    if not h.is_zero():
        dense = h.with_vars(vs).to_dense(other)
        base = identity(d.ctx)
        for p in upoly.factor_squarefree(d.ctx, dense):
            deg = len(p) - 1
            if deg > 1 and not extend:
                raise ChartError("points require a field extension")
            emb, _, r = _root_in_extension(base, p, deg)
            coords = tuple(0 if n == pole else r for n in vs)
            out.append(SingularPoint(CHARTS[t1], coords, _homogeneous(CHARTS[t1], coords, emb.dst),
                                     _length(e1.f, e1.g, emb, coords), emb.dst, emb, deg))
    e2 = get(CHARTS[t2])
    if e2.f.constant_term() == 0 and e2.g.constant_term() == 0:
        base = identity(d.ctx)
        out.append(SingularPoint(CHARTS[t2], (0, 0), _homogeneous(CHARTS[t2], (0, 0), d.ctx),
                                 _length(e2.f, e2.g, base, (0, 0)), d.ctx, base, 1))
    return out


def total_length(points) -> int:
    return sum(p.length * p.degree for p in points)


def conjugates(p: SingularPoint, big: Embedding):
    """The geometric points of an orbit, inside big.dst (a common extension)."""
    e = compatible_embedding(p.emb, big)
    kb = big.src.k
    pts = []
    aff = tuple(e(a) for a in p.affine)
    for i in range(p.degree):
        pts.append(tuple(big.dst.frobenius(a, kb * i) for a in aff))
    return pts


def geometric_points(points, base: FieldCtx):
    """Expand orbits into individual points over one common extension.

    Returns (field, list of SingularPoint of degree 1).
    """
    L = 1
    for p in points:
        L = L * p.degree // math.gcd(L, p.degree)
    if base.k * L > 32:
        raise FieldError("extension too large")
    big = field_make(base.k * L)
    emb = embedding(base, big)
    out = []
    for p in points:
        for aff in conjugates(p, emb):
            out.append(SingularPoint(p.chart, aff, _homogeneous(p.chart, aff, big),
                                     p.length, big, emb, 1))
    return big, out
