"""Sparse multivariate polynomials over GF(2^k).

Variables come from the fixed alphabet x < y < z < w < u < v < X < Y < Z.
A polynomial stores its variable tuple (always sorted in that order) and a
dict from exponent tuples to nonzero int coefficients.  Terms are ordered
graded-lexicographically, with later variables dominating ties.
"""

from __future__ import annotations

from . import upoly
from .gf2k import FieldCtx, FieldElement

VAR_ORDER = ("x", "y", "z", "w", "u", "v", "X", "Y", "Z")
_RANK = {n: i for i, n in enumerate(VAR_ORDER)}


class ParseError(ValueError):
    """Bad polynomial text; ``pos`` is the offending character index."""

    def __init__(self, msg, text="", pos=0):
        super().__init__(msg)
        self.msg = msg
        self.text = text
        self.pos = pos

    def caret(self) -> str:
        return f"{self.msg}\n  {self.text}\n  {' ' * self.pos}^"


class NotZeroDimensional(ArithmeticError):
    pass


def _sorted_vars(names):
    for n in names:
        if n not in _RANK:
            raise ValueError(f"unknown variable {n!r}")
    return tuple(sorted(set(names), key=_RANK.__getitem__))


def grlex_key(e):
    return (sum(e), e[::-1])


class MultiPoly:
    __slots__ = ("ctx", "vars", "terms")

    def __init__(self, ctx: FieldCtx, vars, terms=None):
        vs = tuple(vars)
        sv = _sorted_vars(vs)
        self.ctx = ctx
        if sv != vs:
            perm = [vs.index(n) for n in sv]
            terms = {tuple(e[i] for i in perm): c for e, c in (terms or {}).items()}
            vs = sv
        self.vars = vs
        self.terms = {e: c for e, c in (terms or {}).items() if c}

    @classmethod
    def _raw(cls, ctx, vars, terms):
        p = cls.__new__(cls)
        p.ctx = ctx
        p.vars = vars
        p.terms = terms
        return p

    # construction helpers

    @classmethod
    def const(cls, ctx, c, vars=()):
        vs = _sorted_vars(vars)
        c = c.v if isinstance(c, FieldElement) else c
        return cls._raw(ctx, vs, {(0,) * len(vs): c} if c else {})

    @classmethod
    def var(cls, ctx, name, vars=None):
        vs = _sorted_vars(vars if vars is not None else (name,))
        if name not in vs:
            vs = _sorted_vars(vs + (name,))
        e = tuple(1 if n == name else 0 for n in vs)
        return cls._raw(ctx, vs, {e: 1})

    def zero(self):
        return MultiPoly._raw(self.ctx, self.vars, {})

    def one(self):
        return MultiPoly._raw(self.ctx, self.vars, {(0,) * len(self.vars): 1})

    def with_vars(self, vars):
        """Same polynomial viewed in a (super)set of variables."""
        vs = _sorted_vars(vars)
        if vs == self.vars:
            return self
        idx = []
        for n in vs:
            idx.append(self.vars.index(n) if n in self.vars else -1)
        for i, n in enumerate(self.vars):
            if n not in vs:
                if any(e[i] for e in self.terms):
                    raise ValueError(f"variable {n} still in use")
        terms = {tuple(e[i] if i >= 0 else 0 for i in idx): c for e, c in self.terms.items()}
        return MultiPoly._raw(self.ctx, vs, terms)

    def drop_unused(self):
        used = [n for i, n in enumerate(self.vars) if any(e[i] for e in self.terms)]
        return self.with_vars(used)

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.ctx is not self.ctx:
                raise ValueError("polynomials over different fields")
            if other.vars == self.vars:
                return self, other
            vs = _sorted_vars(self.vars + other.vars)
            return self.with_vars(vs), other.with_vars(vs)
        if isinstance(other, FieldElement):
            return self, MultiPoly.const(self.ctx, other.v, self.vars)
        if isinstance(other, int):
            return self, MultiPoly.const(self.ctx, other & 1, self.vars)
        return None, None

    # predicates and accessors

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> int:
        return self.terms.get((0,) * len(self.vars), 0)

    def coeff(self, exps) -> int:
        return self.terms.get(tuple(exps), 0)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def order(self) -> int:
        """Lowest total degree of a term (the m-adic order at the origin)."""
        return min((sum(e) for e in self.terms), default=-1)

    def degree_in(self, name) -> int:
        i = self._index(name)
        return max((e[i] for e in self.terms), default=-1)

    def used_vars(self):
        return tuple(n for i, n in enumerate(self.vars) if any(e[i] for e in self.terms))

    def _index(self, name):
        try:
            return self.vars.index(name)
        except ValueError:
            raise ValueError("no such variable") from None

    def leading_exp(self):
        return max(self.terms, key=grlex_key)

    def leading_coeff(self) -> int:
        return self.terms[self.leading_exp()] if self.terms else 0

    def monic(self):
        if not self.terms:
            return self
        lc = self.leading_coeff()
        if lc == 1:
            return self
        return self.scale(self.ctx.inv(lc))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def homogeneous_part(self, d):
        return MultiPoly._raw(self.ctx, self.vars,
                              {e: c for e, c in self.terms.items() if sum(e) == d})

    def truncate(self, n):
        """Terms of total degree < n."""
        return MultiPoly._raw(self.ctx, self.vars,
                              {e: c for e, c in self.terms.items() if sum(e) < n})

    # arithmetic

    def __add__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        t = dict(a.terms)
        for e, c in b.terms.items():
            r = t.get(e, 0) ^ c
            if r:
                t[e] = r
            else:
                t.pop(e, None)
        return MultiPoly._raw(a.ctx, a.vars, t)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        a, b = self._coerce(other)
        if a is None:
            return NotImplemented
        if not a.terms or not b.terms:
            return a.zero()
        ctx = a.ctx
        t = {}
        get = t.get
        exp, log = ctx._exp, ctx._log
        if exp is not None and len(a.vars) == 2:
            bt = [(e[0], e[1], log[c]) for e, c in b.terms.items()]
            for (i1, j1), c1 in a.terms.items():
                l1 = log[c1]
                for i2, j2, l2 in bt:
                    e = (i1 + i2, j1 + j2)
                    t[e] = get(e, 0) ^ exp[l1 + l2]
        else:
            m = ctx.mul
            bt = list(b.terms.items())
            for e1, c1 in a.terms.items():
                for e2, c2 in bt:
                    e = tuple(i + j for i, j in zip(e1, e2))
                    t[e] = get(e, 0) ^ m(c1, c2)
        return MultiPoly._raw(ctx, a.vars, {e: c for e, c in t.items() if c})

    __rmul__ = __mul__

    def scale(self, c):
        c = c.v if isinstance(c, FieldElement) else c
        if not c:
            return self.zero()
        if c == 1:
            return self
        m = self.ctx.mul
        return MultiPoly._raw(self.ctx, self.vars, {e: m(v, c) for e, v in self.terms.items()})

    def mul_monomial(self, exps, c=1):
        m = self.ctx.mul
        return MultiPoly._raw(self.ctx, self.vars, {
            tuple(i + j for i, j in zip(e, exps)): m(v, c) for e, v in self.terms.items()})

    def square(self):
        """Frobenius: coefficients squared, exponents doubled."""
        s = self.ctx.mul
        return MultiPoly._raw(self.ctx, self.vars, {
            tuple(2 * i for i in e): s(c, c) for e, c in self.terms.items()})

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a natural number")
        r = self.one()
        b = self
        while n:
            if n & 1:
                r = r * b
            n >>= 1
            if n:
                b = b.square()
        return r

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            if self.ctx is not other.ctx:
                return False
            if self.vars == other.vars:
                return self.terms == other.terms
            a, b = self._coerce(other)
            return a.terms == b.terms
        if isinstance(other, (int, FieldElement)):
            a, b = self._coerce(other)
            return a.terms == b.terms
        return NotImplemented

    def __hash__(self):
        p = self.drop_unused()
        return hash((self.ctx.k, p.vars, frozenset(p.terms.items())))

    # calculus and substitution

    def derivative(self, name):
        """Formal partial derivative; only odd exponents survive in char 2."""
        i = self._index(name)
        t = {}
        for e, c in self.terms.items():
            if e[i] & 1:
                t[e[:i] + (e[i] - 1,) + e[i + 1:]] = c
        return MultiPoly._raw(self.ctx, self.vars, t)

    def evaluate(self, point) -> int:
        """Value at a point given as a dict name -> int or a tuple over self.vars."""
        if isinstance(point, dict):
            vals = [_as_int(point.get(n, 0)) for n in self.vars]
        else:
            vals = [_as_int(a) for a in point]
        ctx = self.ctx
        pw = [{} for _ in vals]
        r = 0
        for e, c in self.terms.items():
            for i, k in enumerate(e):
                if k:
                    cache = pw[i]
                    p = cache.get(k)
                    if p is None:
                        p = cache[k] = ctx.pow(vals[i], k)
                    c = ctx.mul(c, p)
                    if not c:
                        break
            r ^= c
        return r

    def translate(self, shifts):
        """p(v1 + s1, v2 + s2, ...) for a dict name -> shift.

        Binomial coefficients are reduced mod 2 by Lucas: C(n, i) is odd
        exactly when the bits of i are a subset of the bits of n.
        """
        s = [_as_int(shifts.get(n, 0)) for n in self.vars]
        if not any(s):
            return self
        ctx = self.ctx
        out = {}
        for e, c in self.terms.items():
            parts = [((),c)]
            for i, n in enumerate(e):
                si = s[i]
                if not si or not n:
                    parts = [(pe + (n,), pc) for pe, pc in parts]
                    continue
                opts = []
                sub = n
                while True:
                    opts.append((sub, ctx.pow(si, n - sub)))
                    if sub == 0:
                        break
                    sub = (sub - 1) & n
                parts = [(pe + (j,), ctx.mul(pc, f)) for pe, pc in parts for j, f in opts]
            for pe, pc in parts:
                out[pe] = out.get(pe, 0) ^ pc
        return MultiPoly._raw(ctx, self.vars, {e: c for e, c in out.items() if c})

    def substitute(self, assignments):
        """Replace variables by polynomials (or field constants)."""
        ctx = self.ctx
        if not any(isinstance(v, MultiPoly) for v in assignments.values()):
            return self._specialize(assignments)
        imgs = {}
        target_vars = set()
        for n, val in assignments.items():
            if isinstance(val, MultiPoly):
                target_vars.update(val.vars)
        for n in self.vars:
            if n not in assignments:
                target_vars.add(n)
        tv = _sorted_vars(target_vars)
        for n in self.vars:
            val = assignments.get(n)
            if val is None:
                imgs[n] = MultiPoly.var(ctx, n, tv)
            elif isinstance(val, MultiPoly):
                imgs[n] = val.with_vars(tv)
            else:
                imgs[n] = MultiPoly.const(ctx, _as_int(val), tv)
        powcache = {}
        res = MultiPoly._raw(ctx, tv, {})
        for e, c in self.terms.items():
            t = MultiPoly.const(ctx, c, tv)
            for i, k in enumerate(e):
                if k:
                    key = (i, k)
                    p = powcache.get(key)
                    if p is None:
                        p = powcache[key] = imgs[self.vars[i]] ** k
                    t = t * p
            res = res + t
        return res

    def _specialize(self, assignments):
        ctx = self.ctx
        keep = [i for i, n in enumerate(self.vars) if n not in assignments]
        vals = [(i, _as_int(assignments[n])) for i, n in enumerate(self.vars) if n in assignments]
        out = {}
        for e, c in self.terms.items():
            for i, v in vals:
                if e[i]:
                    c = ctx.mul(c, ctx.pow(v, e[i]))
            if c:
                k = tuple(e[i] for i in keep)
                out[k] = out.get(k, 0) ^ c
        return MultiPoly._raw(ctx, tuple(self.vars[i] for i in keep),
                              {e: c for e, c in out.items() if c})

    def rename(self, mapping):
        """Rename variables, e.g. {"z": "x", "w": "y"}."""
        new = tuple(mapping.get(n, n) for n in self.vars)
        if len(set(new)) != len(new):
            raise ValueError("renaming collides")
        return MultiPoly(self.ctx, new, self.terms)

    def map_coeffs(self, emb):
        """Push coefficients through a field embedding."""
        return MultiPoly._raw(emb.dst, self.vars, {e: emb(c) for e, c in self.terms.items()})

    def coeff_sqrt(self):
        """The polynomial q with q.square() == self, if self is a square."""
        t = {}
        for e, c in self.terms.items():
            if any(i & 1 for i in e):
                raise ValueError("not a square")
            t[tuple(i >> 1 for i in e)] = self.ctx.sqrt(c)
        return MultiPoly._raw(self.ctx, self.vars, t)

    # univariate views

    def coeffs_in(self, name):
        """dict degree -> coefficient polynomial (same variables, name absent)."""
        i = self._index(name)
        out = {}
        for e, c in self.terms.items():
            d = e[i]
            out.setdefault(d, {})[e[:i] + (0,) + e[i + 1:]] = c
        return {d: MultiPoly._raw(self.ctx, self.vars, t) for d, t in out.items()}

    def to_dense(self, name):
        """Dense coefficient list in a single variable."""
        i = self._index(name)
        for e in self.terms:
            if any(k for j, k in enumerate(e) if j != i):
                raise ValueError("polynomial is not univariate")
        d = self.degree_in(name)
        out = [0] * (d + 1)
        for e, c in self.terms.items():
            out[e[i]] = c
        return out

    @classmethod
    def from_dense(cls, ctx, coeffs, name, vars=None):
        vs = _sorted_vars(vars if vars is not None else (name,))
        i = vs.index(name)
        t = {}
        for d, c in enumerate(coeffs):
            if c:
                e = [0] * len(vs)
                e[i] = d
                t[tuple(e)] = c
        return cls._raw(ctx, vs, t)

    # printing

    def __str__(self):
        if not self.terms:
            return "0"
        ctx = self.ctx
        parts = []
        for e, c in self.sorted_terms():
            mono = [n if k == 1 else f"{n}^{k}" for n, k in zip(self.vars, e) if k]
            if c == 1:
                parts.append("*".join(mono) if mono else "1")
                continue
            cs = ctx.format(c)
            if "+" in cs:
                cs = f"({cs})"
            parts.append("*".join([cs] + mono))
        return " + ".join(parts)

    def __repr__(self):
        return f"MultiPoly({str(self)!r}, vars={','.join(self.vars)})"


def _as_int(a):
    return a.v if isinstance(a, FieldElement) else a


def gens(ctx, *names):
    """Generators for a polynomial ring, e.g. ``x, y = gens(ctx, "x", "y")``."""
    vs = _sorted_vars(names)
    return tuple(MultiPoly.var(ctx, n, vs) for n in names)


def partial_derivative(p: MultiPoly, name: str) -> MultiPoly:
    return p.derivative(name)


def substitute(p: MultiPoly, assignments) -> MultiPoly:
    return p.substitute(assignments)


# exact division and gcd

def divexact(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """p / q, raising ArithmeticError when q does not divide p."""
    p, q = p._coerce(q)
    if not q.terms:
        raise ZeroDivisionError("division by zero polynomial")
    ctx = p.ctx
    eq = q.leading_exp()
    inv = ctx.inv(q.terms[eq])
    qt = list(q.terms.items())
    r = dict(p.terms)
    out = {}
    m = ctx.mul
    while r:
        e = max(r, key=grlex_key)
        d = tuple(i - j for i, j in zip(e, eq))
        if min(d) < 0:
            raise ArithmeticError("not divisible")
        c = m(r[e], inv)
        out[d] = c
        for f, b in qt:
            g = tuple(i + j for i, j in zip(f, d))
            v = r.get(g, 0) ^ m(c, b)
            if v:
                r[g] = v
            else:
                r.pop(g, None)
    return MultiPoly._raw(ctx, p.vars, out)


def divides(q: MultiPoly, p: MultiPoly) -> bool:
    try:
        divexact(p, q)
    except ArithmeticError:
        return False
    return True


def _content(p, name):
    g = None
    for c in sorted(p.coeffs_in(name).values(), key=lambda c: len(c.terms)):
        g = c.monic() if g is None else gcd(g, c)
        if g.is_constant():
            return g.one()
    return g


def _prem(a, b, name):
    i = a.vars.index(name)
    db = b.degree_in(name)
    lb = b.coeffs_in(name)[db]
    r = a
    while r.terms:
        dr = r.degree_in(name)
        if dr < db:
            break
        lr = r.coeffs_in(name)[dr]
        shift = [0] * len(r.vars)
        shift[i] = dr - db
        r = lb * r + (lr * b).mul_monomial(tuple(shift))
    return r


def gcd(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Monic greatest common divisor (primitive remainder sequences)."""
    p, q = p._coerce(q)
    if not p.terms:
        return q.monic()
    if not q.terms:
        return p.monic()
    pu, qu = p.used_vars(), q.used_vars()
    if not pu or not qu:
        return p.one()
    used = set(pu) | set(qu)
    if len(used) == 1:
        (n,) = used
        g = upoly.gcd(p.ctx, p.with_vars((n,)).to_dense(n), q.with_vars((n,)).to_dense(n))
        return MultiPoly.from_dense(p.ctx, g, n, p.vars)
    if len(p.terms) == 1 or len(q.terms) == 1:
        return _gcd_monomial(p, q)
    if len(used) == 2:
        return _gcd_bivariate(p, q, sorted(used, key=_RANK.__getitem__))
    name = max(used, key=_RANK.__getitem__)
    if p.degree_in(name) <= 0:
        return gcd(p, _content(q, name))
    if q.degree_in(name) <= 0:
        return gcd(_content(p, name), q)
    cp, cq = _content(p, name), _content(q, name)
    c = gcd(cp, cq)
    a, b = divexact(p, cp), divexact(q, cq)
    if a.degree_in(name) < b.degree_in(name):
        a, b = b, a
    while b.terms and b.degree_in(name) > 0:
        r = _prem(a, b, name)
        if r.terms:
            r = divexact(r, _content(r, name))
        a, b = b, r
    if b.terms:
        g = p.one()
    else:
        g = divexact(a, _content(a, name))
    return (c * g).monic()


def _gcd_monomial(p, q):
    """gcd when one argument is a single term: the common monomial factor."""
    if len(p.terms) != 1:
        p, q = q, p
    (e,) = p.terms
    lo = list(e)
    for f in q.terms:
        lo = [min(a, b) for a, b in zip(lo, f)]
    return MultiPoly._raw(p.ctx, p.vars, {tuple(lo): 1})


def _to_dense2(p, a, b):
    """p as a list over powers of b of dense polynomials in a."""
    ia, ib = p.vars.index(a), p.vars.index(b)
    rows = {}
    for e, c in p.terms.items():
        rows.setdefault(e[ib], {})[e[ia]] = c
    out = [[] for _ in range(max(rows) + 1)]
    for j, r in rows.items():
        lst = [0] * (max(r) + 1)
        for i, c in r.items():
            lst[i] = c
        out[j] = lst
    return out


def _dense2_content(ctx, P):
    g = []
    for c in sorted((c for c in P if c), key=len):
        g = upoly.gcd(ctx, g, c)
        if len(g) == 1:
            break
    return g


def _dense2_divc(ctx, P, c):
    if len(c) == 1 and c[0] == 1:
        return P
    return [upoly.divmod_(ctx, x, c)[0] if x else [] for x in P]


def _dense2_prem(ctx, A, B):
    db = len(B) - 1
    lb = B[-1]
    R = [list(x) for x in A]
    while len(R) - 1 >= db:
        lr = R[-1]
        sh = len(R) - 1 - db
        R = [upoly.mul(ctx, lb, x) for x in R]
        for i, x in enumerate(B):
            if x:
                R[sh + i] = upoly.add(R[sh + i], upoly.mul(ctx, lr, x))
        while R and not R[-1]:
            R.pop()
    return R


def _gcd_bivariate(p, q, names):
    ctx = p.ctx
    a, b = names
    P, Q = _to_dense2(p, a, b), _to_dense2(q, a, b)
    cp, cq = _dense2_content(ctx, P), _dense2_content(ctx, Q)
    c = upoly.gcd(ctx, cp, cq)
    A, B = _dense2_divc(ctx, P, cp), _dense2_divc(ctx, Q, cq)
    if len(A) < len(B):
        A, B = B, A
    while B and len(B) > 1:
        R = _dense2_prem(ctx, A, B)
        if R:
            R = _dense2_divc(ctx, R, _dense2_content(ctx, R))
        A, B = B, R
    ia, ib = p.vars.index(a), p.vars.index(b)
    terms = {}
    if B:
        G = [c]
    else:
        G = [upoly.mul(ctx, c, x) for x in _dense2_divc(ctx, A, _dense2_content(ctx, A))]
    for j, row in enumerate(G):
        for i, v in enumerate(row):
            if v:
                e = [0] * len(p.vars)
                e[ia], e[ib] = i, j
                terms[tuple(e)] = v
    return MultiPoly._raw(ctx, p.vars, terms).monic()


# local algebra

def local_quotient_dim(gens_, point=None, cap: int = 64) -> int:
    """dim_k of the local ring at ``point`` modulo the ideal of ``gens_``.

    ``point`` maps variable names to coordinates (missing names are 0),
    or is a tuple over the common variables.  The truncation degree N grows
    until dim k[vars]/(I + m^N) repeats, which by Nakayama gives the local
    dimension.
    """
    polys = [g for g in gens_]
    if not polys:
        raise ValueError("no generators")
    base = polys[0]
    for g in polys[1:]:
        base, _ = base._coerce(g)
    vs = base.vars
    polys = [g.with_vars(vs) for g in polys]
    if point is None:
        point = {}
    elif not isinstance(point, dict):
        point = dict(zip(vs, point))
    for g in polys:
        if g.evaluate(point):
            return 0
    loc = [g.translate(point) for g in polys]
    loc = [g for g in loc if g.terms]
    if not loc:
        raise NotZeroDimensional("not zero-dimensional at point")
    if len(vs) == 0:
        return 1
    prev = _truncated_dim(loc, len(vs), 1, base.ctx)
    checked = False
    for n in range(2, cap + 1):
        cur = _truncated_dim(loc, len(vs), n, base.ctx)
        if cur == prev:
            return cur
        prev = cur
        if not checked and n >= 12 and len(loc) >= 2 and len(vs) == 2:
            checked = True
            g = loc[0]
            for h in loc[1:]:
                g = gcd(g, h)
            if not g.is_constant() and g.constant_term() == 0:
                raise NotZeroDimensional("not zero-dimensional at point")
    raise NotZeroDimensional("not zero-dimensional at point")


def _monomials(nvars, n):
    """Exponent tuples of total degree < n, ordered by degree."""
    out = []
    for d in range(n):
        out.extend(_monos_of_degree(nvars, d))
    return out


def _monos_of_degree(nvars, d):
    if nvars == 1:
        return [(d,)]
    out = []
    for i in range(d, -1, -1):
        for rest in _monos_of_degree(nvars - 1, d - i):
            out.append((i,) + rest)
    return out


def _truncated_dim(loc, nvars, n, ctx):
    monos = _monomials(nvars, n)
    col = {m: i for i, m in enumerate(monos)}
    pivots = {}
    mul = ctx.mul
    inv = ctx.inv
    for g in loc:
        og = g.order()
        if og >= n:
            continue
        gt = [(e, c) for e, c in g.terms.items() if sum(e) < n]
        for m in monos:
            dm = sum(m)
            if dm + og >= n:
                break
            row = {}
            for e, c in gt:
                if dm + sum(e) < n:
                    row[col[tuple(a + b for a, b in zip(m, e))]] = c
            while row:
                c0 = min(row)
                pr = pivots.get(c0)
                if pr is None:
                    s = inv(row[c0])
                    pivots[c0] = {k: mul(v, s) for k, v in row.items()}
                    break
                f = row[c0]
                for k, v in pr.items():
                    nv = row.get(k, 0) ^ mul(f, v)
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
    return len(monos) - len(pivots)


# parsing

class _Parser:
    def __init__(self, text, ctx, allowed):
        self.s = text
        self.i = 0
        self.ctx = ctx
        self.allowed = allowed
        self.used = set()

    def err(self, msg, pos=None):
        raise ParseError(msg, self.s, self.i if pos is None else pos)

    def ws(self):
        while self.i < len(self.s) and self.s[self.i].isspace():
            self.i += 1

    def peek(self):
        self.ws()
        return self.s[self.i] if self.i < len(self.s) else ""

    def parse(self):
        if not self.s.strip():
            self.err("empty expression")
        r = self.expr()
        if self.peek():
            self.err(f"unexpected character {self.peek()!r}")
        return r

    def expr(self):
        if self.peek() in ("+", "-"):
            self.i += 1
        r = self.term()
        while self.peek() in ("+", "-"):
            self.i += 1
            r = _padd(r, self.term())
        return r

    def term(self):
        r = self.factor()
        while self.peek() == "*":
            self.i += 1
            r = _pmul(self.ctx, r, self.factor())
        return r

    def factor(self):
        r = self.base()
        while self.peek() == "^":
            self.i += 1
            r = _ppow(self.ctx, r, self.nat())
        return r

    def nat(self):
        self.ws()
        j = self.i
        while self.i < len(self.s) and self.s[self.i].isdigit():
            self.i += 1
        if j == self.i:
            self.err("expected a natural number")
        return int(self.s[j:self.i])

    def base(self):
        c = self.peek()
        if c == "(":
            self.i += 1
            r = self.expr()
            if self.peek() != ")":
                self.err("expected ')'")
            self.i += 1
            return r
        if c.isdigit():
            n = self.nat()
            return {(): n & 1} if n & 1 else {}
        if c == "g":
            self.i += 1
            return {(): self.ctx.generator}
        if c in _RANK:
            if self.allowed is not None and c not in self.allowed:
                self.err(f"variable {c!r} not allowed here")
            self.i += 1
            self.used.add(c)
            return {((c, 1),): 1}
        if not c:
            self.err("unexpected end of input")
        self.err(f"unexpected character {c!r}")


# parser-internal polynomials: dict from sorted ((name, exp), ...) to int

def _padd(a, b):
    r = dict(a)
    for k, c in b.items():
        v = r.get(k, 0) ^ c
        if v:
            r[k] = v
        else:
            r.pop(k, None)
    return r


def _mono_mul(m1, m2):
    d = dict(m1)
    for n, k in m2:
        d[n] = d.get(n, 0) + k
    return tuple(sorted(d.items()))


def _pmul(ctx, a, b):
    r = {}
    for k1, c1 in a.items():
        for k2, c2 in b.items():
            k = _mono_mul(k1, k2)
            v = r.get(k, 0) ^ ctx.mul(c1, c2)
            if v:
                r[k] = v
            else:
                r.pop(k, None)
    return r


def _ppow(ctx, a, n):
    r = {(): 1}
    for _ in range(n):
        r = _pmul(ctx, r, a)
    return r


def parse_poly(text: str, ctx: FieldCtx, vars=None) -> MultiPoly:
    """Parse an expression such as "x^3 + g*x*y^2 + x".

    With ``vars`` given, only those variables are accepted and the result
    lives in exactly that variable tuple.
    """
    allowed = set(vars) if vars is not None else None
    p = _Parser(text, ctx, allowed)
    raw = p.parse()
    vs = _sorted_vars(vars if vars is not None else p.used)
    terms = {}
    for mono, c in raw.items():
        d = dict(mono)
        terms[tuple(d.get(n, 0) for n in vs)] = c
    return MultiPoly._raw(ctx, vs, {e: c for e, c in terms.items() if c})


def parse_element(text: str, ctx: FieldCtx) -> int:
    """Parse a field constant such as "g^2 + 1"."""
    p = parse_poly(text, ctx, vars=())
    return p.constant_term()


def format_element(ctx: FieldCtx, a: int) -> str:
    return ctx.format(a)
