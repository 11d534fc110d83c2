"""Dense univariate polynomials over GF(2^k).

A polynomial is a list of int coefficients, lowest degree first, with no
trailing zeros; the zero polynomial is ``[]``.
"""

from __future__ import annotations

import random


def trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def deg(a) -> int:
    return len(a) - 1


def add(a, b):
    if len(a) < len(b):
        a, b = b, a
    r = list(a)
    for i, c in enumerate(b):
        r[i] ^= c
    return trim(r)


def scale(ctx, a, c):
    if c == 0:
        return []
    return [ctx.mul(x, c) for x in a]


def mul(ctx, a, b):
    if not a or not b:
        return []
    r = [0] * (len(a) + len(b) - 1)
    exp, log = ctx._exp, ctx._log
    if exp is None:
        m = ctx.mul
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        r[i + j] ^= m(x, y)
        return r
    lb = [(j, log[y]) for j, y in enumerate(b) if y]
    for i, x in enumerate(a):
        if x:
            lx = log[x]
            for j, ly in lb:
                r[i + j] ^= exp[lx + ly]
    return r


def divmod_(ctx, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], trim(a)
    q = [0] * (len(a) - db)
    exp, log = ctx._exp, ctx._log
    if exp is None:
        inv = ctx.inv(b[-1])
        m = ctx.mul
        for i in range(len(a) - 1, db - 1, -1):
            c = a[i]
            if c:
                c = m(c, inv)
                q[i - db] = c
                for j in range(db + 1):
                    if b[j]:
                        a[i - db + j] ^= m(c, b[j])
        return trim(q), trim(a[:db])
    n = len(exp) >> 1
    linv = n - log[b[-1]]
    lb = [(j, log[y]) for j, y in enumerate(b) if y]
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            lc = log[c] + linv
            if lc >= n:
                lc -= n
            q[i - db] = exp[lc]
            base = i - db
            for j, ly in lb:
                a[base + j] ^= exp[lc + ly]
    return trim(q), trim(a[:db])


def rem(ctx, a, b):
    db = len(b) - 1
    exp = ctx._exp
    if exp is None or db < 0 or len(a) - 1 < db:
        return divmod_(ctx, a, b)[1]
    log = ctx._log
    a = list(a)
    n = len(exp) >> 1
    linv = n - log[b[-1]]
    lb = [(j, log[y]) for j, y in enumerate(b[:-1]) if y]
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            lc = log[c] + linv
            if lc >= n:
                lc -= n
            base = i - db
            for j, ly in lb:
                a[base + j] ^= exp[lc + ly]
    a = a[:db]
    while a and a[-1] == 0:
        a.pop()
    return a


def monic(ctx, a):
    if not a:
        return []
    if a[-1] == 1:
        return list(a)
    return scale(ctx, a, ctx.inv(a[-1]))


def gcd(ctx, a, b):
    a, b = trim(a), trim(b)
    while b:
        if len(b) == 1:
            return [1]
        a, b = b, rem(ctx, a, b)
    return monic(ctx, a)


def evaluate(ctx, a, t):
    r = 0
    for c in reversed(a):
        r = ctx.mul(r, t) ^ c
    return r


def derivative(a):
    return trim([a[i] if i % 2 == 1 else 0 for i in range(1, len(a))])


def mulmod(ctx, a, b, f):
    return rem(ctx, mul(ctx, a, b), f)


def powmod(ctx, a, e, f):
    r = [1]
    a = rem(ctx, a, f)
    while e:
        if e & 1:
            r = mulmod(ctx, r, a, f)
        e >>= 1
        if e:
            a = mulmod(ctx, a, a, f)
    return rem(ctx, r, f)


def frob_pow_x(ctx, f, times):
    """x^(q^times) mod f, where q is the field size."""
    r = rem(ctx, [0, 1], f)
    for _ in range(times * ctx.k):
        r = mulmod(ctx, r, r, f)
    return r


def psqrt(ctx, a):
    """Square root of a polynomial that is a perfect square."""
    out = []
    for i in range(0, len(a), 2):
        out.append(ctx.sqrt(a[i]))
    for i in range(1, len(a), 2):
        if a[i]:
            raise ValueError("not a square")
    return trim(out)


def radical(ctx, f):
    """Product of the distinct monic irreducible factors of f."""
    f = monic(ctx, trim(f))
    if len(f) <= 1:
        return [1]
    d = derivative(f)
    if not d:
        return radical(ctx, psqrt(ctx, f))
    g = gcd(ctx, f, d)
    w = monic(ctx, divmod_(ctx, f, g)[0])
    while True:
        c = gcd(ctx, g, w)
        if len(c) <= 1:
            break
        g = divmod_(ctx, g, c)[0]
    if len(g) <= 1:
        return w
    return mul(ctx, w, radical(ctx, psqrt(ctx, monic(ctx, g))))


def ddf(ctx, f):
    """Distinct-degree factorization of a monic squarefree f.

    Returns a list of (d, product of all irreducible factors of degree d).
    """
    out = []
    f = monic(ctx, f)
    h = rem(ctx, [0, 1], f)
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        for _ in range(ctx.k):
            h = mulmod(ctx, h, h, f)
        g = gcd(ctx, f, add(h, [0, 1]))
        if len(g) > 1:
            out.append((d, g))
            f = divmod_(ctx, f, g)[0]
            h = rem(ctx, h, f)
    if len(f) > 1:
        out.append((len(f) - 1, f))
    return out


def _trace_map(ctx, a, d, f):
    """Absolute trace sum_{i < k*d} a^(2^i) mod f."""
    t = list(a)
    s = list(a)
    for _ in range(ctx.k * d - 1):
        t = mulmod(ctx, t, t, f)
        s = add(s, t)
    return s


def edf(ctx, f, d, seed=0):
    """Split a monic squarefree f whose factors all have degree d."""
    f = monic(ctx, f)
    n = len(f) - 1
    if n == d:
        return [f]
    rng = random.Random(seed * 7919 + n)
    while True:
        a = trim([rng.randrange(ctx.order) for _ in range(n)])
        if len(a) <= 1:
            continue
        t = _trace_map(ctx, a, d, f)
        g = gcd(ctx, f, t)
        if 1 < len(g) < len(f):
            h = monic(ctx, divmod_(ctx, f, g)[0])
            return edf(ctx, g, d, seed + 1) + edf(ctx, h, d, seed + 2)


def factor_squarefree(ctx, f):
    """Distinct monic irreducible factors of f, sorted by (degree, coefficients)."""
    f = trim(f)
    if len(f) == 2:
        return [monic(ctx, f)]
    r = radical(ctx, f)
    if len(r) <= 1:
        return []
    out = []
    for d, g in ddf(ctx, r):
        out.extend(edf(ctx, g, d))
    out.sort(key=lambda p: (len(p), p[::-1]))
    return out


def roots(ctx, f):
    """Sorted list of the distinct roots of f in the field."""
    f = trim(f)
    if not f:
        raise ValueError("identically zero")
    if len(f) == 2:
        return [ctx.div(f[0], f[1])]
    if ctx.order <= 64:
        return [t for t in range(ctx.order) if evaluate(ctx, f, t) == 0]
    r = radical(ctx, f)
    if len(r) <= 1:
        return []
    lin = gcd(ctx, r, add(frob_pow_x(ctx, r, 1), [0, 1]))
    if len(lin) <= 1:
        return []
    return sorted(p[0] for p in edf(ctx, lin, 1))


def from_bits(m: int):
    """GF(2) polynomial encoded as a bit mask."""
    return [(m >> i) & 1 for i in range(m.bit_length())]
