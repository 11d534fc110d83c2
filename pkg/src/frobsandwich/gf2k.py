"""Arithmetic in the finite fields GF(2^k), 1 <= k <= 32.

Elements are stored as plain ints holding the coefficient bits of a
polynomial in the generator ``g`` reduced modulo a fixed primitive
polynomial.  ``FieldElement`` is a thin value wrapper for callers who want
operator syntax; the hot paths of the library work on bare ints through the
methods of ``FieldCtx``.
"""

from __future__ import annotations

import functools

MAX_K = 32

# One primitive polynomial per degree, given by its nonzero exponents.
# k = 1 uses the modulus x, so GF(2) = F2[x]/(x) and the generator is 1.
MODULI: dict[int, tuple[int, ...]] = {
    1: (1,),
    2: (2, 1, 0),
    3: (3, 1, 0),
    4: (4, 1, 0),
    5: (5, 2, 0),
    6: (6, 1, 0),
    7: (7, 1, 0),
    8: (8, 7, 2, 1, 0),
    9: (9, 4, 0),
    10: (10, 3, 0),
    11: (11, 2, 0),
    12: (12, 8, 2, 1, 0),
    13: (13, 5, 2, 1, 0),
    14: (14, 12, 2, 1, 0),
    15: (15, 1, 0),
    16: (16, 12, 3, 1, 0),
    17: (17, 3, 0),
    18: (18, 7, 0),
    19: (19, 5, 2, 1, 0),
    20: (20, 3, 0),
    21: (21, 2, 0),
    22: (22, 1, 0),
    23: (23, 5, 0),
    24: (24, 7, 2, 1, 0),
    25: (25, 3, 0),
    26: (26, 6, 2, 1, 0),
    27: (27, 5, 2, 1, 0),
    28: (28, 3, 0),
    29: (29, 2, 0),
    30: (30, 23, 2, 1, 0),
    31: (31, 3, 0),
    32: (32, 22, 2, 1, 0),
}

TABLE_LIMIT = 16


class FieldError(ValueError):
    pass


def _bits(exps):
    m = 0
    for e in exps:
        m |= 1 << e
    return m


def _clmul_mod(a: int, b: int, k: int, mod: int) -> int:
    """Carry-less product of a and b reduced modulo the degree-k polynomial mod."""
    top = 1 << k
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a & top:
            a ^= mod
    return r


class FieldCtx:
    """The field GF(2^k) with its canonical modulus.

    Use ``field_make`` to obtain instances; contexts are cached, so two
    contexts for the same k are the same object.
    """

    def __init__(self, k: int):
        if not isinstance(k, int) or k < 1 or k > MAX_K:
            raise FieldError("unsupported field size")
        self.k = k
        self.modulus = _bits(MODULI[k])
        self.order = 1 << k
        self.generator = 1 if k == 1 else 2
        self._exp = None
        self._log = None
        if k == 1:
            self._exp, self._log = [1, 1], [0, 0]
        elif k <= TABLE_LIMIT:
            self._build_tables()

    def _build_tables(self):
        n = self.order - 1
        exp = [0] * (2 * n)
        log = [0] * self.order
        v = 1
        top = self.order
        for i in range(n):
            exp[i] = v
            log[v] = i
            v <<= 1
            if v & top:
                v ^= self.modulus
        if v != 1:
            raise FieldError(f"modulus for k={self.k} is not primitive")
        for i in range(n, 2 * n):
            exp[i] = exp[i - n]
        self._exp = exp
        self._log = log

    def __reduce__(self):
        return (field_make, (self.k,))

    def __repr__(self):
        return f"GF(2^{self.k})"

    @property
    def q(self) -> int:
        return self.order

    def elements(self):
        return range(self.order)

    # scalar arithmetic on ints

    def mul(self, a: int, b: int) -> int:
        if not a or not b:
            return 0
        if self._exp is not None:
            return self._exp[self._log[a] + self._log[b]]
        return _clmul_mod(a, b, self.k, self.modulus)

    def square(self, a: int) -> int:
        return self.mul(a, a)

    def pow(self, a: int, e: int) -> int:
        n = self.order - 1
        if e < 0:
            a = self.inv(a)
            e = -e
        if a == 0:
            return 1 if e == 0 else 0
        if self._exp is not None:
            return self._exp[(self._log[a] * e) % n]
        e %= n
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        if self._exp is not None:
            n = self.order - 1
            return self._exp[(n - self._log[a]) % n]
        return self.pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def sqrt(self, a: int) -> int:
        """The unique b with b*b == a, namely a^(2^(k-1))."""
        if a == 0 or self.k == 1:
            return a
        if self._exp is not None:
            n = self.order - 1
            return self._exp[(self._log[a] * (self.order >> 1)) % n]
        for _ in range(self.k - 1):
            a = self.mul(a, a)
        return a

    def frobenius(self, a: int, j: int = 1) -> int:
        """a^(2^j)."""
        for _ in range(j % self.k):
            a = self.mul(a, a)
        return a

    def log(self, a: int) -> int:
        if a == 0:
            raise ValueError("log of zero")
        if self._log is not None:
            return self._log[a]
        # discrete logs are only needed in small fields
        raise FieldError("discrete log unavailable for large fields")

    def elem(self, v: int) -> "FieldElement":
        return FieldElement(self, v)

    def gen(self) -> "FieldElement":
        return FieldElement(self, self.generator)

    def format(self, a: int) -> str:
        """Element as a polynomial in g, e.g. "g^2 + g + 1"."""
        if a == 0:
            return "0"
        parts = []
        for i in range(a.bit_length() - 1, -1, -1):
            if a >> i & 1:
                parts.append("1" if i == 0 else "g" if i == 1 else f"g^{i}")
        return " + ".join(parts)


@functools.lru_cache(maxsize=None)
def field_make(k: int) -> FieldCtx:
    """Canonical context for GF(2^k)."""
    if not isinstance(k, int) or k < 1 or k > MAX_K:
        raise FieldError("unsupported field size")
    return FieldCtx(k)


def field_for_order(q: int) -> FieldCtx:
    """Context for a field given by its size q = 2^k."""
    if q < 2 or q & (q - 1):
        raise FieldError(f"field size must be a power of 2, got {q}")
    return field_make(q.bit_length() - 1)


class FieldElement:
    """Value wrapper around an int in a given field."""

    __slots__ = ("ctx", "v")

    def __init__(self, ctx: FieldCtx, v: int):
        if v < 0 or v >= ctx.order:
            raise FieldError("element out of range")
        self.ctx = ctx
        self.v = v

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.ctx is not self.ctx:
                raise FieldError("elements of different fields")
            return other.v
        if isinstance(other, int):
            return other & 1
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.v ^ o)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.mul(self.v, o))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.div(self.v, o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.ctx, self.ctx.div(o, self.v))

    def __pow__(self, e: int):
        return FieldElement(self.ctx, self.ctx.pow(self.v, e))

    def inverse(self):
        return FieldElement(self.ctx, self.ctx.inv(self.v))

    def sqrt(self):
        return FieldElement(self.ctx, self.ctx.sqrt(self.v))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.ctx is other.ctx and self.v == other.v
        if isinstance(other, int):
            return self.v == other
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.k, self.v))

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return f"FieldElement({self.ctx!r}, {self.ctx.format(self.v)})"

    def __str__(self):
        return self.ctx.format(self.v)


def sqrt(a: FieldElement) -> FieldElement:
    return a.sqrt()


def _as_ints(ctx, coeffs):
    out = []
    for c in coeffs:
        out.append(c.v if isinstance(c, FieldElement) else int(c))
    return out


def poly_roots(coeffs, ctx: FieldCtx | None = None) -> set:
    """All roots in the field of sum(coeffs[i] * t^i), found by evaluation.

    Coefficients may be FieldElements or ints (then ``ctx`` is required).
    The result has the same element type as the input.
    """
    if ctx is None:
        if not coeffs or not isinstance(coeffs[0], FieldElement):
            raise FieldError("field context required")
        ctx = coeffs[0].ctx
    cs = _as_ints(ctx, coeffs)
    if not any(cs):
        raise FieldError("identically zero")
    wrap = bool(coeffs) and isinstance(coeffs[0], FieldElement)
    if ctx.order > (1 << 16):
        from . import upoly
        found = upoly.roots(ctx, cs)
    else:
        found = [a for a in ctx.elements() if _horner(ctx, cs, a) == 0]
    if wrap:
        return {FieldElement(ctx, a) for a in found}
    return set(found)


def _horner(ctx, cs, a):
    r = 0
    for c in reversed(cs):
        r = ctx.mul(r, a) ^ c
    return r


class Embedding:
    """Field homomorphism src -> dst fixed by the image of src's generator."""

    def __init__(self, src: FieldCtx, dst: FieldCtx, image: int):
        self.src = src
        self.dst = dst
        self.image = image
        basis = []
        p = 1
        for _ in range(src.k):
            basis.append(p)
            p = dst.mul(p, image)
        self._basis = basis
        self._table = None
        if src.order <= 256:
            self._table = [self._apply(a) for a in range(src.order)]

    def _apply(self, a):
        r = 0
        i = 0
        while a:
            if a & 1:
                r ^= self._basis[i]
            a >>= 1
            i += 1
        return r

    def __call__(self, a):
        if isinstance(a, FieldElement):
            return FieldElement(self.dst, self(a.v))
        if self._table is not None:
            return self._table[a]
        return self._apply(a)

    def compose(self, after: "Embedding") -> "Embedding":
        """The embedding ``after o self``."""
        if after.src is not self.dst:
            raise FieldError("embeddings do not compose")
        return _make_embedding(self.src, after.dst, after(self.image))

    def __reduce__(self):
        return (Embedding, (self.src, self.dst, self.image))

    def __repr__(self):
        return f"Embedding({self.src!r} -> {self.dst!r})"


@functools.lru_cache(maxsize=4096)
def _make_embedding(src: FieldCtx, dst: FieldCtx, image: int) -> Embedding:
    return Embedding(src, dst, image)


def identity(ctx: FieldCtx) -> Embedding:
    return _make_embedding(ctx, ctx, ctx.generator)


def _modulus_roots(src: FieldCtx, dst: FieldCtx) -> list[int]:
    mod = [(src.modulus >> i) & 1 for i in range(src.k + 1)]
    from . import upoly
    return upoly.roots(dst, mod)


@functools.lru_cache(maxsize=None)
def _default_image(ks: int, kd: int) -> int:
    src, dst = field_make(ks), field_make(kd)
    return min(_modulus_roots(src, dst))


def embedding(src: FieldCtx, dst: FieldCtx) -> Embedding:
    """Canonical embedding of GF(2^a) into GF(2^b) for a | b."""
    if dst.k % src.k:
        raise FieldError(f"GF(2^{src.k}) is not a subfield of GF(2^{dst.k})")
    if src is dst:
        return identity(src)
    return _cached_embedding(src.k, dst.k)


@functools.lru_cache(maxsize=None)
def _cached_embedding(ks, kd):
    return Embedding(field_make(ks), field_make(kd), _default_image(ks, kd))


def field_extend(ctx: FieldCtx, m: int):
    """GF(2^(k*m)) with the canonical embedding of ctx into it."""
    if m < 1:
        raise FieldError("extension degree must be positive")
    if ctx.k * m > MAX_K:
        raise FieldError("extension too large")
    big = field_make(ctx.k * m)
    return big, embedding(ctx, big)


def compatible_embedding(mid: Embedding, big: Embedding) -> Embedding:
    """An embedding e of mid.dst into big.dst with e o mid == big.

    ``mid`` and ``big`` must share their source field.
    """
    if mid.src is not big.src:
        raise FieldError("embeddings have different sources")
    src, a, b = mid.src, mid.dst, big.dst
    if b.k % a.k:
        raise FieldError(f"GF(2^{a.k}) is not a subfield of GF(2^{b.k})")
    g = src.generator
    for r in sorted(_modulus_roots(a, b)):
        e = Embedding(a, b, r)
        if e(mid(g)) == big(g):
            return e
    raise FieldError("no compatible embedding")
