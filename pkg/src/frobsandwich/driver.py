"""Per-field configurations of singular points and the exhaustive survey."""

from __future__ import annotations

import itertools
import os
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .charts import (CHARTS, SingularPoint, chart_exprs, degree_of_foliation, geometric_points,
                     singular_scheme, transport)
from .derivation import (COEFF_NAMES, DerivationError, NormalFormCoefficients, PolyDerivation,
                         is_p_closed, normal_form_polys, normal_form_witness)
from .gf2k import FieldCtx, FieldError, field_make
from .invariants import invariant_ring, localize, relation_at
from .poly import gcd
from .rdp import RDPType, classify_rdp, is_singular, normalize_square_part

NAMED_LABELS = ("A1", "7A1", "D4^0+3A1", "D6^0+A1", "E7^0")
DEG_MINUS_ONE_LABELS = ("7A1", "D4^0+3A1", "D6^0+A1", "E7^0")
_A1 = RDPType("A", 1)


class ConfigurationError(ArithmeticError):
    pass


def expected_length(n: int) -> int:
    """Total length of the singular scheme for a foliation of degree n."""
    return n * n - 3 * n + 3


def _type_key(t: RDPType):
    return ({"E": 0, "D": 1, "A": 2}[t.letter], -t.index, t.coindex or 0)


def multiset_name(types) -> str:
    counts = Counter(types)
    parts = []
    for t in sorted(counts, key=_type_key):
        n = counts[t]
        parts.append(str(t) if n == 1 else f"{n}{t}")
    return "+".join(parts) if parts else "smooth"


def label_for(types) -> str:
    name = multiset_name(types)
    return name if name in NAMED_LABELS else f"OTHER({name})"


@dataclass
class Configuration:
    deg_L: int
    points: list  # (SingularPoint, RDPType) per Galois orbit
    label: str
    base: FieldCtx = field(repr=False, default=None)

    @property
    def lengths(self):
        out = []
        for p, _ in self.points:
            out.extend([p.length] * p.degree)
        return sorted(out, reverse=True)

    @property
    def types(self):
        out = []
        for p, t in self.points:
            out.extend([t] * p.degree)
        return out

    def to_json(self):
        total = sum(self.lengths)
        doc = {"deg_L": self.deg_L, "label": self.label,
               "multiset": multiset_name(self.types),
               "chern": {"total_length": total, "expected": expected_length(self.deg_L),
                         "ok": chern_check(self)}}
        pts = []
        try:
            big, geo = geometric_points([p for p, _ in self.points], self.base)
            types = [t for p, t in self.points for _ in range(p.degree)]
            doc["field"] = f"GF(2^{big.k})"
            for sp, t in zip(geo, types):
                pts.append(_point_json(sp, t))
        except FieldError:
            doc["field"] = "orbits"
            for sp, t in self.points:
                j = _point_json(sp, t)
                j["orbit_size"] = sp.degree
                j["field"] = f"GF(2^{sp.ctx.k})"
                pts.append(j)
        doc["points"] = pts
        return doc


def _point_json(sp: SingularPoint, t: RDPType):
    j = sp.to_json()
    j["type"] = str(t)
    j["on_lines"] = [f"X{i}" for i, c in enumerate(sp.homogeneous) if c == 0]
    return j


def chern_check(c: Configuration) -> bool:
    return sum(c.lengths) == expected_length(c.deg_L)


def configuration(d: PolyDerivation, extend: bool = True, cache: dict | None = None,
                  verify: bool = True, checked: bool = False) -> Configuration:
    """Degree, singular points and their RDP types for a field on U0.

    ``checked=True`` means the caller already knows F, G are coprime and
    delta is p-closed, so neither is tested again.
    """
    if d.chart != "U0":
        raise ConfigurationError("expected a vector field on U0")
    if verify and not checked and not is_p_closed(d)[0]:
        raise ConfigurationError("vector field is not p-closed")
    exprs = chart_exprs(d, True if checked else None)
    deg = degree_of_foliation(d, exprs)
    pts = singular_scheme(d, extend, exprs)
    pres = {}
    out = []
    for p in pts:
        if p.chart not in pres:
            D = exprs[p.chart].derivation()
            # transports of a p-closed field stay p-closed
            pr = invariant_ring(D, check_p_closed=False)
            if verify and relation_at(pr, D.vars) != pr.h.square():
                raise ConfigurationError("h^2 does not match the relation")
            pres[p.chart] = pr
        germ = normalize_square_part(localize(pres[p.chart], p), rescale=False)
        if not is_singular(germ):
            raise ConfigurationError("degeneracy point maps to a smooth point")
        if germ.coeff((1, 1)):
            t = _A1
        elif cache is None:
            t = classify_rdp(germ)
        else:
            # rescaling X, Y, Z does not change the type, so cache on the rescaled germ
            key = (germ.ctx.k, str(normalize_square_part(germ)))
            t = cache.get(key)
            if t is None:
                t = cache[key] = classify_rdp(germ)
        out.append((p, t))
    conf = Configuration(deg, out, "", d.ctx)
    conf.label = label_for(conf.types)
    if verify and not chern_check(conf):
        raise ConfigurationError("total length differs from n^2 - 3n + 3")
    return conf


def configuration_affine(d: PolyDerivation, extend: bool = True):
    """Singular points on the affine chart only (affine quotients A^2 / delta)."""
    from .charts import solve_bivariate
    pr = invariant_ring(d)
    own = transport(d, d.chart)
    res = []
    from .charts import _homogeneous, _length
    for P in solve_bivariate(own.f, own.g, extend):
        sp = SingularPoint(d.chart, P.coords, _homogeneous(d.chart, P.coords, P.ctx),
                           _length(own.f, own.g, P.emb, P.coords), P.ctx, P.emb, P.degree)
        germ = normalize_square_part(localize(pr, sp), rescale=False)
        res.append((sp, classify_rdp(germ)))
    return pr, res


# survey

def all_tuples(ctx: FieldCtx):
    return itertools.product(range(ctx.order), repeat=7)


def tuple_at(ctx: FieldCtx, index: int):
    q = ctx.order
    out = []
    for _ in range(7):
        index, r = divmod(index, q)
        out.append(r)
    return tuple(reversed(out))


def check_tuple(ctx: FieldCtx, t, cache=None):
    """Classify one coefficient tuple.

    Returns ("ii", None), ("iii", None) or ("ok", (deg, label, problems)).
    """
    a30, a12, a20, a02, a10, b20, b02 = t
    if not (a30 or a12 or a20 or a02 or a10):
        return "ii", None
    if not (a30 or a12 or b20 or b02 or a10):
        return "ii", None
    c = NormalFormCoefficients(*t)
    F, G = normal_form_polys(c, ctx)
    if not gcd(F, G).is_constant():
        return "iii", None
    d = PolyDerivation(F, G, "U0", validate=False)
    problems = []
    closed, H = is_p_closed(d)
    if not closed:
        problems.append("not p-closed")
    elif H != normal_form_witness(c, ctx):
        problems.append("unexpected p-closure witness")
    try:
        conf = configuration(d, cache=cache, checked=closed)
    except (ArithmeticError, ValueError) as e:
        problems.append(f"error: {e}")
        return "ok", (None, None, problems)
    deg, label = conf.deg_L, conf.label
    if deg not in (1, -1):
        problems.append(f"deg_L = {deg}")
    if deg == 1 and label != "A1":
        problems.append("deg_L = 1 but label is not A1")
    if deg == -1 and label not in DEG_MINUS_ONE_LABELS:
        problems.append("deg_L = -1 with an unexpected label")
    if not conf.points:
        problems.append("empty singular set")
    if not chern_check(conf):
        problems.append("length identity fails")
    for p, typ in conf.points:
        if p.length != typ.index:
            problems.append(f"length {p.length} disagrees with type {typ}")
    return "ok", (deg, label, problems)


def length_identity_scan(ctx: FieldCtx):
    """Check sum of lengths = n^2 - 3n + 3 on every accepted tuple, skipping RDP work.

    Returns (accepted count, list of failing indices).
    """
    accepted, bad = 0, []
    for i, t in enumerate(all_tuples(ctx)):
        a30, a12, a20, a02, a10, b20, b02 = t
        if not (a30 or a12 or a20 or a02 or a10) or not (a30 or a12 or b20 or b02 or a10):
            continue
        F, G = normal_form_polys(NormalFormCoefficients(*t), ctx)
        if not gcd(F, G).is_constant():
            continue
        accepted += 1
        d = PolyDerivation(F, G, "U0", validate=False)
        try:
            exprs = chart_exprs(d, True)
            n = degree_of_foliation(d, exprs)
            total = sum(p.length * p.degree for p in singular_scheme(d, True, exprs))
        except (ArithmeticError, ValueError):
            bad.append(i)
            continue
        if total != expected_length(n):
            bad.append(i)
    return accepted, bad


@dataclass
class SurveyReport:
    field_size: int
    mode: str
    examined: int = 0
    accepted: int = 0
    rejected_ii: int = 0
    rejected_iii: int = 0
    histogram: Counter = field(default_factory=Counter)
    violations: list = field(default_factory=list)

    def merge(self, other: "SurveyReport"):
        self.examined += other.examined
        self.accepted += other.accepted
        self.rejected_ii += other.rejected_ii
        self.rejected_iii += other.rejected_iii
        self.histogram.update(other.histogram)
        self.violations.extend(other.violations)

    def assertions(self):
        h = self.histogram
        degs = {int(k.split("/")[0][5:]) for k in h if k.split("/")[0][5:] != "None"}
        labels = {k.split("/", 1)[1] for k in h if k.startswith("degL=-1/")}
        return {
            "no_degree_zero": 0 not in degs,
            "degree_one_is_A1": all(k == "degL=1/A1" for k in h if k.startswith("degL=1/")),
            "degree_minus_one_labels": labels <= set(DEG_MINUS_ONE_LABELS),
            "all_degree_minus_one_labels_realized": labels >= set(DEG_MINUS_ONE_LABELS),
            "singular_set_nonempty": not any("empty singular set" in v["problems"]
                                             for v in self.violations),
            "no_violations": not self.violations,
        }

    def ok(self) -> bool:
        a = self.assertions()
        if self.mode != "exhaustive":
            a.pop("all_degree_minus_one_labels_realized")
        return all(a.values())

    def to_json(self, ctx: FieldCtx):
        return {
            "field": self.field_size,
            "mode": self.mode,
            "examined": self.examined,
            "accepted": self.accepted,
            "rejected_ii": self.rejected_ii,
            "rejected_iii": self.rejected_iii,
            "histogram": {k: self.histogram[k] for k in sorted(self.histogram)},
            "assertions": self.assertions(),
            "violations": [
                {"index": v["index"],
                 "coeffs": {n: ctx.format(c) for n, c in zip(COEFF_NAMES, v["coeffs"])},
                 "problems": v["problems"]}
                for v in sorted(self.violations, key=lambda v: v["index"])],
        }


def _run_indices(k: int, indices, mode: str) -> SurveyReport:
    ctx = field_make(k)
    rep = SurveyReport(ctx.order, mode)
    cache = {}
    for i in indices:
        t = tuple_at(ctx, i)
        rep.examined += 1
        status, data = check_tuple(ctx, t, cache)
        if status == "ii":
            rep.rejected_ii += 1
            continue
        if status == "iii":
            rep.rejected_iii += 1
            continue
        rep.accepted += 1
        deg, label, problems = data
        rep.histogram[f"degL={deg}/{label}"] += 1
        if problems:
            rep.violations.append({"index": i, "coeffs": t, "problems": problems})
    return rep


def _shard(args):
    k, lo, hi, mode, idx = args
    indices = range(lo, hi) if idx is None else idx
    return _run_indices(k, indices, mode)


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("FROBSANDWICH_WORKERS", "1")))
    except ValueError:
        return 1


def survey(ctx: FieldCtx, workers: int | None = None, samples: int | None = None,
           seed: int = 0, shard_size: int = 2048) -> SurveyReport:
    """Run the normal-form survey, exhaustively or on a seeded random sample."""
    workers = workers or default_workers()
    total = ctx.order ** 7
    if samples is None:
        mode = "exhaustive"
        jobs = [(ctx.k, lo, min(lo + shard_size, total), mode, None)
                for lo in range(0, total, shard_size)]
    else:
        mode = "sampled"
        rng = random.Random(seed)
        idx = sorted(rng.sample(range(total), min(samples, total)))
        jobs = [(ctx.k, 0, 0, mode, idx[i:i + shard_size])
                for i in range(0, len(idx), shard_size)]
    rep = SurveyReport(ctx.order, mode)
    if workers == 1 or len(jobs) == 1:
        for j in jobs:
            rep.merge(_shard(j))
    else:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            for part in ex.map(_shard, jobs):
                rep.merge(part)
    return rep


def parse_coeffs(text: str, ctx: FieldCtx) -> NormalFormCoefficients:
    try:
        return NormalFormCoefficients.parse(text, ctx)
    except DerivationError:
        raise


__all__ = [
    "CHARTS", "Configuration", "SurveyReport", "chern_check", "configuration",
    "configuration_affine", "expected_length", "label_for", "multiset_name", "survey",
    "check_tuple", "tuple_at", "all_tuples", "parse_coeffs", "length_identity_scan",
]
