"""Canonical serialization.

One format family covers everything: rationals are "p/r" decimal strings,
q-polynomials are sparse [exponent, "p/r"] pair lists with exponents
ascending, a rational function is {"num": ..., "den": ...}, an x-polynomial
is a [x-exponent, rational-function] pair list, and a tree series is
{"order", "ring", "entries"} with entries sorted by (size, encoding).
The canonical JSON form (sorted keys, no spaces, trailing newline added by
callers) is byte-stable across runs, which the cache hashes rely on.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .algebra import QPoly, QRat, QSeries, XPoly
from . import trees as tr
from .series import TreeSeries


def frac_to_str(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def frac_from_str(s: str) -> Fraction:
    return Fraction(s)


def qpoly_to_pairs(p: QPoly) -> list:
    return [[e, frac_to_str(c)] for e, c in enumerate(p.coeffs) if c != 0]


def qpoly_from_pairs(pairs) -> QPoly:
    if not pairs:
        return QPoly()
    top = max(e for e, _ in pairs)
    coeffs = [Fraction(0)] * (top + 1)
    for e, s in pairs:
        coeffs[e] = frac_from_str(s)
    return QPoly(coeffs)


def qrat_to_obj(r: QRat) -> dict:
    return {"num": qpoly_to_pairs(r.num), "den": qpoly_to_pairs(r.den)}


def qrat_from_obj(obj) -> QRat:
    return QRat(qpoly_from_pairs(obj["num"]), qpoly_from_pairs(obj["den"]))


def xpoly_to_obj(f: XPoly) -> list:
    return [[j, qrat_to_obj(c)] for j, c in enumerate(f.coeffs) if not c.is_zero()]


def xpoly_from_obj(obj) -> XPoly:
    if not obj:
        return XPoly()
    top = max(j for j, _ in obj)
    coeffs: list = [0] * (top + 1)
    for j, o in obj:
        coeffs[j] = qrat_from_obj(o)
    return XPoly(coeffs)


def qseries_to_obj(s: QSeries) -> dict:
    return {"order": s.order, "coeffs": [frac_to_str(c) for c in s.coeffs]}


def qseries_from_obj(obj) -> QSeries:
    return QSeries([frac_from_str(c) for c in obj["coeffs"]], obj["order"])


def value_to_obj(ring: str, v):
    if ring == "rational":
        return frac_to_str(v)
    if ring == "qrat":
        return qrat_to_obj(v)
    if ring == "xpoly":
        return xpoly_to_obj(v)
    if ring == "qseries":
        return qseries_to_obj(v)
    raise ValueError(f"unknown ring {ring!r}")


def value_from_obj(ring: str, obj):
    if ring == "rational":
        return frac_from_str(obj)
    if ring == "qrat":
        return qrat_from_obj(obj)
    if ring == "xpoly":
        return xpoly_from_obj(obj)
    if ring == "qseries":
        return qseries_from_obj(obj)
    raise ValueError(f"unknown ring {ring!r}")


def series_to_obj(s: TreeSeries) -> dict:
    entries = [[tr.encoding(t), value_to_obj(s.ring, v)] for t, v in s.items()]
    return {"order": s.order, "ring": s.ring, "entries": entries}


def series_from_obj(obj) -> TreeSeries:
    ring = obj["ring"]
    coeffs = {tr.parse(enc): value_from_obj(ring, v) for enc, v in obj["entries"]}
    return TreeSeries(obj["order"], ring, coeffs)


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
