"""Truncated Laurent series with exact coefficients.

A series knows its variable tag, a lower storage bound ``min_degree``
(degrees below it are exactly zero), and an exclusive ``precision`` (degrees
at or above it are unknown, not zero).  Products propagate the sharp big-O
law prec = min(prec_a + val_b, prec_b + val_a); for the usual valuation-0
operands this is the minimum of the two precisions.  Coefficients are
Fractions or NumberFieldElements.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import PrecisionError, SeriesDomainError, VariableMismatchError
from .scalars import NumberFieldElement, format_rational, parse_rational, scalar_is_zero


def _inv_scalar(c):
    return c.inverse() if isinstance(c, NumberFieldElement) else 1 / Fraction(c)


class TruncatedLaurentSeries:
    __slots__ = ("variable", "min_degree", "precision", "coeffs")

    def __init__(self, variable: str, coeffs, min_degree: int, precision: int):
        if precision <= min_degree:
            raise PrecisionError(
                "empty precision window [%d, %d)" % (min_degree, precision)
            )
        self.variable = variable
        self.min_degree = min_degree
        self.precision = precision
        clean = {}
        for d, c in dict(coeffs).items():
            d = int(d)
            if scalar_is_zero(c):
                continue
            if d < min_degree or d >= precision:
                raise ValueError(
                    "stored degree %d outside window [%d, %d)"
                    % (d, min_degree, precision)
                )
            clean[d] = c if isinstance(c, NumberFieldElement) else Fraction(c)
        self.coeffs = clean

    # -- constructors --------------------------------------------------------

    @classmethod
    def from_terms(cls, variable, terms, precision, min_degree=None):
        terms = {int(d): c for d, c in dict(terms).items() if not scalar_is_zero(c)}
        if min_degree is None:
            min_degree = min([0] + list(terms))
        return cls(variable, terms, min_degree, precision)

    @classmethod
    def one(cls, variable, precision):
        return cls(variable, {0: Fraction(1)}, 0, precision)

    @classmethod
    def zero(cls, variable, precision, min_degree=0):
        return cls(variable, {}, min_degree, precision)

    @classmethod
    def monomial(cls, variable, degree, coeff, precision):
        return cls(variable, {degree: coeff}, min(0, degree), precision)

    # -- basics --------------------------------------------------------------

    def coefficient(self, d: int):
        if d >= self.precision:
            raise PrecisionError(
                "degree %d at or beyond precision %d" % (d, self.precision)
            )
        return self.coeffs.get(d, Fraction(0))

    def valuation(self):
        """Degree of the lowest known nonzero coefficient (None if none)."""
        return min(self.coeffs) if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == {0: Fraction(1)}

    def _check_var(self, other):
        if self.variable != other.variable:
            raise VariableMismatchError(
                "series variables differ: %r vs %r" % (self.variable, other.variable)
            )

    def _coerce(self, other):
        if isinstance(other, (int, Fraction, NumberFieldElement)):
            return TruncatedLaurentSeries(
                self.variable,
                {0: other},
                min(0, self.min_degree),
                self.precision,
            )
        if isinstance(other, TruncatedLaurentSeries):
            return other
        return None

    def truncate(self, precision: int) -> "TruncatedLaurentSeries":
        precision = min(precision, self.precision)
        return TruncatedLaurentSeries(
            self.variable,
            {d: c for d, c in self.coeffs.items() if d < precision},
            min(self.min_degree, precision - 1),
            precision,
        )

    def __eq__(self, other):
        if not isinstance(other, TruncatedLaurentSeries):
            return NotImplemented
        return (
            self.variable == other.variable
            and self.precision == other.precision
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.variable, self.precision, tuple(sorted(self.coeffs.items()))))

    def same_to_precision(self, other) -> bool:
        """Equality of all coefficients below the common precision."""
        self._check_var(other)
        p = min(self.precision, other.precision)
        a = {d: c for d, c in self.coeffs.items() if d < p}
        b = {d: c for d, c in other.coeffs.items() if d < p}
        return a == b

    # -- ring operations -----------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        self._check_var(other)
        prec = min(self.precision, other.precision)
        out = {}
        for d in set(self.coeffs) | set(other.coeffs):
            if d < prec:
                out[d] = self.coeffs.get(d, 0) + other.coeffs.get(d, 0)
        return TruncatedLaurentSeries(
            self.variable, out, min(self.min_degree, other.min_degree), prec
        )

    __radd__ = __add__

    def __neg__(self):
        return TruncatedLaurentSeries(
            self.variable,
            {d: -c for d, c in self.coeffs.items()},
            self.min_degree,
            self.precision,
        )

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "TruncatedLaurentSeries":
        if scalar_is_zero(c):
            return TruncatedLaurentSeries.zero(
                self.variable, self.precision, self.min_degree
            )
        return TruncatedLaurentSeries(
            self.variable,
            {d: c * x for d, x in self.coeffs.items()},
            self.min_degree,
            self.precision,
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, NumberFieldElement)):
            return self.scale(other)
        if not isinstance(other, TruncatedLaurentSeries):
            return NotImplemented
        return series_mul(self, other)

    __rmul__ = __mul__

    def shift(self, k: int) -> "TruncatedLaurentSeries":
        """Multiply by variable^k."""
        return TruncatedLaurentSeries(
            self.variable,
            {d + k: c for d, c in self.coeffs.items()},
            self.min_degree + k,
            self.precision + k,
        )

    def __repr__(self):
        return "TruncatedLaurentSeries(%r, %s, prec=%d)" % (
            self.variable,
            {d: str(c) for d, c in sorted(self.coeffs.items())},
            self.precision,
        )

    def __str__(self):
        return format_series(self)

    # -- serialization -------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "var": self.variable,
            "min": self.min_degree,
            "prec": self.precision,
            "coeffs": {
                str(d): format_rational(c) for d, c in sorted(self.coeffs.items())
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json_dict(cls, data: dict) -> "TruncatedLaurentSeries":
        return cls(
            data["var"],
            {int(d): parse_rational(c) for d, c in data.get("coeffs", {}).items()},
            int(data["min"]),
            int(data["prec"]),
        )

    @classmethod
    def from_json(cls, text: str) -> "TruncatedLaurentSeries":
        return cls.from_json_dict(json.loads(text))


def format_series(s: TruncatedLaurentSeries) -> str:
    """Human form "1 + 1/2*z^2 + O(z^8)"."""
    parts = []
    for d in sorted(s.coeffs):
        c = s.coeffs[d]
        cs = format_rational(c) if not isinstance(c, NumberFieldElement) else repr(c)
        if d == 0:
            parts.append(cs)
        else:
            var = s.variable if d == 1 else "%s^%d" % (s.variable, d)
            parts.append(var if cs == "1" else "%s*%s" % (cs, var))
    parts.append("O(%s^%d)" % (s.variable, s.precision))
    return " + ".join(parts).replace("+ -", "- ")


def series_mul(
    a: TruncatedLaurentSeries, b: TruncatedLaurentSeries
) -> TruncatedLaurentSeries:
    """Product, correct for every degree below the resulting precision."""
    a._check_var(b)
    candidates = [a.precision + b.precision]
    if b.coeffs:
        candidates.append(a.precision + min(b.coeffs))
    if a.coeffs:
        candidates.append(b.precision + min(a.coeffs))
    prec = min(candidates)
    out = {}
    for da, ca in a.coeffs.items():
        for db, cb in b.coeffs.items():
            d = da + db
            if d < prec:
                out[d] = out.get(d, 0) + ca * cb
    return TruncatedLaurentSeries(a.variable, out, a.min_degree + b.min_degree, prec)


def series_inv(a: TruncatedLaurentSeries) -> TruncatedLaurentSeries:
    """Inverse of a series whose lowest known coefficient is nonzero."""
    v = a.valuation()
    if v is None:
        raise SeriesDomainError("cannot invert a series with no known nonzero term")
    lead_inv = _inv_scalar(a.coeffs[v])
    u = a.shift(-v).scale(lead_inv)  # u = 1 + x with val(x) >= 1
    n = u.precision
    one = TruncatedLaurentSeries.one(a.variable, n)
    x = one - u
    inv = one
    term = one
    for _ in range(1, n):
        term = series_mul(term, x)
        if term.is_zero():
            break
        inv = inv + term
    return inv.scale(lead_inv).shift(-v)


def series_exp(a: TruncatedLaurentSeries) -> TruncatedLaurentSeries:
    """exp of a series with no constant and no polar part."""
    if any(d <= 0 for d in a.coeffs):
        raise SeriesDomainError(
            "series_exp needs valuation >= 1, got terms at degrees %s"
            % sorted(d for d in a.coeffs if d <= 0)
        )
    prec = a.precision
    out = TruncatedLaurentSeries.one(a.variable, prec)
    term = TruncatedLaurentSeries.one(a.variable, prec)
    for k in range(1, prec):
        term = series_mul(term, a).scale(Fraction(1, k))
        if term.is_zero():
            break
        out = out + term
    return out


def series_log(a: TruncatedLaurentSeries) -> TruncatedLaurentSeries:
    """log of a series with constant term exactly 1."""
    if a.coefficient(0) != 1 or any(d < 0 for d in a.coeffs):
        raise SeriesDomainError("series_log needs constant term 1 and no polar part")
    prec = a.precision
    x = a - 1  # valuation >= 1
    out = TruncatedLaurentSeries.zero(a.variable, prec)
    term = TruncatedLaurentSeries.one(a.variable, prec)
    sign = 1
    for r in range(1, prec):
        term = series_mul(term, x)
        if term.is_zero():
            break
        out = out + term.scale(Fraction(sign, r))
        sign = -sign
    return out
