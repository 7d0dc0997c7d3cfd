"""Exact scalars: rationals and single-generator number fields.

Rationals are stdlib ``fractions.Fraction`` (always reduced, positive
denominator).  Number fields are Q[x]/(p) for a monic irreducible p; their
elements interoperate with ``int`` and ``Fraction`` through coercion, so the
generic linear algebra in this package runs unchanged over either kind of
scalar.
"""

from __future__ import annotations

from fractions import Fraction


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or "p" into a Fraction."""
    return Fraction(text.strip())


def format_rational(x: Fraction) -> str:
    """Render a Fraction as "p/q", or "p" when the denominator is 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


def _poly_trim(cs):
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return cs


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _poly_trim(out)


def _poly_divmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    inv = 1 / b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] * inv
        if c != 0:
            q[i] = c
            for j, y in enumerate(b):
                a[i + j] -= c * y
    return q, _poly_trim(a)


class NumberField:
    """Q[x]/(modulus) for a monic irreducible modulus over Q.

    The modulus is a coefficient list, lowest degree first.  Irreducibility is
    the caller's responsibility (Place and the polynomial layer check it);
    only monicity is enforced here.
    """

    def __init__(self, modulus):
        modulus = [Fraction(c) for c in modulus]
        if len(modulus) < 2:
            raise ValueError("modulus must have degree >= 1")
        if modulus[-1] != 1:
            raise ValueError("modulus must be monic")
        self.modulus = tuple(modulus)
        self.degree = len(modulus) - 1

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.modulus == other.modulus

    def __hash__(self):
        return hash(self.modulus)

    def __repr__(self):
        return "NumberField(%s)" % (list(self.modulus),)

    def element(self, coeffs) -> "NumberFieldElement":
        cs = [Fraction(c) for c in coeffs]
        if len(cs) >= len(self.modulus):
            _, cs = _poly_divmod(cs, list(self.modulus))
        cs = cs + [Fraction(0)] * (self.degree - len(cs))
        return NumberFieldElement(self, tuple(cs[: self.degree]))

    def generator(self) -> "NumberFieldElement":
        return self.element([0, 1])

    def zero(self) -> "NumberFieldElement":
        return self.element([])

    def one(self) -> "NumberFieldElement":
        return self.element([1])


class NumberFieldElement:
    """Element of a NumberField, stored as the reduced representative."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: NumberField, coeffs):
        self.field = field
        self.coeffs = tuple(Fraction(c) for c in coeffs)
        assert len(self.coeffs) == field.degree

    def _coerce(self, other):
        if isinstance(other, NumberFieldElement):
            if other.field != self.field:
                return None
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.element([Fraction(other)])
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NumberFieldElement(
            self.field, [a + b for a, b in zip(self.coeffs, o.coeffs)]
        )

    __radd__ = __add__

    def __neg__(self):
        return NumberFieldElement(self.field, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        prod = _poly_mul(list(self.coeffs), list(o.coeffs))
        return self.field.element(prod)

    __rmul__ = __mul__

    def inverse(self) -> "NumberFieldElement":
        """Multiplicative inverse via the extended Euclidean algorithm."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")

        def sub(a, b):
            n = max(len(a), len(b))
            return _poly_trim(
                [
                    (a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)
                    for i in range(n)
                ]
            )

        # invariants: r0 = s0 * self (mod modulus), r1 = s1 * self (mod modulus)
        r0, r1 = list(self.field.modulus), _poly_trim(self.coeffs)
        s0, s1 = [], [Fraction(1)]
        while r1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, sub(s0, _poly_mul(q, s1))
        if len(r0) != 1:
            raise ZeroDivisionError("element not invertible; modulus not irreducible?")
        inv = 1 / r0[0]
        return self.field.element([c * inv for c in s0])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = self.field.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.field, self.coeffs))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("element is not rational")
        return self.coeffs[0]

    def regular_matrix(self):
        """Matrix of multiplication by self on the basis 1, x, ..., x^(d-1).

        Returned as a list of rows; column j holds the coordinates of
        self * x^j.
        """
        d = self.field.degree
        cols = []
        cur = self
        for _ in range(d):
            cols.append(cur.coeffs)
            cur = cur * self.field.generator()
        return [[cols[j][i] for j in range(d)] for i in range(d)]

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                terms.append(format_rational(c))
            else:
                var = "x" if i == 1 else "x^%d" % i
                terms.append(var if c == 1 else "%s*%s" % (format_rational(c), var))
        return " + ".join(terms) if terms else "0"


def field_norm(e: NumberFieldElement) -> Fraction:
    """Norm down to Q: determinant of the multiplication-by-e map."""
    rows = [list(r) for r in e.regular_matrix()]
    n = len(rows)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if rows[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = -det
        det *= rows[c][c]
        inv = 1 / rows[c][c]
        for r in range(c + 1, n):
            if rows[r][c] != 0:
                m = rows[r][c] * inv
                rows[r] = [x - m * y for x, y in zip(rows[r], rows[c])]
    return det


def field_trace(e: NumberFieldElement) -> Fraction:
    """Trace down to Q: trace of the multiplication-by-e map."""
    m = e.regular_matrix()
    return sum((m[i][i] for i in range(len(m))), Fraction(0))


def scalar_is_zero(x) -> bool:
    if isinstance(x, NumberFieldElement):
        return x.is_zero()
    return x == 0


def scalar_to_fraction(x) -> Fraction:
    """Collapse a scalar known to be rational down to a Fraction."""
    if isinstance(x, NumberFieldElement):
        return x.rational_value()
    return Fraction(x)
