"""Local symbols on Q(t): the 2-cocycle attached to a half-space, the
commutator pairing, their characteristic properties, and the product
formula over all places of the projective line.

For the implemented half-space models every symbol value is the exponential
of a z^2 monomial, exp(z^2 * r) with r rational; SymbolValue asserts that
shape at construction.  The cocycle is computed from the residue; for
degree-1 places it is also computable as a determinant of a product of
operator exponentials on the windowed model, and the two routes must agree.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import WindowExhaustedError
from .matrices import det_series_matrix
from .places import Place, relevant_places
from .polynomials import RationalFunction
from .residues import (
    _band,
    compress_upper,
    multiplication_window,
    reduce_to_origin,
    residue_classical,
    split_window_content,
)
from .scalars import scalar_is_zero
from .series import TruncatedLaurentSeries, series_exp, series_log

DEFAULT_Z_PREC = 8


class SymbolValue:
    """A series in z with constant term 1 whose log is a pure z^2 monomial."""

    __slots__ = ("series", "exponent")

    def __init__(self, series: TruncatedLaurentSeries):
        log = series_log(series)
        bad = [d for d in log.coeffs if d != 2]
        if bad:
            raise ValueError(
                "symbol value is not exp(z^2 * r): log has terms at %s" % bad
            )
        self.series = series
        self.exponent = log.coeffs.get(2, Fraction(0))

    @classmethod
    def from_exponent(
        cls, r, prec: int = DEFAULT_Z_PREC, variable: str = "z"
    ) -> "SymbolValue":
        mono = TruncatedLaurentSeries.from_terms(variable, {2: r}, prec, 0)
        return cls(series_exp(mono))

    def __mul__(self, other: "SymbolValue") -> "SymbolValue":
        return SymbolValue.from_exponent(
            self.exponent + other.exponent,
            min(self.series.precision, other.series.precision),
            self.series.variable,
        )

    def __eq__(self, other):
        if not isinstance(other, SymbolValue):
            return NotImplemented
        return self.series.same_to_precision(other.series)

    def __hash__(self):
        return hash(self.series)

    def is_one(self) -> bool:
        return self.exponent == 0

    def __repr__(self):
        return "SymbolValue(%s)" % (self.series,)


def cocycle(
    f: RationalFunction,
    g: RationalFunction,
    p: Place,
    prec_z: int = DEFAULT_Z_PREC,
) -> SymbolValue:
    """c(f, g) = exp(z^2 * res_p(f dg) / 2)."""
    r = residue_classical(f, g, p)
    return SymbolValue.from_exponent(Fraction(r) / 2, prec_z)


def pairing(
    f: RationalFunction,
    g: RationalFunction,
    p: Place,
    prec_z: int = DEFAULT_Z_PREC,
) -> SymbolValue:
    """{f, g} = exp(z^2 * res_p(f dg)): the symbol with the doubled exponent,
    equal to c(f,g)/c(g,f) by antisymmetry of the residue."""
    r = residue_classical(f, g, p)
    return SymbolValue.from_exponent(Fraction(r), prec_z)


def cocycle_identity_check(
    f: RationalFunction,
    g: RationalFunction,
    h: RationalFunction,
    p: Place,
    prec_z: int = DEFAULT_Z_PREC,
) -> bool:
    """c(f,g) c(f+g,h) = c(g,h) c(f,g+h), exactly to precision."""
    for s in (f + g, g + h):
        if s.is_zero():
            raise ValueError("cocycle identity needs nonzero pairwise sums")
    lhs = cocycle(f, g, p, prec_z) * cocycle(f + g, h, p, prec_z)
    rhs = cocycle(g, h, p, prec_z) * cocycle(f, g + h, p, prec_z)
    return lhs == rhs


# -- operator route ----------------------------------------------------------


def _sparse_terms_product(a: dict, b: dict, prec: int) -> dict:
    """(1 + sum z^d a_d)(1 + sum z^d b_d) as term dict of SparseOperators."""
    out = {}

    def bump(d, op):
        if d >= prec or op.is_zero():
            return
        out[d] = out[d].add(op) if d in out else op

    for d, t in a.items():
        bump(d, t)
    for d, t in b.items():
        bump(d, t)
    for da, ta in a.items():
        for db, tb in b.items():
            if da + db < prec:
                bump(da + db, ta.compose(tb))
    return {d: t for d, t in out.items() if not t.is_zero()}


def _exp_terms(m, prec: int) -> dict:
    """Terms of exp(z m) - 1 on the window: z^j -> m^j / j!."""
    terms = {}
    power = None
    fact = 1
    for j in range(1, prec):
        power = m if power is None else power.compose(m)
        if power.is_zero():
            break
        fact *= j
        scaled = power.scale(Fraction(1, fact))
        terms[j] = scaled
    return terms


def _det_of_exponential_product(
    coeff_dicts, signs, cut: int, prec_z: int
) -> TruncatedLaurentSeries:
    """Determinant over the series field of prod_i exp(sign_i z m_i), with
    m_i the half-space compression of multiplication by the i-th Laurent
    polynomial, on the windowed model with the given cut.

    Individual factors have no determinant; the product's series terms are
    finite rank, supported in a box near the cut, and the determinant is the
    determinant of that box block.  A guard strip between the box and the
    window edge must stay exactly zero, else the window grows (3 retries).
    """
    band = 1
    for fc in coeff_dicts:
        p, d = _band(fc)
        band = max(band, p, d)
    content_end = cut + (prec_z - 1) * band
    for _ in range(4):
        hi = content_end + (prec_z + 1) * band + 4
        prod = {}
        first = True
        for fc, sign in zip(coeff_dicts, signs):
            m = compress_upper(multiplication_window(fc, cut, hi), cut)
            if sign < 0:
                m = m.scale(Fraction(-1))
            terms = _exp_terms(m, prec_z)
            prod = terms if first else _sparse_terms_product(prod, terms, prec_z)
            first = False
        contents = {}
        dirty = False
        exact_end = hi - prec_z * band
        for d, t in prod.items():
            c = split_window_content(t, content_end, exact_end)
            if c is None:
                dirty = True
                break
            if not c.is_zero():
                contents[d] = c
        if dirty:
            content_end += prec_z * band
            continue
        support = set()
        for t in contents.values():
            support |= t.support()
        box = tuple(sorted(support))
        n = len(box)
        one = TruncatedLaurentSeries.one("z", prec_z)
        if n == 0:
            return one
        rows = []
        for i in range(n):
            row = []
            for j in range(n):
                coeffs = {0: Fraction(1)} if i == j else {}
                for d, t in contents.items():
                    c = t.get(box[i], box[j])
                    if not scalar_is_zero(c):
                        coeffs[d] = c
                row.append(TruncatedLaurentSeries("z", coeffs, 0, prec_z))
            rows.append(row)
        return det_series_matrix(rows, one)
    raise WindowExhaustedError(
        "operator-route content kept reaching the window edge"
    )


def cocycle_via_operators(
    f: RationalFunction,
    g: RationalFunction,
    place: Place = None,
    cut: int = 0,
    prec_z: int = DEFAULT_Z_PREC,
) -> SymbolValue:
    """Determinant route for degree-1 places: the determinant of
    exp(z f1) exp(z g1) exp(-z (f1+g1)) on the windowed half-space model
    with the given cut.  Must agree with the residue route."""
    if place is None:
        place = Place.at_zero()
    fc = reduce_to_origin(f, place)
    gc = reduce_to_origin(g, place)
    sum_c = dict(fc)
    for k, v in gc.items():
        sum_c[k] = sum_c.get(k, Fraction(0)) + v
    value = _det_of_exponential_product([fc, gc, sum_c], [1, 1, -1], cut, prec_z)
    return SymbolValue(value)


def pairing_via_operators(
    f: RationalFunction,
    g: RationalFunction,
    place: Place = None,
    cut: int = 0,
    prec_z: int = DEFAULT_Z_PREC,
) -> SymbolValue:
    """The four-exponential commutator determinant
    det(exp(z f1) exp(z g1) exp(-z f1) exp(-z g1)): equal to the pairing
    exp(z^2 res(f dg)), the series analogue of the trace-commutator formula
    for determinants of exponential group commutators."""
    if place is None:
        place = Place.at_zero()
    fc = reduce_to_origin(f, place)
    gc = reduce_to_origin(g, place)
    value = _det_of_exponential_product([fc, gc, fc, gc], [1, 1, -1, -1], cut, prec_z)
    return SymbolValue(value)


def c4_check(
    g: RationalFunction,
    h: RationalFunction,
    p: Place,
    prec_z: int = DEFAULT_Z_PREC,
) -> bool:
    """c(h g^{-1}, g) = exp(z^2/2 tr on A/(A & gA)) exp(-z^2/2 tr on gA/(A & gA)),
    the traces taken for multiplication by h on the digit bases of the
    finite-dimensional quotients at the place."""
    if g.is_zero():
        raise ValueError("g must be nonzero")
    if p.is_infinity():
        raise ValueError("property check implemented for finite places")
    pi = p.minimal_poly
    if h.is_zero() or h.valuation_at(pi) < 0:
        raise ValueError("h must map the local integers into themselves")
    v = g.valuation_at(pi)
    tr_a = _quotient_trace(h, p, 0, v) if v > 0 else Fraction(0)
    tr_ga = _quotient_trace(h, p, v, 0) if v < 0 else Fraction(0)
    expected = SymbolValue.from_exponent(
        Fraction(tr_a, 2) - Fraction(tr_ga, 2), prec_z
    )
    return cocycle(h / g, g, p, prec_z) == expected


def _quotient_trace(h: RationalFunction, p: Place, lo: int, hi: int) -> Fraction:
    """Trace of multiplication by h on span{t^j pi^i : 0 <= j < deg, lo <= i < hi},
    modulo pi^hi and the sub-block below pi^lo."""
    from .polynomials import Polynomial
    from .places import local_expand
    from .scalars import NumberFieldElement

    pi = p.minimal_poly
    d = p.degree
    total = Fraction(0)
    for i in range(lo, hi):
        for j in range(d):
            basis_el = RationalFunction(Polynomial([0] * j + [1])) * (
                RationalFunction(pi) ** i
            )
            image = h * basis_el
            if image.is_zero():
                continue
            exp = local_expand(image, p, hi)
            c = exp.series.coefficient(i)
            if isinstance(c, NumberFieldElement):
                total += c.coeffs[j]
            elif j == 0:
                total += c
    return total


def c5_check(
    f: RationalFunction,
    g: RationalFunction,
    a_half,
    b_half,
    place: Place = None,
    prec_z: int = DEFAULT_Z_PREC,
) -> bool:
    """c_{A+B}(f,g) c_{A&B}(f,g) = c_A(f,g) c_B(f,g) for half-space cuts,
    all four sides computed by the operator route."""
    ca, cb = a_half.cut, b_half.cut
    vals = {
        cut: cocycle_via_operators(f, g, place, cut, prec_z)
        for cut in {min(ca, cb), max(ca, cb), ca, cb}
    }
    lhs = vals[min(ca, cb)] * vals[max(ca, cb)]
    rhs = vals[ca] * vals[cb]
    return lhs == rhs


def reciprocity_check(
    f: RationalFunction,
    g: RationalFunction,
    prec_z: int = DEFAULT_Z_PREC,
):
    """Sum of residues and product of symbols over every relevant place of
    the projective line: (sum, product) with sum 0 and product 1."""
    if f.is_zero() or g.is_zero():
        raise ValueError("reciprocity needs nonzero functions")
    total = Fraction(0)
    prod = SymbolValue.from_exponent(Fraction(0), prec_z)
    for p in relevant_places(f, g):
        total += residue_classical(f, g, p)
        prod = prod * cocycle(f, g, p, prec_z)
    return total, prod
