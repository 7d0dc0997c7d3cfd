"""Independent oracles the tests check the library against.

Each oracle recomputes a quantity by a route the library does not use:
cofactor determinants, explicit principal-minor sums, and the
derivative-formula residue at a generic root of the place polynomial.
"""

from fractions import Fraction
from itertools import combinations

from finpot.scalars import NumberFieldElement


def det_cofactor(m):
    """Recursive cofactor expansion (small matrices only)."""
    n = len(m)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return m[0][0]
    total = 0
    for j in range(n):
        if m[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1 :] for row in m[1:]]
        term = m[0][j] * det_cofactor(minor)
        total = total + (term if j % 2 == 0 else -term)
    return total if total != 0 else Fraction(0)


def principal_minor_sum(m, r):
    """Sum of all r x r principal minors, by explicit enumeration."""
    n = len(m)
    if r > n:
        return Fraction(0)
    total = Fraction(0)
    for idx in combinations(range(n), r):
        sub = [[m[i][j] for j in idx] for i in idx]
        total += det_cofactor(sub)
    return total


# -- residue at a generic root ------------------------------------------------
#
# kappa-polynomials are plain coefficient lists (lowest first) over the
# residue field; scalars are Fractions (degree-1 place) or field elements.


def _kp_trim(p):
    p = list(p)
    while p and (p[-1] == 0 if not isinstance(p[-1], NumberFieldElement) else p[-1].is_zero()):
        p.pop()
    return p


def _kp_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return _kp_trim(out)


def _kp_sub(a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else 0
        y = b[i] if i < len(b) else 0
        out.append(x - y)
    return _kp_trim(out)


def _kp_deriv(p):
    return _kp_trim([i * c for i, c in enumerate(p)][1:])


def _kp_eval(p, x):
    out = 0
    for c in reversed(p):
        out = out * x + c
    return out


def _kp_divide_linear(p, theta):
    """Synthetic division of p by (t - theta): (quotient, remainder)."""
    acc = None
    horner = []
    for c in reversed(p):
        acc = c if acc is None else c + theta * acc
        horner.append(acc)
    return _kp_trim(list(reversed(horner[:-1]))), horner[-1]


def residue_generic_root(f, g, place):
    """res_p(f dg) = Tr(res_{t=theta}(f g' dt)) with theta a generic root of
    the place polynomial, via the derivative formula for a pole of order m:
    res = (n/h)^{(m-1)}(theta) / (m-1)!  where den = (t-theta)^m h."""
    from finpot.scalars import field_trace

    omega = f * g.derivative()
    if omega.is_zero():
        return Fraction(0)
    if place.is_infinity():
        raise ValueError("oracle covers finite places")
    pi = place.minimal_poly
    if place.degree == 1:
        theta = -pi.coeffs[0]
        to_k = lambda c: Fraction(c)
        trace = lambda c: Fraction(c)
    else:
        field = place.field
        theta = field.generator()
        to_k = lambda c: field.element([c])
        trace = field_trace
    num = [to_k(c) for c in omega.num.coeffs]
    den = [to_k(c) for c in omega.den.coeffs]
    m = 0
    while den:
        quot, rem = _kp_divide_linear(den, theta)
        is_zero = rem.is_zero() if isinstance(rem, NumberFieldElement) else rem == 0
        if not is_zero:
            break
        m += 1
        den = quot
    if m == 0:
        return Fraction(0)
    # (m-1)-fold derivative of num/den via the quotient rule
    n_cur, h_cur = num, den
    for _ in range(m - 1):
        n_cur, h_cur = (
            _kp_sub(_kp_mul(_kp_deriv(n_cur), h_cur), _kp_mul(n_cur, _kp_deriv(h_cur))),
            _kp_mul(h_cur, h_cur),
        )
    fact = 1
    for i in range(2, m):
        fact *= i
    n_val = _kp_eval(n_cur, theta)
    h_val = _kp_eval(h_cur, theta)
    if isinstance(h_val, NumberFieldElement):
        value = n_val * h_val.inverse() if isinstance(n_val, NumberFieldElement) else h_val.inverse() * n_val
    else:
        value = Fraction(n_val) / Fraction(h_val)
    value = value * Fraction(1, fact)
    return trace(value)
