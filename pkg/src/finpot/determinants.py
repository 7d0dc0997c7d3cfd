"""Trace and determinant of finite potent operators, by several independent
routes that must agree exactly:

  ast               det(1 + core) on the invariant core
  exterior          1 + sum of exterior-power traces (principal minors)
  charpoly          (-1)^n * charpoly(core)(-1)
  plemelj_smithies  sum mu^m alpha_m/m! with alpha_m a determinant in the
                    power traces
  logdet            exp of the power-sum log series

Everything is exact; eigenvalues are never extracted (each eigenvalue
statement is recast as a characteristic-polynomial coefficient identity).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotInvertibleError
from .fitting import lift_ast
from .matrices import (
    charpoly as _charpoly_coeffs,
    det,
    elementary_symmetric,
    identity,
    mat_add,
    mat_inverse,
    mat_mul,
    mat_trace,
)
from .operators import (
    FinitePotentOperator,
    SparseOperator,
    TailDescriptor,
    certify_finite_potent,
    op_add,
    op_compose,
)
from .polynomials import Polynomial
from .scalars import NumberFieldElement, scalar_is_zero
from .series import TruncatedLaurentSeries, series_exp


@dataclass(frozen=True)
class DetResult:
    value: object
    route: str


def tate_trace(phi: FinitePotentOperator):
    """Trace of the invariant-core restriction (nilpotent part contributes 0)."""
    ast = lift_ast(phi)
    return mat_trace(ast.core_matrix)


def det_one_plus(phi: FinitePotentOperator):
    """det(1 + phi) = det(1 + core)."""
    ast = lift_ast(phi)
    n = ast.core_dim
    return det(mat_add(identity(n), ast.core_matrix)) if n else Fraction(1)


def exterior_trace(phi: FinitePotentOperator, r: int):
    """Trace of the induced map on the r-th exterior power: the r-th
    elementary symmetric value of the core (sum of r x r principal minors).
    Zero for r beyond the core dimension."""
    if r < 1:
        raise ValueError("exterior power index must be >= 1")
    ast = lift_ast(phi)
    if r > ast.core_dim:
        return Fraction(0)
    return elementary_symmetric(ast.core_matrix)[r]


def det_poly(phi: FinitePotentOperator) -> Polynomial:
    """det(1 + mu*core) as an exact polynomial in mu."""
    ast = lift_ast(phi)
    return Polynomial(elementary_symmetric(ast.core_matrix))


def char_poly(matrix) -> Polynomial:
    """Exact characteristic polynomial det(xI - M), lowest degree first."""
    return Polynomial(_charpoly_coeffs(matrix))


def _power_traces(phi: FinitePotentOperator, upto: int):
    """[p_1, ..., p_upto] with p_j the trace of phi^j, computed on the
    certificate core (the tail is nilpotent, its powers are traceless)."""
    cert = certify_finite_potent(phi)
    m = [list(r) for r in cert.matrix]
    if not m:
        return [Fraction(0)] * upto
    out = []
    power = identity(len(m))
    for _ in range(upto):
        power = mat_mul(power, m)
        out.append(mat_trace(power))
    return out


def plemelj_smithies_series(phi: FinitePotentOperator, order: int) -> Polynomial:
    """sum_{m<=order} mu^m alpha_m/m!, with alpha_m the m x m determinant

        | p_1   m-1    0   ...   0  |
        | p_2   p_1   m-2  ...   0  |
        | ...                  ...  |
        | p_m  p_{m-1} ...      p_1 |

    built from the power traces p_j.  Coincides with det_poly, with
    alpha_m = 0 beyond the core dimension."""
    if order < 0:
        raise ValueError("order must be >= 0")
    traces = _power_traces(phi, order)
    coeffs = [Fraction(1)]
    fact = 1
    for m in range(1, order + 1):
        rows = []
        for i in range(m):
            row = []
            for j in range(m):
                if j <= i:
                    row.append(traces[i - j])
                elif j == i + 1:
                    row.append(Fraction(m - 1 - i))
                else:
                    row.append(Fraction(0))
            rows.append(row)
        fact *= m
        coeffs.append(det(rows) * Fraction(1, fact))
    return Polynomial(coeffs)


def log_det_series(phi: FinitePotentOperator, prec: int) -> TruncatedLaurentSeries:
    """exp of the power-sum series sum_r (-1)^(r+1) p_r mu^r / r; agrees
    with det_poly to the requested precision."""
    traces = _power_traces(phi, max(0, prec - 1))
    terms = {
        r: Fraction((-1) ** (r + 1), r) * traces[r - 1] for r in range(1, prec)
    }
    log_series = TruncatedLaurentSeries.from_terms("mu", terms, prec, 0)
    return series_exp(log_series)


def regularized_det_series(
    phi: FinitePotentOperator, m: int, prec: int
) -> TruncatedLaurentSeries:
    """det_poly with mu -> -mu, times exp(sum_{j<m} p_j mu^j / j); m = 2 is
    the Carleman-Fredholm normalization."""
    if m < 2:
        raise ValueError("regularization order must be >= 2")
    dp = det_poly(phi)
    base = TruncatedLaurentSeries.from_terms(
        "mu",
        {i: c * Fraction((-1) ** i) for i, c in enumerate(dp.coeffs)},
        prec,
        0,
    )
    traces = _power_traces(phi, m - 1)
    expo = TruncatedLaurentSeries.from_terms(
        "mu",
        {j: traces[j - 1] * Fraction(1, j) for j in range(1, m)},
        prec,
        0,
    )
    return base * series_exp(expo)


def invert_one_plus(phi: FinitePotentOperator) -> FinitePotentOperator:
    """psi with (1 + phi)(1 + psi) = (1 + psi)(1 + phi) = 1.

    Assembled from the exact inverse on the finite block and the terminating
    geometric series on the tail; the composition is verified before
    returning."""
    if scalar_is_zero(det_one_plus(phi)):
        raise NotInvertibleError("det(1 + phi) = 0; 1 + phi is not invertible")
    support = sorted(phi.finite_part.support())
    pos = {i: p for p, i in enumerate(support)}
    n = len(support)
    block = identity(n)
    for (i, j), c in phi.finite_part.entries.items():
        block[pos[i]][pos[j]] = block[pos[i]][pos[j]] + c
    inv = mat_inverse(block)
    entries = {}
    for r in range(n):
        for c in range(n):
            val = inv[r][c] - (1 if r == c else 0)
            if not scalar_is_zero(val):
                entries[(support[r], support[c])] = val
    tail = TailDescriptor.none()
    if phi.has_tail():
        # (1 + T)^{-1} - 1 = sum_{k>=1} (-T)^k, terminating at the block size
        term = phi.tail.scale(Fraction(-1))
        acc = term
        power = term
        for _ in range(phi.tail.nilpotency_degree() - 1):
            power = power.compose(phi.tail.scale(Fraction(-1)))
            if power.is_none():
                break
            acc = acc.add(power)
        tail = acc
    psi = FinitePotentOperator(SparseOperator(entries), tail)
    check = op_add(op_add(phi, psi), op_compose(phi, psi))
    if not check.is_zero():
        raise NotInvertibleError("inverse verification failed")
    return psi


def restrict_scalars(phi: FinitePotentOperator) -> FinitePotentOperator:
    """Replace each number-field entry by its regular-representation block
    over Q; basis index i becomes the block [d*i, d*i + d).  Requires
    1 + phi invertible and no tail (a tail's blow-up is a shift by d, which
    the tail type cannot express)."""
    if phi.has_tail():
        raise NotInvertibleError("restriction of scalars needs a tail-free operator")
    value = det_one_plus(phi)
    if scalar_is_zero(value):
        raise NotInvertibleError("1 + phi must be invertible for restriction")
    field = None
    for c in phi.finite_part.entries.values():
        if isinstance(c, NumberFieldElement):
            field = c.field
            break
    if field is None:
        return phi  # already rational
    d = field.degree
    entries = {}
    for (i, j), c in phi.finite_part.entries.items():
        if not isinstance(c, NumberFieldElement):
            c = field.element([c])
        block = c.regular_matrix()
        for r in range(d):
            for s in range(d):
                if not scalar_is_zero(block[r][s]):
                    entries[(d * i + r, d * j + s)] = block[r][s]
    return FinitePotentOperator(SparseOperator(entries))


def wedge_scaling_check(phi: FinitePotentOperator, m: int):
    """det of (1 + phi) on the span of the first m Jordan-basis vectors:
    the certificate block (core then nil chains) followed by whole tail
    blocks.  Stable in m: every admissible m returns det_one_plus(phi)."""
    ast = lift_ast(phi)
    w_dim = ast.core_dim + ast.nil_dim
    if m < w_dim:
        raise ValueError("m must cover the invariant block (>= %d)" % w_dim)
    extra = m - w_dim
    if phi.has_tail():
        b = phi.tail.block_size
        if extra % b != 0:
            raise ValueError("m must align with whole tail blocks of size %d" % b)
        k_blocks = extra // b
    else:
        if extra != 0:
            raise ValueError("no tail: m must equal the invariant block size %d" % w_dim)
        k_blocks = 0
    size = m
    mat = identity(size)
    # invariant block in the fitted basis: core_matrix (+) nil_matrix
    for r in range(ast.core_dim):
        for c in range(ast.core_dim):
            mat[r][c] = mat[r][c] + ast.core_matrix[r][c]
    off = ast.core_dim
    for r in range(ast.nil_dim):
        for c in range(ast.nil_dim):
            mat[off + r][off + c] = mat[off + r][off + c] + ast.nil_matrix[r][c]
    # tail blocks: within-block shift polynomial
    off = w_dim
    for _ in range(k_blocks):
        b = phi.tail.block_size
        for q in range(b):
            for k, c in enumerate(phi.tail.coeffs, start=1):
                if q + k < b and c != 0:
                    mat[off + q + k][off + q] = mat[off + q + k][off + q] + c
        off += b
    return det(mat)


_ROUTES = ("ast", "exterior", "charpoly", "plemelj_smithies", "logdet")


def det_routes(phi: FinitePotentOperator):
    """All determinant routes as DetResult records (they must agree)."""
    ast = lift_ast(phi)
    n = ast.core_dim
    value_ast = det(mat_add(identity(n), ast.core_matrix)) if n else Fraction(1)
    es = elementary_symmetric(ast.core_matrix) if n else [Fraction(1)]
    value_ext = sum(es[1:], Fraction(1))
    cp = char_poly(ast.core_matrix)
    value_cp = Fraction((-1) ** n) * cp.evaluate(Fraction(-1)) if n else Fraction(1)
    ps = plemelj_smithies_series(phi, n + 1)
    value_ps = ps.evaluate(Fraction(1))
    ld = log_det_series(phi, n + 2)
    value_ld = sum(ld.coeffs.values(), Fraction(0))
    return (
        DetResult(value_ast, "ast"),
        DetResult(value_ext, "exterior"),
        DetResult(value_cp, "charpoly"),
        DetResult(value_ps, "plemelj_smithies"),
        DetResult(value_ld, "logdet"),
    )


def routes_agree(phi: FinitePotentOperator) -> bool:
    results = det_routes(phi)
    first = results[0].value
    return all(r.value == first for r in results[1:])
