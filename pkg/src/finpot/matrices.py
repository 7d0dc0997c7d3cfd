"""Exact dense linear algebra over Q, number fields, or truncated series.

Matrices are plain lists of row lists.  Scalars only need +, -, *, equality
against 0/1 and exact inversion, so the same routines serve Fraction,
NumberFieldElement, and (for determinants of unipotent perturbations)
TruncatedLaurentSeries entries.  Echelon work for kernels and images uses
fraction-free Bareiss elimination.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import NotInvertibleError
from .scalars import NumberFieldElement, scalar_is_zero


def _inv(x):
    if isinstance(x, NumberFieldElement):
        return x.inverse()
    return 1 / Fraction(x)


def identity(n, one=Fraction(1), zero=Fraction(0)):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    out = []
    for i in range(n):
        row = []
        ai = a[i]
        for j in range(m):
            s = 0
            for p in range(k):
                x = ai[p]
                if not scalar_is_zero(x):
                    s = s + x * b[p][j]
            row.append(s)
        out.append(row)
    return out


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, c):
    return [[c * x for x in row] for row in a]


def mat_vec(a, v):
    return [sum((x * y for x, y in zip(row, v) if not scalar_is_zero(x)), 0) for row in a]


def mat_trace(a):
    n = len(a)
    if n == 0:
        return Fraction(0)
    s = a[0][0]
    for i in range(1, n):
        s = s + a[i][i]
    return s


def mat_pow(a, k: int):
    n = len(a)
    out = identity(n)
    base = [row[:] for row in a]
    while k:
        if k & 1:
            out = mat_mul(out, base)
        base = mat_mul(base, base)
        k >>= 1
    return out


def mat_eq(a, b) -> bool:
    return len(a) == len(b) and all(
        len(ra) == len(rb) and all(x == y for x, y in zip(ra, rb))
        for ra, rb in zip(a, b)
    )


def det(a):
    """Determinant by exact Gaussian elimination (field scalars)."""
    n = len(a)
    if n == 0:
        return Fraction(1)
    m = [row[:] for row in a]
    out = 1
    for c in range(n):
        piv = next((r for r in range(c, n) if not scalar_is_zero(m[r][c])), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            out = -out
        out = out * m[c][c]
        inv = _inv(m[c][c])
        for r in range(c + 1, n):
            if not scalar_is_zero(m[r][c]):
                f = m[r][c] * inv
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return out


def mat_inverse(a):
    """Exact inverse; raises NotInvertibleError on singular input."""
    n = len(a)
    m = [row[:] + irow[:] for row, irow in zip(a, identity(n))]
    for c in range(n):
        piv = next((r for r in range(c, n) if not scalar_is_zero(m[r][c])), None)
        if piv is None:
            raise NotInvertibleError("matrix is singular")
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
        inv = _inv(m[c][c])
        m[c] = [inv * x for x in m[c]]
        for r in range(n):
            if r != c and not scalar_is_zero(m[r][c]):
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [row[n:] for row in m]


def bareiss_echelon(a):
    """Fraction-free row echelon form; returns (echelon rows, pivot columns).

    Divisions are by the previous pivot and stay exact in any integral
    domain, which also tames coefficient growth over Q.
    """
    m = [row[:] for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    prev = 1
    r = 0
    pivots = []
    for c in range(cols):
        if r == rows:
            break
        piv = next((i for i in range(r, rows) if not scalar_is_zero(m[i][c])), None)
        if piv is None:
            continue
        if piv != r:
            m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, rows):
            for j in range(cols - 1, c - 1, -1):
                num = m[i][j] * m[r][c] - m[i][c] * m[r][j]
                if isinstance(num, NumberFieldElement) or isinstance(prev, NumberFieldElement):
                    m[i][j] = num * _inv(prev) if prev != 1 else num
                else:
                    m[i][j] = Fraction(num, prev) if prev != 1 else Fraction(num)
        prev = m[r][c]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(a) -> int:
    if not a:
        return 0
    return len(bareiss_echelon(a)[0])


def column_space_basis(a):
    """Basis of the column span, as column vectors (lists)."""
    if not a:
        return []
    _, pivots = bareiss_echelon(a)
    return [[row[c] for row in a] for c in pivots]


def kernel_basis(a):
    """Basis of the right kernel, as vectors (lists)."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    ech, pivots = bareiss_echelon(a)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        # back-substitute through the echelon rows
        for i in range(len(ech) - 1, -1, -1):
            c = pivots[i]
            s = sum((ech[i][j] * v[j] for j in range(c + 1, cols)
                     if not scalar_is_zero(v[j])), Fraction(0))
            v[c] = -(s * _inv(ech[i][c]))
        basis.append(v)
    return basis


def solve_columns(basis_cols, targets):
    """Coordinates of each target vector in the span of basis_cols.

    basis_cols: list of independent column vectors (length n each);
    targets: list of column vectors in their span.  Returns the coordinate
    matrix C with target[j] = sum_i C[i][j] * basis_cols[i].
    """
    if not basis_cols:
        if any(any(not scalar_is_zero(x) for x in t) for t in targets):
            raise NotInvertibleError("target outside the span of an empty basis")
        return []
    n = len(basis_cols[0])
    k = len(basis_cols)
    aug = [[basis_cols[j][i] for j in range(k)] + [t[i] for t in targets]
           for i in range(n)]
    # exact Gauss-Jordan on the basis block
    r = 0
    pivots = []
    for c in range(k):
        piv = next((i for i in range(r, n) if not scalar_is_zero(aug[i][c])), None)
        if piv is None:
            raise NotInvertibleError("basis columns are dependent")
        if piv != r:
            aug[r], aug[piv] = aug[piv], aug[r]
        inv = _inv(aug[r][c])
        aug[r] = [inv * x for x in aug[r]]
        for i in range(n):
            if i != r and not scalar_is_zero(aug[i][c]):
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    for i in range(r, n):
        if any(not scalar_is_zero(x) for x in aug[i][k:]):
            raise NotInvertibleError("target vector outside the span")
    return [[aug[i][k + j] for j in range(len(targets))] for i in range(k)]


def charpoly(a):
    """Characteristic polynomial det(xI - a) by the Faddeev-LeVerrier
    recurrence; returns coefficients lowest degree first (exact).

    Only divisions by the integers 2..n occur, so the result is exact over
    Q and over number fields alike.
    """
    n = len(a)
    if n == 0:
        return [Fraction(1)]
    # Souriau/Frame recurrence: M_k = A (M_{k-1} - c_{k-1} I), c_k = tr(M_k)/k,
    # giving det(xI - A) = x^n - c_1 x^(n-1) - c_2 x^(n-2) - ... - c_n.
    cs = [Fraction(1)]
    mk = [row[:] for row in a]
    for k in range(1, n + 1):
        ck = mat_trace(mk) * Fraction(1, k)
        cs.append(ck)
        if k < n:
            for i in range(n):
                mk[i][i] = mk[i][i] - ck
            mk = mat_mul(a, mk)
    out = [Fraction(0)] * (n + 1)
    out[n] = Fraction(1)
    for k in range(1, n + 1):
        out[n - k] = -cs[k]
    return out


def elementary_symmetric(a):
    """[e_0, e_1, ..., e_n] of the eigenvalues of a (sums of principal
    minors), from the Faddeev-LeVerrier recurrence."""
    n = len(a)
    cp = charpoly(a)
    return [cp[n - k] if k % 2 == 0 else -cp[n - k] for k in range(n + 1)]


def det_series_matrix(m, one_series):
    """Determinant of a matrix of truncated series of the form 1 + O(z).

    Pivots stay invertible (constant term a unit) throughout, so plain
    elimination with series inversion is exact to the working precision.
    """
    from .series import series_inv, series_mul

    n = len(m)
    if n == 0:
        return one_series
    m = [row[:] for row in m]
    out = one_series
    for c in range(n):
        piv = next(
            (r for r in range(c, n) if not scalar_is_zero(m[r][c].coefficient(0))),
            None,
        )
        if piv is None:
            raise NotInvertibleError("series matrix pivot has no unit entry")
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            out = -out
        out = series_mul(out, m[c][c])
        inv = series_inv(m[c][c])
        for r in range(c + 1, n):
            if not m[r][c].is_zero():
                f = series_mul(m[r][c], inv)
                m[r] = [x - series_mul(f, y) for x, y in zip(m[r], m[c])]
    return out
