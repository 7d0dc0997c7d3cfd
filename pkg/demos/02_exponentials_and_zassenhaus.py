"""
Operator exponentials over Laurent series
=========================================

exp(z phi) is a unipotent series of operators; its determinant over the
series field equals the scalar exponential of the trace.  Products of
exponentials multiply their determinants, the Zassenhaus splitting holds
degree by degree, and determinants of infinite products of exponentials
stabilize once the remaining factors are traceless.
"""

from fractions import Fraction

from finpot import (
    FinitePotentOperator,
    TruncatedLaurentSeries,
    det_series,
    exp_op,
    infinite_product_det,
    op_add,
    op_scale,
    series_exp,
    tate_trace,
    zassenhaus_check,
    zassenhaus_terms,
)

P = FinitePotentOperator.from_entries([(0, 0, 1)])           # projector
N = FinitePotentOperator.from_entries([(0, 1, 1)])           # nilpotent
Q = FinitePotentOperator.from_entries([(0, 1, Fraction(1, 2)), (1, 0, 1), (1, 1, 1)])

# Determinant of the exponential = exponential of the trace, exactly.
s = exp_op(P, 1, prec=8)
print("det exp(zP)      :", det_series(s))
print("exp(z tr P)      :", series_exp(TruncatedLaurentSeries.from_terms("z", {1: tate_trace(P)}, 8)))

# Nilpotent input: trivial determinant, even though the series is not 1.
print("det exp(zN)      :", det_series(exp_op(N, 1, 8)))

# Weighted exponential exp(z^2 phi).
print("det exp(z^2 P)   :", det_series(exp_op(P, 2, 9)))

# Multiplicativity for finite-rank pairs: det of a product of exponentials
# is the product of determinants, and matches the exponential of the sum.
ep, eq = exp_op(P, 1, 10), exp_op(Q, 1, 10)
lhs = det_series(ep * eq)
rhs = det_series(ep) * det_series(eq)
print("product multiplicative:", lhs.same_to_precision(rhs))
print("sum additive          :", det_series(exp_op(op_add(P, Q), 1, 10)).same_to_precision(rhs))

# The Zassenhaus splitting: exp(z(f+g)) agrees with
# exp(zf) exp(zg) exp(-z^2 C1/2!) exp(-z^3 C2/3!) exp(-z^4 C3/4!) through z^4.
f = FinitePotentOperator.from_entries([(1, 0, 1)])
g = FinitePotentOperator.from_entries([(0, 1, 1)])
c1, c2, c3 = zassenhaus_terms(f, g)
print("C1 =", dict(c1.finite_part.entries))
print("splitting holds through z^4:", zassenhaus_check(f, g, 5))

# An infinite product of weighted exponentials has a determinant as soon as
# all but finitely many factors are traceless; the value is the finite
# partial product, re-verified for stationarity beyond the witness.
family = [
    (2, op_scale(P, Fraction(3))),   # trace 3 at weight z^2
    (3, op_scale(P, Fraction(2))),   # trace 2 at weight z^3
    (4, N),                          # traceless from here on
    (5, N),
]
print("infinite product :", infinite_product_det(family, compat_m=3))
