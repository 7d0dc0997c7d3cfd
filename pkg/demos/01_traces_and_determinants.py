"""
Traces and determinants of finite potent operators
===================================================

A walk through the core objects: operators on a Z-indexed basis with a
finite matrix part plus an optional nilpotent block tail, their finite
potency certificates, the invariant-core decomposition, and the one
determinant computed five independent ways.
"""

from fractions import Fraction

from finpot import (
    FinitePotentOperator,
    SparseOperator,
    TailDescriptor,
    certify_finite_potent,
    det_one_plus,
    det_poly,
    det_routes,
    invert_one_plus,
    lift_ast,
    tate_trace,
    wedge_scaling_check,
)

# An operator: a 2x2 block [[1,1],[0,0]] at indices {0,1} together with an
# infinite string of nilpotent 3-blocks starting at index 10.
phi = FinitePotentOperator(
    SparseOperator({(0, 0): Fraction(1), (0, 1): Fraction(1)}),
    TailDescriptor.jordan(block_size=3, start_index=10),
)

# Some power of phi lands in a fixed finite-dimensional subspace; the
# certificate names that exponent, the subspace, and the restricted matrix.
cert = certify_finite_potent(phi)
print("certificate: n =", cert.n, " W =", cert.indices)
print("restricted matrix:", [list(map(str, row)) for row in cert.matrix])

# The certificate block splits into an invertible core and a nilpotent part.
ast = lift_ast(phi)
print("core dimension:", ast.core_dim, " nilpotent dimension:", ast.nil_dim)
print("core matrix:", [list(map(str, row)) for row in ast.core_matrix])

# Trace and determinant live on the core; every nilpotent direction is
# invisible to both.
from finpot.polynomials import format_polynomial

print("trace:", tate_trace(phi))
print("det(1 + phi):", det_one_plus(phi))
print("det(1 + mu phi):", format_polynomial(det_poly(phi), "mu"))

# Five routes to the same determinant: the core block, exterior-power
# traces, a characteristic-polynomial evaluation, the trace-matrix
# determinant recursion, and exp of the log series.  Exact agreement.
for result in det_routes(phi):
    print("  route %-18s -> %s" % (result.route, result.value))

# Nonzero determinant means 1 + phi is invertible, with an explicit inverse
# in the same operator class (block inverse + terminating geometric tail).
psi = invert_one_plus(phi)
print("inverse finite part:", dict(psi.finite_part.entries))
print("inverse tail coefficients:", psi.tail.coeffs)

# Determinants are stable under enlarging a truncation by whole tail
# blocks: every aligned section returns the same value.
for extra_blocks in range(3):
    m = (ast.core_dim + ast.nil_dim) + 3 * extra_blocks
    print("section size %2d -> det %s" % (m, wedge_scaling_check(phi, m)))
