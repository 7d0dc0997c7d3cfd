"""Fitting decomposition of a finite square matrix, and its lift to the
invariant core of a certified operator.

For a square M over Q or a number field, the ambient space splits as
W = im(M^d) and U = ker(M^d) (d = dimension), both M-invariant, with M
invertible on W and nilpotent on U.  The decomposition is unique; traces and
determinants of 1 + M reduce to the W block.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotFinitePotentError
from .matrices import (
    column_space_basis,
    det,
    kernel_basis,
    mat_eq,
    mat_mul,
    mat_pow,
    mat_vec,
    solve_columns,
)
from .operators import Certificate, FinitePotentOperator, certify_finite_potent
from .scalars import scalar_is_zero


@dataclass
class ASTDecomposition:
    """Invariant splitting of a finite space under a matrix.

    core_basis / nil_basis are column vectors in the ambient coordinates;
    core_matrix / nil_matrix are the restrictions of the map to those bases.
    ambient_indices, when set, names the basis indices of the ambient block
    inside the Z-indexed space (used by the operator-level lift).
    """

    core_basis: list
    nil_basis: list
    core_matrix: list
    nil_matrix: list
    nil_degree: int
    ambient_indices: tuple = ()

    @property
    def core_dim(self) -> int:
        return len(self.core_basis)

    @property
    def nil_dim(self) -> int:
        return len(self.nil_basis)


def fitting(matrix) -> ASTDecomposition:
    """Split the ambient space into the invertible core and nilpotent part.

    Always uses the exponent d = dimension, so no minimal-polynomial search
    is needed; bases come out of fraction-free elimination.
    """
    d = len(matrix)
    if d == 0:
        return ASTDecomposition([], [], [], [], 0)
    md = mat_pow(matrix, d)
    core_cols = column_space_basis(md)
    nil_cols = kernel_basis(md)
    if len(core_cols) + len(nil_cols) != d:
        raise NotFinitePotentError("rank-nullity failure in fitting")
    core_matrix = (
        solve_columns(core_cols, [mat_vec(matrix, w) for w in core_cols])
        if core_cols
        else []
    )
    nil_matrix = (
        solve_columns(nil_cols, [mat_vec(matrix, u) for u in nil_cols])
        if nil_cols
        else []
    )
    if core_cols and scalar_is_zero(det(core_matrix)):
        raise NotFinitePotentError("core block came out singular")
    # exact nilpotency order of the U block: smallest e with nil^e = 0
    if not nil_matrix:
        nil_degree = 0
    else:
        nil_degree = 1
        power = [row[:] for row in nil_matrix]
        zero = [[Fraction(0)] * len(nil_matrix) for _ in nil_matrix]
        while not mat_eq(power, zero):
            nil_degree += 1
            power = mat_mul(power, nil_matrix)
            if nil_degree > len(nil_matrix) + 1:
                raise NotFinitePotentError("U block is not nilpotent")
    return ASTDecomposition(core_cols, nil_cols, core_matrix, nil_matrix, nil_degree)


def lift_ast(phi: FinitePotentOperator) -> ASTDecomposition:
    """AST decomposition of the whole space for a certified operator.

    The certificate core carries all invertible content; the tail only ever
    adds to the nilpotent part, so the lifted core is the Fitting core of
    the certificate matrix, tagged with its basis indices.
    """
    cert: Certificate = certify_finite_potent(phi)
    ast = fitting([list(row) for row in cert.matrix])
    ast.ambient_indices = cert.indices
    return ast


def core_vectors(ast: ASTDecomposition):
    """Core basis as sparse vectors over the Z-indexed ambient basis."""
    out = []
    for col in ast.core_basis:
        out.append(
            {
                ast.ambient_indices[i]: c
                for i, c in enumerate(col)
                if not scalar_is_zero(c)
            }
        )
    return out
