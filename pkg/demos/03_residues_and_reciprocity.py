"""
Residues, local symbols, and reciprocity on the projective line
===============================================================

The residue of f dg at a place is computed two independent ways: from the
exact digit expansion in the local parameter, and as the trace of the
commutator of half-space compressions of multiplication operators.  The
attached symbol exp(z^2 res/2) is a 2-cocycle; its produced values satisfy
the classical properties and multiply to 1 over all places.
"""

from finpot import (
    HalfSpaceSpec,
    c4_check,
    c5_check,
    cocycle,
    cocycle_identity_check,
    cocycle_via_operators,
    local_expand,
    parse_place,
    parse_rational_function,
    reciprocity_check,
    residue_classical,
    residue_tate,
)

P = parse_rational_function
place_t = parse_place("t")
place_inf = parse_place("inf")

# Local expansions are exact digit expansions in the parameter.
print("1/(t-1) at infinity:", local_expand(P("1/(t-1)"), place_inf, 5).series)
quad = parse_place("t^2+1")
print("t at t^2+1         :", local_expand(P("t"), quad, 4).series)

# The residue, coefficient route vs operator-commutator route.
f, g = P("1/t"), P("t")
print("res(f dg) coefficient route:", residue_classical(f, g, place_t))
print("res(f dg) commutator route :", residue_tate(f, g))
print("res(t^-2 d(t^2))           :", residue_tate(P("1/t^2"), P("t^2")))

# Residues at a quadratic place take a residue-field trace down to Q.
print("res at t^2+1 of (t+1)/(t^2+1) d(t^2):",
      residue_classical(P("(t+1)/(t^2+1)"), P("t^2"), quad))

# The symbol: exponential of half the residue, in the z^2 slot.
c = cocycle(f, g, place_t)
print("symbol c(1/t, t)   :", c.series)
print("operator route     :", cocycle_via_operators(f, g).series)

# Cocycle identity and the classical properties.
print("cocycle identity   :", cocycle_identity_check(P("1/t"), P("t"), P("t^2"), place_t))
print("regular pair gives 1:", cocycle(P("t+1"), P("t^2-3"), place_t).is_one())
print("quotient-trace form:", c4_check(P("t^2"), P("t"), place_t))
print("half-space additivity:",
      c5_check(P("1/t^2"), P("t^3"), HalfSpaceSpec(0), HalfSpaceSpec(2)))

# Reciprocity: residues sum to zero and symbols multiply to one over the
# full pole/zero locus plus infinity.
s, prod = reciprocity_check(P("t"), P("1/(t-1)"))
print("sum of residues    :", s)
print("product of symbols :", prod.series)
s, prod = reciprocity_check(P("(t^2+1)/(t-2)"), P("t^3 - 5"))
print("another pair       : sum =", s, " product =", prod.series)
