# %% [markdown]
# The Example 4.7 family: a commutative subgroup G of SL_{n+1} of order p*l whose
# quotient has an isolated singularity, yet whose invariant ring is not polynomial.

# %%
import numpy as np

from modinv import (
    Example47Params,
    Subspace,
    build_example47,
    certify_polynomiality,
    check_isolated,
    gorenstein_example47,
    kernel_subgroup_of_W,
    line_stabilizers,
    transvection_subgroup,
)
from modinv.catalog import example47_matrices
from modinv.linalg import identity

params = Example47Params.make(3, 2, 3)
g, h = example47_matrices(params)
print("g =\n", g)
print("h =\n", h)

# %%
G = build_example47(params)
T = transvection_subgroup(G)
print("|G| =", G.order, " |T(G)| =", T.order)

# every line stabilizer is trivial or the transvection group <h>
orders = sorted({s.group.order for s in line_stabilizers(G)})
print("stabilizer orders:", orders)
print("isolated singularity:", check_isolated(G).isolated)

# %%
# G is not generated by transvections, so S(V)^G cannot be polynomial
print("S(V)^G:", certify_polynomiality(G).status)

# H = kernel of G on V/W with W spanned by the w_i: its invariants are w_1..w_n and v^p - w_1^{p-1} v
F = params.field
W = Subspace.span(F, identity(4)[1:], 4)
H = kernel_subgroup_of_W(G, W)
rep = certify_polynomiality(H)
print("S(V)^H:", rep.status, rep.generator_degrees)
for f in rep.generators:
    print("   ", f)

# %%
for p, l, n, k in [(3, 2, 3, 1), (7, 3, 2, 1), (5, 4, 3, 1), (3, 4, 3, 2)]:
    flag = gorenstein_example47(p, l, n, k=k)
    print(f"p={p} l={l} n={n} over F_{p**k}: Gorenstein={flag}  l | p-1: {(p - 1) % l == 0}")
